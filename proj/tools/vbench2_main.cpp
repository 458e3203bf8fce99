// Command-line runner: export-prompts | evaluate | align | report |
// dump-registry. Exit codes: 0 success, 2 validation failure, 3 backend
// failure.

#include <cstdio>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vbench2/vbench2.hpp"

namespace {

struct CliOptions {
    std::string config_path;
    std::string mock_script;
    std::string annotations;
    std::vector<std::string> dimensions;
    std::vector<std::string> models;
};

vbench2::RunConfig configure(const CliOptions& opt) {
    vbench2::RunConfig cfg = vbench2::load_run_config(opt.config_path);
    if (!opt.mock_script.empty()) {
        cfg.backend.adapter = "mock";
        cfg.backend.script_path = opt.mock_script;
    }
    for (const auto& d : opt.dimensions) {
        vbench2::dimension_from_string(d); // reject unknown ids early
        cfg.dimension_filter.insert(d);
    }
    if (!opt.models.empty()) {
        std::vector<std::string> selected;
        for (const auto& m : opt.models) {
            if (std::find(cfg.models.begin(), cfg.models.end(), m) == cfg.models.end())
                throw vbench2::SchemaError("model '" + m + "' is not in the run config");
            selected.push_back(m);
        }
        cfg.models = selected;
    }
    return cfg;
}

void add_common(CLI::App* cmd, CliOptions& opt, bool config_required = true) {
    cmd->add_option("--config", opt.config_path, "run config JSON")->required(config_required);
    cmd->add_option("--dimension", opt.dimensions, "restrict to dimension id (repeatable)");
    cmd->add_option("--model", opt.models, "restrict to model id (repeatable)");
    cmd->add_option("--mock-script", opt.mock_script, "mock backend script JSON");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"VBench-2.0 intrinsic-faithfulness evaluation harness"};
    app.require_subcommand(1);

    CliOptions opt;
    auto* cmd_export = app.add_subcommand("export-prompts",
                                          "write per-dimension plain-text prompt lists");
    add_common(cmd_export, opt);

    auto* cmd_eval = app.add_subcommand("evaluate", "score every (prompt, video) pair");
    add_common(cmd_eval, opt);

    auto* cmd_align = app.add_subcommand("align", "win ratios + correlation vs human annotations");
    add_common(cmd_align, opt);
    cmd_align->add_option("--annotations", opt.annotations, "annotations CSV")->required();

    auto* cmd_report = app.add_subcommand("report", "render score table and radar data");
    add_common(cmd_report, opt);

    auto* cmd_dump = app.add_subcommand("dump-registry",
                                        "emit the dimension bindings and constants as JSON");
    std::string dump_config;
    cmd_dump->add_option("--config", dump_config, "run config JSON (for constants overrides)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 2;
    }

    try {
        if (cmd_dump->parsed()) {
            vbench2::Constants consts;
            if (!dump_config.empty())
                consts = vbench2::constants_with_overrides(
                    vbench2::load_run_config(dump_config).constants_overrides);
            std::cout << vbench2::registry_to_json(vbench2::default_registry(consts)).dump(2)
                      << "\n";
            return 0;
        }

        vbench2::RunConfig cfg = configure(opt);

        if (cmd_export->parsed()) {
            auto paths = vbench2::cmd_export_prompts(cfg);
            for (const auto& p : paths) std::cout << p << "\n";
        } else if (cmd_eval->parsed()) {
            auto out = vbench2::cmd_evaluate(cfg);
            std::cout << "results: " << out.results_path << "\n"
                      << "report: " << out.report_path << "\n"
                      << "scored " << out.scored << " unit(s), reused " << out.reused << "\n";
        } else if (cmd_align->parsed()) {
            auto out = vbench2::cmd_align(cfg, opt.annotations);
            std::cout << "alignment: " << out.alignment_path << "\n";
            for (const auto& [dim, a] : out.dimensions) {
                std::cout << vbench2::to_string(dim) << ": linear_r=";
                if (a.linear_r)
                    std::printf("%.4f", *a.linear_r);
                else
                    std::cout << "undefined";
                std::cout << " spearman=";
                if (a.spearman_rho)
                    std::printf("%.4f", *a.spearman_rho);
                else
                    std::cout << "undefined";
                std::cout << "\n";
            }
        } else if (cmd_report->parsed()) {
            auto out = vbench2::cmd_report(cfg);
            std::cout << out.table_text;
        }
        return 0;
    } catch (const vbench2::BackendError& e) {
        std::cerr << "backend failure: " << e.what() << "\n";
        return 3;
    } catch (const vbench2::ContractViolation& e) {
        std::cerr << "backend contract violation: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

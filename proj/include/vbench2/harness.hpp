#pragma once

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "vbench2/aggregation.hpp"
#include "vbench2/backend.hpp"
#include "vbench2/constants.hpp"
#include "vbench2/errors.hpp"
#include "vbench2/mock_backend.hpp"
#include "vbench2/registry.hpp"
#include "vbench2/suite.hpp"
#include "vbench2/video.hpp"

namespace vbench2 {

// ---------------------------------------------------------------------------
// Run configuration
// ---------------------------------------------------------------------------

/// Backend block of the run config. Only the offline scripted adapter ships
/// with the harness; external adapters (remote judge endpoints, local model
/// wrappers) plug in behind the same BackendSuite interface and are selected
/// by name here, with their endpoint/model parameters passed through
/// `params` and capped at `timeout_s`.
struct BackendConfig {
    std::string adapter = "mock";
    std::string script_path; // mock adapter: path to the script JSON
    bool strict = true;
    nlohmann::json params = nlohmann::json::object();
    double timeout_s = 120.0;

    std::string descriptor() const {
        std::string d = adapter;
        if (adapter == "mock")
            d += "(script=" + script_path + ",strict=" + (strict ? "true" : "false") + ")";
        return d;
    }
};

struct RunConfig {
    std::string suite_path;
    std::vector<std::string> models;
    std::map<std::string, std::string> video_roots; // model id -> sample root
    BackendConfig backend;
    nlohmann::json constants_overrides = nlohmann::json::object();
    std::string output_dir;
    int parallelism = 1;
    std::uint64_t seed = 0;
    std::set<std::string> dimension_filter; // empty = all dimensions
};

/// Reads the run config JSON. The output directory falls back to
/// VBENCH2_OUTPUT_DIR when the file does not set one.
inline RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open run config: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("malformed run config " + path + ": " + e.what());
    }

    RunConfig cfg;
    try {
        cfg.suite_path = j.at("suite").get<std::string>();
        cfg.models = j.at("models").get<std::vector<std::string>>();
        if (j.contains("video_roots"))
            cfg.video_roots = j.at("video_roots").get<std::map<std::string, std::string>>();
        if (j.contains("backend")) {
            const auto& jb = j.at("backend");
            cfg.backend.adapter = jb.value("adapter", std::string("mock"));
            cfg.backend.script_path = jb.value("script", std::string{});
            cfg.backend.strict = jb.value("strict", true);
            cfg.backend.params = jb.value("params", nlohmann::json::object());
            cfg.backend.timeout_s = jb.value("timeout_s", 120.0);
        }
        cfg.constants_overrides = j.value("constants", nlohmann::json::object());
        cfg.output_dir = j.value("output_dir", std::string{});
        cfg.parallelism = j.value("parallelism", 1);
        cfg.seed = j.value("seed", 0ull);
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("run config does not match the schema: ") + e.what());
    }

    if (cfg.output_dir.empty()) {
        if (const char* env = std::getenv("VBENCH2_OUTPUT_DIR")) cfg.output_dir = env;
    }
    if (cfg.output_dir.empty())
        throw SchemaError("no output directory (set output_dir or VBENCH2_OUTPUT_DIR)");
    if (cfg.models.empty()) throw SchemaError("run config names no models");
    if (cfg.parallelism < 1) throw SchemaError("parallelism must be >= 1");

    // resolve relative paths against the config file's directory
    namespace fs = std::filesystem;
    const fs::path base = fs::path(path).parent_path();
    auto resolve = [&](std::string& p) {
        if (!p.empty() && fs::path(p).is_relative())
            p = (base / p).lexically_normal().string();
    };
    resolve(cfg.suite_path);
    resolve(cfg.backend.script_path);
    resolve(cfg.output_dir);
    for (auto& [_, root] : cfg.video_roots) resolve(root);
    return cfg;
}

/// Instantiates the configured backend, wrapped so every capability output
/// is invariant-checked at the boundary.
inline std::shared_ptr<BackendSuite> make_backend(const BackendConfig& cfg) {
    if (cfg.adapter == "mock") {
        if (cfg.script_path.empty())
            throw SchemaError("mock backend requires a script path (backend.script or --mock-script)");
        MockScript script = load_mock_script(cfg.script_path);
        script.strict = cfg.strict;
        return std::make_shared<CheckedBackend>(mock_backend(std::move(script)));
    }
    throw SchemaError("unknown backend adapter '" + cfg.adapter +
                      "' (this build ships the offline 'mock' adapter)");
}

// ---------------------------------------------------------------------------
// Video layout
// ---------------------------------------------------------------------------

/// Samples live at <root>/<dimension>/<prompt_id>/<sample_index>.
inline std::string sample_dir(const std::string& root, const PromptSpec& prompt, int sample) {
    return root + "/" + std::string(to_string(prompt.dimension)) + "/" + prompt.id + "/" +
           std::to_string(sample);
}

inline std::string video_id(const std::string& model, const PromptSpec& prompt, int sample) {
    return model + "/" + std::string(to_string(prompt.dimension)) + "/" + prompt.id + "/" +
           std::to_string(sample);
}

// ---------------------------------------------------------------------------
// Percent formatting
// ---------------------------------------------------------------------------

/// Fraction -> percent string with two decimals, rounding half up (82.975 ->
/// "82.98") to match table formatting.
inline std::string format_percent(double fraction) {
    double scaled = fraction * 10000.0; // percent * 100
    long long units = static_cast<long long>(std::floor(scaled + 0.5));
    const bool negative = units < 0;
    if (negative) units = -units;
    const long long whole = units / 100;
    const long long cents = units % 100;
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%s%lld.%02lld", negative ? "-" : "", whole, cents);
    return buf;
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

struct EvaluateOutcome {
    std::string results_path;
    std::string report_path;
    std::string transcripts_path;
    int scored = 0;
    int reused = 0; // completed pairs found in an existing results file
};

namespace detail {

inline std::string unit_key(const std::string& model, const std::string& prompt_id, int sample) {
    return model + "|" + prompt_id + "|" + std::to_string(sample);
}

struct WorkUnit {
    std::string model;
    const PromptSpec* prompt = nullptr;
    int sample = 0;
    std::string root;
};

/// Scores one work unit. Missing videos become unscorable records; hard
/// backend failures propagate and abort the run.
inline ScoreRecord run_unit(const WorkUnit& unit, const std::vector<DimensionBinding>& registry,
                            BackendSuite& backend) {
    const DimensionBinding& binding = binding_for(registry, unit.prompt->dimension);
    const int cardinality = binding.video_cardinality(*unit.prompt);

    std::vector<VideoHandle> videos;
    videos.reserve(cardinality);
    for (int k = 0; k < cardinality; ++k) {
        const int slot = cardinality == 1 ? unit.sample : k;
        const std::string dir = sample_dir(unit.root, *unit.prompt, slot);
        try {
            videos.push_back(open_video_dir(dir, video_id(unit.model, *unit.prompt, slot)));
        } catch (const ParseError& e) {
            ScoreRecord missing;
            missing.prompt_id = unit.prompt->id;
            missing.dimension = unit.prompt->dimension;
            missing.model = unit.model;
            missing.sample = unit.sample;
            missing.outcome = ScoreOutcome::unscorable(std::string("missing video: ") + e.what());
            return missing;
        }
    }

    try {
        return score_video(binding, *unit.prompt, videos, backend, unit.model, unit.sample);
    } catch (const PreconditionError& e) {
        ScoreRecord bad;
        bad.prompt_id = unit.prompt->id;
        bad.dimension = unit.prompt->dimension;
        bad.model = unit.model;
        bad.sample = unit.sample;
        bad.outcome = ScoreOutcome::unscorable(std::string("precondition: ") + e.what());
        return bad;
    }
}

} // namespace detail

/// Per-model report block (Table-shaped scores + counts + replay metadata).
inline nlohmann::json model_report_json(const std::string& model,
                                        const std::vector<ScoreRecord>& records,
                                        const SuiteManifest& manifest, const Constants& consts,
                                        const BackendConfig& backend) {
    nlohmann::json dims = nlohmann::json::object();
    for (DimensionId d : all_dimensions()) {
        std::vector<ScoreRecord> group;
        for (const auto& r : records)
            if (r.model == model && r.dimension == d) group.push_back(r);
        if (group.empty()) continue;
        DimensionScore ds = dimension_score(group, d);
        int prefilter_failed = 0;
        for (const auto& r : group)
            if (r.evidence.value("prefilter_failed", false)) ++prefilter_failed;
        nlohmann::json cell{{"scorable", ds.scorable},
                            {"discarded", ds.discarded},
                            {"unscorable", ds.unscorable},
                            {"prefilter_failed", prefilter_failed}};
        if (ds.defined) {
            cell["score"] = ds.score;
            cell["percent"] = format_percent(ds.score);
        } else {
            cell["score"] = nullptr;
            cell["note"] = "undefined: no scorable records";
        }
        dims[std::string(to_string(d))] = cell;
    }
    return {{"model", model},
            {"dimensions", dims},
            {"metadata",
             {{"suite_version", manifest.version},
              {"constants_hash", constants_hash(consts)},
              {"backend", backend.descriptor()}}}};
}

/// Scores every (prompt, video) pair of the configured models through the
/// registry, appending ScoreRecords to <output>/results.jsonl. Pairs already
/// present in the results file are never rescored, so an aborted run resumes
/// where it stopped. Judge transcripts for the run are persisted alongside
/// the results.
inline EvaluateOutcome cmd_evaluate(const RunConfig& cfg) {
    namespace fs = std::filesystem;
    const SuiteManifest manifest = load_suite(cfg.suite_path);
    const Constants consts = constants_with_overrides(cfg.constants_overrides);
    const auto registry = default_registry(consts);

    auto recording = std::make_shared<RecordingBackend>(make_backend(cfg.backend));
    BackendSuite& backend = *recording;

    fs::create_directories(cfg.output_dir);
    const std::string results_path = cfg.output_dir + "/results.jsonl";
    const std::string report_path = cfg.output_dir + "/report.json";
    const std::string transcripts_path = cfg.output_dir + "/transcripts.jsonl";

    std::vector<ScoreRecord> existing;
    std::set<std::string> done;
    if (fs::exists(results_path)) {
        existing = read_results_jsonl(results_path);
        for (const auto& r : existing)
            done.insert(detail::unit_key(r.model, r.prompt_id, r.sample));
    }

    // one work unit per (model, prompt, sample slot); sample count is 1 per
    // prompt, with the diversity sample set consumed as a single unit
    std::vector<detail::WorkUnit> units;
    for (const auto& model : cfg.models) {
        auto root_it = cfg.video_roots.find(model);
        if (root_it == cfg.video_roots.end())
            throw SchemaError("no video root configured for model '" + model + "'");
        for (const auto& prompt : manifest.prompts) {
            if (!cfg.dimension_filter.empty() &&
                !cfg.dimension_filter.count(std::string(to_string(prompt.dimension))))
                continue;
            if (done.count(detail::unit_key(model, prompt.id, 0))) continue;
            units.push_back({model, &prompt, 0, root_it->second});
        }
    }

    // parallel scoring with a serialized writer: records are flushed to the
    // results file incrementally in unit order, so fresh runs are
    // byte-identical regardless of scheduling and an interrupted run leaves
    // every completed prefix on disk
    std::ofstream results_out(results_path, std::ios::app);
    if (!results_out) throw ParseError("cannot write results file: " + results_path);

    std::vector<std::optional<ScoreRecord>> slots(units.size());
    std::vector<ScoreRecord> fresh;
    std::exception_ptr failure;
    std::mutex write_mu; // guards slots, fresh, the write cursor and the stream
    std::size_t write_cursor = 0;
    std::atomic<std::size_t> next{0};
    std::atomic<bool> abort{false};

    const int workers = std::max(1, std::min<int>(cfg.parallelism, backend.max_in_flight()));
    auto work = [&] {
        while (!abort.load()) {
            const std::size_t i = next.fetch_add(1);
            if (i >= units.size()) return;
            try {
                ScoreRecord record = detail::run_unit(units[i], registry, backend);
                std::lock_guard lk(write_mu);
                slots[i] = std::move(record);
                while (write_cursor < slots.size() && slots[write_cursor]) {
                    results_out << to_json(*slots[write_cursor]).dump() << "\n";
                    results_out.flush();
                    fresh.push_back(std::move(*slots[write_cursor]));
                    ++write_cursor;
                }
            } catch (...) {
                std::lock_guard lk(write_mu);
                if (!failure) failure = std::current_exception();
                abort.store(true);
                return;
            }
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    results_out.close();
    const int scored = static_cast<int>(fresh.size());

    {
        std::ofstream tr(transcripts_path);
        for (const auto& call : recording->log())
            tr << nlohmann::json{{"capability", call.capability},
                                 {"fingerprint", call.fingerprint},
                                 {"output", call.output}}
                      .dump()
               << "\n";
    }

    if (failure) std::rethrow_exception(failure);

    std::vector<ScoreRecord> all = existing;
    all.insert(all.end(), fresh.begin(), fresh.end());

    nlohmann::json models = nlohmann::json::object();
    ScoreTable table;
    for (const auto& model : cfg.models) {
        models[model] = model_report_json(model, all, manifest, consts, cfg.backend);
        for (DimensionId d : all_dimensions()) {
            std::vector<ScoreRecord> group;
            for (const auto& r : all)
                if (r.model == model && r.dimension == d) group.push_back(r);
            if (group.empty()) continue;
            DimensionScore ds = dimension_score(group, d);
            if (ds.defined) table[model][d] = ds.score;
        }
    }
    RadarTable radar = normalize_for_radar(table);
    nlohmann::json radar_json = nlohmann::json::object();
    for (const auto& [model, dims] : radar.values) {
        nlohmann::json row = nlohmann::json::object();
        for (const auto& [d, v] : dims) row[std::string(to_string(d))] = v;
        radar_json[model] = row;
    }

    nlohmann::json report{{"models", models},
                          {"radar", radar_json},
                          {"radar_notes", radar.notes},
                          {"metadata",
                           {{"suite_version", manifest.version},
                            {"constants_hash", constants_hash(consts)},
                            {"backend", cfg.backend.descriptor()}}}};
    std::ofstream report_out(report_path);
    report_out << report.dump(2) << "\n";

    return {results_path, report_path, transcripts_path, scored, static_cast<int>(existing.size())};
}

// ---------------------------------------------------------------------------
// Report
// ---------------------------------------------------------------------------

struct ReportOutcome {
    std::string table_path;
    std::string radar_path;
    std::string table_text;
};

/// Renders the Table-style percentage grid and the radar-normalized series
/// from an existing results file.
inline ReportOutcome cmd_report(const RunConfig& cfg) {
    const std::string results_path = cfg.output_dir + "/results.jsonl";
    const std::vector<ScoreRecord> records = read_results_jsonl(results_path);
    if (records.empty()) throw SchemaError("empty results: nothing to report at " + results_path);

    std::set<std::string> model_set;
    for (const auto& r : records) model_set.insert(r.model);
    std::vector<std::string> models(model_set.begin(), model_set.end());

    ScoreTable table;
    std::map<std::string, std::map<DimensionId, DimensionScore>> cells;
    for (const auto& model : models) {
        for (DimensionId d : all_dimensions()) {
            std::vector<ScoreRecord> group;
            for (const auto& r : records)
                if (r.model == model && r.dimension == d) group.push_back(r);
            if (group.empty()) continue;
            DimensionScore ds = dimension_score(group, d);
            cells[model][d] = ds;
            if (ds.defined) table[model][d] = ds.score;
        }
    }

    // text table: one row per model, one column per dimension
    std::string text;
    std::size_t name_width = 5;
    for (const auto& m : models) name_width = std::max(name_width, m.size());
    auto pad = [](std::string s, std::size_t w) {
        if (s.size() < w) s.append(w - s.size(), ' ');
        return s;
    };
    text += pad("model", name_width);
    for (DimensionId d : all_dimensions()) text += " | " + std::string(to_string(d));
    text += "\n";
    for (const auto& model : models) {
        text += pad(model, name_width);
        for (DimensionId d : all_dimensions()) {
            const std::size_t w = std::string(to_string(d)).size();
            std::string cell = "--";
            auto mit = cells.find(model);
            if (mit != cells.end()) {
                auto dit = mit->second.find(d);
                if (dit != mit->second.end() && dit->second.defined)
                    cell = format_percent(dit->second.score) + "%";
            }
            text += " | " + pad(cell, w);
        }
        text += "\n";
    }

    RadarTable radar = normalize_for_radar(table);
    nlohmann::json radar_json{{"notes", radar.notes}};
    nlohmann::json series = nlohmann::json::object();
    for (const auto& [model, dims] : radar.values) {
        nlohmann::json row = nlohmann::json::object();
        for (const auto& [d, v] : dims) row[std::string(to_string(d))] = v;
        series[model] = row;
    }
    radar_json["series"] = series;

    ReportOutcome out;
    out.table_path = cfg.output_dir + "/table.txt";
    out.radar_path = cfg.output_dir + "/radar.json";
    out.table_text = text;
    std::ofstream(out.table_path) << text;
    std::ofstream(out.radar_path) << radar_json.dump(2) << "\n";
    return out;
}

// ---------------------------------------------------------------------------
// Human alignment
// ---------------------------------------------------------------------------

struct AlignmentDimension {
    std::vector<std::string> models;
    std::vector<double> machine_ratios;
    std::vector<double> human_ratios;
    std::optional<double> spearman_rho;
    std::optional<double> linear_r; // Pearson of the win-ratio vectors
    int skipped_pairs = 0;          // record pairs without two numeric scores
};

/// Machine win ratios derived from ScoreRecords (higher score wins, equal
/// scores tie, slot-wise per prompt and sample), human win ratios from the
/// annotation file, and both correlation statistics per dimension.
inline std::map<DimensionId, AlignmentDimension> compute_alignment(
    const std::vector<ScoreRecord>& records, const std::vector<AnnotationRecord>& annotations) {
    std::set<std::string> record_models;
    for (const auto& r : records) record_models.insert(r.model);
    for (const auto& a : annotations) {
        if (!record_models.count(a.model_a) || !record_models.count(a.model_b))
            throw SchemaError("annotation names model '" +
                              (record_models.count(a.model_a) ? a.model_b : a.model_a) +
                              "' absent from the results");
    }

    std::set<DimensionId> dims;
    for (const auto& a : annotations) dims.insert(a.dimension);

    std::map<DimensionId, AlignmentDimension> out;
    for (DimensionId dim : dims) {
        AlignmentDimension result;

        // machine judgments: per (prompt, sample) slot, every model pair
        std::map<std::pair<std::string, int>, std::map<std::string, const ScoreRecord*>> slots;
        for (const auto& r : records)
            if (r.dimension == dim) slots[{r.prompt_id, r.sample}][r.model] = &r;

        std::vector<PairJudgment> machine;
        for (const auto& [_, by_model] : slots) {
            std::vector<const ScoreRecord*> present;
            for (const auto& [ignored, r] : by_model) present.push_back(r);
            for (std::size_t i = 0; i < present.size(); ++i) {
                for (std::size_t j = i + 1; j < present.size(); ++j) {
                    const auto* a = present[i];
                    const auto* b = present[j];
                    if (a->outcome.kind != ScoreOutcome::Kind::scored ||
                        b->outcome.kind != ScoreOutcome::Kind::scored) {
                        ++result.skipped_pairs;
                        continue;
                    }
                    PairJudgment pj;
                    pj.model_a = a->model;
                    pj.model_b = b->model;
                    pj.outcome = a->outcome.score > b->outcome.score
                                     ? PairJudgment::Outcome::a_wins
                                 : a->outcome.score < b->outcome.score
                                     ? PairJudgment::Outcome::b_wins
                                     : PairJudgment::Outcome::tie;
                    machine.push_back(pj);
                }
            }
        }

        std::vector<AnnotationRecord> dim_annotations;
        for (const auto& a : annotations)
            if (a.dimension == dim) dim_annotations.push_back(a);

        WinRatioTable machine_table = win_ratio(machine);
        WinRatioTable human_table = win_ratio(annotations_to_judgments(dim_annotations));

        const auto machine_models = machine_table.models();
        const auto human_models = human_table.models();
        if (machine_models != human_models)
            throw SchemaError("model mismatch between results and annotations for dimension '" +
                              std::string(to_string(dim)) + "'");

        result.models = machine_models;
        for (const auto& m : result.models) {
            result.machine_ratios.push_back(machine_table.ratio(m));
            result.human_ratios.push_back(human_table.ratio(m));
        }
        if (result.models.size() >= 2) {
            result.spearman_rho = spearman(result.machine_ratios, result.human_ratios);
            result.linear_r = pearson(result.machine_ratios, result.human_ratios);
        }
        out[dim] = std::move(result);
    }
    return out;
}

struct AlignOutcome {
    std::string alignment_path;
    std::map<DimensionId, AlignmentDimension> dimensions;
};

inline AlignOutcome cmd_align(const RunConfig& cfg, const std::string& annotations_path) {
    const std::vector<ScoreRecord> records =
        read_results_jsonl(cfg.output_dir + "/results.jsonl");
    const std::vector<AnnotationRecord> annotations = load_annotations_csv(annotations_path);

    AlignOutcome out;
    out.dimensions = compute_alignment(records, annotations);

    nlohmann::json dims = nlohmann::json::object();
    for (const auto& [dim, a] : out.dimensions) {
        nlohmann::json jd{{"models", a.models},
                          {"vbench2_win_ratios", a.machine_ratios},
                          {"human_win_ratios", a.human_ratios},
                          {"skipped_pairs", a.skipped_pairs},
                          {"caveat", "correlation over " + std::to_string(a.models.size()) +
                                         " model-level win-ratio points"}};
        jd["spearman"] = a.spearman_rho ? nlohmann::json(*a.spearman_rho) : nlohmann::json();
        jd["linear_correlation"] = a.linear_r ? nlohmann::json(*a.linear_r) : nlohmann::json();
        dims[std::string(to_string(dim))] = jd;
    }

    out.alignment_path = cfg.output_dir + "/alignment.json";
    std::ofstream(out.alignment_path) << nlohmann::json{{"dimensions", dims}}.dump(2) << "\n";
    return out;
}

// ---------------------------------------------------------------------------
// Prompt export
// ---------------------------------------------------------------------------

/// One plain-text prompt list per dimension (manifest order), for sampling
/// videos outside the harness. Diversity lines carry the per-prompt sample
/// count.
inline std::vector<std::string> cmd_export_prompts(const RunConfig& cfg) {
    namespace fs = std::filesystem;
    const SuiteManifest manifest = load_suite(cfg.suite_path);
    const std::string dir = cfg.output_dir + "/prompts";
    fs::create_directories(dir);

    std::vector<std::string> paths;
    for (DimensionId d : all_dimensions()) {
        const std::string path = dir + "/" + std::string(to_string(d)) + ".txt";
        std::ofstream out(path);
        for (const auto& p : prompts_for_dimension(manifest, d)) {
            out << p.text;
            if (d == DimensionId::diversity)
                out << "\tsamples=" << std::get<DiversityPayload>(p.payload).sample_count;
            out << "\n";
        }
        paths.push_back(path);
    }
    return paths;
}

} // namespace vbench2

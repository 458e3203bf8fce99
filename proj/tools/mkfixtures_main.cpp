// Emits the offline fixture pack: the mini suite, its scripted mock backend,
// metadata-only video directories, a ready-to-run config, and the replay /
// alignment record sets. Everything the CLI needs for a full offline run.

#include <filesystem>
#include <iostream>

#include "vbench2/testing/fixtures.hpp"

int main(int argc, char** argv) {
    namespace fs = std::filesystem;
    using namespace vbench2;
    using namespace vbench2::testing;

    const std::string root = argc > 1 ? argv[1] : "assets";
    try {
        fs::create_directories(root);
        fs::create_directories(root + "/replay");
        fs::create_directories(root + "/alignment");

        const SuiteManifest suite = mini_suite();
        write_json_file(root + "/suite_mini.json", to_json(suite));
        write_json_file(root + "/mock_script.json", to_json(mini_mock_script("mockgen")));
        write_fixture_videos(root + "/videos/mockgen", suite);

        write_json_file(root + "/run_config.json",
                        {{"suite", "suite_mini.json"},
                         {"models", {"mockgen"}},
                         {"video_roots", {{"mockgen", "videos/mockgen"}}},
                         {"backend",
                          {{"adapter", "mock"}, {"script", "mock_script.json"}, {"strict", true}}},
                         {"output_dir", "out/mini"},
                         {"parallelism", 1}});

        write_results_jsonl(root + "/replay/results.jsonl", reference_replay_records());
        write_json_file(root + "/replay/run_config.json", {{"suite", "../suite_mini.json"},
                                                           {"models", reference_models()},
                                                           {"output_dir", "."}});

        write_results_jsonl(root + "/alignment/results.jsonl", diversity_alignment_records());
        write_annotations_csv(root + "/alignment/annotations_diversity.csv",
                              diversity_alignment_annotations());
        write_json_file(root + "/alignment/run_config.json", {{"suite", "../suite_mini.json"},
                                                              {"models", reference_models()},
                                                              {"output_dir", "."}});

        std::cout << "fixtures written under " << root << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "mallga/harness.hpp"

namespace {

using namespace mallga;

std::vector<int> parse_range_list(const std::string& text, int lo, int hi,
                                  const std::string& what) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        const auto dash = part.find('-');
        int a, b;
        try {
            if (dash == std::string::npos) {
                a = b = std::stoi(part);
            } else {
                a = std::stoi(part.substr(0, dash));
                b = std::stoi(part.substr(dash + 1));
            }
        } catch (const std::exception&) {
            throw CLI::ValidationError(what, "cannot parse '" + part + "'");
        }
        for (int v = a; v <= b; ++v) {
            if (v < lo || v > hi)
                throw CLI::ValidationError(what, "value " + std::to_string(v) + " out of range");
            out.push_back(v);
        }
    }
    if (out.empty()) throw CLI::ValidationError(what, "empty selection");
    return out;
}

int default_threads() {
    if (const char* env = std::getenv("MALLGA_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

int cmd_gen(const std::string& sets_text, int instances_per_set, std::uint64_t seed,
            const std::string& out_dir) {
    const auto sets = parse_range_list(sets_text, 3, 7, "--sets");
    std::filesystem::create_directories(out_dir);
    int written = 0;
    for (int set : sets) {
        for (int idx = 0; idx < instances_per_set; ++idx) {
            const MallInstance inst = generate_instance({set, idx, seed});
            const auto path = std::filesystem::path(out_dir) / instance_file_name(set, idx);
            write_instance(inst, path.string());
            ++written;
        }
    }
    std::cout << "wrote " << written << " instance files to " << out_dir << "\n";
    return 0;
}

int cmd_run(const std::vector<std::string>& algos, const std::string& data_dir,
            const std::string& sets_text, const std::string& instances_text, int runs,
            std::uint64_t seed, const std::string& out_dir, int weight_strategy,
            double weight_limit, bool wall_time, int threads) {
    ExperimentRequest request;
    for (const auto& name : algos) {
        AlgorithmVariant v = parse_variant(name);
        v.weight_strategy = static_cast<WeightStrategy>(weight_strategy);
        v.weight_init_limit = weight_limit;
        request.variants.push_back(std::move(v));
    }
    const auto sets = parse_range_list(sets_text, 3, 7, "--sets");
    const auto indices = parse_range_list(instances_text, 0, 9, "--instances");

    LoadReport loaded = load_instances(data_dir, sets, indices);
    for (const auto& err : loaded.errors) std::cerr << "error: " << err << "\n";
    if (loaded.instances.empty()) {
        std::cerr << "error: no usable instances in " << data_dir << "\n";
        return 1;
    }
    request.instances = std::move(loaded.instances);
    request.runs = runs;
    request.master_seed = seed;
    request.threads = threads > 0 ? threads : default_threads();
    request.record_wall_time = wall_time;

    const Archive archive = run_experiment(request, &std::cerr);
    write_archive_files(archive, out_dir);
    std::cout << "archive written to " << out_dir << "\n";

    const ExperimentSummary summary = summarize(archive);
    for (const auto& row : summary.per_set)
        std::cout << row.variant << " set " << row.set_id << ": feasibility "
                  << row.feasibility << ", rent " << row.rent << "\n";
    return loaded.errors.empty() ? 0 : 1;
}

int cmd_report(const std::string& archive_dir, const std::string& kind,
               const std::string& out_file) {
    const Archive archive = read_archive_files(archive_dir);
    std::ofstream out(out_file);
    if (!out) {
        std::cerr << "error: cannot write " << out_file << "\n";
        return 1;
    }
    if (kind == "weights-by-set") {
        export_weights_by_set(archive, out, &std::cerr);
    } else if (kind == "crossover-shares") {
        export_crossover_shares(archive, out, &std::cerr);
    } else if (kind == "convergence") {
        export_convergence(archive, out);
    } else if (kind == "summary") {
        write_set_summary_csv(summarize(archive), out);
    } else {
        std::cerr << "error: unknown report kind '" << kind << "'\n";
        return 1;
    }
    std::cout << "wrote " << out_file << "\n";
    return 0;
}

int cmd_oracle(int locations, int types, int areas, std::uint64_t seed) {
    const MallInstance inst = make_tiny_instance(locations, types, areas, seed);
    const BruteForceResult result = brute_force_best(inst);
    std::cout << "layouts checked: " << result.layouts_checked << "\n";
    std::cout << "upper bound: " << upper_bound(inst) << "\n";
    if (result.any_feasible) {
        std::cout << "best feasible rent: " << result.best_feasible_rent << "\nlayout:";
        for (int t : result.best_layout) std::cout << ' ' << t;
        std::cout << "\n";
    } else {
        std::cout << "no feasible layout exists\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Genetic algorithms for the mall layout and tenant selection problem"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "Generate benchmark instance files");
    std::string gen_sets = "3-7";
    int gen_count = 10;
    std::uint64_t gen_seed = 42;
    std::string gen_out = "data";
    gen->add_option("--sets", gen_sets, "Set selection, e.g. 3-7 or 4,6");
    gen->add_option("--count", gen_count, "Instances per set")->check(CLI::Range(1, 10));
    gen->add_option("--seed", gen_seed, "Master seed");
    gen->add_option("--out", gen_out, "Output directory");

    // run
    auto* run = app.add_subcommand("run", "Run an experiment over instance files");
    std::vector<std::string> run_algos;
    std::string run_data = "data", run_sets = "3-7", run_instances = "0-9", run_out = "results";
    int run_runs = 20, run_strategy = 2, run_threads = 0;
    std::uint64_t run_seed_value = 42;
    double run_limit = 10000.0;
    bool run_wall = false;
    run->add_option("--algo", run_algos, "Algorithm variant (repeatable)")
        ->required()
        ->check(CLI::IsMember(variant_names()));
    run->add_option("--data", run_data, "Instance directory");
    run->add_option("--sets", run_sets, "Set selection");
    run->add_option("--instances", run_instances, "Instance index selection");
    run->add_option("--runs", run_runs, "Runs per instance")->check(CLI::PositiveNumber);
    run->add_option("--seed", run_seed_value, "Master seed");
    run->add_option("--out", run_out, "Output directory for the archive");
    run->add_option("--weight-strategy", run_strategy,
                    "Weight recombination strategy (1 random parent, 2 rank-weighted, 3 between)")
        ->check(CLI::Range(1, 3));
    run->add_option("--weight-limit", run_limit, "Weight initialization upper limit");
    run->add_flag("--timing", run_wall, "Record wall-clock seconds in the archive");
    run->add_option("--threads", run_threads, "Worker threads (default MALLGA_THREADS or cores)");

    // report
    auto* report = app.add_subcommand("report", "Derive reports from a persisted archive");
    std::string rep_archive = "results", rep_kind = "summary", rep_out = "report.csv";
    report->add_option("--archive", rep_archive, "Archive directory (from run)");
    report->add_option("--kind", rep_kind, "weights-by-set | crossover-shares | convergence | summary")
        ->check(CLI::IsMember({"weights-by-set", "crossover-shares", "convergence", "summary"}));
    report->add_option("--out", rep_out, "Output CSV file");

    // oracle
    auto* oracle = app.add_subcommand("oracle", "Brute-force a tiny instance");
    int ora_locations = 6, ora_types = 3, ora_areas = 2;
    std::uint64_t ora_seed = 7;
    oracle->add_option("--locations", ora_locations)->check(CLI::Range(1, 12));
    oracle->add_option("--types", ora_types)->check(CLI::Range(1, 4));
    oracle->add_option("--areas", ora_areas)->check(CLI::Range(1, 5));
    oracle->add_option("--seed", ora_seed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (gen->parsed()) return cmd_gen(gen_sets, gen_count, gen_seed, gen_out);
        if (run->parsed())
            return cmd_run(run_algos, run_data, run_sets, run_instances, run_runs,
                           run_seed_value, run_out, run_strategy, run_limit, run_wall,
                           run_threads);
        if (report->parsed()) return cmd_report(rep_archive, rep_kind, rep_out);
        if (oracle->parsed()) return cmd_oracle(ora_locations, ora_types, ora_areas, ora_seed);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

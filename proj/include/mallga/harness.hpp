#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mallga/algorithms.hpp"
#include "mallga/instance_gen.hpp"
#include "mallga/mall_model.hpp"

namespace mallga {

struct InstanceEntry {
    int set_id = 0;
    int instance_index = 0;
    MallInstance instance;
};

struct ExperimentRequest {
    std::vector<AlgorithmVariant> variants;
    std::vector<InstanceEntry> instances;
    int runs = 20;
    std::uint64_t master_seed = 0;
    int threads = 1;
    bool record_wall_time = false;  // CSV exports stay byte-reproducible by default
};

struct RunRecord {
    std::string variant;
    int set_id = 0;
    int instance_index = 0;
    int run_index = 0;
    std::uint64_t seed = 0;
    double weight_limit = 0.0;
    bool has_weights = false;
    bool has_tags = false;
    bool has_rates = false;
    RunResult result;
};

using Archive = std::vector<RunRecord>;

// Seed for one run: a function of the master seed and the (set, instance,
// run) cell only, so every variant starts from the same chromosomes.
std::uint64_t run_seed(std::uint64_t master_seed, int set_id, int instance_index, int run_index);

// All (variant x instance x run) cells, in canonical order. Cells are
// independent; with threads > 1 they are computed concurrently and stored by
// index, so results do not depend on the thread count.
Archive run_experiment(const ExperimentRequest& request, std::ostream* log = nullptr);

struct InstanceSummaryRow {
    std::string variant;
    int set_id = 0;
    int instance_index = 0;
    double feasibility = 0.0;  // fraction of runs that found a feasible layout
    double best_rent = 0.0;    // best feasible rent over runs, 0 if censored
    double mean_generations = 0.0;
    double mean_seconds = 0.0;
};

struct SetSummaryRow {
    std::string variant;
    int set_id = 0;
    double feasibility = 0.0;  // mean over instances of the run-success fraction
    double rent = 0.0;         // mean over instances of best feasible rent, censored 0
};

struct ExperimentSummary {
    std::vector<InstanceSummaryRow> per_instance;
    std::vector<SetSummaryRow> per_set;
};

ExperimentSummary summarize(const Archive& archive);

// --- CSV export (deterministic formatting) ---

void write_summary_csv(const ExperimentSummary& summary, std::ostream& out);
void write_set_summary_csv(const ExperimentSummary& summary, std::ostream& out);
void write_runs_csv(const Archive& archive, std::ostream& out);
void write_fitness_trace_csv(const Archive& archive, std::ostream& out);
void write_aux_trace_csv(const Archive& archive, std::ostream& out);

// Figure-style exports; *warn* receives a note when the archive holds no
// matching data (the file is then header-only).
void export_weights_by_set(const Archive& archive, std::ostream& out, std::ostream* warn);
void export_crossover_shares(const Archive& archive, std::ostream& out, std::ostream* warn);
void export_convergence(const Archive& archive, std::ostream& out);

// Writes summary.csv, summary_sets.csv, runs.csv, trace_fitness.csv and
// trace_aux.csv into the directory.
void write_archive_files(const Archive& archive, const std::string& out_dir);

// Rebuilds an archive from runs.csv / trace_fitness.csv / trace_aux.csv, the
// persisted form every report is derived from.
Archive read_archive_files(const std::string& dir);

// --- instance IO helpers ---

struct LoadReport {
    std::vector<InstanceEntry> instances;
    std::vector<std::string> errors;  // missing/bad files, reported and skipped
};

LoadReport load_instances(const std::string& data_dir, const std::vector<int>& sets,
                          const std::vector<int>& indices);

// --- brute force oracle for tiny instances ---

struct BruteForceResult {
    bool any_feasible = false;
    double best_feasible_rent = 0.0;
    Layout best_layout;
    double best_unconstrained_rent = 0.0;
    long long layouts_checked = 0;
};

// Enumerates every layout; guarded against instances with more than ~10^7.
BruteForceResult brute_force_best(const MallInstance& inst);

}  // namespace mallga

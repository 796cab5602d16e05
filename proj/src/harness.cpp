#include "mallga/harness.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

namespace mallga {

namespace {

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

}  // namespace

std::uint64_t run_seed(std::uint64_t master_seed, int set_id, int instance_index, int run_index) {
    return Rng(master_seed)
        .substream("run")
        .substream(set_id)
        .substream(instance_index)
        .substream(run_index)
        .seed();
}

Archive run_experiment(const ExperimentRequest& request, std::ostream* log) {
    Archive archive;
    for (const auto& variant : request.variants)
        for (const auto& entry : request.instances)
            for (int run = 0; run < request.runs; ++run) {
                RunRecord rec;
                rec.variant = variant.name;
                rec.set_id = entry.set_id;
                rec.instance_index = entry.instance_index;
                rec.run_index = run;
                rec.seed = run_seed(request.master_seed, entry.set_id, entry.instance_index, run);
                rec.weight_limit = variant.has_weight_genes() ? variant.weight_init_limit : 0.0;
                rec.has_weights = variant.has_weight_genes();
                rec.has_tags = variant.has_tag_genes();
                rec.has_rates = variant.has_rate_genes();
                archive.push_back(std::move(rec));
            }

    const std::size_t cells_per_variant = request.instances.size() * request.runs;
    std::atomic<std::size_t> next{0};
    std::mutex log_mutex;

    auto worker = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= archive.size()) return;
            RunRecord& rec = archive[i];
            const AlgorithmVariant& variant = request.variants[i / cells_per_variant];
            const InstanceEntry& entry =
                request.instances[(i % cells_per_variant) / request.runs];
            rec.result = run_variant(variant, entry.instance, rec.seed);
            if (!request.record_wall_time) rec.result.seconds = 0.0;
            if (log) {
                std::lock_guard<std::mutex> lock(log_mutex);
                *log << rec.variant << " set" << rec.set_id << "/" << rec.instance_index
                     << " run " << rec.run_index << ": generations=" << rec.result.generations
                     << (rec.result.best_feasible_rent
                             ? " best_rent=" + fmt("%.3f", *rec.result.best_feasible_rent)
                             : " infeasible")
                     << "\n";
            }
        }
    };

    const int threads = std::max(1, request.threads);
    if (threads == 1 || archive.size() <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < std::min<int>(threads, archive.size()); ++t)
            pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return archive;
}

ExperimentSummary summarize(const Archive& archive) {
    // Group in archive order: variant blocks, instances within, runs within.
    ExperimentSummary summary;
    std::size_t i = 0;
    while (i < archive.size()) {
        std::size_t j = i;
        InstanceSummaryRow row;
        row.variant = archive[i].variant;
        row.set_id = archive[i].set_id;
        row.instance_index = archive[i].instance_index;
        int runs = 0, feasible_runs = 0;
        while (j < archive.size() && archive[j].variant == row.variant &&
               archive[j].set_id == row.set_id &&
               archive[j].instance_index == row.instance_index) {
            const RunResult& r = archive[j].result;
            ++runs;
            if (r.best_feasible_rent) {
                ++feasible_runs;
                row.best_rent = std::max(row.best_rent, *r.best_feasible_rent);
            }
            row.mean_generations += r.generations;
            row.mean_seconds += r.seconds;
            ++j;
        }
        row.feasibility = runs ? double(feasible_runs) / runs : 0.0;
        row.mean_generations /= std::max(1, runs);
        row.mean_seconds /= std::max(1, runs);
        summary.per_instance.push_back(std::move(row));
        i = j;
    }

    i = 0;
    const auto& rows = summary.per_instance;
    while (i < rows.size()) {
        std::size_t j = i;
        SetSummaryRow set_row;
        set_row.variant = rows[i].variant;
        set_row.set_id = rows[i].set_id;
        int instances = 0;
        while (j < rows.size() && rows[j].variant == set_row.variant &&
               rows[j].set_id == set_row.set_id) {
            set_row.feasibility += rows[j].feasibility;
            set_row.rent += rows[j].best_rent;  // censored instances contribute 0
            ++instances;
            ++j;
        }
        set_row.feasibility /= std::max(1, instances);
        set_row.rent /= std::max(1, instances);
        summary.per_set.push_back(std::move(set_row));
        i = j;
    }
    return summary;
}

void write_summary_csv(const ExperimentSummary& summary, std::ostream& out) {
    out << "variant,set,instance,feasibility,best_rent,generations,seconds\n";
    for (const auto& r : summary.per_instance)
        out << r.variant << ',' << r.set_id << ',' << r.instance_index << ','
            << fmt("%.4f", r.feasibility) << ',' << fmt("%.6f", r.best_rent) << ','
            << fmt("%.2f", r.mean_generations) << ',' << fmt("%.3f", r.mean_seconds) << "\n";
}

void write_set_summary_csv(const ExperimentSummary& summary, std::ostream& out) {
    out << "variant,set,feasibility,rent\n";
    for (const auto& r : summary.per_set)
        out << r.variant << ',' << r.set_id << ',' << fmt("%.4f", r.feasibility) << ','
            << fmt("%.6f", r.rent) << "\n";
}

void write_runs_csv(const Archive& archive, std::ostream& out) {
    out << "variant,set,instance,run,seed,weight_limit,generations,feasible,best_rent,"
           "seconds,w1,w2,w3,w4,w5,w6,c1,pmx,pux,rate\n";
    for (const auto& rec : archive) {
        const RunResult& r = rec.result;
        const AuxSnapshot aux = r.aux_trace.empty() ? AuxSnapshot{} : r.aux_trace.back();
        out << rec.variant << ',' << rec.set_id << ',' << rec.instance_index << ','
            << rec.run_index << ',' << rec.seed << ',' << fmt("%.0f", rec.weight_limit) << ','
            << r.generations << ',' << (r.best_feasible_rent ? 1 : 0) << ','
            << fmt("%.6f", r.best_feasible_rent.value_or(0.0)) << ',' << fmt("%.3f", r.seconds);
        for (int g = 0; g < 6; ++g) out << ',' << fmt("%.4f", aux.mean_weights[g]);
        for (int t = 0; t < 3; ++t) out << ',' << fmt("%.6f", aux.tag_shares[t]);
        out << ',' << fmt("%.6f", aux.mean_mutation_rate) << "\n";
    }
}

void write_fitness_trace_csv(const Archive& archive, std::ostream& out) {
    out << "variant,set,instance,run,generation,best_fitness\n";
    for (const auto& rec : archive)
        for (std::size_t g = 0; g < rec.result.best_fitness_trace.size(); ++g)
            out << rec.variant << ',' << rec.set_id << ',' << rec.instance_index << ','
                << rec.run_index << ',' << g << ','
                << fmt("%.6f", rec.result.best_fitness_trace[g]) << "\n";
}

void write_aux_trace_csv(const Archive& archive, std::ostream& out) {
    out << "variant,set,instance,run,generation,w1,w2,w3,w4,w5,w6,c1,pmx,pux,rate\n";
    for (const auto& rec : archive) {
        if (!rec.has_weights) continue;
        for (std::size_t g = 0; g < rec.result.aux_trace.size(); ++g) {
            const AuxSnapshot& s = rec.result.aux_trace[g];
            out << rec.variant << ',' << rec.set_id << ',' << rec.instance_index << ','
                << rec.run_index << ',' << g;
            for (int w = 0; w < 6; ++w) out << ',' << fmt("%.4f", s.mean_weights[w]);
            for (int t = 0; t < 3; ++t) out << ',' << fmt("%.6f", s.tag_shares[t]);
            out << ',' << fmt("%.6f", s.mean_mutation_rate) << "\n";
        }
    }
}

void export_weights_by_set(const Archive& archive, std::ostream& out, std::ostream* warn) {
    // Mean final-generation weights per (set, initialization limit).
    std::map<std::pair<int, long long>, std::pair<std::array<double, 6>, int>> acc;
    for (const auto& rec : archive) {
        if (!rec.has_weights || rec.result.aux_trace.empty()) continue;
        auto& [sums, count] = acc[{rec.set_id, static_cast<long long>(rec.weight_limit)}];
        for (int g = 0; g < 6; ++g) sums[g] += rec.result.aux_trace.back().mean_weights[g];
        ++count;
    }
    out << "set,limit,w1,w2,w3,w4,w5,w6\n";
    if (acc.empty()) {
        if (warn)
            *warn << "warning: archive holds no weight-gene runs; weights report is empty\n";
        return;
    }
    for (const auto& [key, value] : acc) {
        out << key.first << ',' << key.second;
        for (int g = 0; g < 6; ++g) out << ',' << fmt("%.4f", value.first[g] / value.second);
        out << "\n";
    }
}

void export_crossover_shares(const Archive& archive, std::ostream& out, std::ostream* warn) {
    // Mean tag shares per (set, instance, generation) over runs.
    std::map<std::tuple<int, int, int>, std::pair<std::array<double, 3>, int>> acc;
    for (const auto& rec : archive) {
        if (!rec.has_tags) continue;
        for (std::size_t g = 0; g < rec.result.aux_trace.size(); ++g) {
            auto& [sums, count] =
                acc[{rec.set_id, rec.instance_index, static_cast<int>(g)}];
            for (int t = 0; t < 3; ++t) sums[t] += rec.result.aux_trace[g].tag_shares[t];
            ++count;
        }
    }
    out << "set,instance,generation,c1,pmx,pux\n";
    if (acc.empty()) {
        if (warn)
            *warn << "warning: archive holds no crossover-tag runs; shares report is empty\n";
        return;
    }
    for (const auto& [key, value] : acc) {
        out << std::get<0>(key) << ',' << std::get<1>(key) << ',' << std::get<2>(key);
        for (int t = 0; t < 3; ++t) out << ',' << fmt("%.6f", value.first[t] / value.second);
        out << "\n";
    }
}

void export_convergence(const Archive& archive, std::ostream& out) {
    write_fitness_trace_csv(archive, out);
}

void write_archive_files(const Archive& archive, const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    const ExperimentSummary summary = summarize(archive);
    auto open = [&out_dir](const char* name) {
        std::ofstream out(fs::path(out_dir) / name);
        if (!out) throw std::runtime_error(std::string("cannot write ") + name);
        return out;
    };
    {
        auto out = open("summary.csv");
        write_summary_csv(summary, out);
    }
    {
        auto out = open("summary_sets.csv");
        write_set_summary_csv(summary, out);
    }
    {
        auto out = open("runs.csv");
        write_runs_csv(archive, out);
    }
    {
        auto out = open("trace_fitness.csv");
        write_fitness_trace_csv(archive, out);
    }
    {
        auto out = open("trace_aux.csv");
        write_aux_trace_csv(archive, out);
    }
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(field);
    return fields;
}

}  // namespace

Archive read_archive_files(const std::string& dir) {
    namespace fs = std::filesystem;
    std::ifstream runs(fs::path(dir) / "runs.csv");
    if (!runs) throw std::runtime_error("read_archive_files: missing runs.csv in " + dir);

    Archive archive;
    std::map<std::tuple<std::string, int, int, int>, std::size_t> index;
    std::string line;
    std::getline(runs, line);  // header
    while (std::getline(runs, line)) {
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != 20) throw std::runtime_error("runs.csv: malformed row: " + line);
        RunRecord rec;
        rec.variant = f[0];
        rec.set_id = std::stoi(f[1]);
        rec.instance_index = std::stoi(f[2]);
        rec.run_index = std::stoi(f[3]);
        rec.seed = std::stoull(f[4]);
        rec.weight_limit = std::stod(f[5]);
        rec.result.generations = std::stoi(f[6]);
        if (std::stoi(f[7]) != 0) rec.result.best_feasible_rent = std::stod(f[8]);
        rec.result.seconds = std::stod(f[9]);
        rec.has_weights = rec.weight_limit > 0.0;
        index[{rec.variant, rec.set_id, rec.instance_index, rec.run_index}] = archive.size();
        archive.push_back(std::move(rec));
    }

    std::ifstream fitness(fs::path(dir) / "trace_fitness.csv");
    if (fitness) {
        std::getline(fitness, line);
        while (std::getline(fitness, line)) {
            if (line.empty()) continue;
            const auto f = split_csv_line(line);
            if (f.size() != 6) throw std::runtime_error("trace_fitness.csv: malformed row");
            const auto it =
                index.find({f[0], std::stoi(f[1]), std::stoi(f[2]), std::stoi(f[3])});
            if (it == index.end()) continue;
            archive[it->second].result.best_fitness_trace.push_back(std::stod(f[5]));
        }
    }

    std::ifstream aux(fs::path(dir) / "trace_aux.csv");
    if (aux) {
        std::getline(aux, line);
        while (std::getline(aux, line)) {
            if (line.empty()) continue;
            const auto f = split_csv_line(line);
            if (f.size() != 15) throw std::runtime_error("trace_aux.csv: malformed row");
            const auto it =
                index.find({f[0], std::stoi(f[1]), std::stoi(f[2]), std::stoi(f[3])});
            if (it == index.end()) continue;
            AuxSnapshot s;
            for (int g = 0; g < 6; ++g) s.mean_weights[g] = std::stod(f[5 + g]);
            for (int t = 0; t < 3; ++t) s.tag_shares[t] = std::stod(f[11 + t]);
            s.mean_mutation_rate = std::stod(f[14]);
            auto& rec = archive[it->second];
            rec.result.aux_trace.push_back(s);
            if (s.tag_shares[0] + s.tag_shares[1] + s.tag_shares[2] > 0.0) rec.has_tags = true;
            if (s.mean_mutation_rate > 0.0) rec.has_rates = true;
        }
    }
    return archive;
}

LoadReport load_instances(const std::string& data_dir, const std::vector<int>& sets,
                          const std::vector<int>& indices) {
    namespace fs = std::filesystem;
    LoadReport report;
    for (int set : sets) {
        for (int idx : indices) {
            const fs::path path = fs::path(data_dir) / instance_file_name(set, idx);
            if (!fs::exists(path)) {
                report.errors.push_back("missing instance file: " + path.string());
                continue;
            }
            try {
                InstanceEntry entry;
                entry.set_id = set;
                entry.instance_index = idx;
                entry.instance = read_instance(path.string());
                report.instances.push_back(std::move(entry));
            } catch (const std::exception& e) {
                report.errors.push_back(e.what());
            }
        }
    }
    return report;
}

BruteForceResult brute_force_best(const MallInstance& inst) {
    double combos = std::pow(double(inst.num_types), double(inst.num_locations));
    if (combos > 1.5e7)
        throw std::invalid_argument("brute_force_best: instance too large to enumerate");

    BruteForceResult result;
    Layout layout(inst.num_locations, 0);
    while (true) {
        const DerivedCounts dc = derive_counts(layout, inst);
        const double rent = compute_rent(dc, inst);
        ++result.layouts_checked;
        result.best_unconstrained_rent = std::max(result.best_unconstrained_rent, rent);
        if (assess_constraints(dc, inst).total == 0) {
            if (!result.any_feasible || rent > result.best_feasible_rent) {
                result.any_feasible = true;
                result.best_feasible_rent = rent;
                result.best_layout = layout;
            }
        }
        int pos = 0;
        while (pos < inst.num_locations && ++layout[pos] == inst.num_types) {
            layout[pos] = 0;
            ++pos;
        }
        if (pos == inst.num_locations) break;
    }
    return result;
}

}  // namespace mallga

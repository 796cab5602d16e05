#pragma once

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "mallga/rng.hpp"

namespace mallga {

struct GAConfig {
    int population_size = 100;
    double elite_fraction = 0.10;
    int stall_generations = 30;
    double selection_pressure = 2.0;  // slope of the linear ranking
    double penalty_weight = 20.0;
    std::uint64_t seed = 0;
};

struct Evaluation {
    double fitness = 0.0;
    double rent = 0.0;
    bool feasible = false;
};

// Population statistics of the self-adaptive genes, captured per generation.
struct AuxSnapshot {
    std::array<double, 6> mean_weights = {0, 0, 0, 0, 0, 0};
    std::array<double, 3> tag_shares = {0, 0, 0};  // C1, PMX, PUX
    double mean_mutation_rate = 0.0;
};

struct RunResult {
    std::optional<double> best_feasible_rent;
    std::vector<int> best_feasible_layout;   // empty when no feasible layout was found
    std::vector<double> best_fitness_trace;  // one entry per generation
    int generations = 0;
    std::vector<AuxSnapshot> aux_trace;  // empty for variants without aux genes
    double seconds = 0.0;
};

template <typename Chromosome>
struct GAOutcome {
    RunResult result;
    std::optional<Chromosome> best_feasible;
};

// Linear rank selection over a population sorted ascending by fitness:
// rank r (1 = worst of n) is drawn with probability proportional to
// 1 + (pressure - 1) * (r - 1) / (n - 1).
class RankSelector {
public:
    RankSelector(int n, double pressure) : cumulative_(n) {
        double acc = 0.0;
        for (int r = 1; r <= n; ++r) {
            acc += n == 1 ? 1.0 : 1.0 + (pressure - 1.0) * (r - 1) / (n - 1);
            cumulative_[r - 1] = acc;
        }
    }

    // 0-based index into the ascending order (0 = worst).
    int pick(Rng& rng) const {
        const double u = rng.real01() * cumulative_.back();
        const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
        return static_cast<int>(std::min<std::ptrdiff_t>(it - cumulative_.begin(),
                                                         cumulative_.size() - 1));
    }

    const std::vector<double>& cumulative() const { return cumulative_; }

private:
    std::vector<double> cumulative_;
};

// True once the best raw fitness has not strictly improved for
// stall_generations completed generations.
inline bool has_converged(const std::vector<double>& best_fitness_trace, int stall_generations) {
    if (best_fitness_trace.empty()) return false;
    std::size_t last_improvement = 0;
    double best = best_fitness_trace[0];
    for (std::size_t i = 1; i < best_fitness_trace.size(); ++i) {
        if (best_fitness_trace[i] > best) {
            best = best_fitness_trace[i];
            last_improvement = i;
        }
    }
    return best_fitness_trace.size() - 1 - last_improvement >=
           static_cast<std::size_t>(stall_generations);
}

template <typename Problem>
concept ReportsAuxStats = requires(const Problem& p,
                                   const std::vector<typename Problem::Chromosome>& pop) {
    { p.aux_stats(pop) } -> std::convertible_to<AuxSnapshot>;
};

// Generational GA: rank-based selection, 10% elitism, stop after 30
// generations without improvement. A run is a pure function of
// (problem, config.seed).
template <typename Problem>
GAOutcome<typename Problem::Chromosome> run_ga(const Problem& problem, const GAConfig& config) {
    using Chromosome = typename Problem::Chromosome;
    const auto t0 = std::chrono::steady_clock::now();

    const int n = config.population_size;
    Rng rng = Rng(config.seed).substream("evolve");

    std::vector<Chromosome> pop = problem.initial_population(n, Rng(config.seed));
    std::vector<Evaluation> evals(pop.size());

    GAOutcome<Chromosome> outcome;
    RunResult& result = outcome.result;
    auto note = [&outcome, &result](const Evaluation& e, const Chromosome& c) {
        if (e.feasible && (!result.best_feasible_rent || e.rent > *result.best_feasible_rent)) {
            result.best_feasible_rent = e.rent;
            outcome.best_feasible = c;
        }
    };
    for (std::size_t i = 0; i < pop.size(); ++i) {
        evals[i] = problem.evaluate(pop[i]);
        note(evals[i], pop[i]);
    }

    const int elite_count = std::max(1, static_cast<int>(n * config.elite_fraction));
    const RankSelector selector(n, config.selection_pressure);

    while (true) {
        // Ascending fitness order; index breaks ties so runs are reproducible.
        std::vector<int> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&evals](int a, int b) {
            return evals[a].fitness != evals[b].fitness ? evals[a].fitness < evals[b].fitness
                                                        : a < b;
        });

        result.best_fitness_trace.push_back(evals[order.back()].fitness);
        if constexpr (ReportsAuxStats<Problem>) result.aux_trace.push_back(problem.aux_stats(pop));
        if (has_converged(result.best_fitness_trace, config.stall_generations)) break;

        std::vector<Chromosome> next;
        std::vector<Evaluation> next_evals;
        next.reserve(n);
        next_evals.reserve(n);
        for (int e = 0; e < elite_count; ++e) {
            const int idx = order[n - 1 - e];
            next.push_back(pop[idx]);
            next_evals.push_back(evals[idx]);
        }

        while (static_cast<int>(next.size()) < n) {
            const int ra = selector.pick(rng);
            int rb = ra;
            while (rb == ra) rb = selector.pick(rng);
            // ranks: 1 = worst .. n = best
            const int rank_a = ra + 1, rank_b = rb + 1;
            const bool a_fitter = rank_a > rank_b;
            const Chromosome& fitter = pop[order[a_fitter ? ra : rb]];
            const Chromosome& weaker = pop[order[a_fitter ? rb : ra]];
            const int rank_fit = a_fitter ? rank_a : rank_b;
            const int rank_weak = a_fitter ? rank_b : rank_a;

            auto [child1, child2] =
                problem.offspring(fitter, rank_fit, weaker, rank_weak, rng);
            if (static_cast<int>(next.size()) + 2 <= n) {
                next.push_back(std::move(child1));
                next.push_back(std::move(child2));
            } else {
                next.push_back(rng.bernoulli(0.5) ? std::move(child1) : std::move(child2));
            }
        }
        for (std::size_t i = elite_count; i < next.size(); ++i) {
            next_evals.push_back(problem.evaluate(next[i]));
            note(next_evals.back(), next[i]);
        }

        pop = std::move(next);
        evals = std::move(next_evals);
    }

    result.generations = static_cast<int>(result.best_fitness_trace.size());
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return outcome;
}

}  // namespace mallga

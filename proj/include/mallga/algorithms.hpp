#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mallga/decoder.hpp"
#include "mallga/ga_engine.hpp"
#include "mallga/mall_model.hpp"
#include "mallga/operators.hpp"

namespace mallga {

enum class VariantKind {
    kDirect,        // penalty GA on the layout itself
    kIndirectFixed, // permutation + decoder with a fixed weight preset
    kIndirectAuto,  // self-adaptive decoder weights
    kAutoCross,     // + self-adaptive crossover choice
    kAutoCrossMut,  // + self-adaptive mutation rate
};

struct AlgorithmVariant {
    VariantKind kind = VariantKind::kDirect;
    std::string name = "direct";
    DecoderWeights preset;  // fixed indirect variants only
    WeightStrategy weight_strategy = WeightStrategy::kRankWeighted;
    double weight_init_limit = 10000.0;

    bool indirect() const { return kind != VariantKind::kDirect; }
    bool has_weight_genes() const {
        return kind == VariantKind::kIndirectAuto || kind == VariantKind::kAutoCross ||
               kind == VariantKind::kAutoCrossMut;
    }
    bool has_tag_genes() const {
        return kind == VariantKind::kAutoCross || kind == VariantKind::kAutoCrossMut;
    }
    bool has_rate_genes() const { return kind == VariantKind::kAutoCrossMut; }
};

// Stable CLI identifiers: direct, ind-low, ind-med, ind-high, ind-auto,
// ind-auto-cross, ind-auto-cross-mut. Throws on anything else.
AlgorithmVariant parse_variant(const std::string& name);
const std::vector<std::string>& variant_names();

GAConfig build_config(const AlgorithmVariant& variant, std::uint64_t seed);

// Shared operator parameters (Table 1 of the study this reproduces).
inline constexpr double kCrossoverP = 0.66;
inline constexpr double kMutationRate = 0.015;
inline constexpr double kPenaltyWeight = 20.0;
inline constexpr double kMutationRateInitHi = 0.05;
inline constexpr int kDirectPopulation = 1000;
inline constexpr int kIndirectPopulation = 100;

class DirectProblem {
public:
    using Chromosome = Layout;

    DirectProblem(const MallInstance& inst, double penalty_weight)
        : inst_(&inst), penalty_weight_(penalty_weight) {}

    std::vector<Layout> initial_population(int n, Rng base) const;
    Evaluation evaluate(const Layout& layout) const;
    std::pair<Layout, Layout> offspring(const Layout& fitter, int rank_fitter,
                                        const Layout& weaker, int rank_weaker, Rng& rng) const;

private:
    const MallInstance* inst_;
    double penalty_weight_;
};

struct IndirectChromosome {
    Permutation perm;
    AuxGenes aux;
};

class IndirectProblem {
public:
    using Chromosome = IndirectChromosome;

    IndirectProblem(const MallInstance& inst, const AlgorithmVariant& variant,
                    double penalty_weight)
        : inst_(&inst), variant_(variant), penalty_weight_(penalty_weight) {}

    std::vector<Chromosome> initial_population(int n, Rng base) const;
    Evaluation evaluate(const Chromosome& c) const;
    std::pair<Chromosome, Chromosome> offspring(const Chromosome& fitter, int rank_fitter,
                                                const Chromosome& weaker, int rank_weaker,
                                                Rng& rng) const;
    AuxSnapshot aux_stats(const std::vector<Chromosome>& pop) const;

    const DecoderWeights& weights_in_effect(const Chromosome& c) const {
        return variant_.has_weight_genes() ? c.aux.weights : variant_.preset;
    }

private:
    const MallInstance* inst_;
    AlgorithmVariant variant_;
    double penalty_weight_;
};

Evaluation evaluate_layout(const Layout& layout, const MallInstance& inst, double penalty_weight);

// Runs one GA of the given variant on the instance. The run is a pure
// function of (variant, instance, seed).
RunResult run_variant(const AlgorithmVariant& variant, const MallInstance& inst,
                      std::uint64_t seed);

}  // namespace mallga

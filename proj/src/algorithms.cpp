#include "mallga/algorithms.hpp"

#include <numeric>
#include <stdexcept>

namespace mallga {

AlgorithmVariant parse_variant(const std::string& name) {
    AlgorithmVariant v;
    v.name = name;
    if (name == "direct") {
        v.kind = VariantKind::kDirect;
    } else if (name == "ind-low") {
        v.kind = VariantKind::kIndirectFixed;
        v.preset = DecoderWeights::low();
    } else if (name == "ind-med") {
        v.kind = VariantKind::kIndirectFixed;
        v.preset = DecoderWeights::medium();
    } else if (name == "ind-high") {
        v.kind = VariantKind::kIndirectFixed;
        v.preset = DecoderWeights::high();
    } else if (name == "ind-auto") {
        v.kind = VariantKind::kIndirectAuto;
    } else if (name == "ind-auto-cross") {
        v.kind = VariantKind::kAutoCross;
    } else if (name == "ind-auto-cross-mut") {
        v.kind = VariantKind::kAutoCrossMut;
    } else {
        throw std::invalid_argument("unknown algorithm variant: " + name);
    }
    return v;
}

const std::vector<std::string>& variant_names() {
    static const std::vector<std::string> names = {
        "direct",   "ind-low",        "ind-med",           "ind-high",
        "ind-auto", "ind-auto-cross", "ind-auto-cross-mut"};
    return names;
}

GAConfig build_config(const AlgorithmVariant& variant, std::uint64_t seed) {
    GAConfig config;
    config.population_size =
        variant.kind == VariantKind::kDirect ? kDirectPopulation : kIndirectPopulation;
    config.penalty_weight = kPenaltyWeight;
    config.seed = seed;
    return config;
}

Evaluation evaluate_layout(const Layout& layout, const MallInstance& inst,
                           double penalty_weight) {
    const DerivedCounts dc = derive_counts(layout, inst);
    Evaluation e;
    e.rent = compute_rent(dc, inst);
    const int total = assess_constraints(dc, inst).total;
    e.feasible = total == 0;
    e.fitness = e.rent - penalty_weight * total;
    return e;
}

// --- direct ---

std::vector<Layout> DirectProblem::initial_population(int n, Rng base) const {
    Rng init = base.substream("init");
    std::vector<Layout> pop(n);
    for (auto& layout : pop) {
        layout.resize(inst_->num_locations);
        for (auto& gene : layout) gene = static_cast<int>(init.below(inst_->num_types));
    }
    return pop;
}

Evaluation DirectProblem::evaluate(const Layout& layout) const {
    return evaluate_layout(layout, *inst_, penalty_weight_);
}

std::pair<Layout, Layout> DirectProblem::offspring(const Layout& fitter, int, const Layout& weaker,
                                                   int, Rng& rng) const {
    auto [c1, c2] = uniform_crossover(kCrossoverP, fitter, weaker, rng);
    c1 = gene_mutation(kMutationRate, c1, inst_->num_types, rng);
    c2 = gene_mutation(kMutationRate, c2, inst_->num_types, rng);
    return {std::move(c1), std::move(c2)};
}

// --- indirect ---

std::vector<IndirectChromosome> IndirectProblem::initial_population(int n, Rng base) const {
    // Permutations come from the "init" stream so every indirect variant sees
    // the same initial orderings under one seed; the extra genes use their own
    // stream (keyed by the initialization limit) to keep that alignment.
    Rng init = base.substream("init");
    std::vector<IndirectChromosome> pop(n);
    Permutation identity(inst_->num_locations);
    std::iota(identity.begin(), identity.end(), 0);
    for (auto& c : pop) {
        c.perm = identity;
        init.shuffle(c.perm);
    }

    Rng aux = base.substream("aux").substream(
        static_cast<std::uint64_t>(variant_.weight_init_limit));
    for (auto& c : pop) {
        if (variant_.has_weight_genes())
            for (int g = 0; g < 6; ++g)
                c.aux.weights[g] = aux.uniform_real(0.0, variant_.weight_init_limit);
        if (variant_.has_tag_genes()) c.aux.tag = static_cast<CrossoverTag>(aux.below(3));
        if (variant_.has_rate_genes())
            c.aux.mutation_rate = aux.uniform_real(0.0, kMutationRateInitHi);
    }
    return pop;
}

Evaluation IndirectProblem::evaluate(const Chromosome& c) const {
    return evaluate_layout(decode(c.perm, weights_in_effect(c), *inst_), *inst_, penalty_weight_);
}

namespace {

std::pair<Permutation, Permutation> apply_crossover(CrossoverTag tag, const Permutation& a,
                                                    const Permutation& b, Rng& rng) {
    switch (tag) {
        case CrossoverTag::kC1: return c1(a, b, rng);
        case CrossoverTag::kPMX: return pmx(a, b, rng);
        case CrossoverTag::kPUX: return pux(kCrossoverP, a, b, rng);
    }
    throw std::logic_error("unreachable crossover tag");
}

}  // namespace

std::pair<IndirectChromosome, IndirectChromosome> IndirectProblem::offspring(
    const Chromosome& fitter, int rank_fitter, const Chromosome& weaker, int rank_weaker,
    Rng& rng) const {
    IndirectChromosome c1{{}, {}}, c2{{}, {}};

    // The children's tags are decided before any crossover runs; each child is
    // then built by the operator its own tag names.
    if (variant_.has_tag_genes()) {
        const TagAndRate i1 =
            inherit_tag_and_rate(fitter.aux.tag, fitter.aux.mutation_rate, rank_fitter,
                                 weaker.aux.tag, weaker.aux.mutation_rate, rank_weaker, rng);
        const TagAndRate i2 =
            inherit_tag_and_rate(fitter.aux.tag, fitter.aux.mutation_rate, rank_fitter,
                                 weaker.aux.tag, weaker.aux.mutation_rate, rank_weaker, rng);
        c1.aux.tag = i1.tag;
        c2.aux.tag = i2.tag;
        if (variant_.has_rate_genes()) {
            c1.aux.mutation_rate = i1.mutation_rate;
            c2.aux.mutation_rate = i2.mutation_rate;
        }
    }

    if (c1.aux.tag == c2.aux.tag) {
        auto pair = apply_crossover(c1.aux.tag, fitter.perm, weaker.perm, rng);
        c1.perm = std::move(pair.first);
        c2.perm = std::move(pair.second);
    } else {
        c1.perm = apply_crossover(c1.aux.tag, fitter.perm, weaker.perm, rng).first;
        c2.perm = apply_crossover(c2.aux.tag, fitter.perm, weaker.perm, rng).second;
    }

    if (variant_.has_weight_genes()) {
        for (auto* child : {&c1, &c2}) {
            const DecoderWeights recombined =
                recombine_weights(variant_.weight_strategy, fitter.aux.weights,
                                  weaker.aux.weights, rank_fitter, rank_weaker, rng);
            child->aux.weights =
                mutate_weights(recombined, variant_.weight_init_limit, kMutationRate, rng);
        }
    }

    c1.perm = swap_mutation(c1.aux.mutation_rate, c1.perm, rng);
    c2.perm = swap_mutation(c2.aux.mutation_rate, c2.perm, rng);
    return {std::move(c1), std::move(c2)};
}

AuxSnapshot IndirectProblem::aux_stats(const std::vector<Chromosome>& pop) const {
    AuxSnapshot s;
    if (pop.empty() || !variant_.has_weight_genes()) return s;
    for (const auto& c : pop) {
        for (int g = 0; g < 6; ++g) s.mean_weights[g] += c.aux.weights[g];
        s.tag_shares[static_cast<int>(c.aux.tag)] += 1.0;
        s.mean_mutation_rate += c.aux.mutation_rate;
    }
    for (auto& w : s.mean_weights) w /= pop.size();
    for (auto& t : s.tag_shares) t /= pop.size();
    s.mean_mutation_rate /= pop.size();
    return s;
}

RunResult run_variant(const AlgorithmVariant& variant, const MallInstance& inst,
                      std::uint64_t seed) {
    const GAConfig config = build_config(variant, seed);
    if (variant.kind == VariantKind::kDirect) {
        auto outcome = run_ga(DirectProblem(inst, config.penalty_weight), config);
        if (outcome.best_feasible)
            outcome.result.best_feasible_layout = std::move(*outcome.best_feasible);
        return std::move(outcome.result);
    }
    const IndirectProblem problem(inst, variant, config.penalty_weight);
    auto outcome = run_ga(problem, config);
    if (outcome.best_feasible)
        outcome.result.best_feasible_layout =
            decode(outcome.best_feasible->perm, problem.weights_in_effect(*outcome.best_feasible),
                   inst);
    return std::move(outcome.result);
}

}  // namespace mallga

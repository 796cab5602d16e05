#pragma once

#include <array>
#include <utility>
#include <vector>

#include "mallga/mall_model.hpp"
#include "mallga/rng.hpp"

namespace mallga {

// Ordering of locations; the indirect chromosome's main part.
using Permutation = std::vector<int>;

bool is_valid_permutation(const Permutation& p);

// The six decoder weights w1..w6.
struct DecoderWeights {
    enum Index {
        kMediumBonus = 0,
        kLargeBonus = 1,
        kSizeSlack = 2,
        kIdealGap = 3,
        kNewMember = 4,
        kGroupComplete = 5,
    };

    std::array<double, 6> w = {0, 0, 0, 0, 0, 0};

    double& operator[](int i) { return w[i]; }
    double operator[](int i) const { return w[i]; }
    bool operator==(const DecoderWeights&) const = default;

    static DecoderWeights low() { return {{500, 1000, 100, 200, 200, 2000}}; }
    static DecoderWeights medium() { return {{500, 1000, 250, 500, 200, 2000}}; }
    static DecoderWeights high() { return {{500, 1000, 1000, 2000, 200, 2000}}; }
};

enum class CrossoverTag { kC1 = 0, kPMX = 1, kPUX = 2 };

// Extra genes carried by the self-adaptive indirect chromosomes.
struct AuxGenes {
    DecoderWeights weights;
    CrossoverTag tag = CrossoverTag::kPUX;
    double mutation_rate = 0.015;
};

// --- layout (direct encoding) operators ---

// Per gene, child1 takes a's gene with probability p, child2 the complement.
// Callers pass the fitter parent as a.
std::pair<Layout, Layout> uniform_crossover(double p, const Layout& a, const Layout& b, Rng& rng);

// Each gene independently resampled to a uniform type with probability rate.
Layout gene_mutation(double rate, const Layout& layout, int num_types, Rng& rng);

// --- permutation operators ---

// Parameterised uniform order-based crossover: template positions drawn with
// P(1) = p keep the first parent's entries, the rest are refilled in the other
// parent's relative order.
std::pair<Permutation, Permutation> pux(double p, const Permutation& a, const Permutation& b,
                                        Rng& rng);
std::pair<Permutation, Permutation> pux_with_template(const Permutation& a, const Permutation& b,
                                                      const std::vector<char>& keep);

// Single cut point; prefix kept, suffix refilled in the other parent's order.
std::pair<Permutation, Permutation> c1(const Permutation& a, const Permutation& b, Rng& rng);
std::pair<Permutation, Permutation> c1_with_cut(const Permutation& a, const Permutation& b,
                                                int cut);

// Partially mapped crossover: the segment [lo, hi) is kept, the rest comes
// from the other parent with conflicts resolved through the mapping chain.
std::pair<Permutation, Permutation> pmx(const Permutation& a, const Permutation& b, Rng& rng);
std::pair<Permutation, Permutation> pmx_with_cuts(const Permutation& a, const Permutation& b,
                                                  int lo, int hi);

// Each position independently, with probability rate, swapped with another
// uniformly chosen position.
Permutation swap_mutation(double rate, const Permutation& perm, Rng& rng);

// --- adaptive-gene operators ---

enum class WeightStrategy {
    kRandomParent = 1,   // copy all six weights from one random parent
    kRankWeighted = 2,   // per weight, (ra*wa + rb*wb) / (ra + rb)
    kUniformBetween = 3  // per weight, uniform draw between the parents' values
};

// Ranks are 1 = worst .. N = best; higher rank means fitter.
DecoderWeights recombine_weights(WeightStrategy strategy, const DecoderWeights& wa,
                                 const DecoderWeights& wb, int rank_a, int rank_b, Rng& rng);

// Per gene with probability rate, redraw uniformly in [0, limit].
DecoderWeights mutate_weights(const DecoderWeights& w, double limit, double rate, Rng& rng);

struct TagAndRate {
    CrossoverTag tag;
    double mutation_rate;
};

// Tag from the fitter parent (tie broken by coin), rate as the rank-weighted
// average; afterwards the tag is re-randomized with the given probability.
TagAndRate inherit_tag_and_rate(CrossoverTag tag_a, double rate_a, int rank_a, CrossoverTag tag_b,
                                double rate_b, int rank_b, Rng& rng,
                                double tag_rerandomize_prob = 0.015);

}  // namespace mallga

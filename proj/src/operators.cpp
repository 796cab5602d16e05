#include "mallga/operators.hpp"

#include <algorithm>
#include <stdexcept>

namespace mallga {

bool is_valid_permutation(const Permutation& p) {
    std::vector<char> seen(p.size(), 0);
    for (int v : p) {
        if (v < 0 || v >= static_cast<int>(p.size()) || seen[v]) return false;
        seen[v] = 1;
    }
    return true;
}

namespace {

void require_same_length(std::size_t a, std::size_t b) {
    if (a != b) throw std::invalid_argument("crossover: parents have different lengths");
}

void require_permutations(const Permutation& a, const Permutation& b) {
    require_same_length(a.size(), b.size());
    if (!is_valid_permutation(a) || !is_valid_permutation(b))
        throw std::invalid_argument("crossover: parent is not a valid permutation");
}

// Fills the unkept positions of child with the values missing from it, in the
// order those values appear in donor.
void fill_in_order(Permutation& child, const std::vector<char>& kept, const Permutation& donor) {
    const std::size_t n = child.size();
    std::vector<char> used(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        if (kept[i]) used[child[i]] = 1;
    std::size_t write = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (used[donor[i]]) continue;
        while (kept[write]) ++write;
        child[write++] = donor[i];
    }
}

}  // namespace

std::pair<Layout, Layout> uniform_crossover(double p, const Layout& a, const Layout& b, Rng& rng) {
    require_same_length(a.size(), b.size());
    Layout c1 = a, c2 = b;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (rng.bernoulli(p)) {
            c2[i] = a[i];
        } else {
            c1[i] = b[i];
        }
    }
    return {std::move(c1), std::move(c2)};
}

Layout gene_mutation(double rate, const Layout& layout, int num_types, Rng& rng) {
    Layout out = layout;
    for (auto& gene : out)
        if (rng.bernoulli(rate)) gene = static_cast<int>(rng.below(num_types));
    return out;
}

std::pair<Permutation, Permutation> pux_with_template(const Permutation& a, const Permutation& b,
                                                      const std::vector<char>& keep) {
    require_permutations(a, b);
    Permutation c1 = a, c2 = b;
    fill_in_order(c1, keep, b);
    fill_in_order(c2, keep, a);
    return {std::move(c1), std::move(c2)};
}

std::pair<Permutation, Permutation> pux(double p, const Permutation& a, const Permutation& b,
                                        Rng& rng) {
    std::vector<char> keep(a.size());
    for (auto& k : keep) k = rng.bernoulli(p) ? 1 : 0;
    return pux_with_template(a, b, keep);
}

std::pair<Permutation, Permutation> c1_with_cut(const Permutation& a, const Permutation& b,
                                                int cut) {
    std::vector<char> keep(a.size(), 0);
    std::fill(keep.begin(), keep.begin() + cut, 1);
    return pux_with_template(a, b, keep);
}

std::pair<Permutation, Permutation> c1(const Permutation& a, const Permutation& b, Rng& rng) {
    return c1_with_cut(a, b, static_cast<int>(rng.below(a.size() + 1)));
}

std::pair<Permutation, Permutation> pmx_with_cuts(const Permutation& a, const Permutation& b,
                                                  int lo, int hi) {
    require_permutations(a, b);
    const int n = static_cast<int>(a.size());

    auto make_child = [&](const Permutation& keep_parent, const Permutation& other) {
        Permutation child(n, -1);
        std::vector<int> pos_in_other(n);
        for (int i = 0; i < n; ++i) pos_in_other[other[i]] = i;
        std::vector<char> in_child(n, 0);

        for (int i = lo; i < hi; ++i) {
            child[i] = keep_parent[i];
            in_child[child[i]] = 1;
        }
        // Values of the other parent's segment displaced by the copy are
        // re-homed through the mapping chain.
        for (int i = lo; i < hi; ++i) {
            int value = other[i];
            if (in_child[value]) continue;
            int slot = i;
            do {
                slot = pos_in_other[keep_parent[slot]];
            } while (slot >= lo && slot < hi);
            child[slot] = value;
            in_child[value] = 1;
        }
        for (int i = 0; i < n; ++i)
            if (child[i] == -1) child[i] = other[i];
        return child;
    };

    return {make_child(a, b), make_child(b, a)};
}

std::pair<Permutation, Permutation> pmx(const Permutation& a, const Permutation& b, Rng& rng) {
    const int n = static_cast<int>(a.size());
    int lo = static_cast<int>(rng.below(n + 1));
    int hi = static_cast<int>(rng.below(n + 1));
    if (lo > hi) std::swap(lo, hi);
    return pmx_with_cuts(a, b, lo, hi);
}

Permutation swap_mutation(double rate, const Permutation& perm, Rng& rng) {
    Permutation out = perm;
    const std::size_t n = out.size();
    if (n < 2) return out;
    for (std::size_t i = 0; i < n; ++i) {
        if (!rng.bernoulli(rate)) continue;
        std::size_t j = rng.below(n - 1);
        if (j >= i) ++j;
        std::swap(out[i], out[j]);
    }
    return out;
}

DecoderWeights recombine_weights(WeightStrategy strategy, const DecoderWeights& wa,
                                 const DecoderWeights& wb, int rank_a, int rank_b, Rng& rng) {
    DecoderWeights child;
    switch (strategy) {
        case WeightStrategy::kRandomParent:
            child = rng.bernoulli(0.5) ? wa : wb;
            break;
        case WeightStrategy::kRankWeighted: {
            const double ra = rank_a, rb = rank_b;
            for (int g = 0; g < 6; ++g) child[g] = (ra * wa[g] + rb * wb[g]) / (ra + rb);
            break;
        }
        case WeightStrategy::kUniformBetween:
            for (int g = 0; g < 6; ++g)
                child[g] = rng.uniform_real(std::min(wa[g], wb[g]), std::max(wa[g], wb[g]));
            break;
    }
    return child;
}

DecoderWeights mutate_weights(const DecoderWeights& w, double limit, double rate, Rng& rng) {
    DecoderWeights out = w;
    for (int g = 0; g < 6; ++g)
        if (rng.bernoulli(rate)) out[g] = rng.uniform_real(0.0, limit);
    return out;
}

TagAndRate inherit_tag_and_rate(CrossoverTag tag_a, double rate_a, int rank_a, CrossoverTag tag_b,
                                double rate_b, int rank_b, Rng& rng,
                                double tag_rerandomize_prob) {
    TagAndRate out;
    if (rank_a == rank_b) {
        out.tag = rng.bernoulli(0.5) ? tag_a : tag_b;
    } else {
        out.tag = rank_a > rank_b ? tag_a : tag_b;
    }
    out.mutation_rate = (rank_a * rate_a + rank_b * rate_b) / double(rank_a + rank_b);
    if (rng.bernoulli(tag_rerandomize_prob))
        out.tag = static_cast<CrossoverTag>(rng.below(3));
    return out;
}

}  // namespace mallga

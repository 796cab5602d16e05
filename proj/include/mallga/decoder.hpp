#pragma once

#include <array>
#include <vector>

#include "mallga/mall_model.hpp"
#include "mallga/operators.hpp"

namespace mallga {

// Incrementally maintained tallies of a partial layout, kept consistent with
// derive_counts recomputed from scratch.
struct DecoderState {
    explicit DecoderState(const MallInstance& inst);

    const MallInstance* inst;
    Layout partial;                            // -1 where unassigned
    std::vector<int> locations_per_type_area;  // n_ik
    std::vector<int> shops_per_type;           // N_i
    std::array<int, 3> size_tally = {0, 0, 0};
    std::vector<int> present_members;          // [group * num_areas + area]

    int n(int type, int area) const {
        return locations_per_type_area[static_cast<std::size_t>(type) * inst->num_areas + area];
    }
    void place(int type, int location);
};

// The six scoring terms of one candidate placement, before weighting.
struct ScoreTerms {
    int medium_bonus = 0;   // B_m
    int large_bonus = 0;    // B_l
    int size_slack = 0;     // S, may be negative
    int ideal_gap = 0;      // I
    int new_member = 0;     // M
    int complete_groups = 0;  // G
    double fixed_rent = 0.0;
};

ScoreTerms score_terms(int type, int location, const DecoderState& state);

// s_ij = w1*Bm + w2*Bl + w3*S + w4*I + w5*M + w6*G + fixed rent
double score_candidate(int type, int location, const DecoderState& state,
                       const DecoderWeights& w);

struct DecodeStep {
    int location;
    int type;
};

// Fills locations in permutation order, placing at each the admissible type
// with the highest score (first index on ties). Types already at their maximum
// shop count are skipped; if every type is at its maximum the best-scoring
// type is placed anyway so the layout is always complete.
Layout decode(const Permutation& perm, const DecoderWeights& w, const MallInstance& inst);
Layout decode(const Permutation& perm, const DecoderWeights& w, const MallInstance& inst,
              std::vector<DecodeStep>* trace);

}  // namespace mallga

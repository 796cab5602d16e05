#include "mallga/decoder.hpp"

#include <algorithm>
#include <stdexcept>

namespace mallga {

DecoderState::DecoderState(const MallInstance& instance)
    : inst(&instance),
      partial(instance.num_locations, -1),
      locations_per_type_area(static_cast<std::size_t>(instance.num_types) * instance.num_areas, 0),
      shops_per_type(instance.num_types, 0),
      present_members(instance.groups.size() * instance.num_areas, 0) {}

void DecoderState::place(int type, int location) {
    const int area = inst->area_of_location[location];
    auto& n_ik = locations_per_type_area[static_cast<std::size_t>(type) * inst->num_areas + area];

    partial[location] = type;
    switch (n_ik % 3) {
        case 0:  // new small shop
            ++size_tally[kSmall];
            ++shops_per_type[type];
            break;
        case 1:  // small merges into a medium
            --size_tally[kSmall];
            ++size_tally[kMedium];
            break;
        case 2:  // medium merges into a large
            --size_tally[kMedium];
            ++size_tally[kLarge];
            break;
    }
    if (n_ik == 0)
        for (int g : inst->groups_of_type[type])
            ++present_members[static_cast<std::size_t>(g) * inst->num_areas + area];
    ++n_ik;
}

ScoreTerms score_terms(int type, int location, const DecoderState& state) {
    const MallInstance& inst = *state.inst;
    const int area = inst.area_of_location[location];
    const int n_before = state.n(type, area);

    ScoreTerms t;
    // Size the placement would create, and the resulting shop-count change.
    int created;
    int shops_after = state.shops_per_type[type];
    switch (n_before % 3) {
        case 0:
            created = kSmall;
            ++shops_after;
            break;
        case 1:
            created = kMedium;
            t.medium_bonus = 1;
            break;
        default:
            created = kLarge;
            t.large_bonus = 1;
            break;
    }
    t.size_slack = inst.size_cap(created) - state.size_tally[created] - 1;
    t.ideal_gap = inst.type_ideal[type] - shops_after;

    if (n_before == 0) {
        for (int g : inst.groups_of_type[type]) {
            const int present =
                state.present_members[static_cast<std::size_t>(g) * inst.num_areas + area];
            const int m = 10 - static_cast<int>(inst.groups[g].size()) + present;
            t.new_member = std::max(t.new_member, m);
            if (present + 1 == static_cast<int>(inst.groups[g].size())) ++t.complete_groups;
        }
    } else {
        for (int g : inst.groups_of_type[type]) {
            const int present =
                state.present_members[static_cast<std::size_t>(g) * inst.num_areas + area];
            if (present == static_cast<int>(inst.groups[g].size())) ++t.complete_groups;
        }
    }
    t.fixed_rent = inst.fixed_rent_at(type, area);
    return t;
}

double score_candidate(int type, int location, const DecoderState& state,
                       const DecoderWeights& w) {
    const ScoreTerms t = score_terms(type, location, state);
    return w[0] * t.medium_bonus + w[1] * t.large_bonus + w[2] * t.size_slack +
           w[3] * t.ideal_gap + w[4] * t.new_member + w[5] * t.complete_groups + t.fixed_rent;
}

Layout decode(const Permutation& perm, const DecoderWeights& w, const MallInstance& inst,
              std::vector<DecodeStep>* trace) {
    if (static_cast<int>(perm.size()) != inst.num_locations)
        throw std::invalid_argument("decode: permutation length does not match instance");
    if (!is_valid_permutation(perm))
        throw std::invalid_argument("decode: not a valid permutation");

    DecoderState state(inst);
    for (int location : perm) {
        int best_type = -1;
        double best_score = 0.0;
        for (int type = 0; type < inst.num_types; ++type) {
            if (state.shops_per_type[type] >= inst.type_max[type]) continue;
            const double s = score_candidate(type, location, state, w);
            if (best_type < 0 || s > best_score) {
                best_type = type;
                best_score = s;
            }
        }
        if (best_type < 0) {
            // Every type is at its maximum; place the best-scoring one anyway
            // and leave the judgement to the penalty function.
            for (int type = 0; type < inst.num_types; ++type) {
                const double s = score_candidate(type, location, state, w);
                if (best_type < 0 || s > best_score) {
                    best_type = type;
                    best_score = s;
                }
            }
        }
        state.place(best_type, location);
        if (trace) trace->push_back({location, best_type});
    }
    return state.partial;
}

Layout decode(const Permutation& perm, const DecoderWeights& w, const MallInstance& inst) {
    return decode(perm, w, inst, nullptr);
}

}  // namespace mallga

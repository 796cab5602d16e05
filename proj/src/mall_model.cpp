#include "mallga/mall_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mallga {

void MallInstance::validate() const {
    auto fail = [](const std::string& msg) { throw std::invalid_argument("MallInstance: " + msg); };

    if (num_locations <= 0) fail("num_locations must be positive");
    if (num_areas <= 0) fail("num_areas must be positive");
    if (num_types <= 0) fail("num_types must be positive");
    if (static_cast<int>(area_of_location.size()) != num_locations)
        fail("area_of_location length mismatch");
    for (int a : area_of_location)
        if (a < 0 || a >= num_areas) fail("location assigned to invalid area");
    if (static_cast<int>(area_attractiveness.size()) != num_areas)
        fail("area_attractiveness length mismatch");
    for (double a : area_attractiveness)
        if (!(a >= 0.0) || !std::isfinite(a)) fail("area attractiveness must be finite and non-negative");

    if (static_cast<int>(type_min.size()) != num_types ||
        static_cast<int>(type_ideal.size()) != num_types ||
        static_cast<int>(type_max.size()) != num_types ||
        static_cast<int>(type_sales_rate.size()) != num_types)
        fail("per-type array length mismatch");
    if (fixed_rent.size() != static_cast<std::size_t>(num_types) * num_areas)
        fail("fixed_rent size mismatch");

    long long cap_sum = 0;
    for (int i = 0; i < num_types; ++i) {
        if (!(0 <= type_min[i] && type_min[i] <= type_ideal[i] && type_ideal[i] <= type_max[i]))
            fail("type " + std::to_string(i) + ": need 0 <= min <= ideal <= max");
        if (!(type_sales_rate[i] >= 0.0) || !std::isfinite(type_sales_rate[i]))
            fail("type " + std::to_string(i) + ": sales rate must be finite and non-negative");
        cap_sum += 3LL * type_max[i];
    }
    if (cap_sum < num_locations)
        fail("sum of 3*max over types must cover all locations");
    for (double f : fixed_rent)
        if (!(f >= 0.0) || !std::isfinite(f)) fail("fixed rents must be finite and non-negative");

    if (static_cast<int>(groups_of_type.size()) != num_types)
        fail("groups_of_type length mismatch");
    for (std::size_t g = 0; g < groups.size(); ++g) {
        if (groups[g].empty() || groups[g].size() > 10)
            fail("group " + std::to_string(g) + ": size must be in [1, 10]");
        for (int t : groups[g])
            if (t < 0 || t >= num_types) fail("group member out of range");
    }
    for (int i = 0; i < num_types; ++i) {
        if (groups_of_type[i].size() > 2)
            fail("type " + std::to_string(i) + ": belongs to more than two groups");
        for (int g : groups_of_type[i]) {
            if (g < 0 || g >= static_cast<int>(groups.size())) fail("group index out of range");
            if (std::find(groups[g].begin(), groups[g].end(), i) == groups[g].end())
                fail("groups_of_type inconsistent with groups");
        }
    }

    if (max_small < 0 || max_medium < 0 || max_large < 0) fail("size caps must be non-negative");
    if (!(synergy_multiplier >= 0.0)) fail("synergy multiplier must be non-negative");
    if (!(count_factor_floor > 0.0 && count_factor_floor <= 1.0))
        fail("count_factor_floor must be in (0, 1]");
}

SizeCount decompose_sizes(int n) {
    SizeCount c;
    c.large = n / 3;
    const int rem = n % 3;
    if (rem == 2) c.medium = 1;
    if (rem == 1) c.small = 1;
    return c;
}

DerivedCounts derive_counts(const Layout& layout, const MallInstance& inst) {
    if (static_cast<int>(layout.size()) != inst.num_locations)
        throw std::invalid_argument("derive_counts: layout length does not match instance");

    DerivedCounts dc;
    dc.locations_per_type_area.assign(static_cast<std::size_t>(inst.num_types) * inst.num_areas, 0);
    dc.shops_per_type.assign(inst.num_types, 0);

    for (int loc = 0; loc < inst.num_locations; ++loc) {
        const int t = layout[loc];
        if (t < 0 || t >= inst.num_types)
            throw std::invalid_argument("derive_counts: invalid shop type at location " +
                                        std::to_string(loc));
        ++dc.locations_per_type_area[static_cast<std::size_t>(t) * inst.num_areas +
                                     inst.area_of_location[loc]];
    }
    for (int t = 0; t < inst.num_types; ++t) {
        for (int a = 0; a < inst.num_areas; ++a) {
            const SizeCount sc = decompose_sizes(dc.n(t, a, inst.num_areas));
            dc.shops_per_type[t] += sc.shops();
            dc.size_tally[kSmall] += sc.small;
            dc.size_tally[kMedium] += sc.medium;
            dc.size_tally[kLarge] += sc.large;
        }
    }
    return dc;
}

double count_factor(const MallInstance& inst, int type, int shops) {
    const int mn = inst.type_min[type];
    const int id = inst.type_ideal[type];
    const int mx = inst.type_max[type];
    if (shops < mn || shops > mx) return RentModelParams::out_of_bounds_count_factor;
    if (shops == id) return 1.0;
    const double fl = inst.count_factor_floor;
    if (shops < id) return fl + (1.0 - fl) * double(shops - mn) / double(id - mn);
    return fl + (1.0 - fl) * double(mx - shops) / double(mx - id);
}

namespace {

bool group_complete_in_area(const MallInstance& inst, const DerivedCounts& dc, int group,
                            int area) {
    for (int member : inst.groups[group])
        if (dc.n(member, area, inst.num_areas) == 0) return false;
    return true;
}

}  // namespace

double compute_rent(const DerivedCounts& dc, const MallInstance& inst) {
    double rent = 0.0;
    for (int t = 0; t < inst.num_types; ++t) {
        const double gamma = count_factor(inst, t, dc.shops_per_type[t]);
        for (int a = 0; a < inst.num_areas; ++a) {
            const int n = dc.n(t, a, inst.num_areas);
            if (n == 0) continue;

            double synergy = 1.0;
            for (int g : inst.groups_of_type[t]) {
                if (group_complete_in_area(inst, dc, g, a)) {
                    synergy = 1.0 + inst.synergy_multiplier;
                    break;
                }
            }
            const SizeCount sc = decompose_sizes(n);
            const double sales = inst.type_sales_rate[t] * inst.area_attractiveness[a] *
                                 gamma * synergy;
            const int counts[3] = {sc.small, sc.medium, sc.large};
            for (int s = 0; s < 3; ++s)
                rent += counts[s] *
                        (inst.fixed_rent_at(t, a) + sales * RentModelParams::size_factor[s]);
        }
    }
    return rent;
}

double compute_rent(const Layout& layout, const MallInstance& inst) {
    return compute_rent(derive_counts(layout, inst), inst);
}

ViolationReport assess_constraints(const DerivedCounts& dc, const MallInstance& inst) {
    ViolationReport report;
    report.per_type_violation.assign(inst.num_types, 0);
    for (int t = 0; t < inst.num_types; ++t) {
        const int n = dc.shops_per_type[t];
        report.per_type_violation[t] =
            std::max(0, inst.type_min[t] - n) + std::max(0, n - inst.type_max[t]);
        report.total += report.per_type_violation[t];
    }
    for (int s = 0; s < 3; ++s) {
        report.size_excess[s] = std::max(0, dc.size_tally[s] - inst.size_cap(s));
        report.total += report.size_excess[s];
    }
    return report;
}

ViolationReport assess_constraints(const Layout& layout, const MallInstance& inst) {
    return assess_constraints(derive_counts(layout, inst), inst);
}

double fitness(const Layout& layout, const MallInstance& inst, double penalty_weight) {
    const DerivedCounts dc = derive_counts(layout, inst);
    return compute_rent(dc, inst) - penalty_weight * assess_constraints(dc, inst).total;
}

double upper_bound(const MallInstance& inst) {
    // Best per-shop value by size, ignoring every constraint.
    double best[3] = {0.0, 0.0, 0.0};
    for (int t = 0; t < inst.num_types; ++t) {
        for (int a = 0; a < inst.num_areas; ++a) {
            const double sales = inst.type_sales_rate[t] * inst.area_attractiveness[a] *
                                 (1.0 + inst.synergy_multiplier);
            for (int s = 0; s < 3; ++s)
                best[s] = std::max(best[s],
                                   inst.fixed_rent_at(t, a) + sales * RentModelParams::size_factor[s]);
        }
    }
    // Exact best size mix covering all locations. With large shops dominant per
    // location this reduces to floor(L/3) larges plus a priced remainder.
    std::vector<double> dp(inst.num_locations + 1, 0.0);
    for (int l = 1; l <= inst.num_locations; ++l) {
        double v = dp[l - 1] + best[kSmall];
        if (l >= 2) v = std::max(v, dp[l - 2] + best[kMedium]);
        if (l >= 3) v = std::max(v, dp[l - 3] + best[kLarge]);
        dp[l] = v;
    }
    return dp[inst.num_locations];
}

}  // namespace mallga

#pragma once

#include <array>
#include <vector>

namespace mallga {

// One shop type per location; the direct chromosome and the decoder output.
using Layout = std::vector<int>;

enum ShopSize { kSmall = 0, kMedium = 1, kLarge = 2 };

// Sales-rent shape shared by every instance: per-size multipliers (chosen so
// that large shops yield the most rent per location) and the clamp applied to
// the shop-count factor outside [min, max].
struct RentModelParams {
    static constexpr double size_factor[3] = {1.0, 2.25, 3.6};
    static constexpr double out_of_bounds_count_factor = 0.25;
};

// Immutable problem data. Locations are grouped into areas; shop types carry
// count bounds, a sales rate and per-area fixed rents; groups are themed sets
// of types that earn a synergy bonus when complete within an area.
struct MallInstance {
    int num_locations = 0;
    int num_areas = 0;
    std::vector<int> area_of_location;        // location -> area
    std::vector<double> area_attractiveness;  // per area

    int num_types = 0;
    std::vector<int> type_min;    // shop counts, post size decomposition
    std::vector<int> type_ideal;
    std::vector<int> type_max;
    std::vector<double> type_sales_rate;
    std::vector<double> fixed_rent;  // [type * num_areas + area], thousands of pounds

    std::vector<std::vector<int>> groups;          // each: member type indices
    std::vector<std::vector<int>> groups_of_type;  // type -> group indices (0..2)

    int max_small = 0;
    int max_medium = 0;
    int max_large = 0;

    double synergy_multiplier = 0.2;
    double count_factor_floor = 0.5;  // gamma value at min and max counts

    double fixed_rent_at(int type, int area) const {
        return fixed_rent[static_cast<std::size_t>(type) * num_areas + area];
    }
    int size_cap(int size) const {
        return size == kSmall ? max_small : size == kMedium ? max_medium : max_large;
    }

    // Throws std::invalid_argument on the first violated invariant.
    void validate() const;

    bool operator==(const MallInstance&) const = default;
};

struct SizeCount {
    int small = 0;
    int medium = 0;
    int large = 0;

    int shops() const { return small + medium + large; }
    int locations() const { return small + 2 * medium + 3 * large; }
    bool operator==(const SizeCount&) const = default;
};

struct DerivedCounts {
    std::vector<int> locations_per_type_area;  // n_ik, [type * num_areas + area]
    std::vector<int> shops_per_type;           // N_i, post decomposition
    std::array<int, 3> size_tally = {0, 0, 0};

    int n(int type, int area, int num_areas) const {
        return locations_per_type_area[static_cast<std::size_t>(type) * num_areas + area];
    }
};

struct ViolationReport {
    std::vector<int> per_type_violation;
    std::array<int, 3> size_excess = {0, 0, 0};
    int total = 0;
};

// Largest-first decomposition of n same-type locations in one area.
SizeCount decompose_sizes(int n);

DerivedCounts derive_counts(const Layout& layout, const MallInstance& inst);

// Shop-count factor gamma: 1.0 at the ideal count, linear down to
// count_factor_floor at min and max, clamped at 0.25 outside [min, max].
double count_factor(const MallInstance& inst, int type, int shops);

double compute_rent(const Layout& layout, const MallInstance& inst);
double compute_rent(const DerivedCounts& counts, const MallInstance& inst);

ViolationReport assess_constraints(const Layout& layout, const MallInstance& inst);
ViolationReport assess_constraints(const DerivedCounts& counts, const MallInstance& inst);

double fitness(const Layout& layout, const MallInstance& inst, double penalty_weight);

// Theoretical best rent: every shop priced at the best (type, area) value of
// its size with gamma = 1 and full synergy, maximised over all size mixes
// covering the mall exactly. Dominates the rent of every layout.
double upper_bound(const MallInstance& inst);

}  // namespace mallga

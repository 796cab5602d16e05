#include "mallga/instance_gen.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "mallga/decoder.hpp"
#include "mallga/rng.hpp"

namespace mallga {

namespace {

// Generator calibration. Sales rates and attractiveness are kept in narrow
// bands so the theoretical bound for 100 locations lands near 2640 and good
// layouts can approach it.
constexpr int kLocations = 100;
constexpr int kAreas = 5;
constexpr double kAttractLo = 1.08, kAttractHi = 1.12;
constexpr double kSalesLo = 13.7, kSalesHi = 14.7;
constexpr double kFixedLo = 1.5, kFixedHi = 2.5;
constexpr double kSynergy = 0.3;
constexpr double kCountFloor = 0.92;

struct Tightness {
    int extra_lo, extra_hi;  // max_i = ideal_i + U[extra_lo, extra_hi]
    int min_margin;          // min_i = max(min_floor, ideal_i - margin)
    int min_floor;
    int cap_small, cap_medium, cap_large;
};

Tightness tightness_for_set(int set_id) {
    switch (set_id) {
        case 3: return {2, 3, 2, 0, 24, 20, 12};  // types are optional tenants here
        case 4: return {2, 3, 2, 1, 12, 12, 30};
        case 5: return {1, 2, 2, 1, 10, 11, 28};
        case 6: return {0, 1, 1, 1, 8, 10, 26};
        case 7: return {0, 0, 1, 1, 6, 10, 25};
        default: throw std::invalid_argument("generate_instance: set_id must be in 3..7");
    }
}

// Base data shared by sets 4-7 (set 3 draws its own with 50 types).
void draw_base(MallInstance& inst, int num_types, int ideal_lo, int ideal_hi, Rng& rng) {
    inst.num_locations = kLocations;
    inst.num_areas = kAreas;
    inst.area_of_location.resize(kLocations);
    for (int loc = 0; loc < kLocations; ++loc)
        inst.area_of_location[loc] = loc / (kLocations / kAreas);
    inst.area_attractiveness.resize(kAreas);
    for (auto& a : inst.area_attractiveness) a = rng.uniform_real(kAttractLo, kAttractHi);

    inst.num_types = num_types;
    inst.type_ideal.resize(num_types);
    inst.type_sales_rate.resize(num_types);
    inst.fixed_rent.resize(static_cast<std::size_t>(num_types) * kAreas);
    for (int t = 0; t < num_types; ++t) {
        inst.type_ideal[t] = rng.uniform_int(ideal_lo, ideal_hi);
        inst.type_sales_rate[t] = rng.uniform_real(kSalesLo, kSalesHi);
    }
    // Fixed rent follows the desirability of the (type, area) pair: landlords
    // charge more where sales run higher.
    for (int t = 0; t < num_types; ++t) {
        for (int a = 0; a < kAreas; ++a) {
            const double rel =
                (inst.type_sales_rate[t] * inst.area_attractiveness[a] - kSalesLo * kAttractLo) /
                (kSalesHi * kAttractHi - kSalesLo * kAttractLo);
            inst.fixed_rent[static_cast<std::size_t>(t) * kAreas + a] =
                kFixedLo + (kFixedHi - kFixedLo) * rel;
        }
    }

    // Partition the types into groups of 3-4, then let a few types join a
    // second group.
    std::vector<int> order(num_types);
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);
    inst.groups.clear();
    std::size_t at = 0;
    while (order.size() - at >= 3) {
        const std::size_t size = std::min<std::size_t>(rng.uniform_int(3, 4), order.size() - at);
        std::vector<int> members(order.begin() + at, order.begin() + at + size);
        std::sort(members.begin(), members.end());
        inst.groups.push_back(std::move(members));
        at += size;
    }
    inst.groups_of_type.assign(num_types, {});
    for (std::size_t g = 0; g < inst.groups.size(); ++g)
        for (int t : inst.groups[g]) inst.groups_of_type[t].push_back(static_cast<int>(g));

    const int second_memberships = num_types / 10;
    for (int i = 0; i < second_memberships && inst.groups.size() > 1; ++i) {
        const int t = static_cast<int>(rng.below(num_types));
        if (inst.groups_of_type[t].size() != 1) continue;
        const int g = static_cast<int>(rng.below(inst.groups.size()));
        auto& members = inst.groups[g];
        if (members.size() >= 10) continue;
        if (std::find(members.begin(), members.end(), t) != members.end()) continue;
        members.insert(std::lower_bound(members.begin(), members.end(), t), t);
        inst.groups_of_type[t].push_back(g);
    }

    inst.synergy_multiplier = kSynergy;
    inst.count_factor_floor = kCountFloor;
}

void draw_bounds(MallInstance& inst, const Tightness& tight, Rng& rng) {
    const int n = inst.num_types;
    inst.type_min.resize(n);
    inst.type_max.resize(n);
    for (int t = 0; t < n; ++t) {
        inst.type_max[t] = inst.type_ideal[t] + rng.uniform_int(tight.extra_lo, tight.extra_hi);
        inst.type_min[t] = std::max(tight.min_floor, inst.type_ideal[t] - tight.min_margin);
    }
    inst.max_small = tight.cap_small;
    inst.max_medium = tight.cap_medium;
    inst.max_large = tight.cap_large;

    // Keep enough headroom that a full assignment always exists.
    long long cap_sum = 0;
    for (int t = 0; t < n; ++t) cap_sum += 3LL * inst.type_max[t];
    while (cap_sum < (inst.num_locations * 23 + 19) / 20) {  // 1.15 * locations, rounded up
        ++inst.type_max[static_cast<int>(rng.below(n))];
        cap_sum += 3;
    }
}

// A tightness draw is accepted only if the decoder can actually reach
// feasibility on it, from preset weights and from random ones.
bool decoder_reaches_feasibility(const MallInstance& inst, Rng& rng) {
    std::vector<Permutation> perms;
    Permutation identity(inst.num_locations);
    std::iota(identity.begin(), identity.end(), 0);
    perms.push_back(identity);
    for (int i = 0; i < 3; ++i) {
        Permutation p = identity;
        rng.shuffle(p);
        perms.push_back(std::move(p));
    }

    bool preset_ok = false;
    for (const auto& w : {DecoderWeights::medium(), DecoderWeights::high()})
        for (const auto& p : perms)
            if (assess_constraints(decode(p, w, inst), inst).total == 0) preset_ok = true;
    if (!preset_ok) return false;

    int random_ok = 0;
    for (int i = 0; i < 8; ++i) {
        DecoderWeights w;
        for (int g = 0; g < 6; ++g) w[g] = rng.uniform_real(0.0, 10000.0);
        if (assess_constraints(decode(perms[i % perms.size()], w, inst), inst).total == 0)
            ++random_ok;
    }
    return random_ok >= 1;
}

}  // namespace

MallInstance generate_instance(const GeneratorSpec& spec) {
    Tightness tight = tightness_for_set(spec.set_id);
    if (spec.instance_index < 0) throw std::invalid_argument("instance_index must be >= 0");

    const Rng root(spec.master_seed);
    MallInstance inst;
    if (spec.set_id == 3) {
        Rng base = root.substream("base-set3").substream(spec.instance_index);
        draw_base(inst, 50, 2, 2, base);
    } else {
        Rng base = root.substream("base").substream(spec.instance_index);
        draw_base(inst, 20, 2, 3, base);
    }

    Rng tight_root = root.substream("tightness")
                         .substream(spec.set_id)
                         .substream(spec.instance_index);
    for (int attempt = 0;; ++attempt) {
        Rng attempt_rng = tight_root.substream(attempt);
        // Loosen deterministically if the profile keeps producing instances
        // the decoder cannot solve.
        if (attempt > 0 && attempt % 8 == 0) {
            ++tight.extra_hi;
            tight.min_margin = std::max(tight.min_margin, (attempt / 8 > 2) ? 2 : tight.min_margin);
        }
        draw_bounds(inst, tight, attempt_rng);
        Rng probe = attempt_rng.substream("probe");
        if (decoder_reaches_feasibility(inst, probe)) break;
        if (attempt > 200)
            throw std::logic_error("generate_instance: no feasible tightness draw found");
    }

    inst.validate();
    return inst;
}

MallInstance make_tiny_instance(int num_locations, int num_types, int num_areas,
                                std::uint64_t seed) {
    if (num_locations > 12 || num_types > 4)
        throw std::invalid_argument("make_tiny_instance: meant for oracle-sized instances");
    Rng rng = Rng(seed).substream("tiny");

    MallInstance inst;
    inst.num_locations = num_locations;
    inst.num_areas = num_areas;
    inst.area_of_location.resize(num_locations);
    for (int loc = 0; loc < num_locations; ++loc)
        inst.area_of_location[loc] = loc * num_areas / num_locations;
    inst.area_attractiveness.resize(num_areas);
    for (auto& a : inst.area_attractiveness) a = rng.uniform_real(kAttractLo, kAttractHi);

    inst.num_types = num_types;
    inst.type_min.resize(num_types);
    inst.type_ideal.resize(num_types);
    inst.type_max.resize(num_types);
    inst.type_sales_rate.resize(num_types);
    inst.fixed_rent.resize(static_cast<std::size_t>(num_types) * num_areas);
    const int per_type = std::max(1, num_locations / (2 * num_types));
    for (int t = 0; t < num_types; ++t) {
        inst.type_min[t] = 1;
        inst.type_ideal[t] = per_type;
        inst.type_max[t] = per_type + 1 + static_cast<int>(rng.below(2));
        inst.type_sales_rate[t] = rng.uniform_real(kSalesLo, kSalesHi);
        for (int a = 0; a < num_areas; ++a)
            inst.fixed_rent[static_cast<std::size_t>(t) * num_areas + a] =
                rng.uniform_real(kFixedLo, kFixedHi);
    }
    while (3 * std::accumulate(inst.type_max.begin(), inst.type_max.end(), 0) < num_locations)
        ++inst.type_max[static_cast<int>(rng.below(num_types))];

    if (num_types >= 3) {
        inst.groups.push_back({0, 1, 2});
        inst.groups_of_type.assign(num_types, {});
        for (int t : inst.groups[0]) inst.groups_of_type[t].push_back(0);
    } else {
        inst.groups_of_type.assign(num_types, {});
    }

    inst.max_small = num_locations;
    inst.max_medium = std::max(1, num_locations / 2);
    inst.max_large = std::max(1, num_locations / 3);
    inst.synergy_multiplier = kSynergy;
    inst.count_factor_floor = kCountFloor;
    inst.validate();
    return inst;
}

namespace {

std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

class LineParser {
public:
    LineParser(std::istream& in, std::string name) : in_(in), name_(std::move(name)) {}

    [[noreturn]] void fail(const std::string& field, const std::string& msg) const {
        throw std::runtime_error(name_ + ":" + std::to_string(line_no_) + ": " + field + ": " +
                                 msg);
    }

    // Reads the next non-empty line and checks its keyword.
    std::istringstream expect(const std::string& keyword) {
        std::string line;
        if (!next_line(line)) fail(keyword, "unexpected end of file");
        std::istringstream ls(line);
        std::string head;
        ls >> head;
        if (head != keyword)
            fail(keyword, "expected '" + keyword + "' line, found '" + head + "'");
        return ls;
    }

    // Reads the next non-empty line as raw data (no keyword).
    std::istringstream expect_row(const std::string& field) {
        std::string line;
        if (!next_line(line)) fail(field, "unexpected end of file");
        return std::istringstream(line);
    }

    // Keyword of the next non-empty line, without consuming it.
    std::string peek_keyword() {
        std::string line;
        if (!next_line(line)) return "";
        pending_ = line;
        has_pending_ = true;
        std::istringstream ls(line);
        std::string head;
        ls >> head;
        return head;
    }

    template <typename T>
    T value(std::istringstream& ls, const std::string& field) {
        T v;
        if (!(ls >> v)) fail(field, "missing or malformed value");
        return v;
    }

private:
    bool next_line(std::string& line) {
        if (has_pending_) {
            line = pending_;
            has_pending_ = false;
            return true;
        }
        while (std::getline(in_, line)) {
            ++line_no_;
            if (line.find_first_not_of(" \t\r\n") != std::string::npos) return true;
        }
        return false;
    }

    std::istream& in_;
    std::string name_;
    int line_no_ = 0;
    std::string pending_;
    bool has_pending_ = false;
};

}  // namespace

void write_instance(const MallInstance& inst, std::ostream& out) {
    // The format stores area sizes, so locations of one area must be
    // contiguous and in area order.
    for (int loc = 1; loc < inst.num_locations; ++loc)
        if (inst.area_of_location[loc] < inst.area_of_location[loc - 1])
            throw std::invalid_argument("write_instance: areas must be contiguous blocks");

    out << "mall 1\n";
    out << "locations " << inst.num_locations << "\n";
    out << "areas " << inst.num_areas << "\n";
    out << "areasize";
    for (int a = 0; a < inst.num_areas; ++a)
        out << ' '
            << std::count(inst.area_of_location.begin(), inst.area_of_location.end(), a);
    out << "\n";
    out << "attract";
    for (double a : inst.area_attractiveness) out << ' ' << format_real(a);
    out << "\n";
    out << "types " << inst.num_types << "\n";
    out << "sizecaps " << inst.max_small << ' ' << inst.max_medium << ' ' << inst.max_large
        << "\n";
    out << "synergy " << format_real(inst.synergy_multiplier) << "\n";
    out << "countfloor " << format_real(inst.count_factor_floor) << "\n";
    for (int t = 0; t < inst.num_types; ++t)
        out << "type " << t << ' ' << inst.type_min[t] << ' ' << inst.type_ideal[t] << ' '
            << inst.type_max[t] << ' ' << format_real(inst.type_sales_rate[t]) << "\n";
    for (std::size_t g = 0; g < inst.groups.size(); ++g) {
        out << "group " << g;
        for (int t : inst.groups[g]) out << ' ' << t;
        out << "\n";
    }
    out << "fixedrent\n";
    for (int t = 0; t < inst.num_types; ++t) {
        for (int a = 0; a < inst.num_areas; ++a)
            out << (a ? " " : "") << format_real(inst.fixed_rent_at(t, a));
        out << "\n";
    }
}

void write_instance(const MallInstance& inst, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_instance: cannot open " + path);
    write_instance(inst, out);
    if (!out) throw std::runtime_error("write_instance: failed writing " + path);
}

MallInstance read_instance(std::istream& in, const std::string& name) {
    LineParser p(in, name);
    MallInstance inst;

    {
        auto ls = p.expect("mall");
        if (p.value<int>(ls, "version") != 1) p.fail("version", "unsupported format version");
    }
    {
        auto ls = p.expect("locations");
        inst.num_locations = p.value<int>(ls, "locations");
        if (inst.num_locations <= 0) p.fail("locations", "must be positive");
    }
    {
        auto ls = p.expect("areas");
        inst.num_areas = p.value<int>(ls, "areas");
        if (inst.num_areas <= 0) p.fail("areas", "must be positive");
    }
    {
        auto ls = p.expect("areasize");
        int total = 0;
        for (int a = 0; a < inst.num_areas; ++a) {
            const int size = p.value<int>(ls, "areasize");
            if (size < 0) p.fail("areasize", "negative area size");
            for (int i = 0; i < size; ++i) inst.area_of_location.push_back(a);
            total += size;
        }
        if (total != inst.num_locations)
            p.fail("areasize", "area sizes do not sum to the number of locations");
    }
    {
        auto ls = p.expect("attract");
        for (int a = 0; a < inst.num_areas; ++a)
            inst.area_attractiveness.push_back(p.value<double>(ls, "attract"));
    }
    {
        auto ls = p.expect("types");
        inst.num_types = p.value<int>(ls, "types");
        if (inst.num_types <= 0) p.fail("types", "must be positive");
    }
    {
        auto ls = p.expect("sizecaps");
        inst.max_small = p.value<int>(ls, "sizecaps");
        inst.max_medium = p.value<int>(ls, "sizecaps");
        inst.max_large = p.value<int>(ls, "sizecaps");
    }
    {
        auto ls = p.expect("synergy");
        inst.synergy_multiplier = p.value<double>(ls, "synergy");
    }
    {
        auto ls = p.expect("countfloor");
        inst.count_factor_floor = p.value<double>(ls, "countfloor");
    }

    inst.type_min.resize(inst.num_types);
    inst.type_ideal.resize(inst.num_types);
    inst.type_max.resize(inst.num_types);
    inst.type_sales_rate.resize(inst.num_types);
    for (int t = 0; t < inst.num_types; ++t) {
        auto ls = p.expect("type");
        const int idx = p.value<int>(ls, "type index");
        if (idx != t) p.fail("type index", "type lines must be in order");
        inst.type_min[t] = p.value<int>(ls, "type min");
        inst.type_ideal[t] = p.value<int>(ls, "type ideal");
        inst.type_max[t] = p.value<int>(ls, "type max");
        inst.type_sales_rate[t] = p.value<double>(ls, "type rate");
        if (!(0 <= inst.type_min[t] && inst.type_min[t] <= inst.type_ideal[t] &&
              inst.type_ideal[t] <= inst.type_max[t]))
            p.fail("type bounds", "need 0 <= min <= ideal <= max");
    }

    inst.groups_of_type.assign(inst.num_types, {});
    while (p.peek_keyword() == "group") {
        auto ls = p.expect("group");
        const int idx = p.value<int>(ls, "group index");
        if (idx != static_cast<int>(inst.groups.size()))
            p.fail("group index", "group lines must be in order");
        std::vector<int> members;
        int t;
        while (ls >> t) {
            if (t < 0 || t >= inst.num_types) p.fail("group member", "type index out of range");
            members.push_back(t);
        }
        if (members.empty() || members.size() > 10)
            p.fail("group", "group size must be in [1, 10]");
        for (int m : members) inst.groups_of_type[m].push_back(idx);
        inst.groups.push_back(std::move(members));
    }

    p.expect("fixedrent");
    inst.fixed_rent.resize(static_cast<std::size_t>(inst.num_types) * inst.num_areas);
    for (int t = 0; t < inst.num_types; ++t) {
        auto ls = p.expect_row("fixedrent");
        for (int a = 0; a < inst.num_areas; ++a)
            inst.fixed_rent[static_cast<std::size_t>(t) * inst.num_areas + a] =
                p.value<double>(ls, "fixedrent");
    }

    try {
        inst.validate();
    } catch (const std::invalid_argument& e) {
        p.fail("instance", e.what());
    }
    return inst;
}

MallInstance read_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_instance: cannot open " + path);
    return read_instance(in, path);
}

std::string instance_file_name(int set_id, int instance_index) {
    return "set" + std::to_string(set_id) + "_inst" + std::to_string(instance_index) + ".mall";
}

}  // namespace mallga

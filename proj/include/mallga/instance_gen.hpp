#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "mallga/mall_model.hpp"

namespace mallga {

// Identifies one instance of the benchmark. Identical spec -> byte-identical
// instance file.
struct GeneratorSpec {
    int set_id = 4;          // 3..7, increasing difficulty
    int instance_index = 0;  // 0..9
    std::uint64_t master_seed = 0;
};

// 100 locations in five areas of 20. Set 3 has 50 shop types; sets 4-7 share
// identical base data per instance index and differ only in the tightness of
// the shop-count bounds and size caps.
MallInstance generate_instance(const GeneratorSpec& spec);

// Small instances for brute-force oracle tests.
MallInstance make_tiny_instance(int num_locations, int num_types, int num_areas,
                                std::uint64_t seed);

void write_instance(const MallInstance& inst, std::ostream& out);
void write_instance(const MallInstance& inst, const std::string& path);

// Throws std::runtime_error naming line number and field on malformed input.
MallInstance read_instance(std::istream& in, const std::string& name = "<stream>");
MallInstance read_instance(const std::string& path);

std::string instance_file_name(int set_id, int instance_index);

}  // namespace mallga

#pragma once

#include <filesystem>
#include <stdexcept>

#include "rulelab/enumerate.hpp"

namespace rulelab {

struct MapFileError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Output-map / shard file, little-endian, bit-reproducible:
//   offset  size  field
//        0     8  magic "NAPMAP1\0"
//        8     4  format version (currently 1)
//       12     4  m
//       16     4  n
//       20     4  z
//       24     4  t
//       28     1  conventions flag byte
//       29     3  reserved, zero
//       32     4  l
//       36     8  range start
//       44     8  range end
//       52  8*(end-start)  output entries
void write_shard(const Shard& shard, const std::filesystem::path& path);
void write_map(const OutputMap& map, const std::filesystem::path& path);

Shard read_shard(const std::filesystem::path& path);

// Reads a full-range shard as an OutputMap; a partial range throws.
OutputMap read_map(const std::filesystem::path& path);

} // namespace rulelab

#pragma once

#include <filesystem>

#include "rulelab/distribution.hpp"
#include "rulelab/dynamics.hpp"
#include "rulelab/enumerate.hpp"

namespace rulelab {

// CSV with header "level,mode,program,count"; rows sorted by descending
// count then ascending program id; "\n" newlines. Byte-deterministic.
void export_csv(const LevelDistribution& dist,
                const std::filesystem::path& path);

// Basin table of a report, one row per attractor, level = M, mode
// "basin". Same ordering and determinism rules.
void export_csv(const AttractorReport& report,
                const std::filesystem::path& path);

// Graphviz digraph of the level-w mapping: one node per string in
// image(f^(w-1)) (w = 1 means all 2^l programs), labeled "P<id>", one
// edge p -> f(p). Nodes and edges sorted ascending; attractor nodes use
// a distinct shape. Levels past the stabilized graph are clamped to it.
void export_dot(const OutputMap& map, uint32_t level,
                const std::filesystem::path& path);

} // namespace rulelab

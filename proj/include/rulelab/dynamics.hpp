#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "rulelab/distribution.hpp"
#include "rulelab/enumerate.hpp"

namespace rulelab {

// One cycle of the functional graph in canonical rotation (smallest
// element first). Length 1 means a quine, longer means a quine-relay.
struct Cycle {
    std::vector<uint64_t> nodes;

    bool operator==(const Cycle&) const = default;
};

// Per-level view of the iterated map. image_sizes[w] = |image(f^w)|,
// starting at w = 0 with the full domain. The survivor pool feeding
// level w has size B^w = image_sizes[w-1] and the survivors after it
// number A^w = image_sizes[w], so A^w <= B^w at every level.
struct LevelChain {
    std::vector<LevelDistribution> weighted;        // levels 1..W
    std::vector<LevelDistribution> support_uniform; // levels 1..W
    std::vector<uint64_t> image_sizes;              // w = 0..W
};

struct AttractorReport {
    std::vector<Cycle> cycles;
    uint64_t attractor_count = 0;          // Q: total nodes on cycles
    uint32_t convergence = 0;              // M
    std::map<uint64_t, uint64_t> basins;   // attractor node -> basin size
    LevelChain chain;
};

// Pushes a distribution one level through the map:
// count'(y) = sum over x with f(x) = y of count(x). Weighted mode
// preserves total mass; support-uniform mode first resets every count
// on the support to 1, reproducing the per-level tables that restart
// from a uniform distribution over the survivor set.
LevelDistribution push_forward(const LevelDistribution& dist,
                               const OutputMap& map);

// Weighted counts |{p : f^w(p) = x}| via w-fold push-forward. w = 0 is
// the uniform distribution with mass 2^l.
LevelDistribution nested(const OutputMap& map, uint32_t levels);

// Every cycle of the graph, each reported once, sorted by smallest node.
std::vector<Cycle> find_cycles(const OutputMap& map);

// Smallest w >= 0 with image(f^w) == image(f^(w+1)). At and after this
// level the surviving set consists exactly of the cycle nodes.
uint32_t convergence_level(const OutputMap& map);

// For each cycle node a: the number of programs whose trajectory first
// enters its cycle at a. Basins partition the space, so the counts sum
// to 2^l.
std::map<uint64_t, uint64_t> basin_sizes(const OutputMap& map);

// Cycles, Q, M, basins and the level chain in one record. max_level is
// raised to M + 1 if it is smaller, so the chain always reaches the
// stabilized set.
AttractorReport attractor_report(const OutputMap& map, uint32_t max_level);

} // namespace rulelab

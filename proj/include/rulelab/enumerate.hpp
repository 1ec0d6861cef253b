#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "rulelab/distribution.hpp"
#include "rulelab/machine.hpp"

namespace rulelab {

// Outputs for a contiguous slice [begin, end) of the program space.
struct Shard {
    MachineSpec spec;
    uint64_t begin = 0;
    uint64_t end = 0;
    std::vector<uint64_t> entries; // entries[i] = run(begin + i, spec)
};

// The complete functional graph f: program index -> output index, stored
// densely over [0, 2^l). Immutable once built; shared freely.
struct OutputMap {
    MachineSpec spec;
    std::vector<uint64_t> entries;

    uint64_t domain_size() const { return entries.size(); }
    uint64_t operator()(uint64_t p) const { return entries[p]; }
};

struct MergeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Sweep timing, for throughput reporting. Correctness never depends on it.
struct SweepStats {
    uint64_t programs = 0;
    double seconds = 0.0;
    double programs_per_second() const {
        return seconds > 0 ? static_cast<double>(programs) / seconds : 0.0;
    }
};

// entries[i] = run(begin + i) for the given range, computed with the
// given number of worker threads over disjoint chunks of work_unit
// programs. The result is identical for every worker count and work
// unit size.
Shard enumerate_range(const MachineSpec& spec, uint64_t begin, uint64_t end,
                      unsigned workers = 1, SweepStats* stats = nullptr,
                      uint64_t work_unit = uint64_t{1} << 16);

// Full sweep of [0, 2^l).
OutputMap enumerate_all(const MachineSpec& spec, unsigned workers = 1,
                        SweepStats* stats = nullptr,
                        uint64_t work_unit = uint64_t{1} << 16);

// Reassembles shards into a full map. The shards must share a spec and
// partition [0, 2^l) exactly; gaps, overlaps, and spec mismatches throw
// MergeError naming the offending range.
OutputMap merge_shards(const std::vector<Shard>& shards);

// Weighted level-1 counts: count(x) = |{p : f(p) = x}|, total mass 2^l.
LevelDistribution ctm(const OutputMap& map);

} // namespace rulelab

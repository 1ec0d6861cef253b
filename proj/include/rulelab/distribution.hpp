#pragma once

#include <cstdint>
#include <map>
#include <utility>

namespace rulelab {

enum class DistMode : uint8_t { Weighted, SupportUniform };

// Counts of strings surviving at a meta-level. Counts are exact
// integers; probabilities are derived views so nothing ever rounds.
struct LevelDistribution {
    uint32_t level = 0;
    DistMode mode = DistMode::Weighted;
    std::map<uint64_t, uint64_t> counts;
    uint64_t total_mass = 0;

    uint64_t count_of(uint64_t x) const {
        auto it = counts.find(x);
        return it == counts.end() ? 0 : it->second;
    }

    size_t support_size() const { return counts.size(); }

    // count / 2^l, the normalized probability (sums to 1 in weighted
    // mode at every level). Returned as {numerator, exponent of 2}.
    std::pair<uint64_t, uint32_t> normalized(uint64_t x,
                                             uint32_t description_bits) const {
        return {count_of(x), description_bits};
    }

    // count / 2^(w*l), the literal nested composition value; sums to
    // 2^-((w-1) l). Exponent form keeps it exact at any level.
    std::pair<uint64_t, uint32_t> paper_raw(uint64_t x,
                                            uint32_t description_bits) const {
        return {count_of(x), level * description_bits};
    }
};

const char* dist_mode_name(DistMode mode);

} // namespace rulelab

#include "rulelab/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <sstream>
#include <thread>

namespace rulelab {

const char* dist_mode_name(DistMode mode) {
    return mode == DistMode::Weighted ? "weighted" : "support-uniform";
}

Shard enumerate_range(const MachineSpec& spec, uint64_t begin, uint64_t end,
                      unsigned workers, SweepStats* stats,
                      uint64_t work_unit) {
    if (work_unit == 0)
        throw std::domain_error("enumerate_range: work_unit must be > 0");
    if (end > begin)
        work_unit = std::min(work_unit, end - begin);
    const uint64_t total = spec.program_count();
    if (begin > end || end > total) {
        std::ostringstream os;
        os << "enumerate_range: [" << begin << ", " << end
           << ") out of bounds for 2^" << spec.description_bits()
           << " programs";
        throw std::domain_error(os.str());
    }

    Shard shard;
    shard.spec = spec;
    shard.begin = begin;
    shard.end = end;
    shard.entries.resize(end - begin);

    const auto t0 = std::chrono::steady_clock::now();
    if (workers <= 1) {
        for (uint64_t p = begin; p < end; ++p)
            shard.entries[p - begin] = run(p, spec);
    } else {
        std::atomic<uint64_t> cursor{begin};
        auto worker = [&] {
            for (;;) {
                const uint64_t lo = cursor.fetch_add(work_unit);
                if (lo >= end)
                    return;
                const uint64_t hi = std::min(lo + work_unit, end);
                for (uint64_t p = lo; p < hi; ++p)
                    shard.entries[p - begin] = run(p, spec);
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned i = 0; i < workers; ++i)
            pool.emplace_back(worker);
        for (auto& th : pool)
            th.join();
    }
    const auto t1 = std::chrono::steady_clock::now();
    if (stats) {
        stats->programs = end - begin;
        stats->seconds = std::chrono::duration<double>(t1 - t0).count();
    }
    return shard;
}

OutputMap enumerate_all(const MachineSpec& spec, unsigned workers,
                        SweepStats* stats, uint64_t work_unit) {
    Shard shard = enumerate_range(spec, 0, spec.program_count(), workers,
                                  stats, work_unit);
    OutputMap map;
    map.spec = spec;
    map.entries = std::move(shard.entries);
    return map;
}

OutputMap merge_shards(const std::vector<Shard>& shards) {
    if (shards.empty())
        throw MergeError("merge_shards: no shards given");
    const uint64_t want_hash = shards.front().spec.spec_hash();
    for (const Shard& s : shards) {
        if (s.spec.spec_hash() != want_hash) {
            std::ostringstream os;
            os << "merge_shards: spec mismatch in shard [" << s.begin << ", "
               << s.end << ")";
            throw MergeError(os.str());
        }
        if (s.entries.size() != s.end - s.begin)
            throw MergeError("merge_shards: shard entry count does not "
                             "match its range");
    }

    std::vector<const Shard*> order;
    order.reserve(shards.size());
    for (const Shard& s : shards)
        order.push_back(&s);
    std::sort(order.begin(), order.end(),
              [](const Shard* a, const Shard* b) { return a->begin < b->begin; });

    const uint64_t total = shards.front().spec.program_count();
    uint64_t expect = 0;
    for (const Shard* s : order) {
        if (s->begin != expect) {
            std::ostringstream os;
            os << "merge_shards: " << (s->begin > expect ? "gap" : "overlap")
               << " at [" << std::min(expect, s->begin) << ", "
               << std::max(expect, s->begin) << ") before shard [" << s->begin
               << ", " << s->end << ")";
            throw MergeError(os.str());
        }
        expect = s->end;
    }
    if (expect != total) {
        std::ostringstream os;
        os << "merge_shards: gap at [" << expect << ", " << total
           << ") after the last shard";
        throw MergeError(os.str());
    }

    OutputMap map;
    map.spec = shards.front().spec;
    map.entries.resize(total);
    for (const Shard* s : order)
        std::copy(s->entries.begin(), s->entries.end(),
                  map.entries.begin() + static_cast<ptrdiff_t>(s->begin));
    return map;
}

LevelDistribution ctm(const OutputMap& map) {
    LevelDistribution dist;
    dist.level = 1;
    dist.mode = DistMode::Weighted;
    for (uint64_t x : map.entries)
        ++dist.counts[x];
    dist.total_mass = map.domain_size();
    return dist;
}

} // namespace rulelab

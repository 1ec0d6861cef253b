#include "rulelab/dynamics.hpp"

#include <algorithm>

namespace rulelab {

LevelDistribution push_forward(const LevelDistribution& dist,
                               const OutputMap& map) {
    LevelDistribution out;
    out.level = dist.level + 1;
    out.mode = dist.mode;
    for (const auto& [x, count] : dist.counts) {
        const uint64_t mass =
            dist.mode == DistMode::SupportUniform ? 1 : count;
        out.counts[map(x)] += mass;
    }
    out.total_mass = dist.mode == DistMode::SupportUniform
                         ? dist.counts.size()
                         : dist.total_mass;
    return out;
}

LevelDistribution nested(const OutputMap& map, uint32_t levels) {
    LevelDistribution dist;
    dist.level = 0;
    dist.mode = DistMode::Weighted;
    dist.total_mass = map.domain_size();
    if (levels == 0) {
        // Identity level: uniform over all programs.
        for (uint64_t p = 0; p < map.domain_size(); ++p)
            dist.counts[p] = 1;
        return dist;
    }
    // Level 1 directly from the dense map, then fold.
    dist = ctm(map);
    for (uint32_t w = 1; w < levels; ++w)
        dist = push_forward(dist, map);
    return dist;
}

std::vector<Cycle> find_cycles(const OutputMap& map) {
    const uint64_t n = map.domain_size();
    // 0 = unvisited, 1 = on the current path, 2 = settled.
    std::vector<uint8_t> color(n, 0);
    std::vector<Cycle> cycles;

    std::vector<uint64_t> path;
    for (uint64_t start = 0; start < n; ++start) {
        if (color[start] != 0)
            continue;
        path.clear();
        uint64_t v = start;
        while (color[v] == 0) {
            color[v] = 1;
            path.push_back(v);
            v = map(v);
        }
        if (color[v] == 1) {
            // Ran into the current path: the tail from v onward cycles.
            auto it = std::find(path.begin(), path.end(), v);
            Cycle cycle;
            cycle.nodes.assign(it, path.end());
            // Canonical rotation: smallest node first.
            auto min_it =
                std::min_element(cycle.nodes.begin(), cycle.nodes.end());
            std::rotate(cycle.nodes.begin(), min_it, cycle.nodes.end());
            cycles.push_back(std::move(cycle));
        }
        for (uint64_t u : path)
            color[u] = 2;
    }
    std::sort(cycles.begin(), cycles.end(),
              [](const Cycle& a, const Cycle& b) {
                  return a.nodes.front() < b.nodes.front();
              });
    return cycles;
}

namespace {

std::vector<uint64_t> image_of(const OutputMap& map,
                               const std::vector<uint64_t>& nodes) {
    std::vector<uint64_t> out;
    out.reserve(nodes.size());
    for (uint64_t v : nodes)
        out.push_back(map(v));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace

uint32_t convergence_level(const OutputMap& map) {
    std::vector<uint64_t> current(map.domain_size());
    for (uint64_t p = 0; p < map.domain_size(); ++p)
        current[p] = p;
    uint32_t w = 0;
    for (;;) {
        std::vector<uint64_t> next = image_of(map, current);
        if (next == current)
            return w;
        current = std::move(next);
        ++w;
    }
}

std::map<uint64_t, uint64_t> basin_sizes(const OutputMap& map) {
    const uint64_t n = map.domain_size();
    const std::vector<Cycle> cycles = find_cycles(map);

    // entry[v] = the first cycle node the trajectory from v reaches;
    // cycle nodes map to themselves.
    constexpr uint64_t kUnknown = ~uint64_t{0};
    std::vector<uint64_t> entry(n, kUnknown);
    for (const Cycle& cycle : cycles)
        for (uint64_t v : cycle.nodes)
            entry[v] = v;

    std::vector<uint64_t> path;
    for (uint64_t start = 0; start < n; ++start) {
        if (entry[start] != kUnknown)
            continue;
        path.clear();
        uint64_t v = start;
        while (entry[v] == kUnknown) {
            path.push_back(v);
            v = map(v);
        }
        const uint64_t hit = entry[v];
        for (uint64_t u : path)
            entry[u] = hit;
    }

    std::map<uint64_t, uint64_t> basins;
    for (const Cycle& cycle : cycles)
        for (uint64_t v : cycle.nodes)
            basins[v] = 0;
    for (uint64_t v = 0; v < n; ++v)
        ++basins[entry[v]];
    return basins;
}

AttractorReport attractor_report(const OutputMap& map, uint32_t max_level) {
    AttractorReport report;
    report.cycles = find_cycles(map);
    for (const Cycle& cycle : report.cycles)
        report.attractor_count += cycle.nodes.size();
    report.convergence = convergence_level(map);
    report.basins = basin_sizes(map);

    const uint32_t levels = std::max(max_level, report.convergence + 1);
    report.chain.image_sizes.push_back(map.domain_size());

    LevelDistribution weighted = ctm(map);
    LevelDistribution uniform;
    uniform.level = 1;
    uniform.mode = DistMode::SupportUniform;
    uniform.counts = weighted.counts;
    uniform.total_mass = weighted.total_mass;

    for (uint32_t w = 1; w <= levels; ++w) {
        report.chain.image_sizes.push_back(weighted.counts.size());
        report.chain.weighted.push_back(weighted);
        report.chain.support_uniform.push_back(uniform);
        if (w == levels)
            break;
        weighted = push_forward(weighted, map);
        uniform = push_forward(uniform, map);
    }
    return report;
}

} // namespace rulelab

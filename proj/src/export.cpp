#include "rulelab/export.hpp"

#include <algorithm>
#include <fstream>
#include <unordered_set>

namespace rulelab {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open for writing: " + path.string());
    return out;
}

void write_rows(std::ofstream& out, uint32_t level, const char* mode,
                const std::map<uint64_t, uint64_t>& counts) {
    std::vector<std::pair<uint64_t, uint64_t>> rows(counts.begin(),
                                                    counts.end());
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second)
            return a.second > b.second;
        return a.first < b.first;
    });
    for (const auto& [program, count] : rows)
        out << level << ',' << mode << ',' << program << ',' << count
            << '\n';
}

} // namespace

void export_csv(const LevelDistribution& dist,
                const std::filesystem::path& path) {
    std::ofstream out = open_out(path);
    out << "level,mode,program,count\n";
    write_rows(out, dist.level, dist_mode_name(dist.mode), dist.counts);
    if (!out.flush())
        throw std::runtime_error("write failed: " + path.string());
}

void export_csv(const AttractorReport& report,
                const std::filesystem::path& path) {
    std::ofstream out = open_out(path);
    out << "level,mode,program,count\n";
    write_rows(out, report.convergence, "basin", report.basins);
    if (!out.flush())
        throw std::runtime_error("write failed: " + path.string());
}

void export_dot(const OutputMap& map, uint32_t level,
                const std::filesystem::path& path) {
    if (level < 1)
        throw std::domain_error("export_dot: level must be >= 1");

    // Node set = image(f^(level-1)); iterating past stabilization just
    // reproduces the stabilized set, which also clamps oversized levels.
    std::vector<uint64_t> nodes(map.domain_size());
    for (uint64_t p = 0; p < map.domain_size(); ++p)
        nodes[p] = p;
    for (uint32_t w = 1; w < level; ++w) {
        std::vector<uint64_t> next(nodes);
        for (uint64_t& v : next)
            v = map(v);
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        if (next == nodes)
            break; // stabilized; higher levels clamp to this graph
        nodes = std::move(next);
    }

    std::unordered_set<uint64_t> attractors;
    for (const Cycle& cycle : find_cycles(map))
        attractors.insert(cycle.nodes.begin(), cycle.nodes.end());

    std::ofstream out = open_out(path);
    out << "digraph mapping {\n";
    for (uint64_t v : nodes) {
        out << "  \"P" << v << "\"";
        if (attractors.count(v))
            out << " [shape=doublecircle]";
        out << ";\n";
    }
    for (uint64_t v : nodes)
        out << "  \"P" << v << "\" -> \"P" << map(v) << "\";\n";
    out << "}\n";
    if (!out.flush())
        throw std::runtime_error("write failed: " + path.string());
}

} // namespace rulelab

#include "rulelab/calibrate.hpp"

#include <fstream>
#include <sstream>

#include "rulelab/dynamics.hpp"
#include "rulelab/enumerate.hpp"

namespace rulelab {

uint64_t ReferenceTable::level1_mass() const {
    uint64_t mass = 0;
    for (const auto& [p, c] : level1)
        mass += c;
    return mass;
}

std::map<uint64_t, uint64_t>
load_reference_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open reference table: " +
                                 path.string());
    std::map<uint64_t, uint64_t> table;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        if (lineno == 1 && line == "program,count")
            continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw std::runtime_error(path.string() + ":" +
                                     std::to_string(lineno) +
                                     ": expected 'program,count'");
        try {
            const uint64_t program = std::stoull(line.substr(0, comma));
            const uint64_t count = std::stoull(line.substr(comma + 1));
            if (!table.emplace(program, count).second)
                throw std::runtime_error("duplicate program");
        } catch (const std::exception& e) {
            throw std::runtime_error(path.string() + ":" +
                                     std::to_string(lineno) + ": " +
                                     e.what());
        }
    }
    return table;
}

ReferenceTable builtin_reference() {
    // The published frequency listings for the 2-state, 2-symbol machine:
    // the 21-program level-1 table and the 3-program survivor push.
    ReferenceTable ref;
    ref.level1 = {{0, 1886},    {2048, 1147}, {4095, 640}, {3072, 110},
                  {1365, 64},   {2047, 64},   {2730, 64},  {1024, 41},
                  {3840, 17},   {128, 11},    {3968, 11},  {1344, 10},
                  {3584, 10},   {4032, 10},   {1792, 2},   {1920, 2},
                  {2560, 2},    {2688, 2},    {192, 1},    {1728, 1},
                  {2944, 1}};
    ref.level2_support = {{0, 16}, {4095, 3}, {2048, 2}};
    return ref;
}

namespace {

size_t mismatch_count(const std::map<uint64_t, uint64_t>& got,
                      const std::map<uint64_t, uint64_t>& want) {
    size_t bad = 0;
    auto gi = got.begin();
    auto wi = want.begin();
    while (gi != got.end() || wi != want.end()) {
        if (wi == want.end() || (gi != got.end() && gi->first < wi->first)) {
            ++bad;
            ++gi;
        } else if (gi == got.end() || wi->first < gi->first) {
            ++bad;
            ++wi;
        } else {
            if (gi->second != wi->second)
                ++bad;
            ++gi;
            ++wi;
        }
    }
    return bad;
}

} // namespace

ConventionSet calibrate(const ReferenceTable& ref, MachineSpec base) {
    if (base.description_bits() > 20)
        throw std::invalid_argument(
            "calibrate: base spec too large for exhaustive search (l > 20)");
    if (ref.level1.empty())
        throw std::invalid_argument("calibrate: empty reference table");

    std::vector<std::pair<std::string, size_t>> mismatches;
    std::vector<ConventionSet> histogram_matches;
    std::vector<OutputMap> matched_maps;

    for (const ConventionSet& candidate : ConventionSet::all()) {
        MachineSpec spec = MachineSpec::make(
            base.states, base.symbols, base.tape_len, base.steps, candidate);
        OutputMap map = enumerate_all(spec);
        LevelDistribution level1 = ctm(map);
        const size_t bad = mismatch_count(level1.counts, ref.level1);
        mismatches.emplace_back(candidate.describe(), bad);
        if (bad == 0) {
            histogram_matches.push_back(candidate);
            matched_maps.push_back(std::move(map));
        }
    }

    if (histogram_matches.empty())
        throw CalibrationError(
            "calibrate: no convention set reproduces the reference table",
            std::move(mismatches));

    // The histogram is blind to program-space bijections (state
    // relabelings and mirrors permute programs without changing counts),
    // so narrow progressively: first by the extreme quines, then by the
    // survivor push. Each narrowing applies only while candidates remain,
    // so a self-consistent toy reference still resolves.
    std::vector<size_t> keep(histogram_matches.size());
    for (size_t i = 0; i < keep.size(); ++i)
        keep[i] = i;

    const uint64_t top = base.program_count() - 1;
    auto narrow = [&](auto&& pred) {
        std::vector<size_t> next;
        for (size_t i : keep)
            if (pred(matched_maps[i]))
                next.push_back(i);
        if (!next.empty())
            keep = std::move(next);
    };
    narrow([&](const OutputMap& map) {
        return map(0) == 0 && map(top) == top;
    });
    if (!ref.level2_support.empty())
        narrow([&](const OutputMap& map) {
            LevelDistribution uniform;
            uniform.level = 1;
            uniform.mode = DistMode::SupportUniform;
            uniform.counts = ctm(map).counts;
            uniform.total_mass = uniform.counts.size();
            return push_forward(uniform, map).counts == ref.level2_support;
        });

    std::vector<ConventionSet> survivors;
    for (size_t i : keep)
        survivors.push_back(histogram_matches[i]);
    if (survivors.size() > 1) {
        std::ostringstream os;
        os << "calibrate: " << survivors.size()
           << " convention sets match the reference:";
        for (const ConventionSet& c : survivors)
            os << "\n  " << c.describe();
        throw CalibrationAmbiguity(os.str(), std::move(survivors));
    }
    return survivors.front();
}

} // namespace rulelab

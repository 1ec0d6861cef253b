#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "rulelab/machine.hpp"

namespace rulelab {

// Published level-1 counts for a machine size, plus the support-uniform
// push of its survivor set. The level-1 table alone is invariant under
// state-relabeling and mirror bijections of program space, so several
// convention sets reproduce it; the quine fixed points and the second
// table cut the tie.
struct ReferenceTable {
    std::map<uint64_t, uint64_t> level1;         // program -> weighted count
    std::map<uint64_t, uint64_t> level2_support; // may be empty

    uint64_t level1_mass() const;
};

// CSV with header "program,count".
std::map<uint64_t, uint64_t>
load_reference_csv(const std::filesystem::path& path);

// The tables shipped with the repository for the 2-state machine.
ReferenceTable builtin_reference();

struct CalibrationError : std::runtime_error {
    // describe() of each combination -> number of mismatched table rows.
    std::vector<std::pair<std::string, size_t>> mismatches;
    explicit CalibrationError(std::string what,
                              std::vector<std::pair<std::string, size_t>> mm)
        : std::runtime_error(std::move(what)), mismatches(std::move(mm)) {}
};

struct CalibrationAmbiguity : std::runtime_error {
    std::vector<ConventionSet> matches;
    explicit CalibrationAmbiguity(std::string what,
                                  std::vector<ConventionSet> m)
        : std::runtime_error(std::move(what)), matches(std::move(m)) {}
};

// Enumerates the base spec under every convention assignment and returns
// the unique one whose weighted level-1 distribution equals ref.level1
// exactly, whose extreme programs 0 and 2^l - 1 are fixed points, and
// (when given) whose survivor push matches ref.level2_support. Throws
// CalibrationError with per-combination mismatch counts when nothing
// matches, CalibrationAmbiguity when several do. Exhaustive, so the base
// spec must be small (l <= 20).
ConventionSet calibrate(const ReferenceTable& ref, MachineSpec base);

} // namespace rulelab

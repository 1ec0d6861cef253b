#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "rulelab/machine.hpp"

namespace rulelab {

// Run parameters assembled from a plain-text config file and command
// line flags; flags override file values. Convention knobs left unset
// mean "auto" (use the calibrated set).
struct RunConfig {
    uint32_t states = 2;
    uint32_t symbols = 2;
    uint32_t tape_len = 0; // 0 = default z = l
    uint32_t steps = 0;    // 0 = default t = l
    std::optional<Boundary> boundary;
    std::optional<MoveOne> move_one;
    std::optional<InitialState> initial_state;
    std::optional<TripletOrder> triplet_order;
    std::optional<TapeOrder> tape_order;
    unsigned workers = 1;
    uint64_t shard_size = uint64_t{1} << 16;
    std::string out_dir = ".";

    // Applies the knobs (calibrated defaults where unset) and validates.
    MachineSpec to_spec() const;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// `key = value` lines, '#' comments, blank lines ignored. Unknown keys
// are errors. Recognized keys: states, symbols, tape_len, steps,
// boundary, move_one, initial_state, triplet_order, tape_msb, workers,
// shard_size, out_dir.
RunConfig load_config_file(const std::filesystem::path& path,
                           RunConfig base = {});

// Applies one key=value assignment; shared by the file parser and the
// CLI flag handling.
void apply_config_value(RunConfig& config, const std::string& key,
                        const std::string& value);

} // namespace rulelab

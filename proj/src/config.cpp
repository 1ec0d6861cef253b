#include "rulelab/config.hpp"

#include <fstream>

namespace rulelab {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string::npos)
        return {};
    const auto last = s.find_last_not_of(" \t");
    return s.substr(first, last - first + 1);
}

uint64_t parse_uint(const std::string& key, const std::string& value) {
    try {
        size_t used = 0;
        const uint64_t v = std::stoull(value, &used);
        if (used != value.size())
            throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("bad value for " + key + ": '" + value + "'");
    }
}

} // namespace

MachineSpec RunConfig::to_spec() const {
    const ConventionSet base = calibrated_conventions();
    ConventionSet conv;
    conv.boundary = boundary.value_or(base.boundary);
    conv.move_one = move_one.value_or(base.move_one);
    conv.initial_state = initial_state.value_or(base.initial_state);
    conv.triplet_order = triplet_order.value_or(base.triplet_order);
    conv.tape_order = tape_order.value_or(base.tape_order);
    return MachineSpec::make(states, symbols, tape_len, steps, conv);
}

void apply_config_value(RunConfig& config, const std::string& key,
                        const std::string& value) {
    auto bad_choice = [&]() -> ConfigError {
        return ConfigError("bad value for " + key + ": '" + value + "'");
    };
    if (key == "states") {
        config.states = static_cast<uint32_t>(parse_uint(key, value));
    } else if (key == "symbols") {
        config.symbols = static_cast<uint32_t>(parse_uint(key, value));
    } else if (key == "tape_len") {
        config.tape_len = static_cast<uint32_t>(parse_uint(key, value));
    } else if (key == "steps") {
        config.steps = static_cast<uint32_t>(parse_uint(key, value));
    } else if (key == "boundary") {
        if (value == "auto")
            config.boundary.reset();
        else if (value == "wrap")
            config.boundary = Boundary::Wrap;
        else if (value == "clamp")
            config.boundary = Boundary::Clamp;
        else if (value == "halt")
            config.boundary = Boundary::Halt;
        else
            throw bad_choice();
    } else if (key == "move_one") {
        if (value == "auto")
            config.move_one.reset();
        else if (value == "right")
            config.move_one = MoveOne::Right;
        else if (value == "left")
            config.move_one = MoveOne::Left;
        else
            throw bad_choice();
    } else if (key == "initial_state") {
        if (value == "auto")
            config.initial_state.reset();
        else if (value == "first_listed")
            config.initial_state = InitialState::FirstListed;
        else if (value == "last_listed")
            config.initial_state = InitialState::LastListed;
        else
            throw bad_choice();
    } else if (key == "triplet_order") {
        if (value == "auto")
            config.triplet_order.reset();
        else if (value == "q_msb")
            config.triplet_order = TripletOrder::QMsb;
        else if (value == "q_lsb")
            config.triplet_order = TripletOrder::QLsb;
        else
            throw bad_choice();
    } else if (key == "tape_msb") {
        if (value == "auto")
            config.tape_order.reset();
        else if (value == "msb_left")
            config.tape_order = TapeOrder::MsbLeft;
        else if (value == "lsb_left")
            config.tape_order = TapeOrder::LsbLeft;
        else
            throw bad_choice();
    } else if (key == "workers") {
        const uint64_t v = parse_uint(key, value);
        if (v == 0 || v > 1024)
            throw bad_choice();
        config.workers = static_cast<unsigned>(v);
    } else if (key == "shard_size") {
        const uint64_t v = parse_uint(key, value);
        if (v == 0)
            throw bad_choice();
        config.shard_size = v;
    } else if (key == "out_dir") {
        config.out_dir = value;
    } else {
        throw ConfigError("unknown config key: '" + key + "'");
    }
}

RunConfig load_config_file(const std::filesystem::path& path,
                           RunConfig base) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file: " + path.string());
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path.string() + ":" + std::to_string(lineno) +
                              ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try {
            apply_config_value(base, key, value);
        } catch (const ConfigError& e) {
            throw ConfigError(path.string() + ":" + std::to_string(lineno) +
                              ": " + e.what());
        }
    }
    return base;
}

} // namespace rulelab

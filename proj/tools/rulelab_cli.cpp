// Command-line front end: enumerate/merge map files, calibrate the
// machine conventions, iterate meta-levels, and export tables/graphs.

#include <cstdio>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "rulelab/calibrate.hpp"
#include "rulelab/config.hpp"
#include "rulelab/dynamics.hpp"
#include "rulelab/enumerate.hpp"
#include "rulelab/export.hpp"
#include "rulelab/mapfile.hpp"

namespace {

using namespace rulelab;

struct SpecOptions {
    std::string config_file;
    std::vector<std::pair<std::string, std::string>> overrides;

    RunConfig resolve() const {
        RunConfig config;
        if (!config_file.empty())
            config = load_config_file(config_file, config);
        for (const auto& [key, value] : overrides)
            apply_config_value(config, key, value);
        return config;
    }
};

// Registers --config plus one flag per config key; flags override the
// file because they are applied after it.
void add_spec_options(CLI::App* cmd, SpecOptions& opts) {
    cmd->add_option("--config", opts.config_file,
                    "plain-text key = value config file");
    static const char* keys[] = {"states",        "symbols",
                                 "tape_len",      "steps",
                                 "boundary",      "move_one",
                                 "initial_state", "triplet_order",
                                 "tape_msb",      "workers",
                                 "shard_size",    "out_dir"};
    for (const char* key : keys) {
        std::string flag = "--" + std::string(key);
        for (auto& ch : flag)
            if (ch == '_')
                ch = '-';
        cmd->add_option_function<std::string>(
            flag,
            [&opts, key](const std::string& value) {
                opts.overrides.emplace_back(key, value);
            },
            std::string("config key ") + key);
    }
}

std::pair<uint64_t, uint64_t> parse_range(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw CLI::ValidationError("--range", "expected START:END");
    try {
        return {std::stoull(text.substr(0, colon)),
                std::stoull(text.substr(colon + 1))};
    } catch (const std::exception&) {
        throw CLI::ValidationError("--range", "expected START:END");
    }
}

void print_distribution(const LevelDistribution& dist) {
    std::vector<std::pair<uint64_t, uint64_t>> rows(dist.counts.begin(),
                                                    dist.counts.end());
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second)
            return a.second > b.second;
        return a.first < b.first;
    });
    std::printf("level %u (%s), support %zu, mass %llu\n", dist.level,
                dist_mode_name(dist.mode), dist.counts.size(),
                static_cast<unsigned long long>(dist.total_mass));
    for (const auto& [program, count] : rows)
        std::printf("  P%-6llu : %llu\n",
                    static_cast<unsigned long long>(program),
                    static_cast<unsigned long long>(count));
}

int cmd_calibrate(const std::string& ref_path, const std::string& ref2_path,
                  uint32_t states, const std::string& out_path) {
    ReferenceTable ref = builtin_reference();
    if (!ref_path.empty()) {
        ref.level1 = load_reference_csv(ref_path);
        ref.level2_support.clear();
    }
    if (!ref2_path.empty())
        ref.level2_support = load_reference_csv(ref2_path);

    const MachineSpec base = MachineSpec::make(states);
    const ConventionSet conventions = calibrate(ref, base);
    std::printf("calibrated: %s\n", conventions.describe().c_str());
    std::printf("flag byte: 0x%02x\n", conventions.to_byte());
    if (!out_path.empty()) {
        std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot write " + out_path);
        out << "# calibrated machine conventions\n"
            << "boundary = "
            << (conventions.boundary == Boundary::Wrap    ? "wrap"
                : conventions.boundary == Boundary::Clamp ? "clamp"
                                                          : "halt")
            << "\nmove_one = "
            << (conventions.move_one == MoveOne::Right ? "right" : "left")
            << "\ninitial_state = "
            << (conventions.initial_state == InitialState::FirstListed
                    ? "first_listed"
                    : "last_listed")
            << "\ntriplet_order = "
            << (conventions.triplet_order == TripletOrder::QMsb ? "q_msb"
                                                                : "q_lsb")
            << "\ntape_msb = "
            << (conventions.tape_order == TapeOrder::MsbLeft ? "msb_left"
                                                             : "lsb_left")
            << "\n";
        std::printf("written: %s\n", out_path.c_str());
    }
    return 0;
}

int cmd_enumerate(const SpecOptions& opts, const std::string& range_text,
                  const std::string& out_path) {
    const RunConfig config = opts.resolve();
    const MachineSpec spec = config.to_spec();
    uint64_t begin = 0;
    uint64_t end = spec.program_count();
    if (!range_text.empty())
        std::tie(begin, end) = parse_range(range_text);

    SweepStats stats;
    Shard shard = enumerate_range(spec, begin, end, config.workers, &stats,
                                  config.shard_size);
    write_shard(shard, out_path);
    std::printf("enumerated [%llu, %llu) of 2^%u programs with %u workers\n",
                static_cast<unsigned long long>(begin),
                static_cast<unsigned long long>(end), spec.description_bits(),
                config.workers);
    std::printf("throughput: %.0f programs/second (%.3f s)\n",
                stats.programs_per_second(), stats.seconds);
    std::printf("written: %s\n", out_path.c_str());
    return 0;
}

int cmd_merge(const std::vector<std::string>& inputs,
              const std::string& out_path) {
    std::vector<Shard> shards;
    shards.reserve(inputs.size());
    for (const std::string& path : inputs)
        shards.push_back(read_shard(path));
    OutputMap map = merge_shards(shards);
    write_map(map, out_path);
    std::printf("merged %zu shards into %s (%llu entries)\n", shards.size(),
                out_path.c_str(),
                static_cast<unsigned long long>(map.domain_size()));
    return 0;
}

int cmd_nest(const std::string& map_path, uint32_t levels,
             const std::string& csv_path) {
    const OutputMap map = read_map(map_path);
    const LevelDistribution dist = nested(map, levels);
    print_distribution(dist);
    if (!csv_path.empty()) {
        export_csv(dist, csv_path);
        std::printf("written: %s\n", csv_path.c_str());
    }
    return 0;
}

int cmd_attractors(const std::string& map_path, const std::string& csv_path) {
    const OutputMap map = read_map(map_path);
    const AttractorReport report = attractor_report(map, 1);
    std::printf("Q = %llu attractor strings in %zu cycles, M = %u\n",
                static_cast<unsigned long long>(report.attractor_count),
                report.cycles.size(), report.convergence);
    for (const Cycle& cycle : report.cycles) {
        std::printf("  cycle (%s):", cycle.nodes.size() == 1 ? "quine"
                                                             : "relay");
        for (uint64_t v : cycle.nodes)
            std::printf(" P%llu", static_cast<unsigned long long>(v));
        std::printf("\n");
    }
    std::printf("basins:\n");
    for (const auto& [attractor, size] : report.basins)
        std::printf("  P%-6llu : %llu\n",
                    static_cast<unsigned long long>(attractor),
                    static_cast<unsigned long long>(size));
    if (!csv_path.empty()) {
        export_csv(report, csv_path);
        std::printf("written: %s\n", csv_path.c_str());
    }
    return 0;
}

int cmd_export(const std::string& map_path, const std::string& format,
               uint32_t level, const std::string& out_path) {
    const OutputMap map = read_map(map_path);
    if (format == "csv") {
        export_csv(nested(map, level), out_path);
    } else if (format == "dot") {
        export_dot(map, level, out_path);
    } else {
        throw CLI::ValidationError("--format", "expected csv or dot");
    }
    std::printf("written: %s\n", out_path.c_str());
    return 0;
}

int cmd_report(const SpecOptions& opts, const std::string& map_path) {
    OutputMap map;
    if (!map_path.empty()) {
        map = read_map(map_path);
    } else {
        const RunConfig config = opts.resolve();
        map = enumerate_all(config.to_spec(), config.workers, nullptr,
                            config.shard_size);
    }

    AttractorReport report = attractor_report(map, 4);
    const size_t top = report.chain.support_uniform.size();

    std::printf("== per-level tables (uniform restart at each level) ==\n");
    for (size_t i = 0; i < top; ++i) {
        // Mirrors the published presentation: the first table is the
        // full weighted sweep, deeper ones restart from the survivors.
        const LevelDistribution& dist = i == 0
                                            ? report.chain.weighted[0]
                                            : report.chain.support_uniform[i];
        if (i > 0 && dist.counts == report.chain.support_uniform[i - 1].counts)
            break; // stabilized
        print_distribution(dist);
    }

    std::printf("== cumulative (weighted push-forward to stabilization) ==\n");
    LevelDistribution weighted = report.chain.weighted.back();
    for (;;) {
        LevelDistribution next = push_forward(weighted, map);
        if (next.counts == weighted.counts)
            break;
        weighted = std::move(next);
    }
    print_distribution(weighted);

    std::printf("Q = %llu, M = %u\n",
                static_cast<unsigned long long>(report.attractor_count),
                report.convergence);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"rule-space laboratory for fixed-length program machines"};
    app.require_subcommand(1);

    // calibrate
    auto* calibrate_cmd = app.add_subcommand(
        "calibrate", "resolve machine conventions against reference tables");
    std::string ref_path, ref2_path, conv_out;
    uint32_t calibrate_states = 2;
    calibrate_cmd->add_option("--reference", ref_path,
                              "level-1 reference CSV (program,count); "
                              "defaults to the built-in table");
    calibrate_cmd->add_option("--reference-level2", ref2_path,
                              "survivor-push reference CSV");
    calibrate_cmd->add_option("--states", calibrate_states,
                              "machine states (power of two)");
    calibrate_cmd->add_option("--out", conv_out,
                              "write the result as a config fragment");

    // enumerate
    auto* enumerate_cmd =
        app.add_subcommand("enumerate", "sweep programs into a map file");
    SpecOptions enum_opts;
    add_spec_options(enumerate_cmd, enum_opts);
    std::string enum_range, enum_out = "map.bin";
    enumerate_cmd->add_option("--range", enum_range,
                              "program index range START:END");
    enumerate_cmd->add_option("--out", enum_out, "output map/shard file");

    // merge
    auto* merge_cmd =
        app.add_subcommand("merge", "merge shard files into one map");
    std::vector<std::string> merge_inputs;
    std::string merge_out = "map.bin";
    merge_cmd->add_option("inputs", merge_inputs, "shard files")
        ->required()
        ->expected(-1);
    merge_cmd->add_option("--out", merge_out, "output map file");

    // nest
    auto* nest_cmd = app.add_subcommand(
        "nest", "apply the nested probability operator");
    std::string nest_map, nest_csv;
    uint32_t nest_levels = 1;
    nest_cmd->add_option("--map", nest_map, "map file")->required();
    nest_cmd->add_option("--levels", nest_levels, "number of levels w");
    nest_cmd->add_option("--csv", nest_csv, "also export as CSV");

    // attractors
    auto* attractors_cmd =
        app.add_subcommand("attractors", "cycles, basins, M and Q");
    std::string attr_map, attr_csv;
    attractors_cmd->add_option("--map", attr_map, "map file")->required();
    attractors_cmd->add_option("--csv", attr_csv, "also export basins CSV");

    // export
    auto* export_cmd =
        app.add_subcommand("export", "write CSV tables or mapping graphs");
    std::string export_map, export_format = "csv", export_out;
    uint32_t export_level = 1;
    export_cmd->add_option("--map", export_map, "map file")->required();
    export_cmd->add_option("--format", export_format, "csv or dot");
    export_cmd->add_option("--level", export_level, "meta-level w");
    export_cmd->add_option("--out", export_out, "output file")->required();

    // report
    auto* report_cmd = app.add_subcommand(
        "report", "reproduce the per-level and cumulative tables");
    SpecOptions report_opts;
    add_spec_options(report_cmd, report_opts);
    std::string report_map;
    report_cmd->add_option("--map", report_map,
                           "map file (otherwise enumerate now)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            return app.exit(e); // --help
        app.exit(e);
        return 2;
    }

    try {
        if (calibrate_cmd->parsed())
            return cmd_calibrate(ref_path, ref2_path, calibrate_states,
                                 conv_out);
        if (enumerate_cmd->parsed())
            return cmd_enumerate(enum_opts, enum_range, enum_out);
        if (merge_cmd->parsed())
            return cmd_merge(merge_inputs, merge_out);
        if (nest_cmd->parsed())
            return cmd_nest(nest_map, nest_levels, nest_csv);
        if (attractors_cmd->parsed())
            return cmd_attractors(attr_map, attr_csv);
        if (export_cmd->parsed())
            return cmd_export(export_map, export_format, export_level,
                              export_out);
        if (report_cmd->parsed())
            return cmd_report(report_opts, report_map);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const CalibrationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        std::cerr << "mismatched table entries per combination:\n";
        for (const auto& [name, bad] : e.mismatches)
            std::cerr << "  " << name << " : " << bad << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "rulelab/enumerate.hpp"
#include "rulelab/mapfile.hpp"
#include "test_support.hpp"

using namespace rulelab;
namespace fs = std::filesystem;

namespace {

MachineSpec calibrated_12() {
    return MachineSpec::make(2, 2, 0, 0, calibrated_conventions());
}

fs::path temp_file(const char* name) {
    return fs::temp_directory_path() / name;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

} // namespace

TEST_CASE("full sweep materializes the functional graph") {
    SweepStats stats;
    const OutputMap map = enumerate_all(calibrated_12(), 1, &stats);
    CHECK(map.domain_size() == 4096);
    CHECK(map(0) == 0);
    CHECK(map(4095) == 4095);
    CHECK(stats.programs == 4096);
    CHECK(stats.seconds >= 0.0);

    const LevelDistribution level1 = ctm(map);
    CHECK(level1.level == 1);
    CHECK(level1.mode == DistMode::Weighted);
    CHECK(level1.support_size() == 21);
    CHECK(level1.total_mass == 4096);
    CHECK(level1.counts == testsupport::paper_level1());

    uint64_t mass = 0;
    for (const auto& [x, c] : level1.counts)
        mass += c;
    CHECK(mass == 4096);
}

TEST_CASE("ctm of the identity toy counts every string once") {
    std::vector<uint64_t> entries(64);
    for (uint64_t i = 0; i < 64; ++i)
        entries[i] = i;
    const OutputMap map = testsupport::toy_map(std::move(entries));
    const LevelDistribution dist = ctm(map);
    CHECK(dist.support_size() == 64);
    for (const auto& [x, c] : dist.counts)
        CHECK(c == 1);
}

TEST_CASE("shard partitions merge to the serial sweep") {
    const MachineSpec spec = calibrated_12();
    const OutputMap serial = enumerate_all(spec);

    SUBCASE("two halves") {
        const Shard lo = enumerate_range(spec, 0, 2048);
        const Shard hi = enumerate_range(spec, 2048, 4096);
        const OutputMap merged = merge_shards({lo, hi});
        CHECK(merged.entries == serial.entries);
    }
    SUBCASE("unsorted input order") {
        const Shard lo = enumerate_range(spec, 0, 1000);
        const Shard mid = enumerate_range(spec, 1000, 3000);
        const Shard hi = enumerate_range(spec, 3000, 4096);
        const OutputMap merged = merge_shards({hi, lo, mid});
        CHECK(merged.entries == serial.entries);
    }
    SUBCASE("singleton shards") {
        std::vector<Shard> shards;
        shards.reserve(4096);
        for (uint64_t p = 0; p < 4096; ++p)
            shards.push_back(enumerate_range(spec, p, p + 1));
        const OutputMap merged = merge_shards(shards);
        CHECK(merged.entries == serial.entries);
    }
}

TEST_CASE("merge rejects bad shard sets") {
    const MachineSpec spec = calibrated_12();
    const Shard lo = enumerate_range(spec, 0, 2048);
    const Shard hi = enumerate_range(spec, 2048, 4096);
    const Shard overlap = enumerate_range(spec, 2000, 4096);
    const Shard inner = enumerate_range(spec, 2100, 4096);

    CHECK_THROWS_AS(merge_shards({lo, overlap}), MergeError);
    CHECK_THROWS_AS(merge_shards({lo, inner}), MergeError);
    CHECK_THROWS_AS(merge_shards({lo}), MergeError); // gap at the end
    CHECK_THROWS_AS(merge_shards({hi}), MergeError); // gap at the start
    CHECK_THROWS_WITH(merge_shards({lo, overlap}),
                      doctest::Contains("overlap"));
    CHECK_THROWS_WITH(merge_shards({lo, inner}), doctest::Contains("gap"));

    MachineSpec other = MachineSpec::make(2, 2, 12, 11,
                                          calibrated_conventions());
    Shard foreign = enumerate_range(other, 2048, 4096);
    CHECK_THROWS_WITH(merge_shards({lo, foreign}),
                      doctest::Contains("spec mismatch"));
}

TEST_CASE("parallel sweeps are deterministic") {
    const MachineSpec spec = calibrated_12();
    const OutputMap one = enumerate_all(spec, 1);
    const OutputMap two = enumerate_all(spec, 2);
    const OutputMap eight = enumerate_all(spec, 8);
    CHECK(one.entries == two.entries);
    CHECK(one.entries == eight.entries);

    // Work-unit size is a scheduling detail, never a result detail.
    const OutputMap fine = enumerate_all(spec, 4, nullptr, 13);
    const OutputMap coarse = enumerate_all(spec, 4, nullptr, 4096);
    CHECK(fine.entries == one.entries);
    CHECK(coarse.entries == one.entries);
}

TEST_CASE("enumerate rejects out-of-bounds ranges") {
    const MachineSpec spec = calibrated_12();
    CHECK_THROWS_AS(enumerate_range(spec, 0, 4097), std::domain_error);
    CHECK_THROWS_AS(enumerate_range(spec, 7, 3), std::domain_error);
}

TEST_CASE("map files round-trip bit-exactly") {
    const MachineSpec spec = calibrated_12();
    const OutputMap map = enumerate_all(spec);
    const fs::path path = temp_file("rulelab_test_map.bin");

    write_map(map, path);
    const OutputMap back = read_map(path);
    CHECK(back.spec == map.spec);
    CHECK(back.entries == map.entries);

    // Byte reproducibility: writing again yields the identical file.
    const std::string bytes1 = slurp(path);
    write_map(map, path);
    CHECK(slurp(path) == bytes1);

    const Shard shard = enumerate_range(spec, 100, 300);
    const fs::path spath = temp_file("rulelab_test_shard.bin");
    write_shard(shard, spath);
    const Shard sback = read_shard(spath);
    CHECK(sback.begin == 100);
    CHECK(sback.end == 300);
    CHECK(sback.entries == shard.entries);
    CHECK_THROWS_AS(read_map(spath), MapFileError); // partial range

    fs::remove(path);
    fs::remove(spath);
}

TEST_CASE("map file header layout is pinned") {
    const MachineSpec spec = calibrated_12();
    const OutputMap map = enumerate_all(spec);
    const fs::path path = temp_file("rulelab_test_header.bin");
    write_map(map, path);
    const std::string bytes = slurp(path);
    REQUIRE(bytes.size() == 52 + 8 * 4096);

    CHECK(bytes.substr(0, 8) == std::string("NAPMAP1\0", 8));
    auto u32 = [&](size_t off) {
        uint32_t v = 0;
        for (int i = 3; i >= 0; --i)
            v = (v << 8) | static_cast<unsigned char>(bytes[off + i]);
        return v;
    };
    auto u64 = [&](size_t off) {
        uint64_t v = 0;
        for (int i = 7; i >= 0; --i)
            v = (v << 8) | static_cast<unsigned char>(bytes[off + i]);
        return v;
    };
    CHECK(u32(8) == 1);   // version
    CHECK(u32(12) == 2);  // m
    CHECK(u32(16) == 2);  // n
    CHECK(u32(20) == 12); // z
    CHECK(u32(24) == 12); // t
    CHECK(static_cast<unsigned char>(bytes[28]) ==
          calibrated_conventions().to_byte());
    CHECK(bytes[29] == 0);
    CHECK(bytes[30] == 0);
    CHECK(bytes[31] == 0);
    CHECK(u32(32) == 12);     // l
    CHECK(u64(36) == 0);      // start
    CHECK(u64(44) == 4096);   // end
    // First two entries: run(0) = 0 and run(1).
    CHECK(u64(52) == map(0));
    CHECK(u64(60) == map(1));
    fs::remove(path);
}

TEST_CASE("map file reader rejects corrupted input") {
    const MachineSpec spec = calibrated_12();
    const Shard shard = enumerate_range(spec, 0, 4);
    const fs::path path = temp_file("rulelab_test_corrupt.bin");
    write_shard(shard, path);

    std::string bytes = slurp(path);
    {
        std::string bad = bytes;
        bad[0] = 'X';
        std::ofstream(path, std::ios::binary | std::ios::trunc) << bad;
        CHECK_THROWS_WITH(read_shard(path), doctest::Contains("magic"));
    }
    {
        std::string bad = bytes;
        bad[8] = 9; // version
        std::ofstream(path, std::ios::binary | std::ios::trunc) << bad;
        CHECK_THROWS_WITH(read_shard(path), doctest::Contains("version"));
    }
    {
        std::string bad = bytes.substr(0, bytes.size() - 3);
        std::ofstream(path, std::ios::binary | std::ios::trunc) << bad;
        CHECK_THROWS_WITH(read_shard(path), doctest::Contains("truncated"));
    }
    {
        std::string bad = bytes + "zz";
        std::ofstream(path, std::ios::binary | std::ios::trunc) << bad;
        CHECK_THROWS_WITH(read_shard(path), doctest::Contains("trailing"));
    }
    fs::remove(path);
}

#include "rulelab/mapfile.hpp"

#include <array>
#include <cstring>
#include <fstream>

namespace rulelab {

namespace {

constexpr std::array<char, 8> kMagic = {'N', 'A', 'P', 'M',
                                        'A', 'P', '1', '\0'};
constexpr uint32_t kVersion = 1;
constexpr size_t kHeaderSize = 52;

void put_u32(std::string& buf, uint32_t v) {
    for (int i = 0; i < 4; ++i)
        buf.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_u64(std::string& buf, uint64_t v) {
    for (int i = 0; i < 8; ++i)
        buf.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

uint32_t get_u32(const unsigned char* p) {
    uint32_t v = 0;
    for (int i = 3; i >= 0; --i)
        v = (v << 8) | p[i];
    return v;
}

uint64_t get_u64(const unsigned char* p) {
    uint64_t v = 0;
    for (int i = 7; i >= 0; --i)
        v = (v << 8) | p[i];
    return v;
}

void write_file(const MachineSpec& spec, uint64_t begin, uint64_t end,
                const std::vector<uint64_t>& entries,
                const std::filesystem::path& path) {
    std::string header;
    header.reserve(kHeaderSize);
    header.append(kMagic.data(), kMagic.size());
    put_u32(header, kVersion);
    put_u32(header, spec.states);
    put_u32(header, spec.symbols);
    put_u32(header, spec.tape_len);
    put_u32(header, spec.steps);
    header.push_back(static_cast<char>(spec.conventions.to_byte()));
    header.append(3, '\0');
    put_u32(header, spec.description_bits());
    put_u64(header, begin);
    put_u64(header, end);

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw MapFileError("cannot open for writing: " + path.string());
    out.write(header.data(), static_cast<std::streamsize>(header.size()));
    std::string row;
    row.reserve(8);
    for (uint64_t e : entries) {
        row.clear();
        put_u64(row, e);
        out.write(row.data(), 8);
    }
    out.flush();
    if (!out)
        throw MapFileError("write failed: " + path.string());
}

} // namespace

void write_shard(const Shard& shard, const std::filesystem::path& path) {
    write_file(shard.spec, shard.begin, shard.end, shard.entries, path);
}

void write_map(const OutputMap& map, const std::filesystem::path& path) {
    write_file(map.spec, 0, map.domain_size(), map.entries, path);
}

Shard read_shard(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw MapFileError("cannot open: " + path.string());
    std::array<unsigned char, kHeaderSize> header{};
    in.read(reinterpret_cast<char*>(header.data()), kHeaderSize);
    if (in.gcount() != static_cast<std::streamsize>(kHeaderSize))
        throw MapFileError("truncated header: " + path.string());
    if (std::memcmp(header.data(), kMagic.data(), kMagic.size()) != 0)
        throw MapFileError("bad magic: " + path.string());
    const uint32_t version = get_u32(header.data() + 8);
    if (version != kVersion)
        throw MapFileError("unsupported format version " +
                           std::to_string(version) + ": " + path.string());

    const uint32_t m = get_u32(header.data() + 12);
    const uint32_t n = get_u32(header.data() + 16);
    const uint32_t z = get_u32(header.data() + 20);
    const uint32_t t = get_u32(header.data() + 24);
    const ConventionSet conventions = ConventionSet::from_byte(header[28]);
    const uint32_t l = get_u32(header.data() + 32);
    const uint64_t begin = get_u64(header.data() + 36);
    const uint64_t end = get_u64(header.data() + 44);

    Shard shard;
    shard.spec = MachineSpec::make(m, n, z, t, conventions);
    if (shard.spec.description_bits() != l)
        throw MapFileError("header l field disagrees with m and n: " +
                           path.string());
    if (begin > end || end > shard.spec.program_count())
        throw MapFileError("bad range in header: " + path.string());
    shard.begin = begin;
    shard.end = end;

    const uint64_t count = end - begin;
    shard.entries.resize(count);
    std::vector<unsigned char> raw(8);
    for (uint64_t i = 0; i < count; ++i) {
        in.read(reinterpret_cast<char*>(raw.data()), 8);
        if (in.gcount() != 8)
            throw MapFileError("truncated entries: " + path.string());
        shard.entries[i] = get_u64(raw.data());
    }
    in.peek();
    if (!in.eof())
        throw MapFileError("trailing bytes after entries: " + path.string());
    return shard;
}

OutputMap read_map(const std::filesystem::path& path) {
    Shard shard = read_shard(path);
    if (shard.begin != 0 || shard.end != shard.spec.program_count())
        throw MapFileError("not a full-range map: " + path.string());
    OutputMap map;
    map.spec = shard.spec;
    map.entries = std::move(shard.entries);
    return map;
}

} // namespace rulelab

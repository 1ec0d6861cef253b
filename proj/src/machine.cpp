#include "rulelab/machine.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

namespace rulelab {

namespace {

bool is_power_of_two(uint32_t v) { return v != 0 && (v & (v - 1)) == 0; }

uint32_t log2_exact(uint32_t v) { return std::bit_width(v) - 1; }

} // namespace

uint8_t ConventionSet::to_byte() const {
    uint8_t flags = 0;
    flags |= static_cast<uint8_t>(move_one);
    flags |= static_cast<uint8_t>(static_cast<uint8_t>(boundary) << 1);
    flags |= static_cast<uint8_t>(static_cast<uint8_t>(initial_state) << 3);
    flags |= static_cast<uint8_t>(static_cast<uint8_t>(triplet_order) << 4);
    flags |= static_cast<uint8_t>(static_cast<uint8_t>(tape_order) << 5);
    return flags;
}

ConventionSet ConventionSet::from_byte(uint8_t flags) {
    if (flags > 0x3f || ((flags >> 1) & 0x3) > 2)
        throw std::invalid_argument("ConventionSet: bad flag byte " +
                                    std::to_string(flags));
    ConventionSet c;
    c.move_one = static_cast<MoveOne>(flags & 1);
    c.boundary = static_cast<Boundary>((flags >> 1) & 0x3);
    c.initial_state = static_cast<InitialState>((flags >> 3) & 1);
    c.triplet_order = static_cast<TripletOrder>((flags >> 4) & 1);
    c.tape_order = static_cast<TapeOrder>((flags >> 5) & 1);
    return c;
}

std::vector<ConventionSet> ConventionSet::all() {
    std::vector<ConventionSet> out;
    out.reserve(48);
    for (uint8_t flags = 0; flags < 0x40; ++flags) {
        if (((flags >> 1) & 0x3) > 2)
            continue;
        out.push_back(from_byte(flags));
    }
    return out;
}

std::string ConventionSet::describe() const {
    std::ostringstream os;
    os << "move_one="
       << (move_one == MoveOne::Right ? "right" : "left")
       << " boundary="
       << (boundary == Boundary::Wrap    ? "wrap"
           : boundary == Boundary::Clamp ? "clamp"
                                         : "halt")
       << " initial_state="
       << (initial_state == InitialState::FirstListed ? "first_listed"
                                                      : "last_listed")
       << " triplet_order="
       << (triplet_order == TripletOrder::QMsb ? "q_msb" : "q_lsb")
       << " tape_msb="
       << (tape_order == TapeOrder::MsbLeft ? "msb_left" : "lsb_left");
    return os.str();
}

ConventionSet calibrated_conventions() {
    // Unique survivor of calibrate() against the published 2-state
    // reference tables.
    return ConventionSet{MoveOne::Right, Boundary::Halt,
                         InitialState::FirstListed, TripletOrder::QMsb,
                         TapeOrder::MsbLeft};
}

MachineSpec MachineSpec::make(uint32_t states, uint32_t symbols,
                              uint32_t tape_len, uint32_t steps,
                              ConventionSet conventions) {
    if (symbols != 2)
        throw std::invalid_argument("MachineSpec: only n = 2 is supported");
    if (!is_power_of_two(states) || states < 2)
        throw std::invalid_argument(
            "MachineSpec: states must be a power of two >= 2");
    MachineSpec spec;
    spec.states = states;
    spec.symbols = symbols;
    spec.conventions = conventions;
    if (spec.description_bits() > 64)
        throw std::invalid_argument(
            "MachineSpec: description length exceeds 64 bits");
    const uint32_t l = spec.description_bits();
    spec.tape_len = tape_len == 0 ? l : tape_len;
    spec.steps = steps == 0 ? l : steps;
    return spec;
}

uint32_t MachineSpec::bits_per_rule() const {
    return log2_exact(states) + 1 + log2_exact(symbols);
}

uint32_t MachineSpec::description_bits() const {
    return states * symbols * bits_per_rule();
}

uint64_t MachineSpec::program_count() const {
    const uint32_t l = description_bits();
    return l >= 64 ? 0 : (uint64_t{1} << l);
}

uint32_t MachineSpec::initial_state_index() const {
    return conventions.initial_state == InitialState::FirstListed
               ? states - 1
               : 0;
}

uint64_t MachineSpec::spec_hash() const {
    // FNV-1a over the defining fields.
    uint64_t h = 0xcbf29ce484222325ull;
    auto mix = [&h](uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            h ^= (v >> (8 * i)) & 0xff;
            h *= 0x100000001b3ull;
        }
    };
    mix(states);
    mix(symbols);
    mix(tape_len);
    mix(steps);
    mix(conventions.to_byte());
    return h;
}

const Rule& TransitionTable::at(uint32_t state, uint32_t symbol) const {
    return rules.at(state * symbols + symbol);
}

TransitionTable decode_program(uint64_t u, const MachineSpec& spec) {
    const uint32_t l = spec.description_bits();
    if (l < 64 && u >= (uint64_t{1} << l))
        throw std::domain_error("decode_program: description number " +
                                std::to_string(u) + " out of range for l=" +
                                std::to_string(l));
    const uint32_t m = spec.states;
    const uint32_t n = spec.symbols;
    const uint32_t bw = spec.bits_per_rule();
    const uint32_t qbits = log2_exact(m);
    const uint32_t wbits = log2_exact(n);

    TransitionTable table;
    table.states = m;
    table.symbols = n;
    table.rules.resize(m * n);

    uint32_t block = 0;
    for (uint32_t s = m; s-- > 0;) {
        for (uint32_t r = n; r-- > 0;) {
            const uint32_t shift = l - bw * (block + 1);
            const uint64_t v = (u >> shift) & ((uint64_t{1} << bw) - 1);
            uint32_t q, mbit, w;
            if (spec.conventions.triplet_order == TripletOrder::QMsb) {
                q = static_cast<uint32_t>(v >> (1 + wbits));
                mbit = static_cast<uint32_t>((v >> wbits) & 1);
                w = static_cast<uint32_t>(v & ((1u << wbits) - 1));
            } else {
                q = static_cast<uint32_t>(v & (m - 1));
                mbit = static_cast<uint32_t>((v >> qbits) & 1);
                w = static_cast<uint32_t>(v >> (qbits + 1));
            }
            const bool right =
                (mbit == 1) == (spec.conventions.move_one == MoveOne::Right);
            Rule& rule = table.rules[s * n + r];
            rule.write = static_cast<uint8_t>(w);
            rule.move = right ? MoveDir::Right : MoveDir::Left;
            rule.next = q;
            ++block;
        }
    }
    return table;
}

uint64_t encode_table(const TransitionTable& table, const MachineSpec& spec) {
    const uint32_t m = spec.states;
    const uint32_t n = spec.symbols;
    if (table.states != m || table.symbols != n ||
        table.rules.size() != m * n)
        throw std::invalid_argument("encode_table: table shape mismatch");
    const uint32_t l = spec.description_bits();
    const uint32_t bw = spec.bits_per_rule();
    const uint32_t qbits = log2_exact(m);
    const uint32_t wbits = log2_exact(n);

    uint64_t u = 0;
    uint32_t block = 0;
    for (uint32_t s = m; s-- > 0;) {
        for (uint32_t r = n; r-- > 0;) {
            const Rule& rule = table.rules[s * n + r];
            if (rule.next >= m || rule.write >= n)
                throw std::invalid_argument(
                    "encode_table: rule field out of range");
            const bool move_bit_one =
                (rule.move == MoveDir::Right) ==
                (spec.conventions.move_one == MoveOne::Right);
            const uint64_t mbit = move_bit_one ? 1 : 0;
            uint64_t v;
            if (spec.conventions.triplet_order == TripletOrder::QMsb)
                v = (uint64_t{rule.next} << (1 + wbits)) | (mbit << wbits) |
                    rule.write;
            else
                v = (uint64_t{rule.write} << (qbits + 1)) | (mbit << qbits) |
                    rule.next;
            const uint32_t shift = l - bw * (block + 1);
            u |= v << shift;
            ++block;
        }
    }
    return u;
}

MachineState initial_machine_state(const MachineSpec& spec) {
    MachineState st;
    st.tape.assign(spec.tape_len, 0);
    st.head = 0;
    st.state = spec.initial_state_index();
    st.step = 0;
    st.parked = false;
    return st;
}

MachineState step(const MachineState& st, const TransitionTable& table,
                  const MachineSpec& spec) {
    MachineState next = st;
    ++next.step;
    if (st.parked)
        return next;

    const uint32_t z = spec.tape_len;
    const Rule& rule = table.at(st.state, st.tape[st.head]);
    next.tape[st.head] = rule.write;
    next.state = rule.next;

    const bool right = rule.move == MoveDir::Right;
    switch (spec.conventions.boundary) {
    case Boundary::Wrap:
        next.head = right ? (st.head + 1) % z : (st.head + z - 1) % z;
        break;
    case Boundary::Clamp:
        if (right)
            next.head = st.head + 1 < z ? st.head + 1 : z - 1;
        else
            next.head = st.head > 0 ? st.head - 1 : 0;
        break;
    case Boundary::Halt:
        if (right && st.head + 1 >= z)
            next.parked = true;
        else if (!right && st.head == 0)
            next.parked = true;
        else
            next.head = right ? st.head + 1 : st.head - 1;
        break;
    }
    return next;
}

uint64_t read_output(const MachineState& st, const MachineSpec& spec) {
    uint64_t value = 0;
    const size_t z = st.tape.size();
    if (spec.conventions.tape_order == TapeOrder::MsbLeft) {
        for (size_t i = 0; i < z; ++i)
            value = (value << 1) | st.tape[i];
    } else {
        for (size_t i = z; i-- > 0;)
            value = (value << 1) | st.tape[i];
    }
    return value;
}

uint64_t run(uint64_t u, const MachineSpec& spec) {
    const uint32_t l = spec.description_bits();
    if (spec.symbols != 2 || spec.tape_len != l)
        throw std::invalid_argument(
            "run: requires n = 2 and z = l so the output is a program");
    if (l < 64 && u >= (uint64_t{1} << l))
        throw std::domain_error("run: description number out of range");

    // Flat rule arrays; tape packed into a word with cell i at bit z-1-i.
    const uint32_t m = spec.states;
    const uint32_t bw = spec.bits_per_rule();
    const uint32_t qbits = log2_exact(m);
    uint32_t next_state[8][2];
    int head_delta[8][2];
    uint64_t write_bit[8][2];

    uint32_t block = 0;
    for (uint32_t s = m; s-- > 0;) {
        for (uint32_t r = 2; r-- > 0;) {
            const uint32_t shift = l - bw * (block + 1);
            const uint64_t v = (u >> shift) & ((uint64_t{1} << bw) - 1);
            uint32_t q, mbit, w;
            if (spec.conventions.triplet_order == TripletOrder::QMsb) {
                q = static_cast<uint32_t>(v >> 2);
                mbit = static_cast<uint32_t>((v >> 1) & 1);
                w = static_cast<uint32_t>(v & 1);
            } else {
                q = static_cast<uint32_t>(v & (m - 1));
                mbit = static_cast<uint32_t>((v >> qbits) & 1);
                w = static_cast<uint32_t>((v >> (qbits + 1)) & 1);
            }
            const bool right =
                (mbit == 1) == (spec.conventions.move_one == MoveOne::Right);
            next_state[s][r] = q;
            head_delta[s][r] = right ? +1 : -1;
            write_bit[s][r] = w;
            ++block;
        }
    }

    const int z = static_cast<int>(spec.tape_len);
    const Boundary boundary = spec.conventions.boundary;
    uint64_t tape = 0; // cell i at bit z-1-i
    int head = 0;
    uint32_t state = spec.initial_state_index();

    for (uint32_t t = 0; t < spec.steps; ++t) {
        const int shift = z - 1 - head;
        const uint32_t r = (tape >> shift) & 1;
        tape = (tape & ~(uint64_t{1} << shift)) | (write_bit[state][r] << shift);
        int h = head + head_delta[state][r];
        state = next_state[state][r];
        if (h < 0 || h >= z) {
            if (boundary == Boundary::Wrap)
                h = (h + z) % z;
            else if (boundary == Boundary::Clamp)
                h = h < 0 ? 0 : z - 1;
            else
                break; // Halt: configuration is frozen from here on
        }
        head = h;
    }

    if (spec.conventions.tape_order == TapeOrder::MsbLeft)
        return tape;
    // Reverse the low z bits.
    uint64_t rev = 0;
    for (int i = 0; i < z; ++i)
        rev = (rev << 1) | ((tape >> i) & 1);
    return rev;
}

} // namespace rulelab

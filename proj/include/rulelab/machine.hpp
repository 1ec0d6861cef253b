#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rulelab {

// Meaning of the M bit inside a rule triplet. M = 1 moves the head in this
// direction, M = 0 in the opposite one.
enum class MoveOne : uint8_t { Right = 0, Left = 1 };

// Head behavior at the tape edges.
//   Wrap  - the tape is a ring, positions are taken mod z.
//   Clamp - the head sticks to the edge cell.
//   Halt  - stepping off either edge freezes the configuration; the
//           remaining steps of the budget are identity steps.
enum class Boundary : uint8_t { Wrap = 0, Clamp = 1, Halt = 2 };

// State the machine occupies at step 0. The description number lists rule
// blocks for states in descending order, so "first listed" is state m-1
// and "last listed" is state 0.
enum class InitialState : uint8_t { FirstListed = 0, LastListed = 1 };

// Bit significance of the fields inside one rule block. The textual field
// order is always Q M W; this knob says whether Q sits at the
// most-significant end of the block or the least-significant one.
enum class TripletOrder : uint8_t { QMsb = 0, QLsb = 1 };

// How the final tape is read back as an integer: whether the leftmost
// cell contributes the most- or least-significant bit.
enum class TapeOrder : uint8_t { MsbLeft = 0, LsbLeft = 1 };

// The five semantic knobs that the description-number encoding leaves
// open. Everything else (block order, field order, step structure) is
// fixed. Serializes to a single flag byte that is stamped into map files.
struct ConventionSet {
    MoveOne move_one = MoveOne::Right;
    Boundary boundary = Boundary::Halt;
    InitialState initial_state = InitialState::FirstListed;
    TripletOrder triplet_order = TripletOrder::QMsb;
    TapeOrder tape_order = TapeOrder::MsbLeft;

    bool operator==(const ConventionSet&) const = default;

    // Flag byte layout: bit 0 move_one, bits 1-2 boundary, bit 3
    // initial_state, bit 4 triplet_order, bit 5 tape_order.
    uint8_t to_byte() const;
    static ConventionSet from_byte(uint8_t flags);

    // All 48 assignments, in flag-byte order.
    static std::vector<ConventionSet> all();

    std::string describe() const;
};

// The convention set under which the machine reproduces the published
// 2-state reference tables. See calibrate() for how it is derived.
ConventionSet calibrated_conventions();

// Machine shape: m states, n symbols, tape length z, step budget t, plus
// the conventions. l (description bits) is derived: one block of
// lg m + 1 + lg n bits per (state, symbol) pair.
struct MachineSpec {
    uint32_t states = 2;   // m, power of two, 2 or 4 with n = 2
    uint32_t symbols = 2;  // n, fixed to 2
    uint32_t tape_len = 0; // z
    uint32_t steps = 0;    // t
    ConventionSet conventions{};

    // Validates and fills defaults (z = t = l when left 0). Throws
    // std::invalid_argument on non-power-of-two m, n != 2, or l > 64.
    static MachineSpec make(uint32_t states, uint32_t symbols = 2,
                            uint32_t tape_len = 0, uint32_t steps = 0,
                            ConventionSet conventions = {});

    uint32_t bits_per_rule() const;
    uint32_t description_bits() const; // l
    uint64_t program_count() const;    // 2^l (l = 64 maps to 0; unused there)
    uint32_t initial_state_index() const;

    // Stable hash over every field that influences run(); used to pair
    // shards with the spec that produced them.
    uint64_t spec_hash() const;

    bool operator==(const MachineSpec&) const = default;
};

enum class MoveDir : uint8_t { Left = 0, Right = 1 };

struct Rule {
    uint8_t write = 0;
    MoveDir move = MoveDir::Left;
    uint32_t next = 0;
};

// Fully decoded description number: one rule per (state, symbol) pair.
struct TransitionTable {
    uint32_t states = 0;
    uint32_t symbols = 0;
    std::vector<Rule> rules; // index = state * symbols + symbol

    const Rule& at(uint32_t state, uint32_t symbol) const;
};

// Rule block for (state s, symbol r) sits at block index
// (m-1-s)*n + (n-1-r) counting from the most-significant end: blocks are
// laid out in descending (state, symbol) order.
TransitionTable decode_program(uint64_t u, const MachineSpec& spec);

// Inverse of decode_program: encode(decode(u)) == u for all u < 2^l.
uint64_t encode_table(const TransitionTable& table, const MachineSpec& spec);

struct MachineState {
    std::vector<uint8_t> tape; // z symbols
    uint32_t head = 0;         // always in [0, z)
    uint32_t state = 0;
    uint32_t step = 0;
    bool parked = false; // halt boundary only: head left the tape
};

MachineState initial_machine_state(const MachineSpec& spec);

// One step: read, write, move, state update. Pure function of its inputs.
// A parked state is returned unchanged except for the step counter.
MachineState step(const MachineState& st, const TransitionTable& table,
                  const MachineSpec& spec);

// Final tape as an integer per conventions.tape_order.
uint64_t read_output(const MachineState& st, const MachineSpec& spec);

// Runs program u from the all-zero tape, head leftmost, for exactly t
// steps, and reads the tape back as a description number. Requires n = 2
// and z = l so the output is reinterpretable as a program; throws
// std::invalid_argument otherwise.
uint64_t run(uint64_t u, const MachineSpec& spec);

// Same contract as run(), implemented as a deliberately naive
// cell-by-cell simulator with no bit tricks. Lives in its own
// translation unit and shares no decoding code with run().
uint64_t reference_run(uint64_t u, const MachineSpec& spec);

} // namespace rulelab

// Naive oracle simulator. Mirrors the run() contract but is written
// symbol-at-a-time against the spec prose, with no bit packing and no
// shared decoding helpers, so the two implementations can check each
// other. Keep it slow and obvious.

#include "rulelab/machine.hpp"

#include <stdexcept>
#include <vector>

namespace rulelab {

namespace {

struct NaiveRule {
    int write_symbol;
    bool move_right;
    int next_state;
};

std::vector<int> number_to_bits(uint64_t u, int length) {
    // Most-significant bit first.
    std::vector<int> bits(length, 0);
    for (int i = length - 1; i >= 0; --i) {
        bits[i] = static_cast<int>(u % 2);
        u = u / 2;
    }
    return bits;
}

} // namespace

uint64_t reference_run(uint64_t u, const MachineSpec& spec) {
    const int num_states = static_cast<int>(spec.states);
    const int num_symbols = static_cast<int>(spec.symbols);
    if (num_symbols != 2 ||
        spec.tape_len != spec.description_bits())
        throw std::invalid_argument(
            "reference_run: requires n = 2 and z = l");

    int state_bits = 0;
    while ((1 << state_bits) < num_states)
        ++state_bits;
    const int block_bits = state_bits + 1 + 1; // Q, M, W fields
    const int length = num_states * num_symbols * block_bits;
    if (length < 64 && u >= (uint64_t{1} << length))
        throw std::domain_error("reference_run: program out of range");

    const std::vector<int> bits = number_to_bits(u, length);

    // Blocks appear for (state, symbol) pairs in descending order,
    // starting at the most significant end.
    std::vector<std::vector<NaiveRule>> rules(
        num_states, std::vector<NaiveRule>(num_symbols));
    int cursor = 0;
    for (int s = num_states - 1; s >= 0; --s) {
        for (int r = num_symbols - 1; r >= 0; --r) {
            std::vector<int> field(bits.begin() + cursor,
                                   bits.begin() + cursor + block_bits);
            cursor += block_bits;
            // Field order within the block is Q M W (QMsb) or W M Q
            // (QLsb); multi-bit Q keeps its natural significance.
            int q = 0;
            int move_bit = 0;
            int w = 0;
            if (spec.conventions.triplet_order == TripletOrder::QMsb) {
                for (int i = 0; i < state_bits; ++i)
                    q = q * 2 + field[i];
                move_bit = field[state_bits];
                w = field[state_bits + 1];
            } else {
                w = field[0];
                move_bit = field[1];
                for (int i = 0; i < state_bits; ++i)
                    q = q * 2 + field[2 + i];
            }
            NaiveRule rule;
            rule.write_symbol = w;
            if (spec.conventions.move_one == MoveOne::Right)
                rule.move_right = move_bit == 1;
            else
                rule.move_right = move_bit == 0;
            rule.next_state = q;
            rules[s][r] = rule;
        }
    }

    const int z = static_cast<int>(spec.tape_len);
    std::vector<int> tape(z, 0);
    int head = 0;
    int state = spec.conventions.initial_state == InitialState::FirstListed
                    ? num_states - 1
                    : 0;
    bool off_tape = false;

    for (uint32_t t = 0; t < spec.steps; ++t) {
        if (off_tape)
            break;
        const int seen = tape[head];
        const NaiveRule& rule = rules[state][seen];
        tape[head] = rule.write_symbol;
        state = rule.next_state;
        int moved = rule.move_right ? head + 1 : head - 1;
        if (moved < 0 || moved >= z) {
            switch (spec.conventions.boundary) {
            case Boundary::Wrap:
                moved = (moved + z) % z;
                break;
            case Boundary::Clamp:
                moved = moved < 0 ? 0 : z - 1;
                break;
            case Boundary::Halt:
                off_tape = true;
                moved = head;
                break;
            }
        }
        head = moved;
    }

    uint64_t value = 0;
    if (spec.conventions.tape_order == TapeOrder::MsbLeft) {
        for (int i = 0; i < z; ++i)
            value = value * 2 + static_cast<uint64_t>(tape[i]);
    } else {
        for (int i = z - 1; i >= 0; --i)
            value = value * 2 + static_cast<uint64_t>(tape[i]);
    }
    return value;
}

} // namespace rulelab

#pragma once

#include "arrayrepair/blockmat.hpp"
#include "arrayrepair/gf2m.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace arrayrepair {

// Outcome of the MDS check on a candidate parity-check structure. Node
// indices are 0-based.
struct MdsReport {
    bool ok = true;
    std::vector<std::size_t> singular_blocks;
    std::vector<std::pair<std::size_t, std::size_t>> violating_pairs;
};

// ok iff every A_i is invertible and A_i + A_j is invertible for all i < j.
MdsReport validate_mds(const Field& field, std::span<const Block> blocks);

// (K+2, K) MDS array code with sub-packetization 2 and parity-check matrix
//
//     [ I    I   ...  I   ]
//     [ A_1  A_2 ... A_N  ]
//
// The constructor enforces N >= 3 and the MDS condition.
class ArrayCode {
public:
    static constexpr std::size_t kMinNodes = 3;

    ArrayCode(Field field, std::vector<Block> blocks);

    const Field& field() const { return field_; }
    std::size_t n() const { return blocks_.size(); }
    std::size_t k() const { return blocks_.size() - 2; }
    const Block& block(std::size_t i) const { return blocks_[i]; }
    std::span<const Block> blocks() const { return blocks_; }

    friend bool operator==(const ArrayCode&, const ArrayCode&) = default;

private:
    Field field_;
    std::vector<Block> blocks_;
};

// alpha^(i) for every node.
using Codeword = std::vector<Vec2>;

// Nodes 0..K-1 hold the 2K data symbols in order; nodes K and K+1 are parity.
Codeword encode(const ArrayCode& code, std::span<const Elem> data);

// Checks sum_i alpha^(i) = 0 and sum_i A_i alpha^(i) = 0.
bool satisfies_parity(const ArrayCode& code, std::span<const Vec2> word);

inline constexpr std::uint64_t kDefaultDrawBudget = 1'000'000;

// Rejection sampling: draw uniform blocks and keep those compatible with
// the ones already chosen. Deterministic in seed. Throws GenerationError
// when max_draws candidates did not yield n blocks.
ArrayCode random_code(const Field& field, std::size_t n, std::uint64_t seed,
                      std::uint64_t max_draws = kDefaultDrawBudget);

// Every code with A_1 = I and A_2 < ... < A_N (blocks compared as base-q
// numbers). Any valid code maps onto one of these by a node relabelling and
// left multiplication of the lower block row by A_1^{-1}; both preserve the
// row space of the parity-check matrix and therefore every repair property.
std::vector<ArrayCode> enumerate_reduced_codes(const Field& field, std::size_t n);

// {"m": 4, "poly": 19, "n": 3, "A": [[2,0,0,3], ...]}
std::string code_to_json(const ArrayCode& code);
ArrayCode code_from_json(std::string_view text);

} // namespace arrayrepair

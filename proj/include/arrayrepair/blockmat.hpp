#pragma once

#include "arrayrepair/gf2m.hpp"

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

namespace arrayrepair {

using Vec2 = std::array<Elem, 2>;

// 2x2 matrix over GF(2^m), row-major [b11, b12, b21, b22].
struct Block {
    std::array<Elem, 4> e{};

    static constexpr Block identity() { return Block{{Elem(1), Elem(0), Elem(0), Elem(1)}}; }
    static constexpr Block zero() { return Block{}; }
    static Block of(const Field& f, std::uint32_t b11, std::uint32_t b12, std::uint32_t b21,
                    std::uint32_t b22);

    constexpr Elem at(int row, int col) const { return e[static_cast<std::size_t>(2 * row + col)]; }
    constexpr bool is_zero() const {
        return e[0].is_zero() && e[1].is_zero() && e[2].is_zero() && e[3].is_zero();
    }

    friend constexpr bool operator==(const Block&, const Block&) = default;
    friend constexpr auto operator<=>(const Block&, const Block&) = default;
};

constexpr Block operator+(const Block& a, const Block& b) {
    return Block{{a.e[0] + b.e[0], a.e[1] + b.e[1], a.e[2] + b.e[2], a.e[3] + b.e[3]}};
}

Block mul(const Field& f, const Block& a, const Block& b);
Block scale(const Field& f, Elem s, const Block& a);
Vec2 apply(const Field& f, const Block& a, const Vec2& v);
Elem det(const Field& f, const Block& a);
bool is_invertible(const Field& f, const Block& a);
// Throws SingularMatrixError when det(a) = 0.
Block inverse(const Field& f, const Block& a);

// Block taxonomy. Zero is the all-zero block. L blocks have a zero first
// column, R blocks a zero second column; everything else is M, and an
// invertible M block is what the theory calls M_inv.
enum class BlockClass : std::uint8_t { Zero = 0, L = 1, R = 2, M = 3 };

// How strictly the non-zero column of an L/R block is read.
//   Support: the other column is any nonzero vector. Membership is then
//            invariant under left multiplication by an invertible matrix.
//   Strict:  both entries of the other column must be nonzero, so e.g.
//            [1 0; 0 0] is an M block.
enum class ClassRule : std::uint8_t { Support, Strict };

struct Classification {
    BlockClass tag = BlockClass::Zero;
    bool invertible = false;

    friend constexpr bool operator==(const Classification&, const Classification&) = default;
};

BlockClass block_class(const Block& b, ClassRule rule = ClassRule::Support);
Classification classify(const Field& f, const Block& b, ClassRule rule = ClassRule::Support);
std::string_view to_string(BlockClass c);

// 2x4 repair matrix [M1 | M2], row-major.
struct RepairMat {
    std::array<Elem, 8> e{};

    static RepairMat from_halves(const Block& left, const Block& right);
    static RepairMat of(const Field& f, const std::array<std::uint32_t, 8>& values);

    constexpr Elem at(int row, int col) const { return e[static_cast<std::size_t>(4 * row + col)]; }
    Block left() const { return Block{{e[0], e[1], e[4], e[5]}}; }
    Block right() const { return Block{{e[2], e[3], e[6], e[7]}}; }

    friend constexpr bool operator==(const RepairMat&, const RepairMat&) = default;
    friend constexpr auto operator<=>(const RepairMat&, const RepairMat&) = default;
};

// t * m for a 2x2 t.
RepairMat mul(const Field& f, const Block& t, const RepairMat& m);
int rank(const Field& f, const RepairMat& m);
// Reduced row-echelon form. Two full-rank matrices span the same row space
// exactly when their RREFs are equal.
RepairMat rref(const Field& f, const RepairMat& m);

// (q^2 + 1)(q^2 + q + 1): the number of 2-dimensional subspaces of F_q^4.
std::uint64_t row_space_count(std::uint64_t q);

// One RREF representative per 2-dimensional row space of F_q^4. Ordered by
// pivot-column pair (01, 02, 03, 12, 13, 23), then by the free entries read
// row-major as base-q digits, most significant first.
std::vector<RepairMat> enumerate_row_spaces(const Field& f);

} // namespace arrayrepair

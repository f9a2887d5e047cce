#include "arrayrepair/blockmat.hpp"

#include "arrayrepair/errors.hpp"

#include <utility>

namespace arrayrepair {

Block Block::of(const Field& f, std::uint32_t b11, std::uint32_t b12, std::uint32_t b21,
                std::uint32_t b22) {
    return Block{{f.elem(b11), f.elem(b12), f.elem(b21), f.elem(b22)}};
}

Block mul(const Field& f, const Block& a, const Block& b) {
    return Block{{
        f.mul_raw(a.e[0], b.e[0]) + f.mul_raw(a.e[1], b.e[2]),
        f.mul_raw(a.e[0], b.e[1]) + f.mul_raw(a.e[1], b.e[3]),
        f.mul_raw(a.e[2], b.e[0]) + f.mul_raw(a.e[3], b.e[2]),
        f.mul_raw(a.e[2], b.e[1]) + f.mul_raw(a.e[3], b.e[3]),
    }};
}

Block scale(const Field& f, Elem s, const Block& a) {
    return Block{{f.mul_raw(s, a.e[0]), f.mul_raw(s, a.e[1]), f.mul_raw(s, a.e[2]),
                  f.mul_raw(s, a.e[3])}};
}

Vec2 apply(const Field& f, const Block& a, const Vec2& v) {
    return {f.mul_raw(a.e[0], v[0]) + f.mul_raw(a.e[1], v[1]),
            f.mul_raw(a.e[2], v[0]) + f.mul_raw(a.e[3], v[1])};
}

Elem det(const Field& f, const Block& a) {
    // Characteristic 2: ad - bc = ad + bc.
    return f.mul_raw(a.e[0], a.e[3]) + f.mul_raw(a.e[1], a.e[2]);
}

bool is_invertible(const Field& f, const Block& a) { return !det(f, a).is_zero(); }

Block inverse(const Field& f, const Block& a) {
    const Elem d = det(f, a);
    if (d.is_zero()) throw SingularMatrixError("block is singular");
    const Elem s = f.inv_raw(d);
    return scale(f, s, Block{{a.e[3], a.e[1], a.e[2], a.e[0]}});
}

BlockClass block_class(const Block& b, ClassRule rule) {
    if (b.is_zero()) return BlockClass::Zero;
    const bool first_zero = b.e[0].is_zero() && b.e[2].is_zero();
    const bool second_zero = b.e[1].is_zero() && b.e[3].is_zero();
    if (rule == ClassRule::Support) {
        if (first_zero) return BlockClass::L;
        if (second_zero) return BlockClass::R;
        return BlockClass::M;
    }
    if (first_zero && !b.e[1].is_zero() && !b.e[3].is_zero()) return BlockClass::L;
    if (second_zero && !b.e[0].is_zero() && !b.e[2].is_zero()) return BlockClass::R;
    return BlockClass::M;
}

Classification classify(const Field& f, const Block& b, ClassRule rule) {
    Classification c;
    c.tag = block_class(b, rule);
    c.invertible = is_invertible(f, b);
    return c;
}

std::string_view to_string(BlockClass c) {
    switch (c) {
    case BlockClass::Zero: return "O";
    case BlockClass::L: return "L";
    case BlockClass::R: return "R";
    case BlockClass::M: return "M";
    }
    return "?";
}

RepairMat RepairMat::from_halves(const Block& left, const Block& right) {
    return RepairMat{{left.e[0], left.e[1], right.e[0], right.e[1], left.e[2], left.e[3],
                      right.e[2], right.e[3]}};
}

RepairMat RepairMat::of(const Field& f, const std::array<std::uint32_t, 8>& values) {
    RepairMat m;
    for (std::size_t k = 0; k < 8; ++k) m.e[k] = f.elem(values[k]);
    return m;
}

RepairMat mul(const Field& f, const Block& t, const RepairMat& m) {
    RepairMat out;
    for (std::size_t c = 0; c < 4; ++c) {
        out.e[c] = f.mul_raw(t.e[0], m.e[c]) + f.mul_raw(t.e[1], m.e[4 + c]);
        out.e[4 + c] = f.mul_raw(t.e[2], m.e[c]) + f.mul_raw(t.e[3], m.e[4 + c]);
    }
    return out;
}

namespace {

// Row reduction in place; returns the rank.
int reduce(const Field& f, RepairMat& m) {
    auto row = [&m](int r) { return m.e.begin() + 4 * r; };
    int pivot_row = 0;
    for (int col = 0; col < 4 && pivot_row < 2; ++col) {
        int found = -1;
        for (int r = pivot_row; r < 2; ++r)
            if (!m.at(r, col).is_zero()) {
                found = r;
                break;
            }
        if (found < 0) continue;
        if (found != pivot_row)
            for (int c = 0; c < 4; ++c) std::swap(row(found)[c], row(pivot_row)[c]);
        const Elem s = f.inv_raw(m.at(pivot_row, col));
        for (int c = 0; c < 4; ++c) row(pivot_row)[c] = f.mul_raw(s, row(pivot_row)[c]);
        const int other = 1 - pivot_row;
        const Elem factor = m.at(other, col);
        if (!factor.is_zero())
            for (int c = 0; c < 4; ++c)
                row(other)[c] += f.mul_raw(factor, row(pivot_row)[c]);
        ++pivot_row;
    }
    return pivot_row;
}

} // namespace

int rank(const Field& f, const RepairMat& m) {
    RepairMat copy = m;
    return reduce(f, copy);
}

RepairMat rref(const Field& f, const RepairMat& m) {
    RepairMat copy = m;
    reduce(f, copy);
    return copy;
}

std::uint64_t row_space_count(std::uint64_t q) { return (q * q + 1) * (q * q + q + 1); }

std::vector<RepairMat> enumerate_row_spaces(const Field& f) {
    const std::uint32_t q = f.size();
    std::vector<RepairMat> out;
    out.reserve(static_cast<std::size_t>(row_space_count(q)));

    constexpr std::array<std::pair<int, int>, 6> pivots = {
        {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
    for (const auto& [p0, p1] : pivots) {
        // Free positions in row-major order: row 0 right of its pivot except
        // the second pivot column, row 1 right of its pivot.
        std::vector<std::size_t> free;
        for (int c = p0 + 1; c < 4; ++c)
            if (c != p1) free.push_back(static_cast<std::size_t>(c));
        for (int c = p1 + 1; c < 4; ++c) free.push_back(static_cast<std::size_t>(4 + c));

        std::uint64_t combos = 1;
        for (std::size_t k = 0; k < free.size(); ++k) combos *= q;

        for (std::uint64_t v = 0; v < combos; ++v) {
            RepairMat m;
            m.e[static_cast<std::size_t>(p0)] = Elem(1);
            m.e[static_cast<std::size_t>(4 + p1)] = Elem(1);
            std::uint64_t rest = v;
            for (std::size_t k = free.size(); k-- > 0;) {
                m.e[free[k]] = Elem(static_cast<std::uint16_t>(rest % q));
                rest /= q;
            }
            out.push_back(m);
        }
    }
    return out;
}

} // namespace arrayrepair

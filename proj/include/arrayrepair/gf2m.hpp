#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace arrayrepair {

// An element of GF(2^m) in polynomial basis. Addition is field independent
// in characteristic 2, so it is provided as an operator; everything else
// goes through Field.
struct Elem {
    std::uint16_t value = 0;

    constexpr Elem() = default;
    constexpr explicit Elem(std::uint16_t v) : value(v) {}

    constexpr bool is_zero() const { return value == 0; }

    friend constexpr auto operator<=>(Elem, Elem) = default;
    friend constexpr Elem operator+(Elem a, Elem b) {
        return Elem(static_cast<std::uint16_t>(a.value ^ b.value));
    }
    constexpr Elem& operator+=(Elem o) {
        value ^= o.value;
        return *this;
    }
};

// True when poly (bit i = coefficient of x^i) is irreducible over GF(2).
bool is_irreducible(std::uint32_t poly);

// Degree of a GF(2) polynomial; -1 for the zero polynomial.
int poly_degree(std::uint32_t poly);

// Carry-less shift-and-XOR product of a and b reduced modulo poly. This is
// the reference multiplication; Field's tables are built from it.
std::uint32_t clmul_mod(std::uint32_t a, std::uint32_t b, std::uint32_t poly);

// GF(2^m), 2 <= m <= 16. Immutable after construction and cheap to copy
// (tables are shared).
class Field {
public:
    static constexpr unsigned kMinDegree = 2;
    static constexpr unsigned kMaxDegree = 16;

    // Built-in reduction polynomial for each supported degree
    // (m = 4 gives x^4 + x + 1).
    static std::uint32_t default_polynomial(unsigned degree);

    static Field make(unsigned degree);
    static Field make(unsigned degree, std::uint32_t poly);

    unsigned degree() const { return degree_; }
    std::uint32_t polynomial() const { return poly_; }
    std::uint32_t size() const { return size_; }
    std::string name() const;

    bool contains(Elem a) const { return a.value < size_; }
    bool contains(std::uint32_t v) const { return v < size_; }

    // Range-checked conversion from an integer.
    Elem elem(std::uint32_t v) const;

    Elem add(Elem a, Elem b) const {
        check(a);
        check(b);
        return a + b;
    }
    Elem mul(Elem a, Elem b) const {
        check(a);
        check(b);
        return mul_raw(a, b);
    }
    Elem inv(Elem a) const;

    // Unchecked product used by the matrix kernels. Both operands must be
    // elements of this field.
    Elem mul_raw(Elem a, Elem b) const {
        if (a.is_zero() || b.is_zero()) return Elem{};
        return Elem(exp_[static_cast<std::size_t>(log_[a.value]) + log_[b.value]]);
    }
    Elem inv_raw(Elem a) const {
        return Elem(exp_[(size_ - 1) - log_[a.value]]);
    }

    friend bool operator==(const Field& a, const Field& b) {
        return a.degree_ == b.degree_ && a.poly_ == b.poly_;
    }

private:
    Field(unsigned degree, std::uint32_t poly);

    void check(Elem a) const {
        if (a.value >= size_) [[unlikely]]
            throw_outside(a);
    }
    [[noreturn]] void throw_outside(Elem a) const;

    unsigned degree_ = 0;
    std::uint32_t poly_ = 0;
    std::uint32_t size_ = 0;
    // log_ over nonzero elements with respect to a generator; exp_ has
    // 2 * (q - 1) entries so mul_raw needs no modular reduction.
    std::shared_ptr<const std::vector<std::uint16_t>> log_table_;
    std::shared_ptr<const std::vector<std::uint16_t>> exp_table_;
    const std::uint16_t* log_ = nullptr;
    const std::uint16_t* exp_ = nullptr;
};

} // namespace arrayrepair

#include "arrayrepair/gf2m.hpp"

#include "arrayrepair/errors.hpp"

#include <array>
#include <bit>
#include <sstream>

namespace arrayrepair {

namespace {

// Irreducible (and primitive) defaults, indexed by degree.
constexpr std::array<std::uint32_t, 17> kDefaultPolys = {
    0, 0,
    0x7,     // x^2+x+1
    0xB,     // x^3+x+1
    0x13,    // x^4+x+1
    0x25,    // x^5+x^2+1
    0x43,    // x^6+x+1
    0x89,    // x^7+x^3+1
    0x11D,   // x^8+x^4+x^3+x^2+1
    0x211,   // x^9+x^4+1
    0x409,   // x^10+x^3+1
    0x805,   // x^11+x^2+1
    0x1053,  // x^12+x^6+x^4+x+1
    0x201B,  // x^13+x^4+x^3+x+1
    0x4443,  // x^14+x^10+x^6+x+1
    0x8003,  // x^15+x+1
    0x1100B, // x^16+x^12+x^3+x+1
};

std::uint32_t poly_mod(std::uint32_t a, std::uint32_t b) {
    const int db = poly_degree(b);
    for (int da = poly_degree(a); da >= db; da = poly_degree(a))
        a ^= b << (da - db);
    return a;
}

std::string hex(std::uint32_t v) {
    std::ostringstream os;
    os << "0x" << std::hex << v;
    return os.str();
}

} // namespace

int poly_degree(std::uint32_t poly) {
    return poly == 0 ? -1 : 31 - std::countl_zero(poly);
}

bool is_irreducible(std::uint32_t poly) {
    const int d = poly_degree(poly);
    if (d < 1) return false;
    // Trial division by every polynomial of degree 1..d/2.
    for (std::uint32_t div = 2; poly_degree(div) <= d / 2; ++div)
        if (poly_mod(poly, div) == 0) return false;
    return true;
}

std::uint32_t clmul_mod(std::uint32_t a, std::uint32_t b, std::uint32_t poly) {
    const int m = poly_degree(poly);
    const std::uint32_t top = 1u << m;
    std::uint32_t r = 0;
    while (b != 0) {
        if (b & 1u) r ^= a;
        b >>= 1;
        a <<= 1;
        if (a & top) a ^= poly;
    }
    return r;
}

std::uint32_t Field::default_polynomial(unsigned degree) {
    if (degree < kMinDegree || degree > kMaxDegree)
        throw FieldError("unsupported extension degree " + std::to_string(degree) +
                         " (need 2 <= m <= 16)");
    return kDefaultPolys[degree];
}

Field Field::make(unsigned degree) { return Field(degree, default_polynomial(degree)); }

Field Field::make(unsigned degree, std::uint32_t poly) { return Field(degree, poly); }

Field::Field(unsigned degree, std::uint32_t poly) : degree_(degree), poly_(poly) {
    if (degree < kMinDegree || degree > kMaxDegree)
        throw FieldError("unsupported extension degree " + std::to_string(degree) +
                         " (need 2 <= m <= 16)");
    if (poly_degree(poly) != static_cast<int>(degree))
        throw FieldError("reduction polynomial " + hex(poly) + " does not have degree " +
                         std::to_string(degree));
    if (!is_irreducible(poly))
        throw FieldError("reduction polynomial " + hex(poly) + " is reducible over GF(2)");

    size_ = 1u << degree;
    const std::uint32_t order = size_ - 1;

    // x need not be primitive for an arbitrary irreducible polynomial, so
    // search for the smallest generator of the multiplicative group.
    std::vector<std::uint16_t> exp(2 * static_cast<std::size_t>(order));
    std::vector<std::uint16_t> log(size_, 0);
    for (std::uint32_t g = 2; g < size_; ++g) {
        std::uint32_t x = 1;
        std::uint32_t k = 0;
        bool generator = true;
        for (; k < order; ++k) {
            if (k > 0 && x == 1) {
                generator = false;
                break;
            }
            exp[k] = static_cast<std::uint16_t>(x);
            x = clmul_mod(x, g, poly);
        }
        if (generator) break;
    }
    for (std::uint32_t k = 0; k < order; ++k) {
        exp[k + order] = exp[k];
        log[exp[k]] = static_cast<std::uint16_t>(k);
    }
    log_table_ = std::make_shared<const std::vector<std::uint16_t>>(std::move(log));
    exp_table_ = std::make_shared<const std::vector<std::uint16_t>>(std::move(exp));
    log_ = log_table_->data();
    exp_ = exp_table_->data();
}

std::string Field::name() const { return "GF(" + std::to_string(size_) + ")"; }

Elem Field::elem(std::uint32_t v) const {
    if (v >= size_)
        throw FieldError("value " + std::to_string(v) + " is not an element of " + name());
    return Elem(static_cast<std::uint16_t>(v));
}

Elem Field::inv(Elem a) const {
    check(a);
    if (a.is_zero()) throw DivisionByZeroError("inverse of zero in " + name());
    return inv_raw(a);
}

void Field::throw_outside(Elem a) const {
    throw FieldError("value " + std::to_string(a.value) + " is not an element of " + name());
}

} // namespace arrayrepair

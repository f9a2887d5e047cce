#include "arrayrepair/errors.hpp"
#include "arrayrepair/gf2m.hpp"
#include "oracle.hpp"

#include <doctest.h>

#include <random>

using namespace arrayrepair;

TEST_SUITE("gf2m") {

TEST_CASE("default fields") {
    const Field f16 = Field::make(4);
    CHECK(f16.polynomial() == 0b10011);
    CHECK(f16.size() == 16);
    CHECK(f16.name() == "GF(16)");
    const Field f4 = Field::make(2);
    CHECK(f4.size() == 4);
    CHECK(f4.polynomial() == 0x7);
}

TEST_CASE("every default polynomial is irreducible of the right degree") {
    for (unsigned m = Field::kMinDegree; m <= Field::kMaxDegree; ++m) {
        const std::uint32_t p = Field::default_polynomial(m);
        CHECK(poly_degree(p) == static_cast<int>(m));
        CHECK(oracle::irreducible(p, m));
        CHECK(is_irreducible(p));
    }
}

TEST_CASE("irreducibility test agrees with trial division up to degree 10") {
    for (unsigned m = 2; m <= 10; ++m)
        for (std::uint32_t p = 1u << m; p < (2u << m); ++p)
            CHECK(is_irreducible(p) == oracle::irreducible(p, m));
}

TEST_CASE("bad polynomials are rejected with the polynomial named") {
    try {
        (void)Field::make(4, 0b11000);
        FAIL("x^4 + x^3 accepted");
    } catch (const FieldError& e) {
        CHECK(std::string(e.what()).find("0x18") != std::string::npos);
    }
    CHECK_THROWS_AS((void)Field::make(4, 0x7), FieldError);    // degree 2
    CHECK_THROWS_AS((void)Field::make(4, 0x15), FieldError);   // (x^2+x+1)^2
    CHECK_THROWS_AS((void)Field::make(1), FieldError);
    CHECK_THROWS_AS((void)Field::make(17), FieldError);
    CHECK_NOTHROW((void)Field::make(4, 0x19));
}

TEST_CASE("addition") {
    const Field f = Field::make(4);
    CHECK(f.add(Elem(1), Elem(3)) == Elem(2));
    for (std::uint16_t a = 0; a < 16; ++a) {
        CHECK(f.add(Elem(a), Elem(a)) == Elem(0));
        CHECK(f.add(Elem(a), Elem(0)) == Elem(a));
    }
}

TEST_CASE("multiplication against a log/antilog oracle") {
    // Powers of x by repeated shift-and-reduce.
    const std::uint32_t poly = 0b10011;
    std::vector<std::uint32_t> exp(15), log(16);
    std::uint32_t v = 1;
    for (unsigned k = 0; k < 15; ++k) {
        exp[k] = v;
        log[v] = k;
        v <<= 1;
        if (v & 16) v ^= poly;
    }
    const Field f = Field::make(4);
    for (std::uint32_t a = 1; a < 16; ++a)
        for (std::uint32_t b = 1; b < 16; ++b)
            CHECK(f.mul(Elem(static_cast<std::uint16_t>(a)), Elem(static_cast<std::uint16_t>(b))).value ==
                  exp[(log[a] + log[b]) % 15]);
    CHECK(f.mul(Elem(2), Elem(2)) == Elem(4));
    CHECK(f.mul(Elem(2), Elem(9)) == Elem(1));
    for (std::uint16_t a = 0; a < 16; ++a) CHECK(f.mul(Elem(a), Elem(1)) == Elem(a));
}

TEST_CASE("inverse against exhaustive search") {
    const Field f = Field::make(4);
    CHECK(f.inv(Elem(2)) == Elem(9));
    CHECK(f.inv(Elem(5)) == Elem(11));
    CHECK(f.inv(Elem(1)) == Elem(1));
    for (std::uint32_t a = 1; a < 16; ++a)
        CHECK(f.inv(Elem(static_cast<std::uint16_t>(a))).value == oracle::inv(a, 0b10011, 4));
    CHECK_THROWS_AS((void)f.inv(Elem(0)), DivisionByZeroError);
}

TEST_CASE("field axioms, exhaustive for m <= 4") {
    for (unsigned m = 2; m <= 4; ++m) {
        const Field f = Field::make(m);
        const std::uint16_t q = static_cast<std::uint16_t>(f.size());
        for (std::uint16_t a = 0; a < q; ++a)
            for (std::uint16_t b = 0; b < q; ++b) {
                const Elem x(a), y(b);
                CHECK(f.mul(x, y) == f.mul(y, x));
                for (std::uint16_t c = 0; c < q; ++c) {
                    const Elem z(c);
                    CHECK(f.add(f.add(x, y), z) == f.add(x, f.add(y, z)));
                    CHECK(f.mul(f.mul(x, y), z) == f.mul(x, f.mul(y, z)));
                    CHECK(f.mul(x, f.add(y, z)) == f.add(f.mul(x, y), f.mul(x, z)));
                }
            }
    }
}

TEST_CASE("a * inv(a) = 1, exhaustive for m <= 8") {
    for (unsigned m = 2; m <= 8; ++m) {
        const Field f = Field::make(m);
        for (std::uint32_t a = 1; a < f.size(); ++a) {
            const Elem x(static_cast<std::uint16_t>(a));
            REQUIRE(f.mul(x, f.inv(x)) == Elem(1));
        }
    }
}

TEST_CASE("tables agree with carry-less multiplication for every degree") {
    std::mt19937_64 rng(5);
    for (unsigned m = 2; m <= 16; ++m) {
        const Field f = Field::make(m);
        const std::uint32_t p = f.polynomial();
        const bool exhaustive = m <= 6;
        const std::uint32_t q = f.size();
        const std::uint32_t trials = exhaustive ? q * q : 20000;
        for (std::uint32_t t = 0; t < trials; ++t) {
            const std::uint32_t a = exhaustive ? t / q : static_cast<std::uint32_t>(rng() % q);
            const std::uint32_t b = exhaustive ? t % q : static_cast<std::uint32_t>(rng() % q);
            const std::uint32_t got =
                f.mul(Elem(static_cast<std::uint16_t>(a)), Elem(static_cast<std::uint16_t>(b))).value;
            REQUIRE(got == oracle::mul(a, b, p, m));
            REQUIRE(got == clmul_mod(a, b, p));
        }
    }
}

TEST_CASE("out-of-range operands are rejected") {
    const Field f = Field::make(4);
    CHECK_THROWS_AS((void)f.elem(16), FieldError);
    CHECK_THROWS_AS((void)f.mul(Elem(16), Elem(1)), FieldError);
    CHECK_THROWS_AS((void)f.add(Elem(1), Elem(17)), FieldError);
    CHECK(f.contains(Elem(15)));
    CHECK_FALSE(f.contains(16u));
}

TEST_CASE("construction is deterministic") {
    CHECK(Field::make(8) == Field::make(8));
    const Field a = Field::make(8), b = Field::make(8);
    for (std::uint16_t x = 0; x < 256; ++x) CHECK(a.mul(Elem(x), Elem(77)) == b.mul(Elem(x), Elem(77)));
}

}

#include "arrayrepair/arraycode.hpp"
#include "arrayrepair/errors.hpp"
#include "oracle.hpp"

#include <doctest.h>

#include <random>

using namespace arrayrepair;

namespace {

const Field& gf16x() {
    static const Field f = Field::make(4, 0x19);
    return f;
}

std::vector<Block> example_blocks(const Field& f) {
    return {Block::of(f, 2, 0, 0, 3), Block::of(f, 0, 4, 5, 1), Block::of(f, 0, 8, 9, 1)};
}

std::uint32_t det2(const Block& b, std::uint32_t poly, unsigned m) {
    return oracle::det({{b.e[0].value, b.e[1].value}, {b.e[2].value, b.e[3].value}}, poly, m);
}

} // namespace

TEST_SUITE("arraycode") {

TEST_CASE("example code is MDS over x^4 + x^3 + 1") {
    const Field& f = gf16x();
    const auto a = example_blocks(f);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(det2(a[i], 0x19, 4) != 0);
        for (std::size_t j = i + 1; j < 3; ++j) CHECK(det2(a[i] + a[j], 0x19, 4) != 0);
    }
    CHECK(validate_mds(f, a).ok);
    CHECK_NOTHROW(ArrayCode(f, a));
}

TEST_CASE("example blocks break MDS over x^4 + x + 1") {
    const Field f = Field::make(4);
    const auto a = example_blocks(f);
    CHECK(det2(a[0] + a[2], 0x13, 4) == 0);
    const MdsReport r = validate_mds(f, a);
    CHECK_FALSE(r.ok);
    REQUIRE(r.violating_pairs.size() == 1);
    CHECK(r.violating_pairs[0] == std::pair<std::size_t, std::size_t>{0, 2});
}

TEST_CASE("MDS failures are reported") {
    const Field f = Field::make(4);
    const MdsReport r = validate_mds(f, std::vector<Block>{Block::identity(), Block::identity(),
                                                           Block::of(f, 2, 0, 0, 2)});
    CHECK_FALSE(r.ok);
    CHECK(r.violating_pairs.front() == std::pair<std::size_t, std::size_t>{0, 1});
    CHECK_THROWS_WITH_AS(ArrayCode(f, {Block::identity(), Block::identity(), Block::of(f, 2, 0, 0, 2)}),
                         "MDS condition fails: A_1 + A_2 is singular", CodeError);
    CHECK_THROWS_WITH_AS(ArrayCode(f, {Block::identity(), Block::of(f, 1, 1, 1, 1), Block::of(f, 2, 0, 0, 2)}),
                         "A_2 is singular", CodeError);
    CHECK_THROWS_AS(ArrayCode(f, {Block::identity(), Block::of(f, 2, 0, 0, 2)}), CodeError);
}

TEST_CASE("scalar multiples of I over GF(4)") {
    const Field f = Field::make(2);
    const std::vector<Block> a = {Block::identity(), scale(f, Elem(2), Block::identity()),
                                  scale(f, Elem(3), Block::identity())};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j) CHECK(det2(a[i] + a[j], 0x7, 2) != 0);
    CHECK(validate_mds(f, a).ok);
}

TEST_CASE("block determinant equivalence") {
    // det [I I; A_i A_j] != 0 exactly when A_i + A_j is invertible.
    std::mt19937_64 rng(3);
    const Field f = Field::make(3);
    for (int trial = 0; trial < 3000; ++trial) {
        Block a, b;
        for (Elem& x : a.e) x = Elem(static_cast<std::uint16_t>(rng() & 7));
        for (Elem& x : b.e) x = Elem(static_cast<std::uint16_t>(rng() & 7));
        const std::vector<std::vector<std::uint32_t>> big = {
            {1, 0, 1, 0},
            {0, 1, 0, 1},
            {a.e[0].value, a.e[1].value, b.e[0].value, b.e[1].value},
            {a.e[2].value, a.e[3].value, b.e[2].value, b.e[3].value}};
        CHECK((oracle::det(big, 0xB, 3) != 0) == is_invertible(f, a + b));
    }
}

TEST_CASE("encoding") {
    const Field& f = gf16x();
    const ArrayCode code(f, example_blocks(f));
    SUBCASE("zero data") {
        const Codeword w = encode(code, std::vector<Elem>(2));
        for (const Vec2& v : w) CHECK(v == Vec2{});
    }
    SUBCASE("unit vector against a direct 4x4 solve") {
        const std::vector<Elem> data = {Elem(1), Elem(0)};
        const Codeword w = encode(code, data);
        // Unknowns (p1, p2, s1, s2) for nodes 2 and 3:
        //   p + s = d,  A_2 p + A_3 s = A_1 d.
        const Block& a1 = code.block(0);
        const Block& a2 = code.block(1);
        const Block& a3 = code.block(2);
        const std::vector<std::vector<std::uint32_t>> sys = {
            {1, 0, 1, 0},
            {0, 1, 0, 1},
            {a2.e[0].value, a2.e[1].value, a3.e[0].value, a3.e[1].value},
            {a2.e[2].value, a2.e[3].value, a3.e[2].value, a3.e[3].value}};
        const std::vector<std::uint32_t> rhs = {1, 0, a1.e[0].value, a1.e[2].value};
        const auto x = oracle::solve(sys, rhs, 0x19, 4);
        REQUIRE(x);
        CHECK(w[0] == Vec2{Elem(1), Elem(0)});
        CHECK(w[1] == Vec2{Elem(static_cast<std::uint16_t>((*x)[0])), Elem(static_cast<std::uint16_t>((*x)[1]))});
        CHECK(w[2] == Vec2{Elem(static_cast<std::uint16_t>((*x)[2])), Elem(static_cast<std::uint16_t>((*x)[3]))});
        CHECK(satisfies_parity(code, w));
    }
    SUBCASE("wrong data length") {
        CHECK_THROWS_AS((void)encode(code, std::vector<Elem>(3)), DomainError);
    }
}

TEST_CASE("every GF(4) data vector of one N = 4 code encodes to a codeword") {
    const Field f = Field::make(2);
    const ArrayCode code = random_code(f, 4, 9);
    for (std::uint32_t v = 0; v < 256; ++v) {
        std::vector<Elem> data(4);
        for (int k = 0; k < 4; ++k) data[static_cast<std::size_t>(k)] = Elem(static_cast<std::uint16_t>(v >> (2 * k) & 3));
        const Codeword w = encode(code, data);
        REQUIRE(satisfies_parity(code, w));
        for (int k = 0; k < 2; ++k) {
            CHECK(w[static_cast<std::size_t>(k)][0] == data[static_cast<std::size_t>(2 * k)]);
            CHECK(w[static_cast<std::size_t>(k)][1] == data[static_cast<std::size_t>(2 * k + 1)]);
        }
    }
}

TEST_CASE("random codes") {
    const Field f = Field::make(4);
    const ArrayCode a = random_code(f, 4, 42);
    CHECK(validate_mds(f, a.blocks()).ok);
    CHECK(a == random_code(f, 4, 42));
    CHECK_FALSE(a == random_code(f, 4, 43));
    const ArrayCode big = random_code(f, 8, 1);
    CHECK(big.n() == 8);
    CHECK(big.k() == 6);
}

TEST_CASE("compatible block sets are bounded") {
    // Exhaustive oracle over GL(2,2).
    std::vector<std::array<int, 4>> gl;
    for (int v = 0; v < 16; ++v) {
        const std::array<int, 4> b = {v >> 3 & 1, v >> 2 & 1, v >> 1 & 1, v & 1};
        if ((b[0] & b[3]) ^ (b[1] & b[2])) gl.push_back(b);
    }
    REQUIRE(gl.size() == 6);
    auto compatible = [](const std::array<int, 4>& x, const std::array<int, 4>& y) {
        const std::array<int, 4> s = {x[0] ^ y[0], x[1] ^ y[1], x[2] ^ y[2], x[3] ^ y[3]};
        return ((s[0] & s[3]) ^ (s[1] & s[2])) != 0;
    };
    int largest = 0;
    for (int mask = 1; mask < 64; ++mask) {
        std::vector<int> pick;
        for (int k = 0; k < 6; ++k)
            if (mask >> k & 1) pick.push_back(k);
        bool ok = true;
        for (std::size_t i = 0; i < pick.size(); ++i)
            for (std::size_t j = i + 1; j < pick.size(); ++j)
                ok = ok && compatible(gl[static_cast<std::size_t>(pick[i])], gl[static_cast<std::size_t>(pick[j])]);
        if (ok) largest = std::max(largest, static_cast<int>(pick.size()));
    }
    CHECK(largest == 3);
    // The library starts at GF(4). Its generator must still report an
    // impossible request instead of looping.
    try {
        (void)random_code(Field::make(2), 40, 1, 20000);
        FAIL("impossible code generated");
    } catch (const GenerationError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("N = 40") != std::string::npos);
        CHECK(msg.find("GF(4)") != std::string::npos);
    }
}

TEST_CASE("reduced code enumeration") {
    const Field f = Field::make(2);
    const auto codes = enumerate_reduced_codes(f, 4);
    // Brute-force count of increasing compatible triples after A_1 = I.
    std::vector<Block> cand;
    for (std::uint32_t v = 0; v < 256; ++v) {
        const Block b = Block::of(f, v / 64, v / 16 % 4, v / 4 % 4, v % 4);
        if (is_invertible(f, b) && is_invertible(f, b + Block::identity())) cand.push_back(b);
    }
    // 180 invertible blocks, 56 of which have eigenvalue 1.
    CHECK(cand.size() == 124);
    std::size_t count = 0;
    for (std::size_t a = 0; a < cand.size(); ++a)
        for (std::size_t b = a + 1; b < cand.size(); ++b) {
            if (!is_invertible(f, cand[a] + cand[b])) continue;
            for (std::size_t c = b + 1; c < cand.size(); ++c)
                count += is_invertible(f, cand[a] + cand[c]) && is_invertible(f, cand[b] + cand[c]);
        }
    CHECK(codes.size() == count);
    CHECK(codes.size() == 95504);
    for (std::size_t k = 0; k < codes.size(); k += 997) {
        CHECK(codes[k].block(0) == Block::identity());
        CHECK(validate_mds(f, codes[k].blocks()).ok);
    }
}

TEST_CASE("JSON round trip and validation") {
    const Field& f = gf16x();
    const ArrayCode code(f, example_blocks(f));
    const std::string text = code_to_json(code);
    CHECK(text == R"({"m":4,"poly":25,"n":3,"A":[[2,0,0,3],[0,4,5,1],[0,8,9,1]]})");
    CHECK(code_from_json(text) == code);

    CHECK_THROWS_AS((void)code_from_json(R"({"m":4,"poly":25,"n":2,"A":[[1,0,0,1],[2,0,0,2]]})"), ParseError);
    CHECK_THROWS_WITH_AS((void)code_from_json(R"({"m":4,"poly":25,"n":3,"A":[[2,0,0,3],[1,1,1,1],[0,8,9,1]]})"),
                         "A_2 is singular", CodeError);
    CHECK_THROWS_AS((void)code_from_json(R"({"m":4,"poly":25,"n":3,"A":[[2,0,0,3],[0,4,5,1],[0,8,9,1]],"x":1})"),
                    ParseError);
    CHECK_THROWS_AS((void)code_from_json(R"({"m":4,"poly":25,"n":3,"A":[[2,0,0,3],[0,4,5,1],[0,8,9,16]]})"),
                    ParseError);
    CHECK_THROWS_AS((void)code_from_json(R"({"m":4,"poly":24,"n":3,"A":[[2,0,0,3],[0,4,5,1],[0,8,9,1]]})"),
                    FieldError);
    CHECK_THROWS_AS((void)code_from_json(R"({"m":4,"poly":25,"n":4,"A":[[2,0,0,3],[0,4,5,1],[0,8,9,1]]})"),
                    ParseError);
    CHECK_THROWS_AS((void)code_from_json("{not json"), ParseError);
    CHECK_THROWS_AS((void)code_from_json(R"({"m":-4,"poly":25,"n":3,"A":[]})"), ParseError);
}

}

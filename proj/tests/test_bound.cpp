#include "arrayrepair/bound.hpp"
#include "arrayrepair/errors.hpp"

#include <doctest.h>

#include <algorithm>
#include <climits>
#include <sstream>

using namespace arrayrepair;

namespace {

// Unsimplified three-group count: each group subtracts the helpers it reads
// one symbol from, weighted by its size.
std::int64_t d3_raw(std::int64_t n, std::int64_t a, std::int64_t b, std::int64_t c) {
    return 2 * n * (n - 1) - a * (b + 1) - b * (n - b) - c * (n - c);
}

// Four-group count read off the J table, row by row.
std::int64_t d4_table(std::int64_t n, const std::array<std::int64_t, 4>& l) {
    const std::int64_t j[4][4] = {{0, l[1], 1, 0},
                                  {l[0], 0, l[2], l[3]},
                                  {0, 1, 0, l[3]},
                                  {l[0], l[1], l[2], 0}};
    std::int64_t saved = 0;
    for (int r = 0; r < 4; ++r) {
        std::int64_t row = 0;
        for (int i = 0; i < 4; ++i) row += j[r][i];
        saved += l[static_cast<std::size_t>(r)] * row;
    }
    return 2 * n * (n - 1) - saved;
}

std::int64_t bstar2_enum(std::int64_t n) {
    std::int64_t best = LLONG_MAX;
    for (std::int64_t a = 1; a <= n - 1; ++a)
        best = std::min(best, 2 * n * (n - 1) - a * (n - a) - (n - a) * a);
    return best;
}

bool has(const std::vector<Partition>& ps, const Partition& p) {
    return std::find(ps.begin(), ps.end(), p) != ps.end();
}

} // namespace

TEST_SUITE("bound") {

TEST_CASE("small values") {
    CHECK(delta3(3).value == 6);
    CHECK(delta3(3).argmin == std::vector<Partition>{{1, 1, 1}});
    CHECK(delta3(4).value == 14);
    CHECK(has(delta3(4).argmin, {1, 2, 1}));
    CHECK(delta3(5).value == 24);
    CHECK(has(delta3(5).argmin, {2, 2, 1}));
    CHECK(delta4(4).value == 14);
    CHECK(delta4(4).argmin == std::vector<Partition>{{1, 1, 1, 1}});
    CHECK(delta4(5).value == 25);
    CHECK_THROWS_AS((void)delta4(3), DomainError);
    CHECK_THROWS_AS((void)delta3(2), DomainError);
    CHECK_THROWS_AS((void)bstar2(2), DomainError);
}

TEST_CASE("delta3 agrees with the unsimplified count") {
    for (int n = 3; n <= 200; ++n) {
        std::int64_t best = LLONG_MAX;
        std::vector<Partition> arg;
        for (int a = 1; a < n; ++a)
            for (int b = 1; a + b < n; ++b) {
                if (a > b) continue;
                const int c = n - a - b;
                const std::int64_t v = d3_raw(n, a, b, c);
                REQUIRE(v == delta3_objective(n, {a, b, c}));
                if (v < best) {
                    best = v;
                    arg.clear();
                }
                if (v == best) arg.push_back({a, b, c});
            }
        const DeltaResult r = delta3(n);
        REQUIRE(r.value == best);
        REQUIRE(r.argmin == arg);
    }
}

TEST_CASE("delta4 agrees with the J table") {
    for (int n = 4; n <= 200; n += (n < 40 ? 1 : 7)) {
        std::int64_t best = LLONG_MAX;
        std::vector<Partition> arg;
        for (int a = 1; a < n; ++a)
            for (int b = a; a + b < n; ++b)
                for (int c = 1; a + b + c < n; ++c) {
                    const int d = n - a - b - c;
                    if (c > d) continue;
                    const std::int64_t v = d4_table(n, {a, b, c, d});
                    REQUIRE(v == delta4_objective(n, {a, b, c, d}));
                    if (v < best) {
                        best = v;
                        arg.clear();
                    }
                    if (v == best) arg.push_back({a, b, c, d});
                }
        const DeltaResult r = delta4(n);
        REQUIRE(r.value == best);
        REQUIRE(r.argmin == arg);
    }
}

TEST_CASE("two-group optimum closed form") {
    CHECK(bstar2(3) == 8);
    CHECK(bstar2(4) == 16);
    CHECK(bstar2(10) == 130);
    for (int n = 3; n <= 500; ++n) REQUIRE(bstar2(n) == bstar2_enum(n));
    for (int n = 4; n <= 200; ++n) REQUIRE(delta3(n).value <= bstar2(n));
}

TEST_CASE("table") {
    const auto rows = bound_table(4, 200);
    REQUIRE(rows.size() == 197);
    std::vector<int> not_delta3;
    for (const BoundRow& r : rows) {
        CHECK(r.bound == std::min(r.d3.value, r.d4.value));
        for (const Partition& p : r.d3.argmin) {
            CHECK(p[0] + p[1] + p[2] == r.n);
            CHECK(p[0] <= p[1]);
        }
        for (const Partition& p : r.d4.argmin) {
            CHECK(p[0] + p[1] + p[2] + p[3] == r.n);
            CHECK(p[0] <= p[1]);
            CHECK(p[2] <= p[3]);
        }
        if (r.attained_by != Attainer::Delta3) not_delta3.push_back(r.n);
    }
    CHECK(not_delta3 == std::vector<int>{4, 6});
    CHECK(rows[0].attained_by == Attainer::Tie);
    CHECK(rows[2].attained_by == Attainer::Tie);
    CHECK(to_string(Attainer::Tie) == "tie");

    const auto one = bound_table(4, 4);
    REQUIRE(one.size() == 1);
    CHECK(one[0].d3.value == 14);
    CHECK(combined_bound(3) == 6);

    CHECK_THROWS_AS((void)bound_table(3, 10), DomainError);
    CHECK_THROWS_AS((void)bound_table(10, 9), DomainError);
    CHECK_THROWS_AS((void)bound_table(4, kMaxTableN + 1), DomainError);
}

TEST_CASE("csv and svg") {
    const std::string csv = bound_csv(bound_table(4, 6));
    CHECK(csv == "N,delta3,delta4,bound,attained_by,bstar2,delta3_argmin,delta4_argmin\n"
                 "4,14,14,14,tie,16,1-2-1,1-1-1-1\n"
                 "5,24,25,24,delta3,28,2-2-1,1-1-1-2;1-2-1-1\n"
                 "6,38,38,38,tie,42,2-2-2;2-3-1,1-2-1-2\n");
    const std::string svg = bound_svg(bound_table(4, 200));
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("<polyline") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
    std::istringstream pts(svg.substr(svg.find("points=\"") + 8));
    std::string tok;
    int count = 0;
    while (pts >> tok && tok.find('"') == std::string::npos) ++count;
    CHECK(count + 1 == 197);
    CHECK(partitions_text({{1, 2}, {3}}) == "1-2;3");
}

}

#include "arrayrepair/bound.hpp"
#include "arrayrepair/errors.hpp"
#include "arrayrepair/report.hpp"
#include "arrayrepair/search.hpp"

#include <doctest.h>

#include <algorithm>

using namespace arrayrepair;

namespace {

const LemmaResult& lemma(const VerifyReport& r, const std::string& name) {
    const auto it = std::find_if(r.lemmas.begin(), r.lemmas.end(),
                                 [&](const LemmaResult& l) { return l.name == name; });
    REQUIRE(it != r.lemmas.end());
    return *it;
}

} // namespace

TEST_SUITE("search") {

TEST_CASE("example node 1 optimum includes the reference matrix") {
    const ArrayCode code = example_code();
    const NodeOptimum o = best_repair_for_node(code, 0, {.threads = 1});
    CHECK(o.bandwidth == 2);
    const auto reps = enumerate_row_spaces(code.field());
    REQUIRE(reps[1] == example_process().groups[0].matrix);
    CHECK(std::find(o.ties.begin(), o.ties.end(), 1u) != o.ties.end());
    CHECK(o.matrix == reps[o.matrix_index]);
    CHECK(o.matrix_index == o.ties.front());
    CHECK(std::is_sorted(o.ties.begin(), o.ties.end()));
}

TEST_CASE("example optimum does not exceed the reference process") {
    const ArrayCode code = example_code();
    const OptimalTotal t = optimal_total_bandwidth(code, {.threads = 2});
    CHECK(t.total <= 8);
    CHECK(t.total >= combined_bound(3));
    const BandwidthReport bw = process_bandwidth(t.process, code);
    CHECK(bw.total == t.total);
    CHECK(process_validate(t.process, code).valid);
}

TEST_CASE("each node needs at least two symbols") {
    const Field f = Field::make(2);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const ArrayCode code = random_code(f, 3, seed);
        for (const NodeOptimum& o : best_repairs(code, {.threads = 1})) {
            CHECK(o.bandwidth >= 2);
            CHECK(o.bandwidth <= 4);
        }
    }
}

TEST_CASE("GF(16) N = 4 optimum lies between the bound and [I|O]") {
    const OptimalTotal t = optimal_total_bandwidth(random_code(Field::make(4), 4, 42));
    CHECK(t.total >= combined_bound(4));
    CHECK(t.total <= 4 * 2 * 3);
}

TEST_CASE("results do not depend on thread count") {
    const ArrayCode code = random_code(Field::make(4), 5, 17);
    const OptimalTotal a = optimal_total_bandwidth(code, {.threads = 1});
    const OptimalTotal b = optimal_total_bandwidth(code, {.threads = 3});
    CHECK(a.total == b.total);
    CHECK(process_to_json(a.process) == process_to_json(b.process));
    for (std::size_t i = 0; i < a.nodes.size(); ++i) {
        CHECK(a.nodes[i].ties == b.nodes[i].ties);
        CHECK(a.nodes[i].matrix_index == b.nodes[i].matrix_index);
    }

    VerifyOptions v;
    v.field = Field::make(2);
    v.n = 4;
    v.samples = 6;
    v.seed = 9;
    v.threads = 1;
    const VerifyReport r1 = verify_lemmas(v);
    v.threads = 4;
    const VerifyReport r4 = verify_lemmas(v);
    REQUIRE(r1.lemmas.size() == r4.lemmas.size());
    for (std::size_t l = 0; l < r1.lemmas.size(); ++l) {
        CHECK(r1.lemmas[l].checked == r4.lemmas[l].checked);
        CHECK(r1.lemmas[l].failed == r4.lemmas[l].failed);
        CHECK(r1.lemmas[l].examples == r4.lemmas[l].examples);
    }
}

TEST_CASE("removing a node never raises a node optimum") {
    // The big code's optimal matrix for node i still repairs i in the small
    // code, minus the charge of the dropped helper.
    const Field f = Field::make(4);
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const ArrayCode big = random_code(f, 5, seed);
        std::vector<Block> blocks(big.blocks().begin(), big.blocks().end() - 1);
        const ArrayCode small(f, blocks);
        const OptimalTotal tb = optimal_total_bandwidth(big);
        const OptimalTotal ts = optimal_total_bandwidth(small);
        for (std::size_t i = 0; i < small.n(); ++i)
            CHECK(ts.nodes[i].bandwidth <= tb.nodes[i].bandwidth);
        CHECK(ts.total < tb.total);
    }
}

TEST_CASE("field size guard") {
    const ArrayCode code = random_code(Field::make(5), 4, 1);
    CHECK_THROWS_AS((void)optimal_total_bandwidth(code), DomainError);
    VerifyOptions v;
    v.field = Field::make(5);
    CHECK_THROWS_AS((void)verify_lemmas(v), DomainError);
}

TEST_CASE("verifiers pass on sampled GF(4) codes") {
    VerifyOptions v;
    v.field = Field::make(2);
    v.n = 5;
    v.samples = 5;
    v.seed = 3;
    const VerifyReport r = verify_lemmas(v);
    CHECK(r.all_pass());
    CHECK(r.codes == 5);
    CHECK(r.lemmas.size() == lemma_names().size());
    for (const LemmaResult& l : r.lemmas) {
        INFO(l.name);
        CHECK(l.checked > 0);
        CHECK(l.failed == 0);
        CHECK(l.examples.empty());
    }
}

TEST_CASE("a wrong charge table is caught") {
    // Charging R blocks as two symbols keeps same-type pairs intact but breaks
    // the closed-form bandwidth count.
    VerifyOptions v;
    v.field = Field::make(2);
    v.n = 4;
    v.samples = 4;
    v.charging = ChargeRule{ClassRule::Support, {0, 2, 1, 2}};
    const VerifyReport r = verify_lemmas(v);
    CHECK_FALSE(r.all_pass());
    CHECK(lemma(r, "sametype").failed == 0);
    CHECK(lemma(r, "Bicalculation").failed > 0);
    CHECK_FALSE(lemma(r, "Bicalculation").examples.empty());
}

TEST_CASE("the strict class rule breaks left invariance") {
    VerifyOptions v;
    v.field = Field::make(4);
    v.n = 5;
    v.samples = 20;
    v.seed = 7;
    v.charging = ChargeRule::strict();
    v.max_counterexamples = 2;
    const VerifyReport r = verify_lemmas(v);
    const LemmaResult& hat = lemma(r, "hatM");
    CHECK(hat.failed > 0);
    CHECK(hat.examples.size() <= 2);
    CHECK(r.charging == "strict");
}

TEST_CASE("sample seeds") {
    CHECK(sample_seed(10, 0) == 10);
    CHECK(sample_seed(10, 3) == 13);
}

}

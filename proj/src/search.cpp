#include "arrayrepair/search.hpp"

#include "arrayrepair/errors.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <random>
#include <stdexcept>
#include <thread>
#include <type_traits>

namespace arrayrepair {

namespace {

unsigned resolve_threads(unsigned requested, std::size_t work) {
    unsigned t = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
    if (work < t) t = static_cast<unsigned>(std::max<std::size_t>(work, 1));
    return t;
}

// Runs fn(chunk, begin, end) over `threads` contiguous slices of [0, count).
template <class Fn>
void for_chunks(std::size_t count, unsigned threads, Fn&& fn) {
    if (threads <= 1) {
        fn(0u, std::size_t{0}, count);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned c = 0; c < threads; ++c) {
        const std::size_t begin = count * c / threads;
        const std::size_t end = count * (c + 1) / threads;
        pool.emplace_back([&fn, c, begin, end] { fn(c, begin, end); });
    }
    for (auto& th : pool) th.join();
}

void guard_field(const Field& f, std::uint32_t max_q) {
    if (f.size() > max_q)
        throw DomainError("exhaustive scan over " + f.name() + " refused (limit q <= " +
                          std::to_string(max_q) + "); raise the field-size limit to force it");
}

void fill_blocks(const Field& f, const ArrayCode& code, const RepairMat& m,
                 std::vector<Block>& out) {
    const Block m1 = m.left();
    const Block m2 = m.right();
    out.resize(code.n());
    for (std::size_t j = 0; j < code.n(); ++j) out[j] = m1 + mul(f, m2, code.block(j));
}

struct PartialBest {
    int best = INT_MAX;
    std::vector<std::size_t> ties;
};

void scan_range(const ArrayCode& code, const std::vector<RepairMat>& mats, const ChargeRule& rule,
                std::size_t begin, std::size_t end, std::vector<PartialBest>& acc) {
    const Field& f = code.field();
    const std::size_t n = code.n();
    std::vector<Block> blocks;
    std::vector<int> cost(n);
    acc.assign(n, PartialBest{});
    for (std::size_t idx = begin; idx < end; ++idx) {
        fill_blocks(f, code, mats[idx], blocks);
        int total = 0;
        for (std::size_t j = 0; j < n; ++j) total += cost[j] = rule.charge(blocks[j]);
        for (std::size_t i = 0; i < n; ++i) {
            if (!is_invertible(f, blocks[i])) continue;
            const int b = total - cost[i];
            PartialBest& p = acc[i];
            if (b < p.best) {
                p.best = b;
                p.ties.clear();
            }
            if (b == p.best) p.ties.push_back(idx);
        }
    }
}

std::vector<NodeOptimum> finish(const std::vector<RepairMat>& mats,
                                std::vector<std::vector<PartialBest>>& parts, std::size_t n) {
    std::vector<NodeOptimum> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        PartialBest merged;
        for (auto& part : parts) {
            PartialBest& p = part[i];
            if (p.ties.empty()) continue;
            if (p.best < merged.best) {
                merged.best = p.best;
                merged.ties.clear();
            }
            if (p.best == merged.best)
                merged.ties.insert(merged.ties.end(), p.ties.begin(), p.ties.end());
        }
        // [I | O] repairs every node, so a minimizer always exists.
        if (merged.ties.empty()) throw std::logic_error("no repair matrix found for a node");
        out[i].node = i;
        out[i].bandwidth = merged.best;
        out[i].matrix_index = merged.ties.front();
        out[i].matrix = mats[merged.ties.front()];
        out[i].ties = std::move(merged.ties);
    }
    return out;
}

RepairProcess assemble(const ArrayCode& code, const std::vector<NodeOptimum>& nodes,
                       const ChargeRule& rule, int total) {
    RepairProcess process;
    std::map<std::size_t, std::size_t> group_of_matrix;
    for (const NodeOptimum& o : nodes) {
        auto [it, fresh] = group_of_matrix.try_emplace(o.matrix_index, process.groups.size());
        if (fresh) process.groups.push_back({o.matrix, {}});
        process.groups[it->second].nodes.push_back(o.node);
    }
    // Merging keeps the total under the support rule; under other rules a
    // merge that would change it is rejected and the raw grouping is kept.
    try {
        RepairProcess merged = merge_equivalent(process, code, rule.classes);
        if (process_bandwidth(merged, code, rule).total == total) return merged;
    } catch (const InvalidRepairError&) {
    }
    return process;
}

} // namespace

std::vector<NodeOptimum> best_repairs(const ArrayCode& code, const SearchOptions& opts) {
    guard_field(code.field(), opts.max_field_size);
    const std::vector<RepairMat> mats = enumerate_row_spaces(code.field());
    const unsigned threads = resolve_threads(opts.threads, mats.size());
    std::vector<std::vector<PartialBest>> parts(threads);
    for_chunks(mats.size(), threads, [&](unsigned c, std::size_t b, std::size_t e) {
        scan_range(code, mats, opts.charging, b, e, parts[c]);
    });
    return finish(mats, parts, code.n());
}

NodeOptimum best_repair_for_node(const ArrayCode& code, std::size_t node,
                                 const SearchOptions& opts) {
    if (node >= code.n())
        throw DomainError("node " + std::to_string(node + 1) + " out of range for N = " +
                          std::to_string(code.n()));
    return best_repairs(code, opts)[node];
}

OptimalTotal optimal_total_bandwidth(const ArrayCode& code, const SearchOptions& opts) {
    OptimalTotal out;
    out.nodes = best_repairs(code, opts);
    for (const NodeOptimum& o : out.nodes) out.total += o.bandwidth;
    out.process = assemble(code, out.nodes, opts.charging, out.total);
    return out;
}

// ---------------------------------------------------------------------------
// Lemma verifiers

namespace {

enum Lemma : std::size_t {
    kBij2,
    kSameBiBj,
    kTotal,
    kAllZeros,
    kFullRank,
    kBicalc,
    kM2Sing,
    kHatM,
    kSameType,
    kGirth4,
    kLemmaCount
};

std::string matrix_text(const RepairMat& m) {
    std::string s = "[[";
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 4; ++c) {
            s += std::to_string(m.at(r, c).value);
            if (c < 3) s += ",";
        }
        s += r == 0 ? "],[" : "]]";
    }
    return s;
}

struct Tally {
    std::vector<LemmaResult> lemmas;
    std::size_t limit;

    explicit Tally(std::size_t max_examples) : limit(max_examples) {
        for (const auto& name : lemma_names()) lemmas.push_back({name, 0, 0, {}});
    }
};

class CodeVerifier {
public:
    CodeVerifier(const ArrayCode& code, const std::vector<RepairMat>& mats, const VerifyOptions& o,
                 std::uint64_t rng_seed, Tally& tally)
        : code_(code), f_(code.field()), mats_(mats), rule_(o.charging),
          n_(code.n()), two_k_(static_cast<int>(2 * code.k())), rng_(rng_seed), tally_(tally) {}

    void run() {
        scan();
        check_processes();
        check_noncanonical();
        check_merges();
    }

private:
    // `detail` is a string or a callable producing one; it is evaluated only
    // for recorded counterexamples.
    template <class Detail>
    void record(Lemma l, bool ok, const RepairMat* m, std::optional<std::size_t> node,
                Detail&& detail) {
        LemmaResult& r = tally_.lemmas[l];
        ++r.checked;
        if (ok) return;
        ++r.failed;
        if (r.examples.size() >= tally_.limit) return;
        std::string s = "code=" + code_to_json(code_);
        if (m) s += " matrix=" + matrix_text(*m);
        if (node) s += " node=" + std::to_string(*node + 1);
        if constexpr (std::is_invocable_v<Detail>) s += ": " + std::string(detail());
        else s += ": " + std::string(detail);
        r.examples.push_back(std::move(s));
    }

    static std::string row_text(const std::vector<int>& row) {
        std::string s = "(";
        for (std::size_t j = 0; j < row.size(); ++j) s += (j ? "," : "") + std::to_string(row[j]);
        return s + ")";
    }

    void scan() {
        std::vector<Block> blocks;
        std::vector<BlockClass> tags(n_);
        std::vector<int> cost(n_);
        std::vector<std::size_t> repairable;
        // Owner of each (i, type_i, j, type_j) key among canonical matrices.
        std::vector<long> key_owner(4 * n_ * n_, -1);
        best_.assign(n_, PartialBest{});

        for (std::size_t idx = 0; idx < mats_.size(); ++idx) {
            const RepairMat& m = mats_[idx];
            fill_blocks(f_, code_, m, blocks);
            int total = 0;
            repairable.clear();
            for (std::size_t j = 0; j < n_; ++j) {
                tags[j] = block_class(blocks[j], rule_.classes);
                total += cost[j] = rule_.charge(tags[j]);
                if (is_invertible(f_, blocks[j])) repairable.push_back(j);
            }

            for (std::size_t a = 0; a < n_; ++a) {
                if (tags[a] != BlockClass::L && tags[a] != BlockClass::R) continue;
                for (std::size_t b = a + 1; b < n_; ++b) {
                    if (tags[b] != BlockClass::L && tags[b] != BlockClass::R) continue;
                    const std::size_t key = ((a * 2 + (tags[a] == BlockClass::R)) * n_ + b) * 2 +
                                            (tags[b] == BlockClass::R);
                    const long prev = key_owner[key];
                    record(kGirth4, prev < 0, &m, std::nullopt,
                           [&] {
                               return "shares the one-sided helper pattern at nodes " +
                                          std::to_string(a + 1) + "," + std::to_string(b + 1) +
                                          " with distinct row space " +
                                          matrix_text(mats_[static_cast<std::size_t>(prev)]);
                           });
                    if (prev < 0) key_owner[key] = static_cast<long>(idx);
                }
            }

            if (repairable.empty()) continue;
            record(kFullRank, rank(f_, m) == 2, &m, repairable.front(), "repairs with rank < 2");
            if (repairable.size() >= 2) {
                const int b0 = total - cost[repairable.front()];
                bool same = true;
                for (std::size_t i : repairable) same = same && total - cost[i] == b0;
                record(kSameBiBj, same, &m, std::nullopt, "B_i differs inside one group");
            }

            for (std::size_t i : repairable) {
                const int bi = total - cost[i];
                PartialBest& p = best_[i];
                if (bi < p.best) {
                    p.best = bi;
                    p.ties.assign(1, idx);
                }
                check_node(m, tags, cost, repairable, i, bi);
            }
        }
    }

    void check_node(const RepairMat& m, const std::vector<BlockClass>& tags, const std::vector<int>& cost,
                    const std::vector<std::size_t>& repairable, std::size_t i, int bi) {
        for (std::size_t j : repairable)
            if (j != i)
                record(kBij2, cost[j] == 2, &m, i,
                       [&] {
                           return "B_{i,j} = " + std::to_string(cost[j]) +
                                  " for co-repaired node " + std::to_string(j + 1);
                       });

        int zeros = 0, one_sided = 0;
        for (std::size_t j = 0; j < n_; ++j) {
            if (j == i) continue;
            zeros += tags[j] == BlockClass::Zero;
            one_sided += tags[j] == BlockClass::L || tags[j] == BlockClass::R;
        }
        if (zeros > 0)
            record(kAllZeros, bi == two_k_, &m, i,
                   [&] { return "zero helper block but B_i = " + std::to_string(bi); });

        const int formula = 2 * static_cast<int>(n_ - 1) - one_sided;
        if (bi < two_k_ || formula < two_k_)
            record(kBicalc, bi == formula, &m, i,
                   [&] {
                       return "B_i = " + std::to_string(bi) + " but 2(N-1) - #one-sided = " +
                              std::to_string(formula);
                   });

        if (bi >= two_k_) return;

        std::vector<std::size_t> ones;
        for (std::size_t j = 0; j < n_; ++j)
            if (j != i && cost[j] == 1) ones.push_back(j);
        bool all_l = true, all_r = true;
        for (std::size_t j : ones) {
            all_l = all_l && tags[j] == BlockClass::L;
            all_r = all_r && tags[j] == BlockClass::R;
        }
        record(kSameType, all_l || all_r, &m, i, "helpers charged 1 mix L and R blocks");

        const RepairMat hat = normalize_matrix(m, code_, i);
        record(kM2Sing, !is_invertible(f_, hat.right()), &m, i,
               "B_i < 2K but the normalized M2 is invertible");

        std::vector<Block> hb;
        fill_blocks(f_, code_, hat, hb);
        std::string why;
        if (!(hb[i] == Block::identity())) why = "normalized block of node i is not I";
        std::vector<int> before(n_, 0), after(n_, 0);
        int zero_second = 0, zero_first = 0;
        for (std::size_t j = 0; j < n_; ++j) {
            if (j == i) continue;
            before[j] = cost[j];
            after[j] = rule_.charge(hb[j]);
            if (hb[j].is_zero()) continue;
            zero_second += hb[j].at(0, 1).is_zero() && hb[j].at(1, 1).is_zero();
            zero_first += hb[j].at(0, 0).is_zero() && hb[j].at(1, 0).is_zero();
        }
        if (why.empty() && before != after)
            why = "bandwidth row changed from " + row_text(before) + " to " + row_text(after);
        const auto row_is = [&hat](int r, std::array<std::uint16_t, 4> v) {
            for (int c = 0; c < 4; ++c)
                if (hat.at(r, c).value != v[static_cast<std::size_t>(c)]) return false;
            return true;
        };
        if (why.empty() && zero_second >= 2 && !row_is(0, {1, 0, 0, 0}))
            why = "two helpers with zero second column but first row of " + matrix_text(hat) +
                  " is not (1,0,0,0)";
        if (why.empty() && zero_first >= 2 && !row_is(1, {0, 1, 0, 0}))
            why = "two helpers with zero first column but second row of " + matrix_text(hat) +
                  " is not (0,1,0,0)";
        record(kHatM, why.empty(), &m, i, why);
    }

    // Processes: the assembled per-node optimum and random valid ones.
    void check_processes() {
        std::vector<NodeOptimum> nodes(n_);
        int total = 0;
        for (std::size_t i = 0; i < n_; ++i) {
            nodes[i].node = i;
            nodes[i].bandwidth = best_[i].best;
            nodes[i].matrix_index = best_[i].ties.front();
            nodes[i].matrix = mats_[nodes[i].matrix_index];
            total += nodes[i].bandwidth;
        }
        check_total(assemble(code_, nodes, rule_, total), total);

        std::uniform_int_distribution<std::size_t> pick(0, mats_.size() - 1);
        for (int trial = 0; trial < 2; ++trial) {
            RepairProcess p;
            std::map<std::size_t, std::size_t> slot;
            for (std::size_t i = 0; i < n_; ++i) {
                std::size_t idx;
                std::vector<Block> blocks;
                do {
                    idx = pick(rng_);
                    fill_blocks(f_, code_, mats_[idx], blocks);
                } while (!is_invertible(f_, blocks[i]));
                auto [it, fresh] = slot.try_emplace(idx, p.groups.size());
                if (fresh) p.groups.push_back({mats_[idx], {}});
                p.groups[it->second].nodes.push_back(i);
            }
            check_total(p, std::nullopt);
        }
    }

    void check_total(const RepairProcess& p, std::optional<int> expected) {
        std::string why;
        try {
            const BandwidthReport rep = process_bandwidth(p, code_, rule_);
            int by_group = 0, by_node = 0;
            for (std::size_t r = 0; r < p.groups.size(); ++r)
                by_group += static_cast<int>(p.groups[r].nodes.size()) * rep.per_group[r];
            for (int b : rep.per_node) by_node += b;
            if (rep.total != by_group || rep.total != by_node)
                why = "total " + std::to_string(rep.total) + " vs sum over groups " +
                      std::to_string(by_group) + " vs sum over nodes " + std::to_string(by_node);
            else if (expected && rep.total != *expected)
                why = "assembled process total " + std::to_string(rep.total) +
                      " differs from per-node optimum " + std::to_string(*expected);
        } catch (const Error& e) {
            why = e.what();
        }
        record(kTotal, why.empty(), nullptr, std::nullopt,
               [&] { return why + " process=" + process_to_json(p); });
    }

    // Rank-deficient matrices must never repair a node.
    void check_noncanonical() {
        const std::uint32_t mask = f_.size() - 1;
        auto draw = [&] { return Elem(static_cast<std::uint16_t>(rng_() & mask)); };
        std::vector<Block> blocks;
        for (int trial = 0; trial < 20; ++trial) {
            RepairMat m;
            if (trial % 2 == 0) {
                std::array<Elem, 4> v{};
                do {
                    for (Elem& x : v) x = draw();
                } while (std::all_of(v.begin(), v.end(), [](Elem x) { return x.is_zero(); }));
                const Elem a = draw(), b = draw();
                for (int c = 0; c < 4; ++c) {
                    m.e[static_cast<std::size_t>(c)] = f_.mul_raw(a, v[static_cast<std::size_t>(c)]);
                    m.e[static_cast<std::size_t>(4 + c)] =
                        f_.mul_raw(b, v[static_cast<std::size_t>(c)]);
                }
            } else {
                for (Elem& x : m.e) x = draw();
            }
            fill_blocks(f_, code_, m, blocks);
            bool repairs = false;
            for (const Block& h : blocks) repairs = repairs || is_invertible(f_, h);
            record(kFullRank, !repairs || rank(f_, m) == 2, &m, std::nullopt,
                   "repairs a node with rank < 2");
        }
    }

    // A group split into M and T M is mergeable; merging keeps the total.
    void check_merges() {
        std::uniform_int_distribution<std::size_t> pick(0, mats_.size() - 1);
        const std::uint32_t mask = f_.size() - 1;
        std::vector<Block> blocks;
        int built = 0;
        for (int attempt = 0; attempt < 200 && built < 2; ++attempt) {
            const std::size_t idx = pick(rng_);
            const RepairMat& m = mats_[idx];
            fill_blocks(f_, code_, m, blocks);
            std::vector<std::size_t> rep, rest;
            int one_sided = 0;
            for (std::size_t j = 0; j < n_; ++j) {
                if (is_invertible(f_, blocks[j])) rep.push_back(j);
                else rest.push_back(j);
                const BlockClass t = block_class(blocks[j], rule_.classes);
                one_sided += t == BlockClass::L || t == BlockClass::R;
            }
            if (rep.size() < 2 || one_sided < 2) continue;
            ++built;
            Block t;
            do {
                for (Elem& x : t.e) x = Elem(static_cast<std::uint16_t>(rng_() & mask));
            } while (!is_invertible(f_, t));

            RepairProcess p;
            p.groups.push_back({m, {rep.front()}});
            p.groups.push_back({mul(f_, t, m), {rep.begin() + 1, rep.end()}});
            if (!rest.empty())
                p.groups.push_back(
                    {RepairMat::from_halves(Block::identity(), Block::zero()), rest});

            std::string why;
            try {
                const ProcessCheck before = process_validate(p, code_, rule_.classes);
                const int t0 = process_bandwidth(p, code_, rule_).total;
                const RepairProcess merged = merge_equivalent(p, code_, rule_.classes);
                const ProcessCheck after = process_validate(merged, code_, rule_.classes);
                const int t1 = process_bandwidth(merged, code_, rule_).total;
                if (before.effective) why = "split process is not flagged as mergeable";
                else if (!after.effective) why = "merged process is still mergeable";
                else if (merged.groups.size() >= p.groups.size()) why = "merge removed no group";
                else if (t0 != t1)
                    why = "total changed from " + std::to_string(t0) + " to " + std::to_string(t1);
            } catch (const Error& e) {
                why = e.what();
            }
            record(kGirth4, why.empty(), &m, std::nullopt,
                   [&] { return why + " process=" + process_to_json(p); });
        }
    }

    const ArrayCode& code_;
    const Field& f_;
    const std::vector<RepairMat>& mats_;
    ChargeRule rule_;
    std::size_t n_;
    int two_k_;
    std::mt19937_64 rng_;
    Tally& tally_;
    std::vector<PartialBest> best_;
};

std::uint64_t mix(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace

const std::vector<std::string>& lemma_names() {
    static const std::vector<std::string> names = {
        "Bij2",      "sameBiBj",        "totalrepairbandwidth", "allzeros", "fullrankM",
        "Bicalculation", "M2notinvertible", "hatM",             "sametype", "girth4free"};
    return names;
}

bool VerifyReport::all_pass() const {
    return std::all_of(lemmas.begin(), lemmas.end(),
                       [](const LemmaResult& r) { return r.failed == 0; });
}

VerifyReport verify_lemmas(const VerifyOptions& opts) {
    guard_field(opts.field, opts.max_field_size);
    if (opts.n < ArrayCode::kMinNodes)
        throw DomainError("verification needs N >= 3, got " + std::to_string(opts.n));

    std::vector<ArrayCode> codes;
    if (opts.exhaustive_codes) {
        codes = enumerate_reduced_codes(opts.field, opts.n);
    } else {
        codes.reserve(opts.samples);
        for (std::size_t k = 0; k < opts.samples; ++k)
            codes.push_back(random_code(opts.field, opts.n, sample_seed(opts.seed, k)));
    }
    const std::vector<RepairMat> mats = enumerate_row_spaces(opts.field);

    const unsigned threads = resolve_threads(opts.threads, codes.size());
    std::vector<Tally> tallies(threads, Tally(opts.max_counterexamples));
    for_chunks(codes.size(), threads, [&](unsigned c, std::size_t b, std::size_t e) {
        for (std::size_t k = b; k < e; ++k)
            CodeVerifier(codes[k], mats, opts, mix(opts.seed, k), tallies[c]).run();
    });

    VerifyReport report;
    report.field = opts.field.name();
    report.n = opts.n;
    report.codes = codes.size();
    report.exhaustive = opts.exhaustive_codes;
    report.seed = opts.seed;
    report.charging = std::string(to_string(opts.charging.classes));
    report.lemmas = Tally(opts.max_counterexamples).lemmas;
    for (const Tally& t : tallies)
        for (std::size_t l = 0; l < kLemmaCount; ++l) {
            LemmaResult& dst = report.lemmas[l];
            const LemmaResult& src = t.lemmas[l];
            dst.checked += src.checked;
            dst.failed += src.failed;
            for (const auto& ex : src.examples)
                if (dst.examples.size() < opts.max_counterexamples) dst.examples.push_back(ex);
        }
    return report;
}

} // namespace arrayrepair

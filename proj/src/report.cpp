#include "arrayrepair/report.hpp"

#include "arrayrepair/bound.hpp"
#include "arrayrepair/errors.hpp"

#include <json.hpp>

#include <random>
#include <sstream>

namespace arrayrepair {

using nlohmann::ordered_json;

namespace {

std::string block_text(const Block& b) {
    return "[" + std::to_string(b.e[0].value) + " " + std::to_string(b.e[1].value) + "; " +
           std::to_string(b.e[2].value) + " " + std::to_string(b.e[3].value) + "]";
}

std::string matrix_text(const RepairMat& m) {
    std::string s = "[";
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 4; ++c)
            s += std::to_string(m.at(r, c).value) + (c < 3 ? " " : (r == 0 ? "; " : "]"));
    return s;
}

std::string vec_text(const Vec2& v) {
    return "(" + std::to_string(v[0].value) + "," + std::to_string(v[1].value) + ")";
}

template <class T>
std::string tuple_text(const std::vector<T>& xs) {
    std::string s = "(";
    for (std::size_t k = 0; k < xs.size(); ++k) s += (k ? ", " : "") + std::to_string(xs[k]);
    return s + ")";
}

std::string nodes_text(const std::vector<std::size_t>& nodes) {
    std::string s = "{";
    for (std::size_t k = 0; k < nodes.size(); ++k)
        s += (k ? "," : "") + std::to_string(nodes[k] + 1);
    return s + "}";
}

ordered_json block_json(const Block& b) {
    return {b.e[0].value, b.e[1].value, b.e[2].value, b.e[3].value};
}

ordered_json matrix_json(const RepairMat& m) {
    ordered_json rows = ordered_json::array();
    for (int r = 0; r < 2; ++r) {
        ordered_json row = ordered_json::array();
        for (int c = 0; c < 4; ++c) row.push_back(m.at(r, c).value);
        rows.push_back(row);
    }
    return rows;
}

ordered_json vec_json(const Vec2& v) { return {v[0].value, v[1].value}; }

ordered_json nodes_json(const std::vector<std::size_t>& nodes) {
    ordered_json a = ordered_json::array();
    for (std::size_t i : nodes) a.push_back(i + 1);
    return a;
}

ordered_json process_json(const RepairProcess& p) {
    ordered_json groups = ordered_json::array();
    for (const RepairGroup& g : p.groups)
        groups.push_back({{"matrix", matrix_json(g.matrix)}, {"nodes", nodes_json(g.nodes)}});
    return groups;
}

std::string class_label(const Field& f, const Block& b, ClassRule rule) {
    const Classification c = classify(f, b, rule);
    return std::string(to_string(c.tag)) + (c.invertible ? "(inv)" : "");
}

Codeword random_codeword(const ArrayCode& code, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const std::uint32_t mask = code.field().size() - 1;
    std::vector<Elem> data(2 * code.k());
    for (Elem& x : data) x = Elem(static_cast<std::uint16_t>(rng() & mask));
    return encode(code, data);
}

std::string symbol_name(const Download& d) {
    return "alpha_" + std::to_string(d.symbol + 1) + "(" + std::to_string(d.node + 1) + ")";
}

ordered_json downloads_json(const std::vector<Download>& ds) {
    ordered_json a = ordered_json::array();
    for (const Download& d : ds) a.push_back({{"node", d.node + 1}, {"symbol", d.symbol + 1}});
    return a;
}

std::string finish_text(std::ostringstream& s, bool passed) {
    s << "Result: " << (passed ? "PASS" : "FAIL") << "\n";
    return s.str();
}

} // namespace

ArrayCode example_code() {
    // Under x^4 + x + 1, A_1 + A_3 would be singular.
    const Field f = Field::make(4, 0x19);
    return ArrayCode(f, {Block::of(f, 2, 0, 0, 3), Block::of(f, 0, 4, 5, 1),
                         Block::of(f, 0, 8, 9, 1)});
}

RepairProcess example_process() {
    const Field f = Field::make(4, 0x19);
    RepairProcess p;
    p.groups.push_back({RepairMat::of(f, {1, 0, 0, 0, 0, 1, 0, 1}), {0}});
    p.groups.push_back({RepairMat::of(f, {0, 1, 0, 0, 0, 0, 0, 1}), {1, 2}});
    return p;
}

Report example_report(const ArrayCode& code, std::uint64_t seed) {
    const Field& f = code.field();
    const RepairProcess process = example_process();
    const ChargeRule rule{};

    // Reference values for the bundled code under the example process.
    const std::vector<std::vector<std::array<std::uint16_t, 4>>> want_blocks = {
        {{1, 0, 0, 2}, {1, 0, 5, 0}, {1, 0, 9, 0}},
        {{0, 1, 0, 3}, {0, 1, 5, 1}, {0, 1, 9, 1}}};
    const std::vector<std::vector<int>> want_pairs = {{0, 1, 1}, {1, 0, 2}, {1, 2, 0}};
    const std::vector<int> want_nodes = {2, 3, 3};

    std::vector<std::string> mismatches;
    auto expect = [&mismatches](bool ok, const std::string& what, const std::string& want,
                                const std::string& got) {
        if (!ok) mismatches.push_back(what + ": expected " + want + ", got " + got);
    };

    std::ostringstream s;
    ordered_json j;
    j["command"] = "example";
    j["code"] = ordered_json::parse(code_to_json(code));
    s << "Example code: N = " << code.n() << " over " << f.name() << ", reduction polynomial 0x"
      << std::hex << f.polynomial() << std::dec << "\n";
    for (std::size_t i = 0; i < code.n(); ++i)
        s << (i ? "  " : "") << "A_" << i + 1 << " = " << block_text(code.block(i));
    s << "\n";
    expect(code.n() == 3, "node count", "3", std::to_string(code.n()));
    expect(f.size() == 16 && f.polynomial() == 0x19, "field", "GF(16) mod 0x19",
           f.name() + " mod " + std::to_string(f.polynomial()));

    ordered_json jgroups = ordered_json::array();
    for (std::size_t r = 0; r < process.groups.size(); ++r) {
        const RepairGroup& g = process.groups[r];
        const std::vector<Block> blocks = compute_blocks(code, g.matrix);
        s << "\nGroup " << r + 1 << ": M = " << matrix_text(g.matrix) << ", repairs nodes "
          << nodes_text(g.nodes) << "\n";
        for (int row = 0; row < 2; ++row) {
            s << (row == 0 ? "  M H = | " : "        | ");
            for (const Block& b : blocks)
                s << b.at(row, 0).value << " " << b.at(row, 1).value << " ";
            s << "|\n";
        }
        s << "  classes:";
        ordered_json jblocks = ordered_json::array(), jclasses = ordered_json::array();
        for (std::size_t k = 0; k < blocks.size(); ++k) {
            const std::string label = class_label(f, blocks[k], rule.classes);
            s << " " << label;
            jblocks.push_back(block_json(blocks[k]));
            jclasses.push_back(label);
            if (r < want_blocks.size() && k < want_blocks[r].size()) {
                const auto& w = want_blocks[r][k];
                const Block wb{{Elem(w[0]), Elem(w[1]), Elem(w[2]), Elem(w[3])}};
                expect(blocks[k] == wb,
                       "group " + std::to_string(r + 1) + " block H_" + std::to_string(k + 1),
                       block_text(wb), block_text(blocks[k]));
            }
        }
        s << "\n";
        jgroups.push_back({{"matrix", matrix_json(g.matrix)},
                           {"nodes", nodes_json(g.nodes)},
                           {"blocks", jblocks},
                           {"classes", jclasses}});
    }
    j["groups"] = jgroups;

    BandwidthReport bw;
    bool have_bw = false;
    try {
        bw = process_bandwidth(process, code, rule);
        have_bw = true;
    } catch (const Error& e) {
        mismatches.push_back(std::string("repair process: ") + e.what());
    }
    if (have_bw) {
        s << "\nB_{i,j}:\n";
        for (const auto& row : bw.per_pair) {
            s << " ";
            for (int b : row) s << " " << b;
            s << "\n";
        }
        s << "B_i = " << tuple_text(bw.per_node) << ", total " << bw.total << "\n";
        expect(bw.per_pair == want_pairs, "B_{i,j}", "[[0,1,1],[1,0,2],[1,2,0]]",
               ordered_json(bw.per_pair).dump());
        expect(bw.per_node == want_nodes, "B_i", "(2, 3, 3)", tuple_text(bw.per_node));
        expect(bw.total == 8, "total", "8", std::to_string(bw.total));
        j["per_pair"] = bw.per_pair;
        j["per_node"] = bw.per_node;
        j["total"] = bw.total;

        const Codeword word = random_codeword(code, seed);
        s << "\nCodeword (seed " << seed << "):";
        ordered_json jword = ordered_json::array();
        for (const Vec2& v : word) {
            s << " " << vec_text(v);
            jword.push_back(vec_json(v));
        }
        s << "\n";
        j["seed"] = seed;
        j["codeword"] = jword;

        ordered_json jrepairs = ordered_json::array();
        for (std::size_t i = 0; i < code.n(); ++i) {
            Codeword erased = word;
            erased[i] = Vec2{};
            const RepairOutcome out = repair_node(process, code, erased, i, rule);
            const bool ok = out.recovered == word[i] && out.downloaded() == bw.per_node[i];
            s << "Repair node " << i + 1 << " with group " << out.group + 1 << ": downloads";
            for (const Download& d : out.downloads) s << " " << symbol_name(d);
            s << "; recovered " << vec_text(out.recovered) << ", erased " << vec_text(word[i])
              << " " << (ok ? "OK" : "MISMATCH") << "\n";
            expect(out.recovered == word[i], "repair of node " + std::to_string(i + 1),
                   vec_text(word[i]), vec_text(out.recovered));
            expect(out.downloaded() == bw.per_node[i],
                   "symbols downloaded for node " + std::to_string(i + 1),
                   std::to_string(bw.per_node[i]), std::to_string(out.downloaded()));
            jrepairs.push_back({{"node", i + 1},
                                {"group", out.group + 1},
                                {"downloads", downloads_json(out.downloads)},
                                {"recovered", vec_json(out.recovered)},
                                {"expected", vec_json(word[i])},
                                {"ok", ok}});
        }
        j["repairs"] = jrepairs;
    }

    Report rep;
    rep.passed = mismatches.empty();
    if (!mismatches.empty()) {
        s << "\n";
        for (const auto& m : mismatches) s << "MISMATCH " << m << "\n";
    }
    s << "\n";
    rep.text = finish_text(s, rep.passed);
    j["mismatches"] = mismatches;
    j["passed"] = rep.passed;
    rep.json = j.dump(2) + "\n";
    return rep;
}

Report search_report(const Field& field, std::size_t n, std::size_t samples, std::uint64_t seed,
                     const SearchOptions& opts) {
    Report rep;
    std::ostringstream s;
    ordered_json j;
    j["command"] = "search";
    j["field"] = field.name();
    j["n"] = n;
    j["seed"] = seed;
    j["charging"] = std::string(to_string(opts.charging.classes));
    const std::int64_t bound = combined_bound(static_cast<int>(n));
    j["bound"] = bound;
    s << "search " << field.name() << ", N = " << n << ", " << samples << " codes from seed "
      << seed << ", charging " << to_string(opts.charging.classes) << "\n";
    s << "min{Δ3,Δ4}(" << n << ") = " << bound << "\n";

    ordered_json jcodes = ordered_json::array();
    std::size_t passing = 0;
    for (std::size_t k = 0; k < samples; ++k) {
        const std::uint64_t cs = sample_seed(seed, k);
        const ArrayCode code = random_code(field, n, cs);
        const OptimalTotal opt = optimal_total_bandwidth(code, opts);
        const bool ok = opt.total >= bound;
        passing += ok;
        s << "\nCode " << k + 1 << " (seed " << cs << "): " << code_to_json(code) << "\n";
        std::vector<int> per_node;
        ordered_json jnodes = ordered_json::array();
        for (const NodeOptimum& o : opt.nodes) {
            per_node.push_back(o.bandwidth);
            s << "  node " << o.node + 1 << ": B = " << o.bandwidth << ", matrix "
              << matrix_text(o.matrix) << ", minimizers " << o.ties.size() << "\n";
            jnodes.push_back({{"node", o.node + 1},
                              {"bandwidth", o.bandwidth},
                              {"matrix", matrix_json(o.matrix)},
                              {"matrix_index", o.matrix_index},
                              {"minimizers", o.ties.size()}});
        }
        s << "  B_i = " << tuple_text(per_node) << ", total " << opt.total << "\n";
        s << "  process:";
        for (const RepairGroup& g : opt.process.groups)
            s << " " << matrix_text(g.matrix) << " -> " << nodes_text(g.nodes) << ";";
        s << "\n";
        s << "  total ≥ min{Δ3,Δ4}: " << (ok ? "PASS" : "FAIL") << " (" << opt.total
          << (ok ? " >= " : " < ") << bound << ")\n";
        jcodes.push_back({{"seed", cs},
                          {"code", ordered_json::parse(code_to_json(code))},
                          {"nodes", jnodes},
                          {"total", opt.total},
                          {"process", process_json(opt.process)},
                          {"bound_ok", ok}});
    }
    rep.passed = passing == samples;
    s << "\nSummary: " << passing << "/" << samples << " codes satisfy total >= bound\n";
    rep.text = finish_text(s, rep.passed);
    j["codes"] = jcodes;
    j["passed"] = rep.passed;
    rep.json = j.dump(2) + "\n";
    return rep;
}

Report verify_report(const VerifyOptions& opts) { return verify_report(verify_lemmas(opts)); }

Report verify_report(const VerifyReport& v) {
    Report rep;
    rep.passed = v.all_pass();
    std::ostringstream s;
    s << "verify " << v.field << ", N = " << v.n << ", " << v.codes
      << (v.exhaustive ? " reduced codes (exhaustive)" : " sampled codes") << ", seed " << v.seed
      << ", charging " << v.charging << "\n";
    ordered_json j;
    j["command"] = "verify";
    j["field"] = v.field;
    j["n"] = v.n;
    j["codes"] = v.codes;
    j["exhaustive"] = v.exhaustive;
    j["seed"] = v.seed;
    j["charging"] = v.charging;
    ordered_json jl = ordered_json::array();
    for (const LemmaResult& r : v.lemmas) {
        s << "  " << r.name << std::string(22 - r.name.size(), ' ') << "checked " << r.checked
          << "  failed " << r.failed << "  " << (r.failed ? "FAIL" : "PASS") << "\n";
        jl.push_back({{"name", r.name},
                      {"checked", r.checked},
                      {"failed", r.failed},
                      {"passed", r.failed == 0},
                      {"counterexamples", r.examples}});
    }
    for (const LemmaResult& r : v.lemmas) {
        if (r.examples.empty()) continue;
        s << "\nCounterexamples for " << r.name << " (first " << r.examples.size() << " of "
          << r.failed << "):\n";
        for (const auto& e : r.examples) s << "  " << e << "\n";
    }
    rep.text = finish_text(s, rep.passed);
    j["lemmas"] = jl;
    j["passed"] = rep.passed;
    rep.json = j.dump(2) + "\n";
    return rep;
}

Report simulate_report(const ArrayCode& code, const std::optional<RepairProcess>& process,
                       std::size_t node, std::uint64_t seed, const SearchOptions& opts) {
    if (node >= code.n())
        throw DomainError("node " + std::to_string(node + 1) + " out of range for N = " +
                          std::to_string(code.n()));
    const RepairProcess p = process ? *process : optimal_total_bandwidth(code, opts).process;
    const BandwidthReport bw = process_bandwidth(p, code, opts.charging);
    const Codeword word = random_codeword(code, seed);
    Codeword erased = word;
    erased[node] = Vec2{};
    const RepairOutcome out = repair_node(p, code, erased, node, opts.charging);

    const bool exact = out.recovered == word[node];
    const bool counted = out.downloaded() == bw.per_node[node];
    Report rep;
    rep.passed = exact && counted && out.consistent;

    std::ostringstream s;
    s << "simulate node " << node + 1 << " of N = " << code.n() << " over " << code.field().name()
      << ", seed " << seed << "\n";
    s << "process (" << (process ? "from file" : "optimal") << "):";
    for (const RepairGroup& g : p.groups)
        s << " " << matrix_text(g.matrix) << " -> " << nodes_text(g.nodes) << ";";
    s << "\ncodeword:";
    for (const Vec2& v : word) s << " " << vec_text(v);
    s << "\nerased node " << node + 1 << " held " << vec_text(word[node]) << "\n";
    s << "repairing with group " << out.group + 1 << ", M = "
      << matrix_text(p.groups[out.group].matrix) << "\n";
    for (const Download& d : out.downloads)
        s << "  download " << symbol_name(d) << " = " << word[d.node][d.symbol].value << "\n";
    s << "downloaded " << out.downloaded() << " symbols; B_" << node + 1 << " = "
      << bw.per_node[node] << " " << (counted ? "OK" : "MISMATCH") << "\n";
    s << "recovered " << vec_text(out.recovered) << " " << (exact ? "OK" : "MISMATCH") << "\n";
    s << "parity equations " << (out.consistent ? "hold" : "FAIL") << "\n";
    rep.text = finish_text(s, rep.passed);

    ordered_json j;
    j["command"] = "simulate";
    j["code"] = ordered_json::parse(code_to_json(code));
    j["node"] = node + 1;
    j["seed"] = seed;
    j["process_source"] = process ? "file" : "optimal";
    j["process"] = process_json(p);
    ordered_json jword = ordered_json::array();
    for (const Vec2& v : word) jword.push_back(vec_json(v));
    j["codeword"] = jword;
    j["group"] = out.group + 1;
    j["downloads"] = downloads_json(out.downloads);
    j["downloaded"] = out.downloaded();
    j["bandwidth"] = bw.per_node[node];
    j["recovered"] = vec_json(out.recovered);
    j["expected"] = vec_json(word[node]);
    j["consistent"] = out.consistent;
    j["passed"] = rep.passed;
    rep.json = j.dump(2) + "\n";
    return rep;
}

} // namespace arrayrepair

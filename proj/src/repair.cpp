#include "arrayrepair/repair.hpp"

#include "arrayrepair/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <set>

namespace arrayrepair {

std::string_view to_string(ClassRule rule) {
    return rule == ClassRule::Support ? "support" : "strict";
}

ClassRule parse_class_rule(std::string_view name) {
    if (name == "support") return ClassRule::Support;
    if (name == "strict") return ClassRule::Strict;
    throw DomainError("unknown charging rule \"" + std::string(name) +
                      "\" (expected support or strict)");
}

std::optional<std::size_t> RepairProcess::group_of(std::size_t node) const {
    for (std::size_t r = 0; r < groups.size(); ++r)
        if (std::find(groups[r].nodes.begin(), groups[r].nodes.end(), node) !=
            groups[r].nodes.end())
            return r;
    return std::nullopt;
}

std::vector<Block> compute_blocks(const ArrayCode& code, const RepairMat& m) {
    const Field& f = code.field();
    for (Elem x : m.e)
        if (!f.contains(x))
            throw FieldError("repair matrix entry " + std::to_string(x.value) + " outside " +
                             f.name());
    const Block m1 = m.left();
    const Block m2 = m.right();
    std::vector<Block> out;
    out.reserve(code.n());
    for (const Block& a : code.blocks()) out.push_back(m1 + mul(f, m2, a));
    return out;
}

std::vector<int> pair_bandwidth(const Field& field, std::span<const Block> blocks, std::size_t i,
                                const ChargeRule& rule) {
    if (i >= blocks.size())
        throw DomainError("node " + std::to_string(i + 1) + " out of range");
    if (!is_invertible(field, blocks[i]))
        throw InvalidRepairError("block of node " + std::to_string(i + 1) +
                                 " is singular; the matrix cannot repair it");
    std::vector<int> row(blocks.size(), 0);
    for (std::size_t j = 0; j < blocks.size(); ++j)
        if (j != i) row[j] = rule.charge(blocks[j]);
    return row;
}

namespace {

bool same_one_sided_type(BlockClass a, BlockClass b) {
    return a == b && (a == BlockClass::L || a == BlockClass::R);
}

std::optional<MergeWitness> find_merge(const std::vector<std::vector<Block>>& blocks,
                                       ClassRule classes) {
    for (std::size_t r1 = 0; r1 < blocks.size(); ++r1)
        for (std::size_t r2 = r1 + 1; r2 < blocks.size(); ++r2) {
            std::vector<std::size_t> shared;
            for (std::size_t k = 0; k < blocks[r1].size(); ++k)
                if (same_one_sided_type(block_class(blocks[r1][k], classes),
                                        block_class(blocks[r2][k], classes)))
                    shared.push_back(k);
            if (shared.size() >= 2) return MergeWitness{r1, r2, shared[0], shared[1]};
        }
    return std::nullopt;
}

std::string node_name(std::size_t i) { return "node " + std::to_string(i + 1); }

} // namespace

ProcessCheck process_validate(const RepairProcess& process, const ArrayCode& code,
                              ClassRule classes) {
    ProcessCheck check;
    const Field& f = code.field();
    const std::size_t n = code.n();
    auto fail = [&check](std::string msg) {
        check.valid = false;
        check.problems.push_back(std::move(msg));
    };

    if (process.groups.empty()) fail("process has no groups");
    std::vector<int> seen(n, 0);
    std::vector<std::vector<Block>> blocks;
    blocks.reserve(process.groups.size());
    for (std::size_t r = 0; r < process.groups.size(); ++r) {
        const RepairGroup& g = process.groups[r];
        const std::string gname = "group " + std::to_string(r + 1);
        bool in_field = true;
        for (Elem x : g.matrix.e) in_field = in_field && f.contains(x);
        if (!in_field) {
            fail(gname + " matrix has entries outside " + f.name());
            blocks.emplace_back(n, Block::zero());
            continue;
        }
        blocks.push_back(compute_blocks(code, g.matrix));
        if (g.nodes.empty()) fail(gname + " repairs no nodes");
        if (rank(f, g.matrix) != 2) fail(gname + " matrix does not have rank 2");
        for (std::size_t i : g.nodes) {
            if (i >= n) {
                fail(gname + " lists " + node_name(i) + " but the code has " +
                     std::to_string(n) + " nodes");
                continue;
            }
            ++seen[i];
            if (!is_invertible(f, blocks.back()[i]))
                fail(gname + " cannot repair " + node_name(i) + " (singular block)");
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (seen[i] == 0) fail(node_name(i) + " is in no group");
        if (seen[i] > 1) fail(node_name(i) + " is in more than one group");
    }
    check.mergeable = find_merge(blocks, classes);
    check.effective = !check.mergeable.has_value();
    return check;
}

namespace {

void require_valid(const RepairProcess& process, const ArrayCode& code, ClassRule classes) {
    const ProcessCheck check = process_validate(process, code, classes);
    if (check.valid) return;
    std::string msg = "invalid repair process:";
    for (const auto& p : check.problems) msg += " " + p + ";";
    msg.pop_back();
    throw InvalidRepairError(msg);
}

} // namespace

BandwidthReport process_bandwidth(const RepairProcess& process, const ArrayCode& code,
                                  const ChargeRule& rule) {
    require_valid(process, code, rule.classes);
    const std::size_t n = code.n();
    BandwidthReport report;
    report.per_pair.assign(n, std::vector<int>(n, 0));
    report.per_node.assign(n, 0);
    for (const RepairGroup& g : process.groups) {
        const std::vector<Block> blocks = compute_blocks(code, g.matrix);
        for (std::size_t i : g.nodes) {
            report.per_pair[i] = pair_bandwidth(code.field(), blocks, i, rule);
            for (int b : report.per_pair[i]) report.per_node[i] += b;
        }
        report.per_group.push_back(report.per_node[g.nodes.front()]);
    }
    for (int b : report.per_node) report.total += b;
    return report;
}

RepairOutcome repair_node(const RepairProcess& process, const ArrayCode& code,
                          std::span<const Vec2> word, std::size_t node, const ChargeRule& rule) {
    const Field& f = code.field();
    if (word.size() != code.n())
        throw DomainError("codeword has " + std::to_string(word.size()) + " nodes, code has " +
                          std::to_string(code.n()));
    const auto group = process.group_of(node);
    if (!group) throw InvalidRepairError(node_name(node) + " is not repaired by any group");
    require_valid(process, code, rule.classes);

    RepairOutcome out;
    out.group = *group;
    const std::vector<Block> blocks = compute_blocks(code, process.groups[*group].matrix);
    Vec2 acc{};
    for (std::size_t j = 0; j < code.n(); ++j) {
        if (j == node) continue;
        const Block& h = blocks[j];
        const Vec2& v = word[j];
        switch (block_class(h, rule.classes)) {
        case BlockClass::Zero:
            break;
        case BlockClass::L: // only the second column is nonzero
            out.downloads.push_back({j, 1});
            acc = {acc[0] + f.mul_raw(h.at(0, 1), v[1]), acc[1] + f.mul_raw(h.at(1, 1), v[1])};
            break;
        case BlockClass::R:
            out.downloads.push_back({j, 0});
            acc = {acc[0] + f.mul_raw(h.at(0, 0), v[0]), acc[1] + f.mul_raw(h.at(1, 0), v[0])};
            break;
        case BlockClass::M: {
            out.downloads.push_back({j, 0});
            out.downloads.push_back({j, 1});
            const Vec2 c = apply(f, h, v);
            acc = {acc[0] + c[0], acc[1] + c[1]};
            break;
        }
        }
    }
    out.recovered = apply(f, inverse(f, blocks[node]), acc);

    Codeword full(word.begin(), word.end());
    full[node] = out.recovered;
    out.consistent = satisfies_parity(code, full);
    return out;
}

RepairMat normalize_matrix(const RepairMat& m, const ArrayCode& code, std::size_t i) {
    if (i >= code.n()) throw DomainError(node_name(i) + " out of range");
    const Block hi = compute_blocks(code, m)[i];
    if (!is_invertible(code.field(), hi))
        throw InvalidRepairError("cannot normalize: block of " + node_name(i) + " is singular");
    return mul(code.field(), inverse(code.field(), hi), m);
}

RepairProcess merge_equivalent(const RepairProcess& process, const ArrayCode& code,
                               ClassRule classes) {
    RepairProcess current = process;
    for (;;) {
        const ProcessCheck check = process_validate(current, code, classes);
        if (!check.valid) {
            std::string msg = "cannot merge an invalid process:";
            for (const auto& p : check.problems) msg += " " + p + ";";
            msg.pop_back();
            throw InvalidRepairError(msg);
        }
        if (!check.mergeable) return current;
        const MergeWitness w = *check.mergeable;
        RepairGroup& keep = current.groups[w.r1];
        const RepairGroup& gone = current.groups[w.r2];
        keep.nodes.insert(keep.nodes.end(), gone.nodes.begin(), gone.nodes.end());
        std::sort(keep.nodes.begin(), keep.nodes.end());
        current.groups.erase(current.groups.begin() + static_cast<std::ptrdiff_t>(w.r2));
    }
}

std::string process_to_json(const RepairProcess& process) {
    nlohmann::ordered_json doc;
    auto groups = nlohmann::ordered_json::array();
    for (const RepairGroup& g : process.groups) {
        nlohmann::ordered_json jg;
        auto rows = nlohmann::ordered_json::array();
        for (int r = 0; r < 2; ++r) {
            auto row = nlohmann::ordered_json::array();
            for (int c = 0; c < 4; ++c) row.push_back(g.matrix.at(r, c).value);
            rows.push_back(std::move(row));
        }
        jg["matrix"] = std::move(rows);
        auto nodes = nlohmann::ordered_json::array();
        for (std::size_t i : g.nodes) nodes.push_back(i + 1);
        jg["nodes"] = std::move(nodes);
        groups.push_back(std::move(jg));
    }
    doc["groups"] = std::move(groups);
    return doc.dump();
}

RepairProcess process_from_json(std::string_view text, const Field& field) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("malformed process document: ") + e.what());
    }
    if (!doc.is_object() || doc.size() != 1 || !doc.contains("groups") ||
        !doc.at("groups").is_array())
        throw ParseError("process document must be {\"groups\": [...]}");

    RepairProcess process;
    for (const auto& jg : doc.at("groups")) {
        if (!jg.is_object()) throw ParseError("each group must be an object");
        for (const auto& [key, value] : jg.items())
            if (key != "matrix" && key != "nodes")
                throw ParseError("unknown key \"" + key + "\" in repair group");
        if (!jg.contains("matrix") || !jg.contains("nodes"))
            throw ParseError("each group needs \"matrix\" and \"nodes\"");
        const auto& rows = jg.at("matrix");
        if (!rows.is_array() || rows.size() != 2)
            throw ParseError("\"matrix\" must have 2 rows");
        RepairGroup g;
        for (std::size_t r = 0; r < 2; ++r) {
            if (!rows[r].is_array() || rows[r].size() != 4)
                throw ParseError("each matrix row must have 4 entries");
            for (std::size_t c = 0; c < 4; ++c) {
                if (!rows[r][c].is_number_unsigned())
                    throw ParseError("matrix entries must be non-negative integers");
                const auto v = rows[r][c].get<std::uint64_t>();
                if (v >= field.size())
                    throw ParseError("matrix entry " + std::to_string(v) +
                                     " is not an element of " + field.name());
                g.matrix.e[4 * r + c] = Elem(static_cast<std::uint16_t>(v));
            }
        }
        const auto& nodes = jg.at("nodes");
        if (!nodes.is_array()) throw ParseError("\"nodes\" must be an array");
        for (const auto& v : nodes) {
            if (!v.is_number_unsigned() || v.get<std::uint64_t>() == 0)
                throw ParseError("node indices are 1-based positive integers");
            g.nodes.push_back(static_cast<std::size_t>(v.get<std::uint64_t>() - 1));
        }
        process.groups.push_back(std::move(g));
    }
    return process;
}

} // namespace arrayrepair

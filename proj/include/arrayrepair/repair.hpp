#pragma once

#include "arrayrepair/arraycode.hpp"
#include "arrayrepair/blockmat.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace arrayrepair {

// Symbols charged for one helper block, by class: Zero 0, L 1, R 1, M 2.
// `classes` selects how L/R membership is read (see ClassRule).
struct ChargeRule {
    ClassRule classes = ClassRule::Support;
    std::array<int, 4> cost{0, 1, 1, 2};

    static ChargeRule support() { return {}; }
    static ChargeRule strict() { return {ClassRule::Strict, {0, 1, 1, 2}}; }

    int charge(BlockClass c) const { return cost[static_cast<std::size_t>(c)]; }
    int charge(const Block& b) const { return charge(block_class(b, classes)); }
};

std::string_view to_string(ClassRule rule);
// "support" or "strict"; throws DomainError otherwise.
ClassRule parse_class_rule(std::string_view name);

// H_j = M1 + M2 A_j for every node j.
std::vector<Block> compute_blocks(const ArrayCode& code, const RepairMat& m);

// B_{i,j} for all j. Throws InvalidRepairError if blocks[i] is singular.
std::vector<int> pair_bandwidth(const Field& field, std::span<const Block> blocks, std::size_t i,
                                const ChargeRule& rule = {});

struct RepairGroup {
    RepairMat matrix;
    std::vector<std::size_t> nodes; // 0-based
};

struct RepairProcess {
    std::vector<RepairGroup> groups;

    // Index of the group repairing `node`, if any.
    std::optional<std::size_t> group_of(std::size_t node) const;
};

// Two groups r1 < r2 and helpers i != j whose blocks agree in L/R type under
// both matrices. Such a pair can be merged without changing total bandwidth.
struct MergeWitness {
    std::size_t r1 = 0, r2 = 0;
    std::size_t i = 0, j = 0;
};

struct ProcessCheck {
    bool valid = true;
    bool effective = true;
    std::vector<std::string> problems;
    std::optional<MergeWitness> mergeable;
};

ProcessCheck process_validate(const RepairProcess& process, const ArrayCode& code,
                              ClassRule classes = ClassRule::Support);

struct BandwidthReport {
    std::vector<std::vector<int>> per_pair; // B_{i,j}
    std::vector<int> per_node;              // B_i
    std::vector<int> per_group;             // B^(r)
    int total = 0;
};

// Throws InvalidRepairError if the process fails process_validate.
BandwidthReport process_bandwidth(const RepairProcess& process, const ArrayCode& code,
                                  const ChargeRule& rule = {});

struct Download {
    std::size_t node = 0;
    int symbol = 0; // 0 for alpha_1, 1 for alpha_2
};

struct RepairOutcome {
    std::size_t group = 0;
    Vec2 recovered{};
    std::vector<Download> downloads;
    // The recovered value closes both parity equations against `word`.
    bool consistent = false;

    int downloaded() const { return static_cast<int>(downloads.size()); }
};

// Rebuilds alpha^(node) from the helpers. word[node] is never read. A helper
// whose block has a zero column contributes only the symbol that meets the
// nonzero column; Zero blocks contribute nothing.
RepairOutcome repair_node(const RepairProcess& process, const ArrayCode& code,
                          std::span<const Vec2> word, std::size_t node,
                          const ChargeRule& rule = {});

// [H_i]^{-1} M, so that the result maps node i's block to I.
RepairMat normalize_matrix(const RepairMat& m, const ArrayCode& code, std::size_t i);

// Repeatedly merges the first mergeable pair (r1, r2) into r1's matrix.
RepairProcess merge_equivalent(const RepairProcess& process, const ArrayCode& code,
                               ClassRule classes = ClassRule::Support);

// {"groups": [{"matrix": [[4 ints], [4 ints]], "nodes": [1, ...]}, ...]}
// with 1-based node indices.
std::string process_to_json(const RepairProcess& process);
RepairProcess process_from_json(std::string_view text, const Field& field);

} // namespace arrayrepair

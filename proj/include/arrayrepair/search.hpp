#pragma once

#include "arrayrepair/arraycode.hpp"
#include "arrayrepair/repair.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace arrayrepair {

struct SearchOptions {
    ChargeRule charging{};
    // Scans over fields larger than this are refused (DomainError).
    std::uint32_t max_field_size = 16;
    // 0 means std::thread::hardware_concurrency().
    unsigned threads = 0;
};

struct NodeOptimum {
    std::size_t node = 0;
    int bandwidth = 0;
    RepairMat matrix;             // first minimizer in canonical order
    std::size_t matrix_index = 0; // its index in enumerate_row_spaces
    std::vector<std::size_t> ties; // every minimizer, ascending
};

// One scan over all canonical repair matrices, minimizing B_i for every node.
std::vector<NodeOptimum> best_repairs(const ArrayCode& code, const SearchOptions& opts = {});
NodeOptimum best_repair_for_node(const ArrayCode& code, std::size_t node,
                                 const SearchOptions& opts = {});

struct OptimalTotal {
    int total = 0;
    std::vector<NodeOptimum> nodes;
    // Nodes sharing a winning matrix form one group; mergeable groups are
    // then merged so the process is effective.
    RepairProcess process;
};

OptimalTotal optimal_total_bandwidth(const ArrayCode& code, const SearchOptions& opts = {});

struct VerifyOptions {
    Field field = Field::make(4);
    std::size_t n = 4;
    std::size_t samples = 20;
    std::uint64_t seed = 0;
    // Check every reduced code (see enumerate_reduced_codes) instead of
    // `samples` random ones.
    bool exhaustive_codes = false;
    ChargeRule charging{};
    unsigned threads = 0;
    std::size_t max_counterexamples = 5;
    std::uint32_t max_field_size = 16;
};

struct LemmaResult {
    std::string name;
    std::uint64_t checked = 0;
    std::uint64_t failed = 0;
    std::vector<std::string> examples; // first counterexamples in code order
};

struct VerifyReport {
    std::string field;
    std::size_t n = 0;
    std::size_t codes = 0;
    bool exhaustive = false;
    std::uint64_t seed = 0;
    std::string charging;
    std::vector<LemmaResult> lemmas;

    bool all_pass() const;
};

// Verifier names, in report order.
const std::vector<std::string>& lemma_names();

VerifyReport verify_lemmas(const VerifyOptions& opts);

// Seed used for the k-th sampled code of a run.
inline std::uint64_t sample_seed(std::uint64_t seed, std::size_t k) { return seed + k; }

} // namespace arrayrepair

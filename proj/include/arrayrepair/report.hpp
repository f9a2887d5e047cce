#pragma once

#include "arrayrepair/arraycode.hpp"
#include "arrayrepair/repair.hpp"
#include "arrayrepair/search.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace arrayrepair {

struct Report {
    bool passed = true;
    std::string text;
    std::string json;
};

// The three-node GF(16) code A_1 = [2 0; 0 3], A_2 = [0 4; 5 1], A_3 = [0 8; 9 1]
// and its two-group process: M^(1) = [1 0 0 0; 0 1 0 1] for node 1,
// M^(2) = [0 1 0 0; 0 0 0 1] for nodes 2 and 3.
ArrayCode example_code();
RepairProcess example_process();

// Recomputes blocks, bandwidths and all three repairs for `code` under the
// example process and diffs them against the reference values.
Report example_report(const ArrayCode& code, std::uint64_t seed);

// `samples` random codes (seeds seed, seed+1, ...) with their optimal
// total bandwidth compared against min{delta3, delta4}.
Report search_report(const Field& field, std::size_t n, std::size_t samples, std::uint64_t seed,
                     const SearchOptions& opts);

Report verify_report(const VerifyOptions& opts);
Report verify_report(const VerifyReport& result);

// Encodes seeded random data, erases `node` (0-based) and repairs it. Uses
// the optimal assembled process when `process` is empty.
Report simulate_report(const ArrayCode& code, const std::optional<RepairProcess>& process,
                       std::size_t node, std::uint64_t seed, const SearchOptions& opts);

} // namespace arrayrepair

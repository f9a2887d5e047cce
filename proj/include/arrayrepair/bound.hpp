#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace arrayrepair {

using Partition = std::vector<int>;

struct DeltaResult {
    std::int64_t value = 0;
    std::vector<Partition> argmin; // every minimizer, lexicographic order
};

// Objectives evaluated at one composition of n (parts >= 1).
std::int64_t delta3_objective(int n, const Partition& l);
std::int64_t delta4_objective(int n, const Partition& l);

// Exhaustive minimum over l1 + l2 + l3 = n with l1 <= l2. Needs n >= 3.
DeltaResult delta3(int n);
// Exhaustive minimum over l1 + ... + l4 = n with l1 <= l2, l3 <= l4. Needs n >= 4.
DeltaResult delta4(int n);

// Optimal total bandwidth over two-group processes: 2n(n-1) - 2 floor(n^2/4).
std::int64_t bstar2(int n);

enum class Attainer { Delta3, Delta4, Tie };
std::string to_string(Attainer a);

struct BoundRow {
    int n = 0;
    DeltaResult d3;
    DeltaResult d4; // empty argmin when n < 4
    std::int64_t bound = 0;
    Attainer attained_by = Attainer::Delta3;
    std::int64_t bstar2 = 0;
};

// min{delta3, delta4}; for n = 3 only delta3 is defined and is the bound.
BoundRow bound_row(int n);
std::int64_t combined_bound(int n);

inline constexpr int kMaxTableN = 1000;

// Rows for n_min..n_max, 4 <= n_min <= n_max <= kMaxTableN. Every row is
// checked for delta3 <= bstar2.
std::vector<BoundRow> bound_table(int n_min, int n_max);

// Header plus one line per row:
// N,delta3,delta4,bound,attained_by,bstar2,delta3_argmin,delta4_argmin
std::string bound_csv(const std::vector<BoundRow>& rows);
// Standalone SVG with one polyline of bound against N.
std::string bound_svg(const std::vector<BoundRow>& rows);

std::string partitions_text(const std::vector<Partition>& parts);

} // namespace arrayrepair

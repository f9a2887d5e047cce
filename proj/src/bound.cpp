#include "arrayrepair/bound.hpp"

#include "arrayrepair/errors.hpp"

#include <algorithm>
#include <climits>
#include <sstream>
#include <stdexcept>

namespace arrayrepair {

namespace {

// Partitions are only materialized for candidate minima.
template <class Make>
void offer(DeltaResult& r, std::int64_t v, Make make) {
    if (!r.argmin.empty() && v > r.value) return;
    if (r.argmin.empty() || v < r.value) {
        r.value = v;
        r.argmin.clear();
    }
    r.argmin.push_back(make());
}

std::int64_t d3_value(std::int64_t n, std::int64_t a, std::int64_t b, std::int64_t c) {
    return 2 * n * (n - 1) - n * n + a * a + b * b + c * c + a * (c - 1);
}

std::int64_t d4_value(std::int64_t n, std::int64_t a, std::int64_t b, std::int64_t c,
                      std::int64_t d) {
    return 2 * n * (n - 1) - a * (b + 1) - b * (n - b) - c * (d + 1) - d * (n - d);
}

} // namespace

std::int64_t delta3_objective(int n, const Partition& l) {
    return d3_value(n, l.at(0), l.at(1), l.at(2));
}

std::int64_t delta4_objective(int n, const Partition& l) {
    return d4_value(n, l.at(0), l.at(1), l.at(2), l.at(3));
}

DeltaResult delta3(int n) {
    if (n < 3) throw DomainError("delta3 needs N >= 3, got " + std::to_string(n));
    DeltaResult r;
    for (int a = 1; a <= n - 2; ++a)
        for (int b = a; a + b <= n - 1; ++b) {
            const int c = n - a - b;
            offer(r, d3_value(n, a, b, c), [&] { return Partition{a, b, c}; });
        }
    return r;
}

DeltaResult delta4(int n) {
    if (n < 4) throw DomainError("delta4 needs N >= 4, got " + std::to_string(n));
    DeltaResult r;
    for (int a = 1; a <= n - 3; ++a)
        for (int b = a; a + b <= n - 2; ++b)
            for (int c = 1; a + b + 2 * c <= n; ++c) {
                const int d = n - a - b - c;
                offer(r, d4_value(n, a, b, c, d), [&] { return Partition{a, b, c, d}; });
            }
    return r;
}

std::int64_t bstar2(int n) {
    if (n < 3) throw DomainError("bstar2 needs N >= 3, got " + std::to_string(n));
    const std::int64_t N = n;
    return 2 * N * (N - 1) - 2 * ((N * N) / 4);
}

std::string to_string(Attainer a) {
    switch (a) {
    case Attainer::Delta3: return "delta3";
    case Attainer::Delta4: return "delta4";
    case Attainer::Tie: return "tie";
    }
    return "?";
}

BoundRow bound_row(int n) {
    if (n < 3) throw DomainError("the bound needs N >= 3, got " + std::to_string(n));
    BoundRow row;
    row.n = n;
    row.d3 = delta3(n);
    row.bstar2 = bstar2(n);
    if (n >= 4) {
        row.d4 = delta4(n);
        row.bound = std::min(row.d3.value, row.d4.value);
        row.attained_by = row.d3.value < row.d4.value   ? Attainer::Delta3
                          : row.d4.value < row.d3.value ? Attainer::Delta4
                                                        : Attainer::Tie;
    } else {
        row.bound = row.d3.value;
    }
    return row;
}

std::int64_t combined_bound(int n) { return bound_row(n).bound; }

std::vector<BoundRow> bound_table(int n_min, int n_max) {
    if (n_min < 4 || n_max < n_min || n_max > kMaxTableN)
        throw DomainError("bound table range must satisfy 4 <= min <= max <= " +
                          std::to_string(kMaxTableN) + ", got " + std::to_string(n_min) + ".." +
                          std::to_string(n_max));
    std::vector<BoundRow> rows;
    rows.reserve(static_cast<std::size_t>(n_max - n_min + 1));
    for (int n = n_min; n <= n_max; ++n) {
        rows.push_back(bound_row(n));
        if (rows.back().d3.value > rows.back().bstar2)
            throw std::logic_error("delta3 exceeds the two-group optimum at N = " +
                                   std::to_string(n));
    }
    return rows;
}

std::string partitions_text(const std::vector<Partition>& parts) {
    std::string s;
    for (std::size_t k = 0; k < parts.size(); ++k) {
        if (k) s += ';';
        for (std::size_t i = 0; i < parts[k].size(); ++i) {
            if (i) s += '-';
            s += std::to_string(parts[k][i]);
        }
    }
    return s;
}

std::string bound_csv(const std::vector<BoundRow>& rows) {
    std::string out = "N,delta3,delta4,bound,attained_by,bstar2,delta3_argmin,delta4_argmin\n";
    for (const BoundRow& r : rows) {
        out += std::to_string(r.n) + ',' + std::to_string(r.d3.value) + ',';
        out += r.d4.argmin.empty() ? "" : std::to_string(r.d4.value);
        out += ',' + std::to_string(r.bound) + ',' + to_string(r.attained_by) + ',' +
               std::to_string(r.bstar2) + ',' + partitions_text(r.d3.argmin) + ',' +
               partitions_text(r.d4.argmin) + '\n';
    }
    return out;
}

std::string bound_svg(const std::vector<BoundRow>& rows) {
    constexpr int W = 800, H = 500, left = 80, right = 30, top = 40, bottom = 60;
    const int pw = W - left - right, ph = H - top - bottom;
    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n";
    s << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    if (rows.empty()) {
        s << "</svg>\n";
        return s.str();
    }
    const int n0 = rows.front().n, n1 = rows.back().n;
    std::int64_t ymax = 1;
    for (const BoundRow& r : rows) ymax = std::max(ymax, r.bound);
    auto xpos = [&](double n) { return left + (n1 == n0 ? pw / 2.0 : (n - n0) * pw / (n1 - n0)); };
    auto ypos = [&](double v) { return top + ph - v * ph / static_cast<double>(ymax); };

    s << "<line x1=\"" << left << "\" y1=\"" << top + ph << "\" x2=\"" << left + pw << "\" y2=\""
      << top + ph << "\" stroke=\"black\"/>\n";
    s << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << top + ph
      << "\" stroke=\"black\"/>\n";
    const int xticks = std::min(10, n1 - n0);
    for (int t = 0; t <= xticks; ++t) {
        const int n = xticks ? n0 + (n1 - n0) * t / xticks : n0;
        s << "<text x=\"" << xpos(n) << "\" y=\"" << top + ph + 20
          << "\" font-size=\"12\" text-anchor=\"middle\">" << n << "</text>\n";
    }
    for (int t = 0; t <= 5; ++t) {
        const std::int64_t v = ymax * t / 5;
        s << "<text x=\"" << left - 8 << "\" y=\"" << ypos(static_cast<double>(v)) + 4
          << "\" font-size=\"12\" text-anchor=\"end\">" << v << "</text>\n";
    }
    s << "<text x=\"" << left + pw / 2 << "\" y=\"" << H - 15
      << "\" font-size=\"14\" text-anchor=\"middle\">N</text>\n";
    s << "<text x=\"20\" y=\"" << top + ph / 2 << "\" font-size=\"14\" text-anchor=\"middle\" "
      << "transform=\"rotate(-90 20 " << top + ph / 2 << ")\">min(delta3, delta4)</text>\n";
    s << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" points=\"";
    for (std::size_t k = 0; k < rows.size(); ++k)
        s << (k ? " " : "") << xpos(rows[k].n) << ',' << ypos(static_cast<double>(rows[k].bound));
    s << "\"/>\n</svg>\n";
    return s.str();
}

} // namespace arrayrepair

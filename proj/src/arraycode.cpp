#include "arrayrepair/arraycode.hpp"

#include "arrayrepair/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <random>
#include <set>

namespace arrayrepair {

MdsReport validate_mds(const Field& field, std::span<const Block> blocks) {
    MdsReport report;
    for (std::size_t i = 0; i < blocks.size(); ++i)
        if (!is_invertible(field, blocks[i])) report.singular_blocks.push_back(i);
    for (std::size_t i = 0; i < blocks.size(); ++i)
        for (std::size_t j = i + 1; j < blocks.size(); ++j)
            if (!is_invertible(field, blocks[i] + blocks[j]))
                report.violating_pairs.emplace_back(i, j);
    report.ok = report.singular_blocks.empty() && report.violating_pairs.empty();
    return report;
}

ArrayCode::ArrayCode(Field field, std::vector<Block> blocks)
    : field_(std::move(field)), blocks_(std::move(blocks)) {
    if (blocks_.size() < kMinNodes)
        throw CodeError("an array code needs at least 3 nodes, got " +
                        std::to_string(blocks_.size()));
    for (std::size_t i = 0; i < blocks_.size(); ++i)
        for (Elem x : blocks_[i].e)
            if (!field_.contains(x))
                throw CodeError("A_" + std::to_string(i + 1) + " has entry " +
                                std::to_string(x.value) + " outside " + field_.name());
    const MdsReport mds = validate_mds(field_, blocks_);
    if (!mds.singular_blocks.empty())
        throw CodeError("A_" + std::to_string(mds.singular_blocks.front() + 1) +
                        " is singular");
    if (!mds.violating_pairs.empty()) {
        const auto [i, j] = mds.violating_pairs.front();
        throw CodeError("MDS condition fails: A_" + std::to_string(i + 1) + " + A_" +
                        std::to_string(j + 1) + " is singular");
    }
}

Codeword encode(const ArrayCode& code, std::span<const Elem> data) {
    const Field& f = code.field();
    const std::size_t k = code.k();
    if (data.size() != 2 * k)
        throw DomainError("encode expects " + std::to_string(2 * k) + " data symbols, got " +
                          std::to_string(data.size()));
    for (Elem x : data)
        if (!f.contains(x))
            throw FieldError("data symbol " + std::to_string(x.value) + " outside " + f.name());

    Codeword word(code.n());
    Vec2 sum{};     // sum of data nodes
    Vec2 weighted{}; // sum of A_j alpha^(j) over data nodes
    for (std::size_t j = 0; j < k; ++j) {
        word[j] = {data[2 * j], data[2 * j + 1]};
        const Vec2 a = apply(f, code.block(j), word[j]);
        sum = {sum[0] + word[j][0], sum[1] + word[j][1]};
        weighted = {weighted[0] + a[0], weighted[1] + a[1]};
    }
    // p + s = sum and A_p p + A_s s = weighted, so
    // (A_p + A_s) p = weighted + A_s sum.
    const Block& ap = code.block(k);
    const Block& as = code.block(k + 1);
    const Vec2 as_sum = apply(f, as, sum);
    const Vec2 rhs = {weighted[0] + as_sum[0], weighted[1] + as_sum[1]};
    const Vec2 p = apply(f, inverse(f, ap + as), rhs);
    word[k] = p;
    word[k + 1] = {sum[0] + p[0], sum[1] + p[1]};
    return word;
}

bool satisfies_parity(const ArrayCode& code, std::span<const Vec2> word) {
    if (word.size() != code.n()) return false;
    Vec2 sum{};
    Vec2 weighted{};
    for (std::size_t j = 0; j < word.size(); ++j) {
        const Vec2 a = apply(code.field(), code.block(j), word[j]);
        sum = {sum[0] + word[j][0], sum[1] + word[j][1]};
        weighted = {weighted[0] + a[0], weighted[1] + a[1]};
    }
    return sum == Vec2{} && weighted == Vec2{};
}

ArrayCode random_code(const Field& field, std::size_t n, std::uint64_t seed,
                      std::uint64_t max_draws) {
    if (n < ArrayCode::kMinNodes)
        throw DomainError("random_code needs n >= 3, got " + std::to_string(n));
    std::mt19937_64 rng(seed);
    const std::uint64_t mask = field.size() - 1;
    std::vector<Block> chosen;
    for (std::uint64_t draw = 0; draw < max_draws && chosen.size() < n; ++draw) {
        Block b;
        for (Elem& x : b.e) x = Elem(static_cast<std::uint16_t>(rng() & mask));
        if (!is_invertible(field, b)) continue;
        const bool compatible = std::all_of(chosen.begin(), chosen.end(), [&](const Block& a) {
            return is_invertible(field, a + b);
        });
        if (compatible) chosen.push_back(b);
    }
    if (chosen.size() < n)
        throw GenerationError("could not draw an MDS code with N = " + std::to_string(n) +
                              " over GF(" + std::to_string(field.size()) + ") within " +
                              std::to_string(max_draws) + " candidate draws");
    return ArrayCode(field, std::move(chosen));
}

namespace {

void extend_reduced(const Field& field, std::size_t n, const std::vector<Block>& candidates,
                    std::size_t start, std::vector<Block>& current,
                    std::vector<ArrayCode>& out) {
    if (current.size() == n) {
        out.emplace_back(field, current);
        return;
    }
    for (std::size_t c = start; c < candidates.size(); ++c) {
        const Block& b = candidates[c];
        const bool ok = std::all_of(current.begin() + 1, current.end(), [&](const Block& a) {
            return is_invertible(field, a + b);
        });
        if (!ok) continue;
        current.push_back(b);
        extend_reduced(field, n, candidates, c + 1, current, out);
        current.pop_back();
    }
}

} // namespace

std::vector<ArrayCode> enumerate_reduced_codes(const Field& field, std::size_t n) {
    if (n < ArrayCode::kMinNodes)
        throw DomainError("code enumeration needs n >= 3, got " + std::to_string(n));
    const std::uint32_t q = field.size();
    // Invertible blocks B with B + I invertible, in base-q order.
    std::vector<Block> candidates;
    for (std::uint32_t v = 0; v < q * q * q * q; ++v) {
        const Block b{{Elem(static_cast<std::uint16_t>(v / (q * q * q))),
                       Elem(static_cast<std::uint16_t>(v / (q * q) % q)),
                       Elem(static_cast<std::uint16_t>(v / q % q)),
                       Elem(static_cast<std::uint16_t>(v % q))}};
        if (is_invertible(field, b) && is_invertible(field, b + Block::identity()))
            candidates.push_back(b);
    }
    std::vector<ArrayCode> out;
    std::vector<Block> current{Block::identity()};
    extend_reduced(field, n, candidates, 0, current, out);
    return out;
}

std::string code_to_json(const ArrayCode& code) {
    nlohmann::ordered_json doc;
    doc["m"] = code.field().degree();
    doc["poly"] = code.field().polynomial();
    doc["n"] = code.n();
    auto blocks = nlohmann::ordered_json::array();
    for (const Block& b : code.blocks())
        blocks.push_back({b.e[0].value, b.e[1].value, b.e[2].value, b.e[3].value});
    doc["A"] = std::move(blocks);
    return doc.dump();
}

namespace {

std::uint64_t require_uint(const nlohmann::json& doc, const char* key) {
    if (!doc.contains(key)) throw ParseError(std::string("missing key \"") + key + "\"");
    const auto& v = doc.at(key);
    if (!v.is_number_unsigned())
        throw ParseError(std::string("\"") + key + "\" must be a non-negative integer");
    return v.get<std::uint64_t>();
}

} // namespace

ArrayCode code_from_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("malformed code document: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("code document must be a JSON object");
    static const std::set<std::string> known = {"m", "poly", "n", "A"};
    for (const auto& [key, value] : doc.items())
        if (!known.contains(key)) throw ParseError("unknown key \"" + key + "\" in code document");

    const std::uint64_t m = require_uint(doc, "m");
    const std::uint64_t poly = require_uint(doc, "poly");
    const std::uint64_t n = require_uint(doc, "n");
    if (m > Field::kMaxDegree) throw ParseError("\"m\" out of range: " + std::to_string(m));
    if (poly > 0x1FFFF) throw ParseError("\"poly\" out of range: " + std::to_string(poly));
    const Field field = Field::make(static_cast<unsigned>(m), static_cast<std::uint32_t>(poly));

    if (n < ArrayCode::kMinNodes)
        throw ParseError("\"n\" must be at least 3, got " + std::to_string(n));
    if (!doc.contains("A") || !doc.at("A").is_array()) throw ParseError("\"A\" must be an array");
    const auto& arr = doc.at("A");
    if (arr.size() != n)
        throw ParseError("\"A\" has " + std::to_string(arr.size()) + " blocks but n = " +
                         std::to_string(n));

    std::vector<Block> blocks;
    blocks.reserve(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const auto& row = arr[i];
        if (!row.is_array() || row.size() != 4)
            throw ParseError("A_" + std::to_string(i + 1) + " must list 4 entries");
        Block b;
        for (std::size_t c = 0; c < 4; ++c) {
            if (!row[c].is_number_unsigned())
                throw ParseError("A_" + std::to_string(i + 1) +
                                 " entries must be non-negative integers");
            const auto v = row[c].get<std::uint64_t>();
            if (v >= field.size())
                throw ParseError("A_" + std::to_string(i + 1) + " entry " + std::to_string(v) +
                                 " is not an element of " + field.name());
            b.e[c] = Elem(static_cast<std::uint16_t>(v));
        }
        blocks.push_back(b);
    }
    return ArrayCode(field, std::move(blocks));
}

} // namespace arrayrepair

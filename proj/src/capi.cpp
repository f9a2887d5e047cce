#include "arrayrepair/arrayrepair.h"

#include "arrayrepair/arraycode.hpp"
#include "arrayrepair/bound.hpp"
#include "arrayrepair/errors.hpp"
#include "arrayrepair/report.hpp"
#include "arrayrepair/repair.hpp"
#include "arrayrepair/search.hpp"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <random>

using namespace arrayrepair;

struct arp_field {
    Field field;
};
struct arp_code {
    ArrayCode code;
};
struct arp_process {
    RepairProcess process;
};

namespace {

thread_local std::string g_last_error;

arp_status fail(arp_status s, const char* what) {
    g_last_error = what;
    return s;
}

template <class F>
arp_status guard(F&& body) {
    try {
        body();
        g_last_error.clear();
        return ARP_OK;
    } catch (const FieldError& e) {
        return fail(ARP_ERR_FIELD, e.what());
    } catch (const DivisionByZeroError& e) {
        return fail(ARP_ERR_DIVISION_BY_ZERO, e.what());
    } catch (const SingularMatrixError& e) {
        return fail(ARP_ERR_SINGULAR, e.what());
    } catch (const DomainError& e) {
        return fail(ARP_ERR_DOMAIN, e.what());
    } catch (const CodeError& e) {
        return fail(ARP_ERR_CODE, e.what());
    } catch (const GenerationError& e) {
        return fail(ARP_ERR_GENERATION, e.what());
    } catch (const ParseError& e) {
        return fail(ARP_ERR_PARSE, e.what());
    } catch (const InvalidRepairError& e) {
        return fail(ARP_ERR_INVALID_REPAIR, e.what());
    } catch (const std::bad_alloc&) {
        return fail(ARP_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(ARP_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(ARP_ERR_INTERNAL, "unknown failure");
    }
}

template <class... P>
bool any_null(P*... ptrs) {
    return ((ptrs == nullptr) || ...);
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

ChargeRule rule_of(arp_charging c) {
    if (c == ARP_CHARGE_SUPPORT) return ChargeRule::support();
    if (c == ARP_CHARGE_STRICT) return ChargeRule::strict();
    throw DomainError("unknown charging rule " + std::to_string(static_cast<int>(c)));
}

SearchOptions search_of(const arp_search_options* o) {
    SearchOptions s;
    if (!o) return s;
    s.charging = rule_of(o->charging);
    s.max_field_size = o->max_field_size;
    s.threads = o->threads;
    return s;
}

const std::string& pick(const Report& r, arp_format f) {
    if (f == ARP_FORMAT_TEXT) return r.text;
    if (f == ARP_FORMAT_JSON) return r.json;
    throw DomainError("unknown report format");
}

arp_status null_arg() { return fail(ARP_ERR_ARGUMENT, "null argument"); }

} // namespace

extern "C" {

const char* arp_last_error(void) { return g_last_error.c_str(); }

const char* arp_status_name(arp_status status) {
    switch (status) {
    case ARP_OK: return "ok";
    case ARP_ERR_ARGUMENT: return "invalid argument";
    case ARP_ERR_FIELD: return "field error";
    case ARP_ERR_DIVISION_BY_ZERO: return "division by zero";
    case ARP_ERR_SINGULAR: return "singular matrix";
    case ARP_ERR_DOMAIN: return "domain error";
    case ARP_ERR_CODE: return "invalid code";
    case ARP_ERR_GENERATION: return "generation failure";
    case ARP_ERR_PARSE: return "parse error";
    case ARP_ERR_INVALID_REPAIR: return "invalid repair";
    case ARP_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

void arp_string_free(char* s) { std::free(s); }

arp_status arp_field_new(unsigned m, uint32_t poly, arp_field** out) {
    if (!out) return null_arg();
    return guard([&] {
        *out = new arp_field{poly ? Field::make(m, poly) : Field::make(m)};
    });
}

void arp_field_free(arp_field* field) { delete field; }

uint32_t arp_field_size(const arp_field* field) { return field ? field->field.size() : 0; }

uint32_t arp_field_polynomial(const arp_field* field) {
    return field ? field->field.polynomial() : 0;
}

arp_status arp_field_add(const arp_field* field, uint32_t a, uint32_t b, uint32_t* out) {
    if (any_null(field, out)) return null_arg();
    return guard([&] { *out = field->field.add(field->field.elem(a), field->field.elem(b)).value; });
}

arp_status arp_field_mul(const arp_field* field, uint32_t a, uint32_t b, uint32_t* out) {
    if (any_null(field, out)) return null_arg();
    return guard([&] { *out = field->field.mul(field->field.elem(a), field->field.elem(b)).value; });
}

arp_status arp_field_inv(const arp_field* field, uint32_t a, uint32_t* out) {
    if (any_null(field, out)) return null_arg();
    return guard([&] { *out = field->field.inv(field->field.elem(a)).value; });
}

arp_status arp_code_new(const arp_field* field, const uint32_t* blocks, size_t n, arp_code** out) {
    if (any_null(field, blocks, out)) return null_arg();
    return guard([&] {
        const Field& f = field->field;
        std::vector<Block> bs;
        for (size_t i = 0; i < n; ++i)
            bs.push_back(Block::of(f, blocks[4 * i], blocks[4 * i + 1], blocks[4 * i + 2],
                                   blocks[4 * i + 3]));
        *out = new arp_code{ArrayCode(f, std::move(bs))};
    });
}

arp_status arp_code_random(const arp_field* field, size_t n, uint64_t seed, arp_code** out) {
    if (any_null(field, out)) return null_arg();
    return guard([&] { *out = new arp_code{random_code(field->field, n, seed)}; });
}

arp_status arp_code_example(arp_code** out) {
    if (!out) return null_arg();
    return guard([&] { *out = new arp_code{example_code()}; });
}

arp_status arp_code_from_json(const char* text, arp_code** out) {
    if (any_null(text, out)) return null_arg();
    return guard([&] { *out = new arp_code{code_from_json(text)}; });
}

arp_status arp_code_to_json(const arp_code* code, char** out) {
    if (any_null(code, out)) return null_arg();
    return guard([&] { *out = dup_string(code_to_json(code->code)); });
}

size_t arp_code_n(const arp_code* code) { return code ? code->code.n() : 0; }

void arp_code_free(arp_code* code) { delete code; }

arp_status arp_process_from_json(const char* text, const arp_code* code, arp_process** out) {
    if (any_null(text, code, out)) return null_arg();
    return guard([&] { *out = new arp_process{process_from_json(text, code->code.field())}; });
}

arp_status arp_process_example(arp_process** out) {
    if (!out) return null_arg();
    return guard([&] { *out = new arp_process{example_process()}; });
}

arp_status arp_process_to_json(const arp_process* process, char** out) {
    if (any_null(process, out)) return null_arg();
    return guard([&] { *out = dup_string(process_to_json(process->process)); });
}

arp_status arp_process_bandwidth(const arp_process* process, const arp_code* code,
                                 arp_charging charging, int* total, int* per_node) {
    if (any_null(process, code, total)) return null_arg();
    return guard([&] {
        const BandwidthReport r = process_bandwidth(process->process, code->code, rule_of(charging));
        *total = r.total;
        if (per_node)
            for (size_t i = 0; i < r.per_node.size(); ++i) per_node[i] = r.per_node[i];
    });
}

void arp_process_free(arp_process* process) { delete process; }

void arp_search_options_default(arp_search_options* opts) {
    if (!opts) return;
    const SearchOptions d;
    opts->charging = ARP_CHARGE_SUPPORT;
    opts->max_field_size = d.max_field_size;
    opts->threads = d.threads;
}

arp_status arp_optimal_total(const arp_code* code, const arp_search_options* opts, int* total,
                             arp_process** process) {
    if (any_null(code, total)) return null_arg();
    return guard([&] {
        OptimalTotal r = optimal_total_bandwidth(code->code, search_of(opts));
        if (process) *process = new arp_process{std::move(r.process)};
        *total = r.total;
    });
}

arp_status arp_repair_check(const arp_process* process, const arp_code* code, size_t node,
                            uint64_t seed, arp_charging charging, int* recovered_ok,
                            int* downloaded, int* bandwidth) {
    if (any_null(process, code, recovered_ok, downloaded, bandwidth)) return null_arg();
    return guard([&] {
        const ArrayCode& c = code->code;
        if (node < 1 || node > c.n())
            throw DomainError("node " + std::to_string(node) + " out of range for N = " +
                              std::to_string(c.n()));
        const ChargeRule rule = rule_of(charging);
        std::mt19937_64 rng(seed);
        std::vector<Elem> data(2 * c.k());
        for (Elem& x : data) x = Elem(static_cast<std::uint16_t>(rng() & (c.field().size() - 1)));
        const Codeword word = encode(c, data);
        Codeword erased = word;
        erased[node - 1] = Vec2{};
        const RepairOutcome out = repair_node(process->process, c, erased, node - 1, rule);
        *recovered_ok = out.recovered == word[node - 1] ? 1 : 0;
        *downloaded = out.downloaded();
        *bandwidth = process_bandwidth(process->process, c, rule).per_node[node - 1];
    });
}

void arp_verify_options_default(arp_verify_options* opts) {
    if (!opts) return;
    const VerifyOptions d;
    opts->m = 2;
    opts->poly = 0;
    opts->n = d.n;
    opts->samples = d.samples;
    opts->seed = d.seed;
    opts->exhaustive = 0;
    opts->charging = ARP_CHARGE_SUPPORT;
    opts->threads = d.threads;
    opts->max_counterexamples = d.max_counterexamples;
    opts->max_field_size = d.max_field_size;
}

arp_status arp_report_bound(int n_min, int n_max, arp_plot plot, char** out) {
    if (!out) return null_arg();
    return guard([&] {
        if (plot != ARP_PLOT_CSV && plot != ARP_PLOT_SVG) throw DomainError("unknown plot format");
        const auto rows = bound_table(n_min, n_max);
        *out = dup_string(plot == ARP_PLOT_CSV ? bound_csv(rows) : bound_svg(rows));
    });
}

arp_status arp_bound_exceptions(int n_min, int n_max, char** out) {
    if (!out) return null_arg();
    return guard([&] {
        std::string s;
        for (const BoundRow& r : bound_table(n_min, n_max))
            if (r.attained_by != Attainer::Delta3)
                s += (s.empty() ? "" : ",") + std::to_string(r.n) + ":" + to_string(r.attained_by);
        *out = dup_string(s);
    });
}

arp_status arp_report_example(const arp_code* code, uint64_t seed, arp_format format, char** out,
                              int* passed) {
    if (any_null(out, passed)) return null_arg();
    return guard([&] {
        const Report r = example_report(code ? code->code : example_code(), seed);
        *out = dup_string(pick(r, format));
        *passed = r.passed ? 1 : 0;
    });
}

arp_status arp_report_search(unsigned m, size_t n, size_t samples, uint64_t seed,
                             const arp_search_options* opts, arp_format format, char** out,
                             int* passed) {
    if (any_null(out, passed)) return null_arg();
    return guard([&] {
        const Report r = search_report(Field::make(m), n, samples, seed, search_of(opts));
        *out = dup_string(pick(r, format));
        *passed = r.passed ? 1 : 0;
    });
}

arp_status arp_report_verify(const arp_verify_options* opts, arp_format format, char** out,
                             int* passed) {
    if (any_null(opts, out, passed)) return null_arg();
    return guard([&] {
        VerifyOptions v;
        v.field = opts->poly ? Field::make(opts->m, opts->poly) : Field::make(opts->m);
        v.n = opts->n;
        v.samples = opts->samples;
        v.seed = opts->seed;
        v.exhaustive_codes = opts->exhaustive != 0;
        v.charging = rule_of(opts->charging);
        v.threads = opts->threads;
        v.max_counterexamples = opts->max_counterexamples;
        v.max_field_size = opts->max_field_size;
        const Report r = verify_report(v);
        *out = dup_string(pick(r, format));
        *passed = r.passed ? 1 : 0;
    });
}

arp_status arp_report_simulate(const arp_code* code, const arp_process* process, size_t node,
                               uint64_t seed, const arp_search_options* opts, arp_format format,
                               char** out, int* passed) {
    if (any_null(code, out, passed)) return null_arg();
    return guard([&] {
        if (node < 1 || node > code->code.n())
            throw DomainError("node " + std::to_string(node) + " out of range for N = " +
                              std::to_string(code->code.n()));
        std::optional<RepairProcess> p;
        if (process) p = process->process;
        const Report r = simulate_report(code->code, p, node - 1, seed, search_of(opts));
        *out = dup_string(pick(r, format));
        *passed = r.passed ? 1 : 0;
    });
}

} // extern "C"

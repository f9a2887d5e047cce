#include "arrayrepair/arrayrepair.h"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;

struct Failure {
    int code;
    std::string message;
};

void check(arp_status s, int exit_code = kExitUsage) {
    if (s != ARP_OK)
        throw Failure{exit_code, std::string(arp_status_name(s)) + ": " + arp_last_error()};
}

// Owns a char* returned by the library.
struct Text {
    char* p = nullptr;
    ~Text() { arp_string_free(p); }
};

template <class T, void (*Free)(T*)>
struct Handle {
    T* p = nullptr;
    ~Handle() { Free(p); }
};
using Code = Handle<arp_code, arp_code_free>;
using Process = Handle<arp_process, arp_process_free>;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Failure{kExitUsage, "cannot read " + path};
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// "gf16" -> 4
unsigned parse_field(const std::string& name) {
    std::string digits = name;
    if (digits.rfind("gf", 0) == 0 || digits.rfind("GF", 0) == 0) digits = digits.substr(2);
    unsigned long q = 0;
    try {
        std::size_t used = 0;
        q = std::stoul(digits, &used);
        if (used != digits.size()) q = 0;
    } catch (const std::exception&) {
        q = 0;
    }
    for (unsigned m = 2; m <= 16; ++m)
        if (q == (1ul << m)) return m;
    throw Failure{kExitUsage, "field must be gfQ with Q = 2^m, 2 <= m <= 16 (got " + name + ")"};
}

arp_charging parse_charging(const std::string& name) {
    if (name == "support") return ARP_CHARGE_SUPPORT;
    if (name == "strict") return ARP_CHARGE_STRICT;
    throw Failure{kExitUsage, "charging must be support or strict"};
}

int emit(const Text& t, int passed) {
    std::fputs(t.p, stdout);
    return passed ? kExitOk : kExitMismatch;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Repair bandwidth of (K+2, K) MDS array codes with two symbols per node"};
    app.require_subcommand(1);

    int bmin = 4, bmax = 200;
    std::string bformat = "csv", bout;
    auto* bound = app.add_subcommand("bound", "Lower-bound table min{delta3, delta4}");
    bound->add_option("--min", bmin, "smallest N")->capture_default_str();
    bound->add_option("--max", bmax, "largest N")->capture_default_str();
    bound->add_option("--format", bformat, "csv or svg")
        ->check(CLI::IsMember({"csv", "svg"}))
        ->capture_default_str();
    bound->add_option("--out", bout, "output file (default stdout)");

    std::uint64_t seed = 1;
    bool json = false;
    std::string code_file, process_file, field = "gf16", charging = "support";
    std::size_t n = 4, samples = 1, node = 1, max_examples = 5;
    unsigned threads = 0;
    std::uint32_t max_field = 16;
    bool exhaustive = false;

    auto* example = app.add_subcommand("example", "Reproduce the bundled three-node example");
    example->add_option("--seed", seed, "codeword seed")->capture_default_str();
    example->add_option("--code", code_file, "replace the example code with a code file");
    example->add_flag("--json", json, "JSON output");

    auto add_search_flags = [&](CLI::App* c) {
        c->add_option("--field", field, "field gfQ, Q = 2^m")->capture_default_str();
        c->add_option("--n", n, "node count N")->capture_default_str();
        c->add_option("--samples", samples, "number of random codes")->capture_default_str();
        c->add_option("--seed", seed, "base seed")->capture_default_str();
        c->add_option("--charging", charging, "support or strict")->capture_default_str();
        c->add_option("--threads", threads, "worker threads, 0 = all cores");
        c->add_option("--max-field", max_field, "largest field size allowed for a full scan")
            ->capture_default_str();
        c->add_flag("--json", json, "JSON output");
    };
    auto* search = app.add_subcommand("search", "Optimal total bandwidth of random codes");
    add_search_flags(search);
    auto* verify = app.add_subcommand("verify", "Check every structural lemma over a scan");
    add_search_flags(verify);
    verify->add_flag("--exhaustive", exhaustive, "check every reduced code instead of samples");
    verify->add_option("--max-counterexamples", max_examples, "counterexamples kept per lemma")
        ->capture_default_str();

    auto* simulate = app.add_subcommand("simulate", "Erase one node and repair it");
    simulate->add_option("--code", code_file, "code file")->required();
    simulate->add_option("--node", node, "node to erase (1-based)")->capture_default_str();
    simulate->add_option("--seed", seed, "codeword seed")->capture_default_str();
    simulate->add_option("--process", process_file, "repair process file (default: optimal)");
    simulate->add_option("--charging", charging, "support or strict")->capture_default_str();
    simulate->add_option("--threads", threads, "worker threads, 0 = all cores");
    simulate->add_option("--max-field", max_field, "largest field size allowed for a full scan")
        ->capture_default_str();
    simulate->add_flag("--json", json, "JSON output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    const arp_format format = json ? ARP_FORMAT_JSON : ARP_FORMAT_TEXT;
    try {
        arp_search_options sopts;
        arp_search_options_default(&sopts);
        sopts.charging = parse_charging(charging);
        sopts.threads = threads;
        sopts.max_field_size = max_field;

        if (*bound) {
            Text t;
            check(arp_report_bound(bmin, bmax, bformat == "svg" ? ARP_PLOT_SVG : ARP_PLOT_CSV, &t.p));
            if (bout.empty()) {
                std::fputs(t.p, stdout);
            } else {
                std::ofstream out(bout, std::ios::binary);
                if (!(out << t.p)) throw Failure{kExitUsage, "cannot write " + bout};
            }
            Text ex;
            check(arp_bound_exceptions(bmin, bmax, &ex.p));
            if (*ex.p)
                std::fprintf(stderr, "note: delta3 is not strictly minimal at %s\n", ex.p);
            return kExitOk;
        }
        if (*example) {
            Code code;
            if (!code_file.empty()) {
                const std::string text = read_file(code_file);
                const arp_status s = arp_code_from_json(text.c_str(), &code.p);
                // A code that loads but breaks the MDS condition is a mismatch.
                check(s, s == ARP_ERR_CODE ? kExitMismatch : kExitUsage);
            }
            Text t;
            int passed = 0;
            check(arp_report_example(code.p, seed, format, &t.p, &passed));
            return emit(t, passed);
        }
        if (*search) {
            Text t;
            int passed = 0;
            check(arp_report_search(parse_field(field), n, samples, seed, &sopts, format, &t.p,
                                    &passed));
            return emit(t, passed);
        }
        if (*verify) {
            arp_verify_options v;
            arp_verify_options_default(&v);
            v.m = parse_field(field);
            v.n = n;
            v.samples = samples;
            v.seed = seed;
            v.exhaustive = exhaustive ? 1 : 0;
            v.charging = sopts.charging;
            v.threads = threads;
            v.max_counterexamples = max_examples;
            v.max_field_size = max_field;
            Text t;
            int passed = 0;
            check(arp_report_verify(&v, format, &t.p, &passed));
            return emit(t, passed);
        }
        if (*simulate) {
            Code code;
            check(arp_code_from_json(read_file(code_file).c_str(), &code.p));
            Process process;
            if (!process_file.empty())
                check(arp_process_from_json(read_file(process_file).c_str(), code.p, &process.p));
            Text t;
            int passed = 0;
            check(arp_report_simulate(code.p, process.p, node, seed, &sopts, format, &t.p,
                                      &passed));
            return emit(t, passed);
        }
    } catch (const Failure& f) {
        std::fprintf(stderr, "error: %s\n", f.message.c_str());
        return f.code;
    }
    return kExitUsage;
}

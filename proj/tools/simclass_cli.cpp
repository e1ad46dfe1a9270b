#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "simclass/simclass.h"

namespace {

constexpr int kExitNotSimilar = 1;
constexpr int kExitError = 2;
constexpr int kExitUsage = 64;
constexpr int kExitBudget = 65;
constexpr int kExitMismatch = 70;

struct Failure {
    int code;
    std::string message;
};

int exit_code_for(simclass_status s)
{
    switch (s) {
    case SIMCLASS_ERR_PARSE:
    case SIMCLASS_ERR_BAD_PARAMS:
    case SIMCLASS_ERR_CTX_MISMATCH:
    case SIMCLASS_ERR_DIGIT_OUT_OF_RANGE:
    case SIMCLASS_ERR_BAD_LEVEL: return kExitUsage;
    case SIMCLASS_ERR_BUDGET:
    case SIMCLASS_ERR_SEARCH_BUDGET: return kExitBudget;
    default: return kExitError;
    }
}

void check(simclass_status s)
{
    if (s != SIMCLASS_OK) throw Failure{exit_code_for(s), simclass_last_error()};
}

struct CString {
    char* p = nullptr;
    ~CString() { simclass_string_free(p); }
    std::string str() const { return p ? p : ""; }
};

using RingPtr = std::unique_ptr<simclass_ring, decltype(&simclass_ring_free)>;
using MatPtr = std::unique_ptr<simclass_mat, decltype(&simclass_mat_free)>;

RingPtr parse_ring(const std::string& descriptor)
{
    simclass_ring* r = nullptr;
    check(simclass_ring_parse(descriptor.c_str(), &r));
    return {r, simclass_ring_free};
}

/// Inline JSON when the argument starts with '[' or '{', otherwise a file path.
MatPtr load_matrix(const std::string& arg, const simclass_ring* ring)
{
    std::string text = arg;
    const auto first = arg.find_first_not_of(" \t\r\n");
    if (first == std::string::npos || (arg[first] != '[' && arg[first] != '{')) {
        std::ifstream in(arg);
        if (!in) throw Failure{kExitUsage, "cannot read matrix file '" + arg + "'"};
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    simclass_mat* m = nullptr;
    check(simclass_mat_parse(text.c_str(), ring, &m));
    return {m, simclass_mat_free};
}

simclass_group parse_group(const std::string& g)
{
    std::string s;
    for (char c : g) s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (s == "m") return SIMCLASS_GROUP_M;
    if (s == "gl") return SIMCLASS_GROUP_GL;
    throw Failure{kExitUsage, "group must be 'm' or 'gl'"};
}

struct Args {
    std::string ring;
    std::string group = "m";
    int n = 3;
    std::uint64_t q = 0;
    std::uint32_t level = 0;
    std::uint32_t terms = 0;
    std::uint64_t budget = 0;
    unsigned jobs = 1;
    std::string cache;
    bool orbits = false;
    std::string a, b;
};

simclass_oracle_options oracle_options(const Args& args)
{
    simclass_oracle_options o;
    simclass_oracle_options_default(&o);
    if (args.budget) o.state_budget = args.budget;
    o.jobs = args.jobs;
    o.cache_dir = args.cache.empty() ? nullptr : args.cache.c_str();
    return o;
}

RingPtr optional_ring(const Args& args)
{
    if (args.ring.empty()) return {nullptr, simclass_ring_free};
    return parse_ring(args.ring);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Similarity classes of 2x2 and 3x3 matrices over finite chain rings"};
    app.require_subcommand(1);
    Args args;
    const char* env_cache = std::getenv("SIMCLASS_CACHE_DIR");
    if (env_cache) args.cache = env_cache;

    auto add_ring = [&](CLI::App* c, bool required) {
        auto* o = c->add_option("--ring", args.ring, "ring descriptor z:<p>:<len> or t:<p>:<len>");
        if (required) o->required();
    };
    auto add_group = [&](CLI::App* c) { c->add_option("--group", args.group, "m (all matrices) or gl")->capture_default_str(); };
    auto add_n = [&](CLI::App* c) { c->add_option("--n", args.n, "matrix size, 2 or 3")->check(CLI::IsMember({2, 3}))->capture_default_str(); };

    auto* canon = app.add_subcommand("canon", "canonical form and conjugating witness");
    add_ring(canon, false);
    canon->add_option("matrix", args.a, "matrix JSON or file")->required();

    auto* similar = app.add_subcommand("similar", "similarity test with witness (exit 0 similar, 1 not)");
    add_ring(similar, false);
    similar->add_option("a", args.a, "first matrix JSON or file")->required();
    similar->add_option("b", args.b, "second matrix JSON or file")->required();

    auto* count = app.add_subcommand("count", "number of similarity classes");
    add_n(count);
    add_group(count);
    count->add_option("--q", args.q, "residue field size")->required();
    count->add_option("--level", args.level, "ring length")->required();

    auto* gf = app.add_subcommand("gf", "generating function coefficients, one per line");
    add_n(gf);
    add_group(gf);
    gf->add_option("--q", args.q, "residue field size")->required();
    gf->add_option("--terms", args.terms, "number of coefficients")->required();

    auto* enumerate = app.add_subcommand("enumerate", "one JSON line per class representative");
    add_ring(enumerate, true);
    add_n(enumerate);
    add_group(enumerate);
    enumerate->add_option("--budget", args.budget, "maximum number of representatives");

    auto* histogram = app.add_subcommand("histogram", "census summary with type counts per level (n = 3)");
    add_ring(histogram, true);
    add_group(histogram);
    histogram->add_option("--budget", args.budget, "maximum number of representatives per level");

    auto* census = app.add_subcommand("oracle-census", "brute-force conjugation orbits");
    add_ring(census, true);
    add_n(census);
    add_group(census);
    census->add_option("--jobs", args.jobs, "worker threads")->check(CLI::PositiveNumber);
    census->add_option("--cache", args.cache, "census cache directory (default $SIMCLASS_CACHE_DIR)");
    census->add_option("--budget", args.budget, "maximum number of states");
    census->add_flag("--orbits", args.orbits, "list every orbit");

    auto* centralizer = app.add_subcommand("centralizer", "order of the centralizer in GL_n");
    add_ring(centralizer, false);
    centralizer->add_option("matrix", args.a, "matrix JSON or file")->required();

    auto* verify = app.add_subcommand("verify", "cross-check oracle, formulas, enumeration and canonical forms");
    add_ring(verify, true);
    add_n(verify);
    verify->add_option("--jobs", args.jobs, "worker threads")->check(CLI::PositiveNumber);
    verify->add_option("--cache", args.cache, "census cache directory (default $SIMCLASS_CACHE_DIR)");
    verify->add_option("--budget", args.budget, "maximum number of states");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (canon->parsed()) {
            RingPtr ring = optional_ring(args);
            MatPtr a = load_matrix(args.a, ring.get());
            CString out;
            check(simclass_canon(a.get(), &out.p));
            std::cout << out.str() << '\n';
        } else if (similar->parsed()) {
            RingPtr ring = optional_ring(args);
            MatPtr a = load_matrix(args.a, ring.get());
            MatPtr b = load_matrix(args.b, ring.get());
            int is_sim = 0;
            CString out;
            check(simclass_is_similar(a.get(), b.get(), &is_sim, &out.p));
            std::cout << out.str() << '\n';
            return is_sim ? 0 : kExitNotSimilar;
        } else if (count->parsed()) {
            CString out;
            check(simclass_count(args.n, parse_group(args.group), args.q, args.level, &out.p));
            std::cout << out.str() << '\n';
        } else if (gf->parsed()) {
            CString out;
            check(simclass_gf(args.n, parse_group(args.group), args.q, args.terms, &out.p));
            std::cout << out.str();
        } else if (enumerate->parsed()) {
            RingPtr ring = parse_ring(args.ring);
            auto cb = [](const char* line, void*) -> int {
                std::cout << line << '\n';
                return 0;
            };
            check(simclass_enumerate(ring.get(), args.n, parse_group(args.group), args.budget ? args.budget : 1'000'000,
                                     cb, nullptr));
        } else if (histogram->parsed()) {
            RingPtr ring = parse_ring(args.ring);
            CString hist;
            check(simclass_histogram(ring.get(), parse_group(args.group), args.budget ? args.budget : 1'000'000, &hist.p));
            std::cout << hist.str() << '\n';
        } else if (census->parsed()) {
            RingPtr ring = parse_ring(args.ring);
            simclass_oracle_options o = oracle_options(args);
            CString out;
            check(simclass_oracle_census(ring.get(), args.n, parse_group(args.group), &o, args.orbits ? 1 : 0, &out.p));
            std::cout << out.str() << '\n';
        } else if (centralizer->parsed()) {
            RingPtr ring = optional_ring(args);
            MatPtr a = load_matrix(args.a, ring.get());
            CString out;
            check(simclass_centralizer_order(a.get(), &out.p));
            std::cout << out.str() << '\n';
        } else if (verify->parsed()) {
            RingPtr ring = parse_ring(args.ring);
            simclass_oracle_options o = oracle_options(args);
            int ok = 0;
            CString out;
            check(simclass_verify(ring.get(), args.n, &o, &ok, &out.p));
            std::cout << out.str() << '\n';
            return ok ? 0 : kExitMismatch;
        }
    } catch (const Failure& f) {
        std::cerr << "simclass: error: " << f.message << '\n';
        return f.code;
    }
    return 0;
}

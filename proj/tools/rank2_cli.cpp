// rank2: Laurent expansions and Euler characteristics for rank-two cluster algebras A(c, c).
//
// Exit codes: 0 success, 1 verification mismatch or failed check, 2 usage error.

#include <algorithm>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "rank2/closedform.hpp"
#include "rank2/io.hpp"
#include "rank2/recurrence.hpp"
#include "rank2/verify.hpp"

using namespace rank2;

namespace {

constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Config {
    std::int64_t c = 0;
    std::int64_t n = 0;
    std::optional<std::int64_t> n_max;
    std::optional<std::int64_t> e1, e2;
    std::string method = "both";
    std::string format = "pretty";
    std::string suite = "all";
    std::int64_t trials = 500;
    std::uint64_t seed = 0;
    unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
};

void require_cluster(const Config& cfg) {
    if (cfg.c < 2) throw UsageError("--c must be >= 2, got " + std::to_string(cfg.c));
    if (cfg.n < 3) throw UsageError("--n must be >= 3, got " + std::to_string(cfg.n));
}

/// MATCH/MISMATCH goes to stdout after the data, except for JSON where stdout must stay one document.
void print_verdict(const Config& cfg, bool match, const std::string& detail = {}) {
    std::ostream& os = cfg.format == "json" ? std::cerr : std::cout;
    os << (match ? "MATCH" : "MISMATCH");
    if (!detail.empty()) os << ' ' << detail;
    os << '\n';
}

LaurentPoly2 expansion_by(const ClusterContext& ctx, std::int64_t n, const std::string& method) {
    if (method == "recurrence") return cluster_var_recurrence(ctx, n);
    if (method == "v2") return cluster_var_formula_v2(ctx, n);
    return cluster_var_formula(ctx, n);
}

void print_expansion(const Config& cfg, const LaurentPoly2& x) {
    if (cfg.format == "json")
        std::cout << io::to_json(x).dump(2) << '\n';
    else if (cfg.format == "tsv")
        std::cout << io::to_tsv(x);
    else
        std::cout << io::to_pretty(x) << '\n';
}

int cmd_expand(const Config& cfg) {
    require_cluster(cfg);
    ClusterContext ctx(cfg.c);
    if (cfg.method != "both") {
        print_expansion(cfg, expansion_by(ctx, cfg.n, cfg.method));
        return kOk;
    }
    const LaurentPoly2 formula = cluster_var_formula(ctx, cfg.n);
    const LaurentPoly2 oracle = cluster_var_recurrence(ctx, cfg.n);
    print_expansion(cfg, formula);
    print_verdict(cfg, formula == oracle);
    return formula == oracle ? kOk : kMismatch;
}

ChiTable table_by(const ClusterContext& ctx, std::int64_t n, const std::string& method) {
    if (method == "recurrence") return chi_from_expansion(ctx, n);
    if (method == "v2") return chi_table_from_expansion(ctx, n, cluster_var_formula_v2(ctx, n));
    return chi_table_formula(ctx, n);
}

BigInt value_by(const ClusterContext& ctx, std::int64_t n, std::int64_t e1, std::int64_t e2, const std::string& method) {
    if (method == "formula") return chi_formula(ctx, n, e1, e2);
    return table_by(ctx, n, method).at(e1, e2);
}

void print_table(const Config& cfg, const ChiTable& t) {
    if (cfg.format == "json")
        std::cout << io::to_json(t).dump(2) << '\n';
    else if (cfg.format == "tsv")
        std::cout << io::to_tsv(t);
    else
        std::cout << io::to_pretty(t);
}

void print_value(const Config& cfg, const BigInt& v) {
    if (cfg.format == "json") {
        io::Json out;
        out["c"] = cfg.c;
        out["n"] = cfg.n;
        out["e1"] = *cfg.e1;
        out["e2"] = *cfg.e2;
        out["value"] = v.str();
        std::cout << out.dump(2) << '\n';
    } else if (cfg.format == "tsv") {
        std::cout << "e1\te2\tchi\n" << *cfg.e1 << '\t' << *cfg.e2 << '\t' << v << '\n';
    } else {
        std::cout << v << '\n';
    }
}

int cmd_chi(const Config& cfg) {
    require_cluster(cfg);
    if (cfg.e1.has_value() != cfg.e2.has_value()) throw UsageError("--e1 and --e2 must be given together");
    ClusterContext ctx(cfg.c);
    if (cfg.e1) {
        if (cfg.method != "both") {
            print_value(cfg, value_by(ctx, cfg.n, *cfg.e1, *cfg.e2, cfg.method));
            return kOk;
        }
        const BigInt formula = chi_formula(ctx, cfg.n, *cfg.e1, *cfg.e2);
        const BigInt oracle = chi_from_expansion(ctx, cfg.n).at(*cfg.e1, *cfg.e2);
        print_value(cfg, formula);
        const bool match = formula == oracle;
        print_verdict(cfg, match, match ? "" : "formula=" + formula.str() + " recurrence=" + oracle.str());
        return match ? kOk : kMismatch;
    }
    if (cfg.method != "both") {
        print_table(cfg, table_by(ctx, cfg.n, cfg.method));
        return kOk;
    }
    const ChiTable formula = chi_table_formula(ctx, cfg.n);
    const ChiTable oracle = chi_from_expansion(ctx, cfg.n);
    print_table(cfg, formula);
    print_verdict(cfg, formula == oracle);
    return formula == oracle ? kOk : kMismatch;
}

verify::Plan plan_for(const Config& cfg, bool c_given) {
    verify::Plan plan;
    if (c_given) {
        if (cfg.c < 1) throw UsageError("--c must be >= 1, got " + std::to_string(cfg.c));
        if (cfg.c == 1 && cfg.suite != "vanishing" && cfg.suite != "vandermonde")
            throw UsageError("--c 1 is only valid with --suite vanishing or vandermonde");
        std::int64_t n_max = cfg.n_max.value_or(cfg.c == 2 ? 12 : cfg.c == 3 ? 8 : 7);
        if (n_max < 3) throw UsageError("--n-max must be >= 3, got " + std::to_string(n_max));
        plan = verify::restricted_plan(cfg.c, n_max);
    } else {
        plan = verify::default_plan();
        if (cfg.n_max) {
            if (*cfg.n_max < 3) throw UsageError("--n-max must be >= 3, got " + std::to_string(*cfg.n_max));
            std::erase_if(plan.grid, [&](const verify::GridPoint& g) { return g.n > *cfg.n_max; });
            plan.vanishing_nmax = std::min(plan.vanishing_nmax, *cfg.n_max);
            plan.invariance_nmax = std::min(plan.invariance_nmax, *cfg.n_max);
        }
    }
    if (cfg.trials < 0) throw UsageError("--trials must be >= 0");
    plan.trials = cfg.trials;
    plan.seed = cfg.seed;
    return plan;
}

int cmd_verify(const Config& cfg, bool c_given) {
    const verify::Plan plan = plan_for(cfg, c_given);
    const auto results = verify::run_jobs(verify::build_jobs(plan, cfg.suite), cfg.jobs);
    std::size_t failed = 0;
    io::Json arr = io::Json::array();
    if (cfg.format == "tsv") std::cout << "check\tstatus\tdetail\n";
    for (const auto& r : results) {
        if (!r.passed) ++failed;
        std::cerr << r.name << '\t' << r.millis << " ms\n";
        if (cfg.format == "json") {
            io::Json rec;
            rec["check"] = r.name;
            rec["passed"] = r.passed;
            rec["detail"] = r.detail;
            arr.push_back(std::move(rec));
        } else if (cfg.format == "tsv") {
            std::cout << r.name << '\t' << (r.passed ? "PASS" : "FAIL") << '\t' << r.detail << '\n';
        } else {
            std::cout << (r.passed ? "PASS " : "FAIL ") << r.name;
            if (!r.detail.empty()) std::cout << ": " << r.detail;
            std::cout << '\n';
        }
    }
    if (cfg.format == "json")
        std::cout << arr.dump(2) << '\n';
    else if (cfg.format == "pretty")
        std::cout << results.size() << " checks, " << failed << " failed\n";
    return failed == 0 ? kOk : kMismatch;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Laurent expansions and Euler characteristics for rank-two cluster algebras A(c, c)"};
    app.require_subcommand(1);
    Config cfg;

    const std::vector<std::string> methods{"formula", "recurrence", "both", "v2"};
    const std::vector<std::string> formats{"json", "tsv", "pretty"};
    std::vector<std::string> suites = verify::suite_names();
    suites.push_back("all");

    auto* expand = app.add_subcommand("expand", "Print the Laurent expansion of x_n");
    expand->add_option("--c", cfg.c, "Exchange exponent c (>= 2)")->required();
    expand->add_option("--n", cfg.n, "Index n (>= 3)")->required();
    expand->add_option("--method", cfg.method, "formula | recurrence | both | v2")
        ->check(CLI::IsMember(methods))
        ->capture_default_str();
    expand->add_option("--format", cfg.format, "json | tsv | pretty")->check(CLI::IsMember(formats))->capture_default_str();

    auto* chi = app.add_subcommand("chi", "Euler characteristics of quiver Grassmannians of M(n)");
    chi->add_option("--c", cfg.c, "Exchange exponent c (>= 2)")->required();
    chi->add_option("--n", cfg.n, "Index n (>= 3)")->required();
    chi->add_option("--e1", cfg.e1, "First coordinate of the sub-dimension vector");
    chi->add_option("--e2", cfg.e2, "Second coordinate of the sub-dimension vector");
    chi->add_option("--method", cfg.method, "formula | recurrence | both | v2")
        ->check(CLI::IsMember(methods))
        ->capture_default_str();
    chi->add_option("--format", cfg.format, "json | tsv | pretty")->check(CLI::IsMember(formats))->capture_default_str();

    auto* ver = app.add_subcommand("verify", "Run the cross-checks and identity suites");
    auto* c_opt = ver->add_option("--c", cfg.c, "Restrict to one c");
    ver->add_option("--n-max", cfg.n_max, "Largest n to check (>= 3)");
    ver->add_option("--suite", cfg.suite, "Suite to run")->check(CLI::IsMember(suites))->capture_default_str();
    ver->add_option("--trials", cfg.trials, "Random Vandermonde instances")->capture_default_str();
    ver->add_option("--seed", cfg.seed, "Base seed for random draws")->capture_default_str();
    ver->add_option("--jobs", cfg.jobs, "Worker threads")->check(CLI::PositiveNumber);
    ver->add_option("--format", cfg.format, "json | tsv | pretty")->check(CLI::IsMember(formats))->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (expand->parsed()) return cmd_expand(cfg);
        if (chi->parsed()) return cmd_chi(cfg);
        return cmd_verify(cfg, c_opt->count() > 0);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kMismatch;
    }
}

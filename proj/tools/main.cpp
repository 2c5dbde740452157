#include "overlapdist/bounds.hpp"
#include "overlapdist/corrections.hpp"
#include "overlapdist/io.hpp"
#include "overlapdist/mc.hpp"
#include "overlapdist/series.hpp"
#include "overlapdist/verify.hpp"
#include "overlapdist/zero.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <sstream>

namespace {

using namespace ovd;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;
constexpr int kExitVerifyFailed = 4;

struct ThetaFlags {
    std::string list;
    unsigned uniform_s = 0;
    std::string geometric_r;
    std::string trunc_eps = "1e-9";

    void attach(CLI::App* cmd) {
        auto* a = cmd->add_option("--theta", list, "letter probabilities, e.g. 0.7,0.3");
        auto* b = cmd->add_option("--uniform", uniform_s, "uniform alphabet of s letters");
        auto* c = cmd->add_option("--geometric", geometric_r,
                                  "geometric(r) alphabet, truncated at --trunc-eps");
        cmd->add_option("--trunc-eps", trunc_eps, "geometric truncation tolerance");
        a->excludes(b);
        a->excludes(c);
        b->excludes(c);
    }

    Theta build() const {
        if (!list.empty()) return parse_theta_list(list);
        if (uniform_s > 0) return Theta::uniform(uniform_s);
        if (!geometric_r.empty())
            return Theta::geometric(parse_rational(geometric_r),
                                    parse_rational(trunc_eps));
        throw InvalidTheta("choose one of --theta / --uniform / --geometric");
    }
};

struct CommonFlags {
    std::uint64_t budget_words = 0;
    int threads = 0;
    bool rational = false;
    bool json_only = false;
    bool csv_only = false;
    std::string out;

    void attach(CLI::App* cmd, bool with_mode = true) {
        cmd->add_option("--budget", budget_words,
                        "enumeration budget in words (default 1e8, or "
                        "OVERLAPDIST_BUDGET)");
        cmd->add_option("--threads", threads, "worker cap, 0 = auto");
        if (with_mode)
            cmd->add_flag("--rational", rational, "force exact rational arithmetic");
        cmd->add_flag("--json", json_only, "emit only the JSON artifact");
        cmd->add_flag("--csv", csv_only, "emit only the CSV artifact");
        cmd->add_option("--out,-o", out, "output path prefix (default: stdout)");
    }

    Budget make_budget() const {
        Budget b = Budget::from_env();
        if (budget_words > 0) b.max_words = budget_words;
        return b;
    }
};

std::vector<std::string> collect_argv(int argc, char** argv) {
    return {argv, argv + argc};
}

Manifest make_manifest(const std::string& command, const std::vector<std::string>& argv,
                       const Theta& theta, const std::string& arithmetic,
                       std::optional<std::uint64_t> seed = std::nullopt) {
    Manifest m;
    m.command = command;
    m.argv = argv;
    m.theta = theta_json(theta);
    m.arithmetic = arithmetic;
    if (seed) {
        m.has_seed = true;
        m.seed = *seed;
    }
    return m;
}

void emit(const CommonFlags& flags, const std::string& name, const json& j,
          const std::string& csv) {
    const std::string pretty = j.dump(2) + "\n";
    if (flags.out.empty()) {
        if (!flags.csv_only) std::cout << pretty;
        if (flags.csv_only || (!flags.json_only && !csv.empty())) std::cout << csv;
        return;
    }
    if (!flags.csv_only) write_text_file(flags.out + "." + name + ".json", pretty);
    if (!flags.json_only && !csv.empty())
        write_text_file(flags.out + "." + name + ".csv", csv);
}

// ------------------------------------------------------------------ commands

int cmd_dist(const ThetaFlags& tf, const CommonFlags& cf, int n, bool exact, bool mc,
             const std::string& method, std::uint64_t samples, std::uint64_t seed,
             const std::vector<std::string>& argv) {
    Theta theta = tf.build();
    Budget budget = cf.make_budget();
    if (exact == mc)
        throw CLI::ValidationError("dist", "choose exactly one of --exact / --mc");

    if (mc) {
        McConfig cfg;
        cfg.n = n;
        cfg.samples = samples;
        cfg.seed = seed;
        cfg.threads = cf.threads;
        McResult res = sample_distribution(theta, cfg);
        Manifest m = make_manifest("dist", argv, theta, "float", seed);
        std::ostringstream csv;
        csv << "k,probability,stderr\n";
        csv.precision(17);
        for (int k = 0; k < res.n; ++k)
            csv << k << "," << res.pmf[k] << "," << res.stderrs[k] << "\n";
        std::cerr << "sampled " << samples << " words in " << res.seconds << " s\n";
        emit(cf, "dist", mc_json(res, m), csv.str());
        return kExitOk;
    }

    Mode mode = (cf.rational || n <= 16) ? Mode::Exact : Mode::Float;
    DistTable table;
    if (method == "formula") {
        CorrectionEngine engine(theta, Mode::Exact, budget, cf.threads);
        table.n = n;
        table.mode = Mode::Exact;
        table.producer = "formula";
        table.pmf_exact.resize(n);
        table.pmf.resize(n);
        Budget zb = cf.make_budget();
        table.pmf_exact[0] = zero_probability(theta, n, zb, cf.threads);
        for (int k = 1; k < n; ++k)
            table.pmf_exact[k] = 2 * k <= n ? engine.formula_pmf(k, n)
                                            : engine.table(n).pmf(k);
        for (int k = 0; k < n; ++k) table.pmf[k] = to_double(table.pmf_exact[k]);
    } else {
        table = enumerate_distribution(theta, n, mode, budget, cf.threads);
    }
    Manifest m = make_manifest("dist", argv, theta,
                               table.mode == Mode::Exact ? "exact" : "float");
    emit(cf, "dist", dist_json(table, m), dist_csv(table));
    return kExitOk;
}

int cmd_limit(const ThetaFlags& tf, const CommonFlags& cf, int k_max, double tol,
              const std::vector<std::string>& argv) {
    Theta theta = tf.build();
    Budget budget = cf.make_budget();
    SeriesOptions opt;
    opt.tol = tol;
    opt.threads = cf.threads;
    if (cf.rational) opt.mode = Mode::Exact;

    json rows = json::array();
    std::ostringstream csv;
    csv << "k,limit_pmf,tail_bound\n";
    csv.precision(17);
    bool warned = false;

    TruncatedSeries zero = limit_zero(theta, opt, budget);
    rows.push_back(series_json(zero));
    csv << 0 << "," << zero.value << "," << zero.tail_bound_d() << "\n";
    for (int k = 1; k <= k_max; ++k) {
        TruncatedSeries s = limit_pmf(theta, k, opt, budget);
        if (!s.tol_met && !warned) {
            std::cerr << "warning: tolerance " << tol
                      << " unreachable within the enumeration budget from k=" << k
                      << "; reporting achieved tail bounds\n";
            warned = true;
        }
        rows.push_back(series_json(s));
        csv << k << "," << s.value << "," << s.tail_bound_d() << "\n";
    }
    Manifest m = make_manifest("limit", argv, theta,
                               opt.mode == Mode::Exact || theta.is_uniform() ? "exact"
                                                                             : "float");
    json j{{"manifest", manifest_json(m)}, {"tol", tol}, {"rows", rows}};
    emit(cf, "limit", j, csv.str());
    return kExitOk;
}

int cmd_zero(const ThetaFlags& tf, const CommonFlags& cf, int n_max,
             const std::vector<std::string>& argv) {
    Theta theta = tf.build();
    Budget budget = cf.make_budget();
    ZeroSequence seq = zero_sequence(theta, n_max, budget, cf.threads);
    json values = json::array();
    std::ostringstream csv;
    csv << "n,p_zero\n";
    csv.precision(17);
    for (int n = 1; n <= n_max; ++n) {
        values.push_back(json{{"n", n},
                              {"p_zero", to_double(seq.values[n])},
                              {"p_zero_exact", rat_string(seq.values[n])}});
        csv << n << "," << to_double(seq.values[n]) << "\n";
    }
    Manifest m = make_manifest("zero", argv, theta, "exact");
    json j{{"manifest", manifest_json(m)}, {"producer", seq.producer}, {"values", values}};
    emit(cf, "zero", j, csv.str());
    return kExitOk;
}

int cmd_count(const CommonFlags& cf, int n_max, unsigned s,
              const std::vector<std::string>& argv) {
    auto u = unbordered_counts(n_max, s);
    std::ostringstream lines;
    for (int n = 1; n <= n_max; ++n) lines << u[n].str() << "\n";
    if (cf.out.empty()) {
        std::cout << lines.str();
    } else {
        write_text_file(cf.out + ".count.txt", lines.str());
        json seq = json::array();
        for (int n = 1; n <= n_max; ++n) seq.push_back(u[n].str());
        Manifest m;
        m.command = "count";
        m.argv = argv;
        m.theta = theta_json(Theta::uniform(s));
        m.arithmetic = "exact";
        json j{{"manifest", manifest_json(m)}, {"s", s}, {"counts", seq}};
        write_text_file(cf.out + ".count.json", j.dump(2) + "\n");
    }
    return kExitOk;
}

int cmd_bounds(const ThetaFlags& tf, const CommonFlags& cf, int n_max, int k_max,
               const std::vector<std::string>& argv) {
    Theta theta = tf.build();
    Budget budget = cf.make_budget();
    json j;
    Manifest m = make_manifest("bounds", argv, theta, "float");
    j["manifest"] = manifest_json(m);
    j["C"] = convergence_rate_C(theta);

    GapGridReport grid = pmf_gap_grid(theta, n_max, budget, cf.threads, 1e-5);
    json cells = json::array();
    for (const auto& c : grid.cells)
        cells.push_back(json{{"n", c.n},
                             {"k", c.k},
                             {"measured", c.measured},
                             {"bound", c.bound},
                             {"ratio", c.ratio},
                             {"pass", c.pass}});
    j["gap_grid"] = json{{"max_ratio", grid.max_ratio},
                         {"all_pass", grid.all_pass},
                         {"cells", cells}};

    Budget budget2 = cf.make_budget();
    CorrectionEngine engine(theta, Mode::Exact, budget2, cf.threads);
    json recs = json::array();
    for (int k = 1; k <= k_max && 4 * k <= n_max; ++k)
        for (const auto& rec :
             correction_bound_records(theta, k, n_max, engine, budget2, cf.threads))
            recs.push_back(json{{"k", k},
                                {"name", rec.name},
                                {"lhs", rec.lhs},
                                {"rhs", rec.rhs},
                                {"slack", rec.slack},
                                {"pass", rec.pass}});
    j["correction_caps"] = recs;

    Budget budget3 = cf.make_budget();
    auto lead = leading_term_analysis(theta, std::max(k_max, 1), budget3, cf.threads);
    json rows = json::array();
    for (const auto& row : lead.rows)
        rows.push_back(json{{"k", row.k},
                            {"lower", to_double(row.lower)},
                            {"upper", to_double(row.upper)},
                            {"m2_pow_k", to_double(row.geometric_term)},
                            {"geometric_leading_certified",
                             row.certified_geometric_leading},
                            {"correction_leading_certified",
                             row.certified_correction_leading}});
    j["leading_term"] = json{{"rows", rows},
                             {"crossover_k", lead.crossover_k},
                             {"crossover_formula_two_letter",
                              lead.crossover_formula_two_letter},
                             {"a1_below_m2", lead.a1_below_m2}};

    std::ostringstream md;
    md << "# bound report\n\n- C = " << convergence_rate_C(theta)
       << "\n- gap grid max ratio = " << grid.max_ratio
       << (grid.all_pass ? " (all cells within bound)\n" : " (cells over bound!)\n");
    md << "- crossover k = " << lead.crossover_k << "\n";

    if (cf.out.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        write_text_file(cf.out + ".bounds.json", j.dump(2) + "\n");
        write_text_file(cf.out + ".bounds.md", md.str());
    }
    return kExitOk;
}

int cmd_verify(const CommonFlags& cf, bool full, const std::vector<std::string>& argv) {
    Budget budget = cf.make_budget();
    VerifyReport rep =
        run_verify(full ? VerifyLevel::Full : VerifyLevel::Quick, budget, cf.threads);
    Manifest m;
    m.command = "verify";
    m.argv = argv;
    m.theta = json::object();
    m.arithmetic = "exact";
    json j = verify_json(rep, m);
    std::string md = verify_markdown(rep);
    if (cf.out.empty()) {
        std::cout << j.dump(2) << "\n";
        std::cerr << md;
    } else {
        write_text_file(cf.out + ".verify.json", j.dump(2) + "\n");
        write_text_file(cf.out + ".verify.md", md);
    }
    return rep.all_pass() ? kExitOk : kExitVerifyFailed;
}

int cmd_couple(const ThetaFlags& tf, const CommonFlags& cf, int n, bool exact,
               std::uint64_t samples, std::uint64_t seed,
               const std::vector<std::string>& argv) {
    Theta theta = tf.build();
    json j;
    if (exact) {
        Budget budget = cf.make_budget();
        Rat v = step_coupling_exact(theta, n, budget, cf.threads);
        Manifest m = make_manifest("couple", argv, theta, "exact");
        j = json{{"manifest", manifest_json(m)},
                 {"n", n},
                 {"value", to_double(v)},
                 {"value_exact", rat_string(v)},
                 {"sum_p_squared", theta.moment_d(2)},
                 {"rho", to_double(theta.rho())}};
    } else {
        McConfig cfg;
        cfg.n = n;
        cfg.samples = samples;
        cfg.seed = seed;
        cfg.threads = cf.threads;
        auto v = step_coupling_sampled(theta, cfg);
        Manifest m = make_manifest("couple", argv, theta, "float", seed);
        j = json{{"manifest", manifest_json(m)},
                 {"n", n},
                 {"value", v.value},
                 {"stderr", v.stderr_},
                 {"samples", v.samples}};
    }
    emit(cf, "couple", j, "");
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"distribution of the maximum self-overlap of random strings"};
    app.require_subcommand(1);
    auto args = collect_argv(argc, argv);

    // dist
    auto* dist = app.add_subcommand("dist", "exact or sampled distribution of S_n");
    ThetaFlags dist_theta;
    CommonFlags dist_common;
    int dist_n = 8;
    bool dist_exact = false, dist_mc = false;
    std::string dist_method = "enumeration";
    std::uint64_t dist_samples = 100000, dist_seed = 1;
    dist->add_option("--n", dist_n, "string length")->required();
    dist->add_flag("--exact", dist_exact, "exact computation");
    dist->add_flag("--mc", dist_mc, "Monte Carlo sampling");
    dist->add_option("--method", dist_method, "enumeration | formula")
        ->check(CLI::IsMember({"enumeration", "formula"}));
    dist->add_option("--samples", dist_samples, "Monte Carlo sample count");
    dist->add_option("--seed", dist_seed, "Monte Carlo seed");
    dist_theta.attach(dist);
    dist_common.attach(dist);

    // limit
    auto* limit = app.add_subcommand("limit", "limiting distribution with tail bounds");
    ThetaFlags limit_theta;
    CommonFlags limit_common;
    int limit_kmax = 6;
    double limit_tol = 1e-9;
    limit->add_option("--k-max", limit_kmax, "largest overlap size k");
    limit->add_option("--tol", limit_tol, "target tail bound per k");
    limit_theta.attach(limit);
    limit_common.attach(limit);

    // zero
    auto* zero = app.add_subcommand("zero", "P(S_n = 0) sequence");
    ThetaFlags zero_theta;
    CommonFlags zero_common;
    int zero_nmax = 32;
    zero->add_option("--n-max", zero_nmax, "compute up to this length");
    zero_theta.attach(zero);
    zero_common.attach(zero);

    // count
    auto* count = app.add_subcommand("count", "unbordered word counts, one per line");
    CommonFlags count_common;
    int count_nmax = 64;
    unsigned count_s = 2;
    count->add_option("--n-max", count_nmax, "compute u(1..n_max)");
    count->add_option("--s", count_s, "alphabet size");
    count_common.attach(count, false);

    // bounds
    auto* bounds = app.add_subcommand("bounds", "convergence-rate and cap reports");
    ThetaFlags bounds_theta;
    CommonFlags bounds_common;
    int bounds_nmax = 12, bounds_kmax = 3;
    bounds->add_option("--n-max", bounds_nmax, "grid length limit");
    bounds->add_option("--k-max", bounds_kmax, "grid overlap limit");
    auto* bounds_grid = bounds->add_option_group("grid presets");
    bool bounds_quick = false, bounds_full = false;
    bounds_grid->add_flag("--quick", bounds_quick, "n <= 10 grid");
    bounds_grid->add_flag("--grid", bounds_full, "n <= 14 grid");
    bounds_theta.attach(bounds);
    bounds_common.attach(bounds);

    // verify
    auto* verify = app.add_subcommand("verify", "run the identity/property suite");
    CommonFlags verify_common;
    bool verify_quick = false, verify_full = false;
    verify->add_flag("--quick", verify_quick, "fast subset (< 10 s)");
    verify->add_flag("--full", verify_full, "complete suite (n <= 14, series checks)");
    verify_common.attach(verify, false);

    // couple
    auto* couple = app.add_subcommand("couple", "step-coupling probability "
                                                "P(S_{n+1} = S_n + 1)");
    ThetaFlags couple_theta;
    CommonFlags couple_common;
    int couple_n = 4;
    bool couple_exact = false;
    std::uint64_t couple_samples = 100000, couple_seed = 1;
    couple->add_option("--n", couple_n, "prefix length")->required();
    couple->add_flag("--exact", couple_exact, "exact enumeration");
    couple->add_option("--samples", couple_samples, "sample count");
    couple->add_option("--seed", couple_seed, "seed");
    couple_theta.attach(couple);
    couple_common.attach(couple);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (dist->parsed())
            return cmd_dist(dist_theta, dist_common, dist_n, dist_exact, dist_mc,
                            dist_method, dist_samples, dist_seed, args);
        if (limit->parsed())
            return cmd_limit(limit_theta, limit_common, limit_kmax, limit_tol, args);
        if (zero->parsed()) return cmd_zero(zero_theta, zero_common, zero_nmax, args);
        if (count->parsed()) return cmd_count(count_common, count_nmax, count_s, args);
        if (bounds->parsed()) {
            if (bounds_quick) bounds_nmax = 10;
            if (bounds_full) bounds_nmax = 14;
            return cmd_bounds(bounds_theta, bounds_common, bounds_nmax, bounds_kmax,
                              args);
        }
        if (verify->parsed())
            return cmd_verify(verify_common, verify_full && !verify_quick, args);
        if (couple->parsed())
            return cmd_couple(couple_theta, couple_common, couple_n, couple_exact,
                              couple_samples, couple_seed, args);
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBudget;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const InvalidTheta& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitUsage;
}

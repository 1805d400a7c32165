#include "ginstat/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ginstat/asymptotics.hpp"
#include "ginstat/cumulants.hpp"
#include "ginstat/errors.hpp"
#include "ginstat/monte_carlo.hpp"
#include "ginstat/report.hpp"
#include "ginstat/verify.hpp"

namespace ginstat {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;

void write_output(const Json& report, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << report.dump(2) << "\n";
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open output file: " + out_path);
    out << report.dump(2) << "\n";
}

void write_text(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open output file: " + out_path);
    out << text;
}

std::vector<int> parse_int_list(const std::string& csv, const char* what) {
    std::vector<int> values;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        std::size_t pos = 0;
        const int v = std::stoi(tok, &pos);
        if (pos != tok.size())
            throw std::invalid_argument(std::string(what) + ": bad integer '" + tok + "'");
        values.push_back(v);
    }
    if (values.empty()) throw std::invalid_argument(std::string(what) + ": empty list");
    return values;
}

int default_workers() {
    if (const char* env = std::getenv("GINSTAT_WORKERS")) {
        const int w = std::atoi(env);
        if (w > 0) return w;
    }
    return 0;  // auto
}

int cmd_exact(const std::string& stat_spec, int n, int lmax,
              const std::string& cov_grid_csv, const std::string& out_path) {
    const EvenPolynomial P = EvenPolynomial::parse(stat_spec);
    if (lmax < 1 || lmax > 4)
        throw std::invalid_argument("exact: --lmax must be in 1..4");
    Json config;
    config["command"] = "exact";
    config["n"] = n;
    config["statistic"] = P.to_string();
    config["lmax"] = lmax;
    config["cov_grid"] = cov_grid_csv;

    Json results = Json::array();
    std::optional<double> kappa1, kappa2;
    for (int l = 1; l <= lmax; ++l) {
        const CumulantReport report = cumulant(P, l, n);
        if (l == 1) kappa1 = report.value;
        if (l == 2) kappa2 = report.value;
        results.push_back(to_json(report));
    }
    {
        Json v;
        v["type"] = "variance_nr";
        v["source"] = "exact";
        v["method"] = "covariance_formula";
        v["n"] = n;
        v["value"] = variance_nr_exact(n);
        results.push_back(std::move(v));
    }
    if (kappa1 && kappa2 && *kappa1 != 0.0) {
        Json r;
        r["type"] = "cumulant_ratio";
        r["source"] = "exact";
        r["n"] = n;
        r["kappa2_over_kappa1"] = *kappa2 / *kappa1;
        r["limit"] = 2.0 - std::sqrt(2.0);
        results.push_back(std::move(r));
    }
    if (!cov_grid_csv.empty()) {
        const std::vector<int> grid = parse_int_list(cov_grid_csv, "--cov-grid");
        for (std::size_t i = 0; i < grid.size(); ++i)
            for (std::size_t j = i; j < grid.size(); ++j) {
                Json c;
                c["type"] = "covariance";
                c["source"] = "exact";
                c["method"] = "covariance_formula";
                c["n"] = n;
                c["p"] = grid[i];
                c["q"] = grid[j];
                c["value"] = covariance_monomials(grid[i], grid[j], n);
                results.push_back(std::move(c));
            }
    }
    write_output(make_report(std::move(config), std::move(results)), out_path);
    return kExitOk;
}

int cmd_mc(int N, std::uint64_t trials, std::uint64_t seed,
           const std::vector<std::string>& stat_specs, bool clt, int workers,
           const std::string& out_path, const std::string& samples_path,
           int retain_samples) {
    std::vector<EvenPolynomial> stats;
    stats.reserve(stat_specs.size());
    for (const auto& spec : stat_specs) stats.push_back(EvenPolynomial::parse(spec));

    EnsembleOptions options;
    options.workers = workers;
    options.retain_samples = retain_samples;
    const bool need_samples = clt || !samples_path.empty();
    if (need_samples && retain_samples < 0) options.retain_samples = 1;

    const EnsembleSummary summary = run_ensemble(N, trials, stats, seed, options);

    Json config;
    config["command"] = "mc";
    config["N"] = N;
    config["trials"] = trials;
    config["seed"] = seed;
    Json specs = Json::array();
    for (const auto& p : stats) specs.push_back(p.to_string());
    config["statistics"] = std::move(specs);
    config["clt"] = clt;

    Json results = Json::array();
    Json summary_json = to_json(summary);
    if (clt) {
        Json clt_json = Json::array();
        for (std::size_t si = 0; si < stats.size(); ++si) {
            const double sigma2 = sigma2_limit(stats[si]);
            std::vector<double> normalized(summary.samples[si].size());
            const double mean = summary.stat_moments[si].mean;
            const double denom = std::sqrt(summary.n_real.mean);
            for (std::size_t t = 0; t < normalized.size(); ++t)
                normalized[t] = (summary.samples[si][t] - mean) / denom;
            const KsResult ks = clt_test(normalized, sigma2);
            Json k;
            k["spec"] = stats[si].to_string();
            k["sigma2"] = sigma2;
            k["ks_statistic"] = ks.statistic;
            k["p_value"] = ks.p_value;
            clt_json.push_back(std::move(k));
        }
        summary_json["clt"] = std::move(clt_json);
    }
    results.push_back(std::move(summary_json));

    if (!samples_path.empty()) {
        std::ostringstream csv;
        csv << "trial,n_real";
        for (const auto& p : stats) csv << "," << p.to_string();
        csv << "\n";
        char buf[32];
        for (std::uint64_t t = 0; t < summary.trials; ++t) {
            csv << t << "," << static_cast<long long>(summary.n_real_samples[t]);
            for (std::size_t si = 0; si < stats.size(); ++si) {
                std::snprintf(buf, sizeof(buf), "%.17g", summary.samples[si][t]);
                csv << "," << buf;
            }
            csv << "\n";
        }
        write_text(csv.str(), samples_path);
    }

    write_output(make_report(std::move(config), std::move(results), Json(seed)),
                 out_path);
    return kExitOk;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, const std::string& out_path) {
    const std::vector<VerifyCheck> checks = run_verify_suite(suite, seed);
    Json config;
    config["command"] = "verify";
    config["suite"] = suite;
    config["seed"] = seed;
    Json results = Json::array();
    bool all_pass = true;
    std::vector<std::string> failures;
    for (const auto& check : checks) {
        results.push_back(to_json(check));
        if (!check.pass) {
            all_pass = false;
            failures.push_back(check.suite + "/" + check.name);
        }
        std::cerr << (check.pass ? "[pass] " : "[FAIL] ") << check.suite << "/"
                  << check.name << ": observed " << check.observed << " vs threshold "
                  << check.threshold << "\n";
    }
    write_output(make_report(std::move(config), std::move(results), Json(seed)),
                 out_path);
    if (!all_pass) {
        std::cerr << "verify: failing checks:";
        for (const auto& f : failures) std::cerr << " " << f;
        std::cerr << "\n";
        return kExitCheckFailure;
    }
    return kExitOk;
}

int cmd_asymptotics(const std::vector<int>& spq, int cumulant_order, bool mean,
                    const std::string& stat_spec, const std::string& grid_csv,
                    const std::string& format, const std::string& out_path) {
    const std::vector<int> grid = parse_int_list(grid_csv, "--grid");
    for (int n : grid)
        if (n < 1) throw std::invalid_argument("--grid: entries must be >= 1");

    LimitCheck check;
    if (!spq.empty()) {
        const int p = spq[0], q = spq[1];
        check.quantity = "s_pq(" + std::to_string(p) + "," + std::to_string(q) + ")";
        check.predicted_limit = s_pq_limit(p, q);
        for (int n : grid) check.finite_n.push_back({n, s_pq_sum(p, q, n)});
        check.metric_kind = "terminal_gap";
        check.metric = std::fabs(check.finite_n.back().value - check.predicted_limit) /
                       check.predicted_limit;
    } else if (cumulant_order > 0) {
        const EvenPolynomial P = EvenPolynomial::parse(stat_spec);
        check.quantity =
            "kappa" + std::to_string(cumulant_order) + "(" + P.to_string() + ")";
        check.predicted_limit = std::numeric_limits<double>::quiet_NaN();
        for (int n : grid)
            check.finite_n.push_back({n, cumulant(P, cumulant_order, n).value});
        check.metric_kind = "fitted_slope";
        check.metric = scaling_exponent(check.finite_n);
    } else if (mean) {
        check.quantity = "mean_nr";
        for (int n : grid) check.finite_n.push_back({n, mean_nr_exact(n)});
        // limit column holds the n-dependent asymptote; gap is relative to it
        check.metric_kind = "terminal_gap";
        const int n_last = grid.back();
        check.predicted_limit = std::numeric_limits<double>::quiet_NaN();
        check.metric = std::fabs(check.finite_n.back().value -
                                 mean_nr_asymptotic(2 * n_last)) /
                       mean_nr_asymptotic(2 * n_last);
    } else {
        throw std::invalid_argument(
            "asymptotics: choose one of --spq, --cumulant, --mean");
    }

    Json config;
    config["command"] = "asymptotics";
    config["quantity"] = check.quantity;
    config["grid"] = grid_csv;
    config["format"] = format;

    if (format == "csv") {
        std::ostringstream csv;
        csv << "n,value,limit,gap\n";
        char buf[64];
        for (const auto& pt : check.finite_n) {
            double limit = check.predicted_limit;
            if (check.quantity == "mean_nr") limit = mean_nr_asymptotic(2 * pt.n);
            csv << pt.n << ",";
            std::snprintf(buf, sizeof(buf), "%.17g", pt.value);
            csv << buf << ",";
            if (std::isfinite(limit)) {
                std::snprintf(buf, sizeof(buf), "%.17g", limit);
                csv << buf << ",";
                std::snprintf(buf, sizeof(buf), "%.17g",
                              std::fabs(pt.value - limit) / std::fabs(limit));
                csv << buf;
            } else {
                csv << ",";
            }
            csv << "\n";
        }
        csv << "# " << check.metric_kind << " = " << check.metric << "\n";
        write_text(csv.str(), out_path);
        return kExitOk;
    }

    Json results = Json::array();
    Json check_json = to_json(check);
    if (check.quantity == "mean_nr") {
        // per-row asymptote sqrt(2N/pi)
        for (std::size_t i = 0; i < check.finite_n.size(); ++i) {
            const double limit = mean_nr_asymptotic(2 * check.finite_n[i].n);
            check_json["rows"][i]["limit"] = limit;
            check_json["rows"][i]["gap"] =
                std::fabs(check.finite_n[i].value - limit) / limit;
        }
    }
    results.push_back(std::move(check_json));
    write_output(make_report(std::move(config), std::move(results)), out_path);
    return kExitOk;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"Exact and Monte Carlo statistics of the real eigenvalues of real "
                 "Gaussian (Ginibre) random matrices"};
    app.require_subcommand(1);

    // exact
    auto* exact = app.add_subcommand("exact", "closed-form cumulants and covariances");
    int exact_n = 1;
    std::string exact_stat = "1";
    int exact_lmax = 2;
    std::string exact_cov_grid;
    std::string exact_out;
    exact->add_option("--n", exact_n, "matrix half-size n (N = 2n)")
        ->required()
        ->check(CLI::PositiveNumber);
    exact->add_option("--stat", exact_stat, "even statistic spec, e.g. 1, x2, x2+0.5x4");
    exact->add_option("--lmax", exact_lmax, "highest cumulant order (1..4)");
    exact->add_option("--cov-grid", exact_cov_grid,
                      "comma list of even monomial powers for the covariance grid");
    exact->add_option("--out", exact_out, "output JSON path (default stdout)");

    // mc
    auto* mc = app.add_subcommand("mc", "Monte Carlo ensemble runs");
    int mc_N = 2;
    std::uint64_t mc_trials = 10000;
    std::uint64_t mc_seed = 1;
    std::vector<std::string> mc_stats;
    bool mc_clt = false;
    int mc_workers = default_workers();
    std::string mc_out, mc_samples;
    int mc_retain = -1;
    mc->add_option("--N", mc_N, "matrix size (even)")->required();
    mc->add_option("--trials", mc_trials, "number of trials")->required();
    mc->add_option("--seed", mc_seed, "master seed");
    mc->add_option("--stat", mc_stats, "statistic spec (repeatable)");
    mc->add_flag("--clt", mc_clt, "KS test of normalized fluctuations");
    mc->add_option("--workers", mc_workers, "worker threads (default: env GINSTAT_WORKERS or all cores)");
    mc->add_option("--out", mc_out, "output JSON path (default stdout)");
    mc->add_option("--dump-samples", mc_samples, "CSV path for per-trial samples");
    mc->add_option("--retain-samples", mc_retain,
                   "force sample retention on (1) or off (0); default auto");

    // verify
    auto* verify = app.add_subcommand("verify", "oracle verification suites");
    std::string verify_suite = "all";
    std::uint64_t verify_seed = 0xA11CEULL;
    std::string verify_out;
    verify->add_option("--suite", verify_suite, "all | skew | appendix | cross")
        ->check(CLI::IsMember({"all", "skew", "appendix", "cross"}));
    verify->add_option("--seed", verify_seed, "seed for randomized cases");
    verify->add_option("--out", verify_out, "output JSON path (default stdout)");

    // asymptotics
    auto* asym = app.add_subcommand("asymptotics", "finite-n convergence tables");
    std::vector<int> asym_spq;
    int asym_cumulant = 0;
    bool asym_mean = false;
    std::string asym_stat = "x2";
    std::string asym_grid;
    std::string asym_format = "json";
    std::string asym_out;
    asym->add_option("--spq", asym_spq, "normalized double sum: two even powers p q")
        ->expected(2);
    asym->add_option("--cumulant", asym_cumulant, "cumulant order for scaling study");
    asym->add_flag("--mean", asym_mean, "mean count vs sqrt(2N/pi)");
    asym->add_option("--stat", asym_stat, "statistic for --cumulant");
    asym->add_option("--grid", asym_grid, "comma list of n values")->required();
    asym->add_option("--format", asym_format, "json | csv")
        ->check(CLI::IsMember({"json", "csv"}));
    asym->add_option("--out", asym_out, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (exact->parsed())
            return cmd_exact(exact_stat, exact_n, exact_lmax, exact_cov_grid, exact_out);
        if (mc->parsed()) {
            if (mc_N < 2 || mc_N % 2 != 0) {
                std::cerr << "mc: --N must be even and >= 2\n";
                return kExitUsage;
            }
            if (mc_trials < 100) {
                std::cerr << "mc: --trials must be >= 100\n";
                return kExitUsage;
            }
            if (mc_stats.empty()) mc_stats.push_back("1");
            return cmd_mc(mc_N, mc_trials, mc_seed, mc_stats, mc_clt, mc_workers, mc_out,
                          mc_samples, mc_retain);
        }
        if (verify->parsed()) return cmd_verify(verify_suite, verify_seed, verify_out);
        if (asym->parsed()) {
            const int modes = (!asym_spq.empty() ? 1 : 0) + (asym_cumulant > 0 ? 1 : 0) +
                              (asym_mean ? 1 : 0);
            if (modes != 1) {
                std::cerr << "asymptotics: choose exactly one of --spq, --cumulant, --mean\n";
                return kExitUsage;
            }
            return cmd_asymptotics(asym_spq, asym_cumulant, asym_mean, asym_stat,
                                   asym_grid, asym_format, asym_out);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCheckFailure;
    }
    return kExitUsage;
}

}  // namespace ginstat

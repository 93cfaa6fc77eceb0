// polysieve command-line front end.
//
// Exit status: 0 all checks passed, 1 some check failed, 2 invalid usage,
// 3 the computation itself failed (numerical failure, size caps).

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "polysieve/kernels.hpp"
#include "polysieve/suites.hpp"

namespace ps = polysieve;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Common {
    std::string output;
    std::string format = "json";
};

void add_common(CLI::App* cmd, Common& c, bool csv) {
    cmd->add_option("--output,-o", c.output, "Write the report to this file (atomically) instead of stdout");
    auto* fmt = cmd->add_option("--format", c.format, "Report format")->capture_default_str();
    fmt->check(CLI::IsMember(csv ? std::vector<std::string>{"json", "csv"} : std::vector<std::string>{"json"}));
}

ps::QuadPoly parse_poly(const std::vector<ps::i64>& coeffs) {
    try {
        return ps::QuadPoly::make(coeffs.at(0), coeffs.at(1), coeffs.at(2));
    } catch (const ps::Error& e) {
        throw UsageError(std::string("--poly: ") + e.what());
    }
}

void require_positive(ps::i64 v, const char* flag) {
    if (v < 1) throw UsageError(std::string(flag) + ": must be >= 1, got " + std::to_string(v));
}

void emit(const Common& c, const std::string& content) {
    if (c.output.empty()) {
        std::cout << content;
        std::cout.flush();
    } else {
        ps::write_atomic(c.output, content);
    }
}

void configure_threads() {
    const char* env = std::getenv("POLYSIEVE_THREADS");
    if (env == nullptr || *env == '\0') return;
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (*end != '\0' || n < 1) throw UsageError(std::string("POLYSIEVE_THREADS: expected a positive integer, got '") + env + "'");
    ps::kernels::set_threads(static_cast<int>(n));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Large-sieve verification toolkit for quadratic polynomial moduli"};
    app.require_subcommand(1);

    std::vector<ps::i64> poly{1, 0, 0};
    ps::i64 Q = 0, N = 0, M = 343, hmax = 99;
    std::vector<ps::i64> Qs, Ns, rs{1, 3, 5};
    int m = 2;
    std::string delta;
    std::vector<double> eps{0.0, 0.05, 0.1};
    unsigned long long seed = 1;
    double tol = 1e-10;
    std::string metric = "line";
    int samples = 0;
    Common common;

    auto poly_opt = [&](CLI::App* cmd, bool required) {
        auto* o = cmd->add_option("--poly", poly, "Coefficients A B C of f(q) = A q^2 + B q + C")->expected(3);
        if (required) o->required();
        else o->capture_default_str();
    };

    auto* norm = app.add_subcommand("norm", "Compute N_f(Q, N) with its lower and upper bounds");
    poly_opt(norm, true);
    norm->add_option("--Q", Q, "Largest q")->required();
    norm->add_option("--N", N, "Length of the coefficient sequence")->required();
    norm->add_option("--tol", tol, "Eigensolver residual tolerance")->capture_default_str();
    add_common(norm, common, true);

    auto* bounds = app.add_subcommand("bounds", "Bounds report over a grid of (Q, N)");
    poly_opt(bounds, true);
    bounds->add_option("--Q", Qs, "One or more values of Q")->required();
    bounds->add_option("--N", Ns, "One or more values of N")->required();
    bounds->add_option("--eps", eps, "Exponents eps for the f(Q)^eps majorants")->capture_default_str();
    bounds->add_option("--tol", tol, "Eigensolver residual tolerance")->capture_default_str();
    add_common(bounds, common, true);

    auto* farey = app.add_subcommand("farey", "Farey window a/f(q), q <= Q, and its K_delta");
    poly_opt(farey, true);
    farey->add_option("--Q", Q, "Largest q")->required();
    farey->add_option("--delta", delta, "Spacing radius, exact as a/b or a decimal");
    farey->add_option("--metric", metric, "Distance for P_delta/K_delta")
        ->check(CLI::IsMember({"line", "circle"}))
        ->capture_default_str();
    add_common(farey, common, true);

    auto* gauss = app.add_subcommand("gauss-verify", "Closed-form quadratic Gauss sums against direct summation");
    gauss->add_option("--hmax", hmax, "Largest odd modulus h")->capture_default_str();
    add_common(gauss, common, false);

    auto* weyl = app.add_subcommand("weyl", "Weyl differencing inequality on random quadratic phases");
    weyl->add_option("--seed", seed, "Random seed")->capture_default_str();
    weyl->add_option("--N", N, "Largest sum length (default 500)");
    weyl->add_option("--samples", samples, "Number of random instances (default 1000)");
    add_common(weyl, common, false);

    auto* roots = app.add_subcommand("roots", "Root counts mod odd prime powers: lifting vs brute force, local bound");
    roots->add_option("--M", M, "Largest prime power p^alpha")->capture_default_str();
    roots->add_option("--seed", seed, "Random seed")->capture_default_str();
    roots->add_option("--samples", samples, "Random quadratics per prime power (default 1000)");
    add_common(roots, common, false);

    auto* witness = app.add_subcommand("witness", "Cluster of fractions near 1/Q_m forcing the large norm");
    poly_opt(witness, true);
    witness->add_option("--m", m, "Number of primes in Q_m")->required();
    add_common(witness, common, false);

    auto* chars = app.add_subcommand("char-sieve", "Character counts, Gauss sums, tau identity, multiplicative sieve");
    chars->add_option("--poly", poly, "Coefficients A B C (default: the three grid polynomials)")->expected(3);
    chars->add_option("--Q", Q, "Largest Q for random instances (default 4)");
    chars->add_option("--N", N, "Largest N for random instances (default 50)");
    chars->add_option("--r", rs, "Values of r for the multiplicative sieve")->capture_default_str();
    chars->add_option("--seed", seed, "Random seed")->capture_default_str();
    chars->add_option("--samples", samples, "Random coefficient vectors (default 100)");
    add_common(chars, common, false);

    auto* all = app.add_subcommand("all-checks", "Run every verification suite");
    all->add_option("--seed", seed, "Random seed")->capture_default_str();
    add_common(all, common, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        configure_threads();
        bool pass = false;
        std::string content;

        if (*norm || *bounds) {
            const auto f = parse_poly(poly);
            if (*norm) {
                Qs = {Q};
                Ns = {N};
            }
            for (auto q : Qs) require_positive(q, "--Q");
            for (auto n : Ns) require_positive(n, "--N");
            if (!(tol > 0.0)) throw UsageError("--tol: must be positive");
            ps::BoundsOptions opt;
            opt.eps = eps;
            opt.norm.tol = tol;
            if (*norm) opt.spacing_blocks = false;
            std::vector<ps::BoundsReport> reps;
            for (auto q : Qs) {
                for (auto n : Ns) reps.push_back(ps::bounds_report(f, q, n, opt));
            }
            pass = std::all_of(reps.begin(), reps.end(), [](const auto& r) { return r.pass; });
            if (common.format == "csv") {
                content = ps::bounds_csv(reps);
            } else if (*norm) {
                const auto& r = reps.front();
                ps::Json body{{"poly", ps::to_json(f)},
                              {"Q", r.Q},
                              {"N", r.N},
                              {"norm", r.norm},
                              {"residual", r.residual},
                              {"basis", ps::to_string(r.basis)},
                              {"side", r.side},
                              {"lower_bound", r.lower_bound},
                              {"upper_bound", r.trivial_spacing_arm},
                              {"trivial_bound", r.trivial_bound},
                              {"dense_norm", r.dense_norm ? ps::Json(*r.dense_norm) : ps::Json(nullptr)},
                              {"pass", r.pass}};
                content = ps::render(ps::document("norm", body));
            } else {
                ps::Json arr = ps::Json::array();
                for (const auto& r : reps) arr.push_back(ps::to_json(r));
                content = ps::render(ps::document("bounds", ps::Json{{"reports", arr}, {"pass", pass}}));
            }
        } else if (*farey) {
            const auto f = parse_poly(poly);
            require_positive(Q, "--Q");
            ps::SuiteResult r;
            try {
                r = ps::farey_suite(f, 1, Q, delta, ps::parse_metric(metric));
            } catch (const ps::InvalidArgument& e) {
                throw UsageError(std::string("--delta: ") + e.what());
            } catch (const std::invalid_argument&) {
                throw UsageError("--delta: cannot parse '" + delta + "'");
            }
            pass = r.pass;
            if (common.format == "csv") {
                content = "fraction,value\n";
                for (const auto& x : r.summary["fractions"]) {
                    const auto s = x.get<std::string>();
                    content += s + "," + ps::format_double(ps::Rational::parse(s).to_double()) + "\n";
                }
            } else {
                content = ps::render(ps::document("farey", r.summary));
            }
        } else if (*gauss) {
            require_positive(hmax, "--hmax");
            const auto r = ps::gauss_suite(hmax);
            pass = r.pass;
            content = ps::render(ps::document("gauss-verify", r.summary));
        } else if (*weyl) {
            if (weyl->count("--N")) require_positive(N, "--N");
            if (weyl->count("--samples") && samples < 1) throw UsageError("--samples: must be >= 1");
            const auto r = ps::weyl_suite(seed, weyl->count("--samples") ? samples : 1000,
                                          weyl->count("--N") ? N : 500);
            pass = r.pass;
            content = ps::render(ps::document("weyl", r.summary));
        } else if (*roots) {
            if (M < 3) throw UsageError("--M: must be >= 3");
            if (roots->count("--samples") && samples < 1) throw UsageError("--samples: must be >= 1");
            const auto r = ps::roots_suite(seed, M, roots->count("--samples") ? samples : 1000);
            pass = r.pass;
            content = ps::render(ps::document("roots", r.summary));
        } else if (*witness) {
            const auto f = parse_poly(poly);
            if (m < 1) throw UsageError("--m: must be >= 1");
            ps::WitnessReport rep = [&] {
                try {
                    return ps::witness_build(f, m);
                } catch (const ps::ConfigurationError& e) {
                    throw UsageError(std::string("--poly/--m: ") + e.what());
                } catch (const ps::TooLarge& e) {
                    throw UsageError(std::string("--m: ") + e.what());
                }
            }();
            pass = rep.pass;
            content = ps::render(ps::document("witness", ps::to_json(rep)));
        } else if (*chars) {
            auto opt = ps::default_char_suite();
            if (chars->count("--poly")) opt.polys = {parse_poly(poly)};
            if (chars->count("--Q")) {
                require_positive(Q, "--Q");
                opt.max_Q = Q;
            }
            if (chars->count("--N")) {
                require_positive(N, "--N");
                opt.max_N = N;
            }
            if (rs.empty()) throw UsageError("--r: need at least one value");
            for (auto r : rs) require_positive(r, "--r");
            opt.rs = rs;
            if (chars->count("--samples")) {
                if (samples < 1) throw UsageError("--samples: must be >= 1");
                opt.samples = samples;
            }
            opt.seed = seed;
            const auto r = ps::char_suite(opt);
            pass = r.pass;
            content = ps::render(ps::document("char-sieve", r.summary));
        } else if (*all) {
            const auto r = ps::all_checks(seed);
            pass = r.pass;
            content = ps::render(ps::document("all-checks", r.summary));
        }

        emit(common, content);
        return pass ? 0 : 1;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ps::InvalidArgument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

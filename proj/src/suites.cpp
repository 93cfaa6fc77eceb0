#include "polysieve/suites.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "polysieve/local_count.hpp"

namespace polysieve {

namespace {

Json poly_label(const QuadPoly& f) { return Json::array({f.A(), f.B(), f.C()}); }

// Largest count of points in a closed arc/segment of width 2 delta starting at a point, by direct scan.
i64 brute_k_delta(std::span<const Rational> pts, const Rational& delta, Metric metric) {
    const Rational width = delta + delta;
    const i64 n = static_cast<i64>(pts.size());
    if (metric == Metric::circle && width >= Rational(1)) return n;
    i64 best = 0;
    for (const auto& x : pts) {
        i64 c = 0;
        for (const auto& y : pts) {
            const Rational d = metric == Metric::line ? y - x : (y - x).frac();
            if (d >= Rational(0) && d <= width) ++c;
        }
        best = std::max(best, c);
    }
    return best;
}

i64 brute_k_delta(std::span<const double> pts, double delta, Metric metric) {
    const double width = 2.0 * delta;
    const i64 n = static_cast<i64>(pts.size());
    if (metric == Metric::circle && width >= 1.0) return n;
    i64 best = 0;
    // same predicate as the sweep (y <= x + width) so floating ties resolve alike
    for (double x : pts) {
        i64 c = 0;
        for (double y : pts) {
            if (y >= x && y <= x + width) ++c;
            if (metric == Metric::circle && y + 1.0 >= x && y + 1.0 <= x + width) ++c;
        }
        best = std::max(best, std::min(c, n));
    }
    return best;
}

std::vector<QuadPoly> grid_polys() {
    return {QuadPoly::make(1, 0, 0), QuadPoly::make(2, 3, 1), QuadPoly::make(1, -1, 1)};
}

} // namespace

SuiteResult gauss_suite(i64 hmax) {
    if (hmax < 1) throw InvalidArgument("gauss suite: hmax must be >= 1");
    struct PerH {
        i64 points = 0, failures = 0, literal_failures = 0, no_jacobi_failures = 0, modulus_failures = 0;
        double worst = 0.0;
    };
    const i64 count = (hmax + 1) / 2;
    std::vector<PerH> per(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(dynamic)
    for (i64 k = 0; k < count; ++k) {
        const i64 h = 2 * k + 1;
        const double sq = std::sqrt(static_cast<double>(h));
        const double tol = 1e-8 * sq;
        PerH& out = per[static_cast<std::size_t>(k)];
        for (i64 a = 0; a < h; ++a) {
            if (gcd(a, h) != 1) continue;
            if (std::fabs(std::abs(gauss_direct(a, 0, h)) - sq) > tol) ++out.modulus_failures;
            for (i64 b = 0; b < h; ++b) {
                const Complex direct = gauss_direct(a, b, h);
                const double err = std::abs(gauss_closed(a, b, h) - direct);
                ++out.points;
                out.worst = std::max(out.worst, err / sq);
                if (!(err <= tol)) ++out.failures;
                if (!(std::abs(gauss_closed_variant(a, b, h, GaussReading::literal_4h, true) - direct) <= tol)) {
                    ++out.literal_failures;
                }
                if (!(std::abs(gauss_closed_variant(a, b, h, GaussReading::inverse_mod_h, false) - direct) <= tol)) {
                    ++out.no_jacobi_failures;
                }
            }
        }
    }
    PerH total;
    for (const auto& p : per) {
        total.points += p.points;
        total.failures += p.failures;
        total.literal_failures += p.literal_failures;
        total.no_jacobi_failures += p.no_jacobi_failures;
        total.modulus_failures += p.modulus_failures;
        total.worst = std::max(total.worst, p.worst);
    }
    SuiteResult r{"gauss", total.failures == 0 && total.modulus_failures == 0, {}};
    r.summary = Json{{"hmax", hmax},
                     {"grid_points", total.points},
                     {"failures", total.failures},
                     {"max_error_over_sqrt_h", total.worst},
                     {"modulus_failures", total.modulus_failures},
                     {"formula", "e(-(4a)^-1 b^2 / h) (a|h) eps_h sqrt(h)"},
                     {"literal_4h_reading_failures", total.literal_failures},
                     {"without_jacobi_failures", total.no_jacobi_failures},
                     {"pass", r.pass}};
    return r;
}

SuiteResult weyl_suite(unsigned long long seed, int samples, i64 max_N, double bound) {
    if (max_N < 1) throw InvalidArgument("weyl suite: N must be >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<i64> length(1, max_N);
    double worst = 0.0;
    Json worst_case;
    i64 failures = 0;
    for (int s = 0; s < samples; ++s) {
        const double a = unit(rng);
        const double l = unit(rng);
        const double c = unit(rng);
        const i64 N = length(rng);
        const auto w = weyl_check(a, l, c, N);
        if (!(w.ratio <= bound)) ++failures;
        if (w.ratio > worst || worst_case.is_null()) {
            worst = w.ratio;
            worst_case = Json{{"a", a}, {"linear", l}, {"constant", c}, {"N", N}, {"lhs", w.lhs}, {"rhs", w.rhs}};
        }
    }
    SuiteResult r{"weyl", failures == 0, {}};
    r.summary = Json{{"seed", seed},   {"samples", samples},       {"max_N", max_N},
                     {"bound", bound}, {"max_ratio", worst},       {"worst_case", worst_case},
                     {"failures", failures}, {"pass", r.pass}};
    return r;
}

SuiteResult roots_suite(unsigned long long seed, i64 max_prime_power, int samples) {
    std::vector<std::pair<i64, int>> moduli;
    for (i64 p : sieve_primes(std::max<i64>(max_prime_power, 2))) {
        if (p == 2) continue;
        i64 pa = p;
        for (int a = 1; pa <= max_prime_power; ++a) {
            moduli.emplace_back(p, a);
            if (pa > max_prime_power / p) break;
            pa *= p;
        }
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<i64> coef(-10, 10);
    i64 checked = 0, mismatches = 0, bound_checked = 0, bound_failures = 0, degenerate = 0, max_count = 0;
    double max_ratio = 0.0;
    Json first_failure;
    for (const auto& [p, alpha] : moduli) {
        for (int s = 0; s < samples; ++s) {
            const QuadForm k{coef(rng), coef(rng), coef(rng)};
            const i64 brute = root_count_brute(k, p, alpha);
            const i64 lifted = root_count_lifted(k, p, alpha);
            ++checked;
            max_count = std::max(max_count, lifted);
            if (brute != lifted) {
                ++mismatches;
                if (first_failure.is_null()) {
                    first_failure = Json{{"kappa", {k.a, k.b, k.c}}, {"p", p}, {"alpha", alpha},
                                         {"brute", brute}, {"lifted", lifted}};
                }
            }
            if (k.a == 0) continue;
            if (vanishes_identically(k, p, alpha)) {
                ++degenerate;
                continue;
            }
            const i64 bound = local_root_bound(k, p, alpha);
            ++bound_checked;
            max_ratio = std::max(max_ratio, static_cast<double>(brute) / static_cast<double>(bound));
            if (brute > bound) {
                ++bound_failures;
                if (first_failure.is_null()) {
                    first_failure = Json{{"kappa", {k.a, k.b, k.c}}, {"p", p}, {"alpha", alpha},
                                         {"count", brute}, {"bound", bound}};
                }
            }
        }
    }
    SuiteResult r{"roots", mismatches == 0 && bound_failures == 0, {}};
    r.summary = Json{{"seed", seed},
                     {"max_prime_power", max_prime_power},
                     {"prime_powers", moduli.size()},
                     {"samples_per_modulus", samples},
                     {"checked", checked},
                     {"mismatches", mismatches},
                     {"bound_checked", bound_checked},
                     {"bound_failures", bound_failures},
                     {"degenerate_skipped", degenerate},
                     {"max_count_over_bound", max_ratio},
                     {"max_count", max_count},
                     {"first_failure", first_failure},
                     {"pass", r.pass}};
    return r;
}

SuiteResult spacing_suite(unsigned long long seed, int windows, std::size_t max_fractions) {
    const auto polys = grid_polys();
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, polys.size() - 1);
    std::uniform_int_distribution<i64> start(1, 12);
    std::uniform_int_distribution<std::size_t> target(1, max_fractions);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    i64 mismatches = 0, real_mismatches = 0, largest = 0;
    Json first_failure;
    for (int wi = 0; wi < windows; ++wi) {
        const QuadPoly& f = polys[pick(rng)];
        const i64 lo = start(rng);
        const std::size_t want = target(rng);
        i64 hi = lo;
        std::size_t total = static_cast<std::size_t>(phi(f.eval(lo)));
        while (total + static_cast<std::size_t>(phi(f.eval(hi + 1))) <= want) total += static_cast<std::size_t>(phi(f.eval(++hi)));
        const i64 k = std::max<i64>(1, static_cast<i64>(std::exp(unit(rng) * std::log(1e5))));
        const Rational delta(1, k);
        const Metric metric = wi % 2 == 0 ? Metric::line : Metric::circle;
        const auto w = FareyWindow::build(f, lo, hi);
        const i64 sweep = k_delta(w, delta, metric);
        const i64 brute = brute_k_delta(w.fractions(), delta, metric);
        const i64 sweep_real = k_delta(w, delta.to_double(), metric);
        const i64 brute_real = brute_k_delta(w.values(), delta.to_double(), metric);
        largest = std::max<i64>(largest, static_cast<i64>(w.size()));
        if (sweep_real != brute_real) ++real_mismatches;
        if (sweep != brute) {
            ++mismatches;
            if (first_failure.is_null()) {
                first_failure = Json{{"poly", poly_label(f)}, {"q_range", {lo, hi}}, {"delta", delta.to_string()},
                                     {"metric", to_string(metric)}, {"sweep", sweep}, {"brute", brute}};
            }
        }
    }
    SuiteResult r{"spacing", mismatches == 0 && real_mismatches == 0, {}};
    r.summary = Json{{"seed", seed},
                     {"windows", windows},
                     {"max_fractions", max_fractions},
                     {"largest_window", largest},
                     {"exact_mismatches", mismatches},
                     {"real_mismatches", real_mismatches},
                     {"first_failure", first_failure},
                     {"pass", r.pass}};
    return r;
}

SuiteResult farey_suite(const QuadPoly& f, i64 q_lo, i64 q_hi, const std::string& delta, Metric metric) {
    const auto w = FareyWindow::build(f, q_lo, q_hi);
    Json s;
    s["poly"] = to_json(f);
    s["q_range"] = Json::array({q_lo, q_hi});
    s["size"] = w.size();
    s["phi_total"] = w.phi_total();
    s["metric"] = to_string(metric);
    bool pass = static_cast<i64>(w.size()) <= w.phi_total();
    if (!delta.empty()) {
        i64 sweep = 0, brute = 0;
        if (delta.find('/') != std::string::npos) {
            const Rational d = Rational::parse(delta);
            if (d <= Rational(0)) throw InvalidArgument("delta must be positive");
            sweep = k_delta(w, d, metric);
            brute = brute_k_delta(w.fractions(), d, metric);
            s["delta"] = d.to_string();
            s["exact"] = true;
        } else {
            std::size_t used = 0;
            const double d = std::stod(delta, &used);
            if (used != delta.size() || !(d > 0.0)) throw InvalidArgument("delta must be a positive number");
            sweep = k_delta(w, d, metric);
            brute = brute_k_delta(w.values(), d, metric);
            s["delta"] = d;
            s["exact"] = false;
        }
        s["k_delta"] = sweep;
        s["k_delta_brute"] = brute;
        pass = pass && sweep == brute;
    }
    Json fr = Json::array();
    for (const auto& x : w.fractions()) fr.push_back(x.to_string());
    s["fractions"] = fr;
    s["pass"] = pass;
    return SuiteResult{"farey", pass, s};
}

NormGridOptions default_norm_grid() {
    NormGridOptions o;
    o.polys = grid_polys();
    return o;
}

SuiteResult norm_suite(const NormGridOptions& opt) {
    Json identity = Json::array();
    bool ident_ok = true;
    const auto sq = QuadPoly::make(1, 0, 0);
    for (i64 Q = 2; Q <= 6; ++Q) {
        const auto w = FareyWindow::build(sq, 1, Q);
        const double norm = largest_eigenpair(build_gram(w, 1), opt.norm).value;
        const double expect = static_cast<double>(w.phi_total());
        const bool ok = std::fabs(norm - expect) <= 1e-6 * expect;
        ident_ok = ident_ok && ok;
        identity.push_back(Json{{"Q", Q}, {"norm", norm}, {"phi_sum", w.phi_total()}, {"ok", ok}});
    }

    Json rows = Json::array();
    i64 sandwich_failures = 0, duality_failures = 0;
    double worst_duality = 0.0;
    for (const auto& f : opt.polys) {
        for (i64 Q : opt.Qs) {
            const auto w = FareyWindow::build(f, 1, Q);
            const double fQ = static_cast<double>(f.eval(Q));
            for (i64 N : opt.Ns) {
                GramOptions gf, gt;
                gf.basis = Basis::farey;
                gt.basis = Basis::time;
                const double nf = largest_eigenpair(build_gram(w, N, gf), opt.norm).value;
                const double nt = largest_eigenpair(build_gram(w, N, gt), opt.norm).value;
                const double Nd = static_cast<double>(N);
                const double lower = std::max(Nd, static_cast<double>(w.phi_total()));
                const double upper = fQ * fQ + Nd;
                const bool sandwich = nf >= lower * (1.0 - opt.tol) && nf <= upper * (1.0 + opt.tol);
                const double dual = std::fabs(nf - nt) / std::max(nf, nt);
                worst_duality = std::max(worst_duality, dual);
                const bool dual_ok = dual <= opt.duality_tol;
                if (!sandwich) ++sandwich_failures;
                if (!dual_ok) ++duality_failures;
                rows.push_back(Json{{"poly", poly_label(f)}, {"Q", Q}, {"N", N}, {"norm_farey", nf},
                                    {"norm_time", nt}, {"lower", lower}, {"upper", upper},
                                    {"sandwich", sandwich}, {"duality", dual_ok}});
            }
        }
    }
    SuiteResult r{"norm", ident_ok && sandwich_failures == 0 && duality_failures == 0, {}};
    r.summary = Json{{"identity_N1", identity},      {"instances", rows},
                     {"sandwich_failures", sandwich_failures}, {"duality_failures", duality_failures},
                     {"max_duality_gap", worst_duality}, {"pass", r.pass}};
    return r;
}

SuiteResult witness_suite(const QuadPoly& f, const std::vector<int>& ms, const WitnessOptions& opt) {
    Json reports = Json::array();
    bool pass = true;
    for (int m : ms) {
        const auto rep = witness_build(f, m, opt);
        pass = pass && rep.pass;
        Json j = to_json(rep);
        reports.push_back(j);
    }
    return SuiteResult{"witness", pass, Json{{"reports", reports}, {"pass", pass}}};
}

CharSuiteOptions default_char_suite() {
    CharSuiteOptions o;
    o.polys = grid_polys();
    return o;
}

SuiteResult char_suite(const CharSuiteOptions& opt) {
    i64 count_failures = 0;
    for (i64 n = 1; n <= opt.count_limit; ++n) {
        if (static_cast<i64>(characters_mod(n).size()) != phi(n)) ++count_failures;
    }

    i64 primitive = 0, gauss_failures = 0;
    double worst_gauss = 0.0;
    for (i64 n = 1; n <= opt.gauss_limit; ++n) {
        const double sq = std::sqrt(static_cast<double>(n));
        for (const auto& chi : characters_mod(n)) {
            if (!chi.is_primitive()) continue;
            ++primitive;
            const double err = std::fabs(std::abs(gauss_sum_char(chi)) - sq);
            worst_gauss = std::max(worst_gauss, err);
            if (!(err <= 1e-9)) ++gauss_failures;
        }
    }

    i64 tau_pairs = 0, tau_failures = 0;
    double worst_tau = 0.0;
    for (const auto& f : opt.polys) {
        for (i64 q = 1; q <= 4; ++q) {
            const i64 fq = f.eval(q);
            std::vector<DirichletCharacter> prim;
            for (auto& chi : characters_mod(fq)) {
                if (chi.is_primitive()) prim.push_back(chi);
            }
            for (i64 r = 1; r <= opt.tau_r_limit; ++r) {
                if (gcd(r, fq) != 1) continue;
                for (const auto& psi : characters_mod(r)) {
                    for (const auto& chi : prim) {
                        const auto t = verify_tau_identity(psi, chi);
                        ++tau_pairs;
                        worst_tau = std::max(worst_tau, t.rel_error);
                        if (!t.holds) ++tau_failures;
                    }
                }
            }
        }
    }

    std::mt19937_64 rng(opt.seed);
    std::uniform_int_distribution<i64> pickQ(1, opt.max_Q), pickN(1, opt.max_N);
    std::uniform_int_distribution<std::size_t> pickf(0, opt.polys.size() - 1);
    i64 sieve_failures = 0, weight_failures = 0;
    double worst_ratio = 0.0;
    Json worst_case;
    for (int s = 0; s < opt.samples; ++s) {
        const QuadPoly& f = opt.polys[pickf(rng)];
        const i64 r = opt.rs[static_cast<std::size_t>(s) % opt.rs.size()];
        const i64 Q = pickQ(rng);
        const i64 N = pickN(rng);
        const auto z = seeded_unit_vector(static_cast<std::size_t>(N), rng());
        const auto m = mult_sieve_check(f, Q, r, z);
        if (!m.holds) ++sieve_failures;
        if (!m.weights_dominate) ++weight_failures;
        const double ratio = m.rhs > 0.0 ? m.lhs / m.rhs : 0.0;
        if (ratio > worst_ratio || worst_case.is_null()) {
            worst_ratio = ratio;
            worst_case = Json{{"poly", poly_label(f)}, {"Q", Q}, {"r", r}, {"N", N}, {"check", to_json(m)}};
        }
    }

    SuiteResult res{"characters",
                    count_failures == 0 && gauss_failures == 0 && tau_failures == 0 && sieve_failures == 0 &&
                        weight_failures == 0,
                    {}};
    Json polys = Json::array();
    for (const auto& f : opt.polys) polys.push_back(poly_label(f));
    Json rs = opt.rs;
    res.summary = Json{{"seed", opt.seed},
                       {"polys", polys},
                       {"count_limit", opt.count_limit},
                       {"count_failures", count_failures},
                       {"gauss_limit", opt.gauss_limit},
                       {"primitive_characters", primitive},
                       {"gauss_failures", gauss_failures},
                       {"max_gauss_error", worst_gauss},
                       {"tau_pairs", tau_pairs},
                       {"tau_failures", tau_failures},
                       {"max_tau_error", worst_tau},
                       {"sieve_samples", opt.samples},
                       {"r_values", rs},
                       {"sieve_failures", sieve_failures},
                       {"weight_failures", weight_failures},
                       {"max_lhs_over_rhs", worst_ratio},
                       {"worst_case", worst_case},
                       {"pass", res.pass}};
    return res;
}

SuiteResult all_checks(unsigned long long seed) {
    std::vector<SuiteResult> parts;
    parts.push_back(gauss_suite(99));
    parts.push_back(roots_suite(seed));
    parts.push_back(weyl_suite(seed));
    parts.push_back(spacing_suite(seed));
    parts.push_back(norm_suite(default_norm_grid()));
    parts.push_back(witness_suite(QuadPoly::make(1, 0, 0), {1, 2, 3}));
    auto co = default_char_suite();
    co.seed = seed;
    parts.push_back(char_suite(co));
    bool pass = true;
    Json suites = Json::array();
    for (const auto& p : parts) {
        pass = pass && p.pass;
        suites.push_back(to_json(p));
    }
    return SuiteResult{"all-checks", pass, Json{{"seed", seed}, {"suites", suites}, {"pass", pass}}};
}

Json to_json(const SuiteResult& s) { return Json{{"suite", s.name}, {"pass", s.pass}, {"summary", s.summary}}; }

} // namespace polysieve

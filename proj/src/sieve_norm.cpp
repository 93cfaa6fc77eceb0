#include "polysieve/sieve_norm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "polysieve/local_count.hpp"

namespace polysieve {

namespace {

void require_sizes(i64 Q, i64 N) {
    if (Q < 1) throw InvalidArgument("Q must be >= 1, got " + std::to_string(Q));
    if (N < 1) throw InvalidArgument("N must be >= 1, got " + std::to_string(N));
}

bool le_rel(double a, double b, double tol) { return a <= b + tol * std::max(std::fabs(a), std::fabs(b)); }

} // namespace

NormResult sieve_norm(const QuadPoly& f, i64 Q, i64 N, const GramOptions& gram, const NormOptions& norm) {
    require_sizes(Q, N);
    const auto w = FareyWindow::build(f, 1, Q);
    return largest_eigenpair(build_gram(w, N, gram), norm);
}

BoundsReport bounds_report(const QuadPoly& f, i64 Q, i64 N, const BoundsOptions& opt) {
    require_sizes(Q, N);
    BoundsReport rep(f);
    rep.Q = Q;
    rep.N = N;
    rep.fQ = f.eval(Q);

    const auto w = FareyWindow::build(f, 1, Q);
    rep.phi_sum = w.phi_total();
    rep.fraction_count = static_cast<i64>(w.size());

    const auto g = build_gram(w, N, opt.gram);
    rep.basis = g.basis();
    rep.side = g.side();
    const auto nr = largest_eigenpair(g, opt.norm);
    rep.norm = nr.value;
    rep.residual = nr.residual;
    rep.matvecs = nr.matvecs;
    rep.method = nr.method;
    if (g.side() <= opt.dense_max_side) rep.dense_norm = dense_largest_eigenvalue(g);

    const double Qd = static_cast<double>(Q);
    const double Nd = static_cast<double>(N);
    const double fQ = static_cast<double>(rep.fQ);
    rep.trivial_q_arm = Qd * fQ + Qd * Nd;
    rep.trivial_spacing_arm = fQ * fQ + Nd;
    rep.trivial_bound = std::min(rep.trivial_q_arm, rep.trivial_spacing_arm);
    for (double eps : opt.eps) {
        const double scale = std::pow(fQ, eps);
        rep.bounds.push_back({eps, scale * (Qd * fQ + Nd + std::min(Nd * std::sqrt(Qd), fQ * std::sqrt(Nd))),
                              scale * (Qd * fQ + Nd)});
    }
    rep.lower_bound = std::max(Nd, static_cast<double>(rep.phi_sum));
    rep.hypothesis = hypothesis_check(f, Q);

    if (opt.spacing_blocks) {
        const Rational delta(1, N);
        for (const auto& piece : dyadic_tiling(f, Q)) {
            const auto bw = FareyWindow::build(f, piece.block.lo, piece.block.hi);
            BlockSpacing bs;
            bs.j = piece.j;
            bs.block = piece.block;
            bs.M = std::sqrt(std::ldexp(1.0, piece.j));
            bs.fractions = static_cast<i64>(bw.size());
            bs.k_delta = k_delta(bw, delta);
            const double A = static_cast<double>(f.A());
            const double M = bs.M;
            const double d = 1.0 / Nd;
            bs.trivial = std::min(A * M * M * M * d + M, A * A * M * M * M * M * d + 1.0);
            rep.blocks.push_back(bs);
        }
    }

    const double tol = opt.check_tol;
    rep.lower_ok = le_rel(rep.lower_bound, rep.norm, tol);
    rep.upper_ok = le_rel(rep.norm, rep.trivial_spacing_arm, tol);
    rep.trivial_ok = le_rel(rep.norm, rep.trivial_bound, tol);
    if (rep.dense_norm) rep.dense_ok = std::fabs(*rep.dense_norm - rep.norm) <= tol * std::fabs(*rep.dense_norm);
    rep.pass = rep.lower_ok && rep.upper_ok && rep.trivial_ok && rep.dense_ok;
    return rep;
}

std::vector<i64> witness_primes(const QuadPoly& f, int m, i64 prime_cap) {
    if (m < 1) throw InvalidArgument("witness: m must be >= 1");
    const i64 disc = checked_add(f.discriminant(), checked_mul(4, f.A())); // discriminant of f - 1
    std::vector<i64> out;
    for (i64 p : sieve_primes(prime_cap)) {
        if (p == 2 || f.A() % p == 0) continue;
        if (jacobi(mod_floor(disc, p), p) != 1) continue;
        out.push_back(p);
        if (static_cast<int>(out.size()) == m) return out;
    }
    throw ConfigurationError("witness: only " + std::to_string(out.size()) + " qualifying primes below " +
                             std::to_string(prime_cap) + ", need " + std::to_string(m));
}

WitnessReport witness_build(const QuadPoly& f, int m, const WitnessOptions& opt) {
    WitnessReport rep(f);
    rep.m = m;
    rep.primes = witness_primes(f, m, opt.prime_cap);
    i64 Q = 1;
    for (i64 p : rep.primes) Q = checked_mul(Q, p);
    rep.Q_m = Q;
    const i64 f2Q = f.eval(checked_mul(2, Q));
    rep.N_m = checked_mul(checked_mul(2, Q), f2Q);
    if (rep.N_m > opt.max_N) {
        throw TooLarge("witness: N_m = " + std::to_string(rep.N_m) + " exceeds the cap " +
                       std::to_string(opt.max_N));
    }
    const i64 N = rep.N_m;
    rep.sum_length = N / 80;
    rep.crt_prediction = i64{1} << m;
    rep.crt_count = count_f_congruent(f, 1, Q, Q + 1, 2 * Q);
    for (i64 q = Q + 1; q <= 2 * Q; ++q) {
        if (mod_floor(f.eval(q), Q) == 1 % Q) ++rep.scan_count;
    }

    // |a/f - 1/Q| <= 10/N  <=>  |a Q N - f N| <= 10 f Q
    const Rational centre(1, Q);
    const Rational radius(10, N);
    rep.window_ok = true;
    for (i64 q = Q + 1; q <= 2 * Q; ++q) {
        const i64 fq = f.eval(q);
        const i128 QN = static_cast<i128>(Q) * N;
        const i128 lo_num = static_cast<i128>(fq) * N - static_cast<i128>(10) * fq * Q;
        const i128 hi_num = static_cast<i128>(fq) * N + static_cast<i128>(10) * fq * Q;
        i128 lo = lo_num >= 0 ? (lo_num + QN - 1) / QN : -((-lo_num) / QN);
        i128 hi = hi_num / QN;
        lo = std::max<i128>(lo, 1);
        hi = std::min<i128>(hi, fq);
        for (i128 a = lo; a <= hi; ++a) {
            const i64 ai = static_cast<i64>(a);
            if (gcd(ai, fq) != 1) continue;
            ClusterPoint cp{q, ai, Rational(ai, fq), 0.0};
            if ((cp.alpha - centre).abs() > radius) rep.window_ok = false;
            rep.cluster.push_back(cp);
        }
    }

    rep.min_term = rep.cluster.empty() ? 0.0 : std::numeric_limits<double>::infinity();
    for (auto& cp : rep.cluster) {
        cp.term = std::norm(dirichlet_kernel(cp.alpha - centre, rep.sum_length));
        rep.mass += cp.term;
        rep.min_term = std::min(rep.min_term, cp.term);
    }
    const double Nd = static_cast<double>(N);
    rep.xi_estimate = rep.mass / (static_cast<double>(rep.crt_prediction) * Nd * Nd);

    const std::size_t n = rep.cluster.size();
    const std::size_t take = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(opt.samples, 0)));
    rep.samples_ok = true;
    for (std::size_t s = 0; s < take; ++s) {
        const auto& cp = rep.cluster[s * n / take];
        KernelSample ks;
        ks.alpha = cp.alpha;
        const Rational x = cp.alpha - centre;
        ks.closed = dirichlet_kernel(x, rep.sum_length);
        ks.direct = dirichlet_kernel_direct(x, rep.sum_length);
        const double diff = std::abs(ks.closed - ks.direct);
        const double mag = std::abs(ks.direct);
        ks.rel_error = mag > 0.0 ? diff / mag : diff;
        rep.max_sample_error = std::max(rep.max_sample_error, ks.rel_error);
        if (!(ks.rel_error <= opt.sample_tol)) rep.samples_ok = false;
        rep.samples.push_back(ks);
    }

    rep.size_ok = static_cast<i64>(rep.cluster.size()) >= rep.crt_prediction;
    rep.crt_ok = rep.crt_count == rep.crt_prediction && rep.scan_count == rep.crt_count;
    rep.mass_ok = !rep.cluster.empty() &&
                  rep.mass >= static_cast<double>(rep.crt_prediction) * rep.min_term * (1.0 - 1e-12);
    rep.pass = rep.size_ok && rep.crt_ok && rep.window_ok && rep.mass_ok && rep.samples_ok;
    return rep;
}

PhiMean phi_mean_ratio(const QuadPoly& f, i64 Q) {
    if (Q < 1) throw InvalidArgument("phi_mean_ratio: Q must be >= 1");
    PhiMean out;
    for (i64 q = 1; q <= Q; ++q) out.sum = checked_add(out.sum, phi(f.eval(q)));
    out.ratio = static_cast<double>(out.sum) / (static_cast<double>(Q) * static_cast<double>(f.eval(Q)));
    return out;
}

} // namespace polysieve

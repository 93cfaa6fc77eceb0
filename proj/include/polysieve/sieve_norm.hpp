#pragma once

// The sieve constant N_f(Q, N), the report comparing it with the classical
// and conjectured majorants, and the explicit lower-bound witness built from
// clusters of fractions a/f(q) near 1/Q_m.

#include <optional>
#include <vector>

#include "polysieve/farey.hpp"
#include "polysieve/gram.hpp"
#include "polysieve/quadpoly.hpp"

namespace polysieve {

struct BoundsOptions {
    std::vector<double> eps{0.0, 0.05, 0.1};
    NormOptions norm;
    GramOptions gram;
    double check_tol = 1e-6;         // relative slack on the pass flags
    std::size_t dense_max_side = 64; // dense cross-check up to this side
    bool spacing_blocks = true;      // per-block K_delta at delta = 1/N
};

struct EpsBounds {
    double eps = 0.0;
    double theorem1 = 0.0;    // f(Q)^eps (Q f(Q) + N + min(N sqrt Q, f(Q) sqrt N))
    double conjectural = 0.0; // f(Q)^eps (Q f(Q) + N)
};

struct BlockSpacing {
    int j = 0;             // window (A 2^j, A 2^(j+1)], i.e. M = 2^(j/2)
    IntRange block;
    double M = 0.0;
    i64 fractions = 0;
    i64 k_delta = 0;       // exact, line metric, delta = 1/N
    double trivial = 0.0;  // min(A M^3 delta + M, A^2 M^4 delta + 1)
};

struct BoundsReport {
    explicit BoundsReport(const QuadPoly& poly) : f(poly) {}

    QuadPoly f;
    i64 Q = 0;
    i64 N = 0;
    i64 fQ = 0;

    double norm = 0.0;
    double residual = 0.0;
    int matvecs = 0;
    NormMethod method = NormMethod::lanczos;
    Basis basis = Basis::farey;
    std::size_t side = 0;
    std::optional<double> dense_norm;

    double trivial_q_arm = 0.0;       // Q f(Q) + Q N
    double trivial_spacing_arm = 0.0; // f(Q)^2 + N
    double trivial_bound = 0.0;       // min of the two
    std::vector<EpsBounds> bounds;

    i64 phi_sum = 0;
    i64 fraction_count = 0;
    double lower_bound = 0.0; // max(N, phi_sum)

    HypothesisCheck hypothesis;
    std::vector<BlockSpacing> blocks;

    bool lower_ok = false;
    bool upper_ok = false;   // norm <= f(Q)^2 + N
    bool trivial_ok = false; // norm <= trivial_bound
    bool dense_ok = true;
    bool pass = false;
};

BoundsReport bounds_report(const QuadPoly& f, i64 Q, i64 N, const BoundsOptions& opt = {});

// N_f(Q, N) alone, in the requested basis (or the smaller one).
NormResult sieve_norm(const QuadPoly& f, i64 Q, i64 N, const GramOptions& gram = {},
                      const NormOptions& norm = {});

struct WitnessOptions {
    i64 max_N = 100'000'000; // desk-scale cap on N_m
    i64 prime_cap = 1'000'000;
    int samples = 10;        // direct-sum cross-checks
    double sample_tol = 1e-9;
};

struct ClusterPoint {
    i64 q = 0;
    i64 a = 0;
    Rational alpha;   // a / f(q)
    double term = 0.0; // |sum_{n <= L} e(n (alpha - 1/Q_m))|^2
};

struct KernelSample {
    Rational alpha;
    Complex closed;
    Complex direct;
    double rel_error = 0.0;
};

struct WitnessReport {
    explicit WitnessReport(const QuadPoly& poly) : f(poly) {}

    QuadPoly f;
    int m = 0;
    std::vector<i64> primes;
    i64 Q_m = 0;
    i64 N_m = 0;
    i64 sum_length = 0; // floor(N_m / 80)

    std::vector<ClusterPoint> cluster;
    i64 crt_prediction = 0; // 2^m
    i64 crt_count = 0;      // count_f_congruent(f, 1, Q_m, (Q_m, 2 Q_m])
    i64 scan_count = 0;     // same, by direct scan

    double mass = 0.0;
    double xi_estimate = 0.0; // mass / (2^m N_m^2)
    double min_term = 0.0;

    std::vector<KernelSample> samples;
    double max_sample_error = 0.0;

    bool size_ok = false;
    bool crt_ok = false;
    bool window_ok = false;
    bool mass_ok = false;
    bool samples_ok = false;
    bool pass = false;
};

// Primes p, taken in increasing order, with p odd, p not dividing A and the
// discriminant of f - 1 a nonzero square mod p.
std::vector<i64> witness_primes(const QuadPoly& f, int m, i64 prime_cap = 1'000'000);

WitnessReport witness_build(const QuadPoly& f, int m, const WitnessOptions& opt = {});

struct PhiMean {
    i64 sum = 0;
    double ratio = 0.0; // sum / (Q f(Q))
};

PhiMean phi_mean_ratio(const QuadPoly& f, i64 Q);

} // namespace polysieve

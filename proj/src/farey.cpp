#include "polysieve/farey.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace polysieve {

Metric parse_metric(std::string_view name) {
    if (name == "line") return Metric::line;
    if (name == "circle") return Metric::circle;
    throw InvalidArgument("unknown metric '" + std::string(name) + "' (expected line or circle)");
}

std::string_view to_string(Metric m) { return m == Metric::line ? "line" : "circle"; }

FareyWindow FareyWindow::build(const QuadPoly& f, i64 q_lo, i64 q_hi, std::size_t max_size) {
    if (q_lo < 1 || q_lo > q_hi) throw InvalidArgument("build_farey: need 1 <= q_lo <= q_hi");
    FareyWindow w(f, IntRange{q_lo, q_hi});

    const i64 count = q_hi - q_lo + 1;
    std::vector<i64> moduli(static_cast<std::size_t>(count));
    i128 budget = 0;
    for (i64 i = 0; i < count; ++i) {
        moduli[static_cast<std::size_t>(i)] = f.eval(q_lo + i);
        budget += moduli[static_cast<std::size_t>(i)];
        if (budget > static_cast<i128>(max_size) * 8) {
            throw TooLarge("build_farey: window with q in [" + std::to_string(q_lo) + ", " +
                           std::to_string(q_hi) + "] exceeds the size cap");
        }
    }

    std::vector<std::vector<Rational>> per_q(moduli.size());
#pragma omp parallel for schedule(dynamic)
    for (i64 i = 0; i < count; ++i) {
        const i64 m = moduli[static_cast<std::size_t>(i)];
        auto& out = per_q[static_cast<std::size_t>(i)];
        for (i64 a = 1; a <= m; ++a) {
            if (gcd(a, m) == 1) out.push_back(Rational(a, m));
        }
    }

    std::size_t total = 0;
    for (const auto& v : per_q) total += v.size();
    if (total > max_size) throw TooLarge("build_farey: " + std::to_string(total) + " fractions exceed cap");
    w.fractions_.reserve(total);
    for (const auto& v : per_q) w.fractions_.insert(w.fractions_.end(), v.begin(), v.end());
    w.phi_total_ = static_cast<i64>(total);

    std::sort(w.fractions_.begin(), w.fractions_.end());
    w.fractions_.erase(std::unique(w.fractions_.begin(), w.fractions_.end()), w.fractions_.end());

    w.values_.reserve(w.fractions_.size());
    for (const auto& x : w.fractions_) w.values_.push_back(x.to_double());
    return w;
}

FareyWindow build_farey(const QuadPoly& f, i64 q_lo, i64 q_hi) { return FareyWindow::build(f, q_lo, q_hi); }

namespace {

template <class T>
i64 count_in(std::span<const T> pts, const T& lo, const T& hi) {
    const auto first = std::lower_bound(pts.begin(), pts.end(), lo);
    const auto last = std::upper_bound(pts.begin(), pts.end(), hi);
    return last > first ? static_cast<i64>(last - first) : 0;
}

// Two-pointer sweep over ascending values: max #{j : x_i <= x_j <= x_i + width}.
template <class T>
i64 sweep(std::span<const T> pts, const T& width) {
    i64 best = 0;
    std::size_t j = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (j < i) j = i;
        while (j < pts.size() && pts[j] <= pts[i] + width) ++j;
        best = std::max<i64>(best, static_cast<i64>(j - i));
    }
    return best;
}

} // namespace

i64 p_delta(std::span<const Rational> points, const Rational& alpha, const Rational& delta, Metric metric) {
    if (delta < Rational(0)) throw InvalidArgument("p_delta: delta must be >= 0");
    if (metric == Metric::line) return count_in(points, alpha - delta, alpha + delta);
    if (delta * Rational(2) >= Rational(1)) return static_cast<i64>(points.size());
    const Rational a = alpha.frac();
    i64 total = 0;
    for (i64 k = -1; k <= 1; ++k) total += count_in(points, a - delta + Rational(k), a + delta + Rational(k));
    return total;
}

i64 p_delta(std::span<const double> points, double alpha, double delta, Metric metric) {
    if (!(delta >= 0.0)) throw InvalidArgument("p_delta: delta must be >= 0");
    if (metric == Metric::line) return count_in(points, alpha - delta, alpha + delta);
    if (2.0 * delta >= 1.0) return static_cast<i64>(points.size());
    const double a = alpha - std::floor(alpha);
    i64 total = 0;
    for (int k = -1; k <= 1; ++k) total += count_in(points, a - delta + k, a + delta + k);
    return total;
}

i64 k_delta(std::span<const Rational> points, const Rational& delta, Metric metric) {
    if (delta < Rational(0)) throw InvalidArgument("k_delta: delta must be >= 0");
    const Rational width = delta * Rational(2);
    if (metric == Metric::line) return sweep(points, width);
    if (width >= Rational(1)) return static_cast<i64>(points.size());
    std::vector<Rational> wrapped(points.begin(), points.end());
    for (const auto& x : points) wrapped.push_back(x + Rational(1));
    return std::min<i64>(sweep(std::span<const Rational>(wrapped), width), static_cast<i64>(points.size()));
}

i64 k_delta(std::span<const double> points, double delta, Metric metric) {
    if (!(delta >= 0.0)) throw InvalidArgument("k_delta: delta must be >= 0");
    const double width = 2.0 * delta;
    if (metric == Metric::line) return sweep(points, width);
    if (width >= 1.0) return static_cast<i64>(points.size());
    std::vector<double> wrapped(points.begin(), points.end());
    for (double x : points) wrapped.push_back(x + 1.0);
    return std::min<i64>(sweep(std::span<const double>(wrapped), width), static_cast<i64>(points.size()));
}

namespace {

void check_approx_args(i64 R, i64 A) {
    if (R < 1) throw InvalidArgument("constrained_approx: R must be >= 1");
    if (A < 1) throw InvalidArgument("constrained_approx: A must be >= 1");
}

double dist_to_int(double x) { return std::fabs(x - std::nearbyint(x)); }

} // namespace

ApproxResult constrained_approx(double alpha, i64 R, i64 A) {
    check_approx_args(R, A);
    if (!std::isfinite(alpha)) throw InvalidArgument("constrained_approx: alpha must be finite");
    ApproxResult best{0, 0, 0.0, alpha};
    const i64 twoA = checked_mul(2, A);
    for (i64 r = 1; r <= R; ++r) {
        if (gcd(r, twoA) != 1) continue;
        const double ra = static_cast<double>(r) * alpha;
        const double e = dist_to_int(ra);
        // errors within a few ulps of r alpha count as ties
        const double slack = 8.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::fabs(ra));
        if (best.r == 0 || e < best.err - slack) {
            best.r = r;
            best.err = e;
        }
    }
    best.b = static_cast<i64>(std::nearbyint(static_cast<double>(best.r) * alpha));
    const i64 g = gcd(best.b, best.r);
    best.b /= g;
    best.r /= g;
    return best;
}

ApproxResult constrained_approx(const Rational& alpha, i64 R, i64 A) {
    check_approx_args(R, A);
    const i64 twoA = checked_mul(2, A);
    i64 best_r = 0;
    Rational best_err;
    for (i64 r = 1; r <= R; ++r) {
        if (gcd(r, twoA) != 1) continue;
        const Rational e = polysieve::dist_to_int(alpha * Rational(r));
        if (best_r == 0 || e < best_err) {
            best_r = r;
            best_err = e;
        }
    }
    const Rational ra = alpha * Rational(best_r);
    // nearest integer; halves round down, matching the exact tie in ||.||
    const Rational fr = ra.frac();
    i64 b = ra.floor() + (fr > Rational(1, 2) ? 1 : 0);
    i64 r = best_r;
    const i64 g = gcd(b, r);
    return ApproxResult{b / g, r / g, best_err.to_double(), alpha.to_double()};
}

double estimate_tA(i64 A, i64 R, std::span<const double> probes) {
    if (probes.empty()) throw InvalidArgument("estimate_tA: probes must be non-empty");
    double worst = 0.0;
    for (double a : probes) worst = std::max(worst, static_cast<double>(R) * constrained_approx(a, R, A).err);
    return worst;
}

ZSet z_set(i64 b, i64 r, double delta, i64 A, double tA) {
    if (r < 1) throw InvalidArgument("z_set: r must be >= 1");
    if (A < 1) throw InvalidArgument("z_set: A must be >= 1");
    if (!(delta > 0.0 && delta < 1.0)) throw InvalidArgument("z_set: delta must lie in (0, 1)");
    if (!(tA > 0.0) || !std::isfinite(tA)) throw InvalidArgument("z_set: tA must be positive");
    if (gcd(b, r) != 1) throw DomainError("z_set: b/r must be reduced");
    if (gcd(r, checked_mul(2, A)) != 1) throw DomainError("z_set: r must be prime to 2A");

    ZSet z;
    z.p_r = smallest_prime_not_dividing(r);
    z.t_rA = smallest_prime_at_least_not_dividing(static_cast<i64>(std::ceil(tA)), r, 1'000'000);
    z.b_inverse = r == 1 ? 0 : mod_inverse(b, r);

    const double p = static_cast<double>(z.p_r);
    const double t = static_cast<double>(z.t_rA);
    const double rr = static_cast<double>(r);
    const double kappa = p / (rr * std::sqrt(delta));
    z.k_min = static_cast<i64>(std::floor(kappa)) + 1;

    const i64 pt = checked_mul(z.p_r, z.t_rA);
    const i64 r2 = checked_mul(r, r);
    // value <= 1  <=>  k >= pt / r^2 ; value >= delta t / p  <=>  k <= p^2 / (delta r^2)
    const i64 k_lo = std::max(z.k_min, (pt + r2 - 1) / r2);
    const double k_hi_real = p * p / (delta * rr * rr);
    if (k_hi_real > 1e8) throw TooLarge("z_set: delta too small, more than 1e8 candidate k");
    const i64 k_hi = static_cast<i64>(std::floor(k_hi_real));
    const double lower = delta * t / p;

    const i64 shift = mul_mod(pt, z.b_inverse, A == 1 ? 1 : A);
    for (i64 k = k_hi; k >= k_lo; --k) {
        const i64 denom = checked_mul(k, r2);
        const Rational v(pt, denom);
        if (v.to_double() < lower) continue; // guards the floating bound on k_hi
        if (A > 1 && gcd(A, checked_add(shift, mul_mod(r, k, A))) != 1) continue;
        z.points.push_back({k, v});
    }
    return z;
}

} // namespace polysieve

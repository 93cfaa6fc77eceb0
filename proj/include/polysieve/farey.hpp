#pragma once

// Farey fractions a/f(q) with polynomial denominators, the spacing
// functionals P_delta / K_delta, constrained Dirichlet approximation and the
// rational point sets Z_{b/r} used to localise a real alpha near b/r.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "polysieve/quadpoly.hpp"
#include "polysieve/rational.hpp"

namespace polysieve {

enum class Metric {
    line,   // |alpha - alpha'|
    circle, // ||alpha - alpha'||, distance modulo 1
};

Metric parse_metric(std::string_view name);
std::string_view to_string(Metric m);

// Reduced fractions a/f(q), 1 <= a <= f(q), (a, f(q)) = 1, q in q_range,
// sorted strictly ascending. Immutable after build().
class FareyWindow {
public:
    static constexpr std::size_t kDefaultMaxSize = 20'000'000;

    static FareyWindow build(const QuadPoly& f, i64 q_lo, i64 q_hi,
                             std::size_t max_size = kDefaultMaxSize);

    const QuadPoly& poly() const { return poly_; }
    IntRange q_range() const { return range_; }
    std::span<const Rational> fractions() const { return fractions_; }
    std::span<const double> values() const { return values_; }
    std::size_t size() const { return fractions_.size(); }
    // Sum of phi(f(q)) over the range, before deduplication.
    i64 phi_total() const { return phi_total_; }

private:
    FareyWindow(QuadPoly f, IntRange r) : poly_(f), range_(r) {}

    QuadPoly poly_;
    IntRange range_;
    std::vector<Rational> fractions_;
    std::vector<double> values_;
    i64 phi_total_ = 0;
};

FareyWindow build_farey(const QuadPoly& f, i64 q_lo, i64 q_hi);

// P_delta(alpha): number of points within closed distance delta of alpha.
// The exact overloads take sorted rationals; the real overloads take the
// sorted double values.
i64 p_delta(std::span<const Rational> points, const Rational& alpha, const Rational& delta,
            Metric metric = Metric::line);
i64 p_delta(std::span<const double> points, double alpha, double delta, Metric metric = Metric::line);

// K_delta = sup over real alpha of P_delta(alpha), by a two-pointer sweep:
// the supremum is attained by a closed window of width 2 delta whose left
// edge sits on a point.
i64 k_delta(std::span<const Rational> points, const Rational& delta, Metric metric = Metric::line);
i64 k_delta(std::span<const double> points, double delta, Metric metric = Metric::line);

inline i64 p_delta(const FareyWindow& w, const Rational& alpha, const Rational& delta,
                   Metric metric = Metric::line) {
    return p_delta(w.fractions(), alpha, delta, metric);
}
inline i64 p_delta(const FareyWindow& w, double alpha, double delta, Metric metric = Metric::line) {
    return p_delta(w.values(), alpha, delta, metric);
}
inline i64 k_delta(const FareyWindow& w, const Rational& delta, Metric metric = Metric::line) {
    return k_delta(w.fractions(), delta, metric);
}
inline i64 k_delta(const FareyWindow& w, double delta, Metric metric = Metric::line) {
    return k_delta(w.values(), delta, metric);
}

struct ApproxResult {
    i64 b = 0;
    i64 r = 1;
    double err = 0.0;   // ||r alpha||
    double alpha = 0.0;
};

// Among r <= R with gcd(r, 2A) = 1, the r minimising ||r alpha|| (ties go to
// the smallest r); b is the integer nearest r alpha.
ApproxResult constrained_approx(double alpha, i64 R, i64 A);
// Exact variant: all comparisons on rationals.
ApproxResult constrained_approx(const Rational& alpha, i64 R, i64 A);

// max over probes of R * ||r* alpha||, r* the constrained_approx winner.
double estimate_tA(i64 A, i64 R, std::span<const double> probes);

struct ZPoint {
    i64 k = 0;
    Rational value; // p_r t_rA / (k r^2)
};

struct ZSet {
    i64 p_r = 0;       // least prime not dividing r
    i64 t_rA = 0;      // least prime >= tA not dividing r
    i64 b_inverse = 0; // b^-1 mod r, 0 when r = 1
    i64 k_min = 0;     // floor(kappa) + 1, kappa = p_r / (r sqrt(delta))
    std::vector<ZPoint> points; // ascending by value
};

// The set {p_r t_rA / (k r^2) : k >= floor(kappa)+1, (A, p_r t_rA b^-1 + r k) = 1}
// intersected with [delta t_rA / p_r, 1].
ZSet z_set(i64 b, i64 r, double delta, i64 A, double tA);

} // namespace polysieve

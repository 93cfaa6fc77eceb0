#pragma once

// Exponential sums: quadratic Gauss sums (direct and closed form), the Weyl
// differencing inequality, and the geometric kernel sum_{n<=N} e(n x).
//
// Closed form used by gauss_closed, for odd h and (a, h) = 1:
//
//   sum_{m=1}^{h} e((a m^2 + b m)/h) = e(-(4a)^{-1} b^2 / h) * (a|h) * eps_h * sqrt(h)
//
// with (4a)^{-1} the inverse modulo h, (a|h) the Jacobi symbol and
// eps_h = 1 for h = 1 (mod 4), i for h = 3 (mod 4). The literal phase
// e(-a^{-1} b^2 / (4h)) and the variant without (a|h) both disagree with
// direct summation; they are kept as GaussReading alternatives so the tests
// can show that.

#include <complex>
#include <cstdint>

#include "polysieve/arith.hpp"
#include "polysieve/rational.hpp"

namespace polysieve {

using Complex = std::complex<double>;

// sin(pi n/d) and cos(pi n/d) with exact integer argument reduction.
double sinpi_frac(i64 n, i64 d);
double cospi_frac(i64 n, i64 d);

// e(n/d) = exp(2 pi i n/d), reduced exactly modulo 1 before evaluation.
Complex e_frac(i64 n, i64 d);
inline Complex e_frac(const Rational& x) { return e_frac(x.num(), x.den()); }
// e(x) for real x.
Complex e_real(double x);

Complex gauss_direct(i64 a, i64 b, i64 h);

enum class GaussReading {
    inverse_mod_h, // e(-(4a)^{-1} b^2 / h), the correct one
    literal_4h,    // e(-a^{-1} b^2 / (4h))
};

Complex gauss_closed(i64 a, i64 b, i64 h);
Complex gauss_closed_variant(i64 a, i64 b, i64 h, GaussReading reading, bool jacobi_factor);

struct WeylCheck {
    double lhs = 0.0;   // |sum_{n<=N} e(a n^2 + l n + c)|^2
    double rhs = 0.0;   // N + sum_{1<=l<N} min(N, ||2 a l||^-1)
    double ratio = 0.0;
};

WeylCheck weyl_check(double a_real, double linear, double constant, i64 N);

// sum_{n=1}^{N} e(n x) via the geometric closed form.
Complex dirichlet_kernel(double x, i64 N);
Complex dirichlet_kernel(const Rational& x, i64 N);
// Term-by-term summation with exact phase reduction (reference).
Complex dirichlet_kernel_direct(const Rational& x, i64 N);

} // namespace polysieve

#include "polysieve/expsum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace polysieve {

namespace {

constexpr double kPi = std::numbers::pi;

// sin(pi n/d), n reduced exactly modulo 2d, folded into [0, 1/2].
double sinpi_wide(i128 n, i128 d) {
    i128 r = n % (2 * d);
    if (r < 0) r += 2 * d;
    double sign = 1.0;
    if (r >= d) {
        r -= d;
        sign = -1.0;
    }
    if (2 * r > d) r = d - r;
    return sign * std::sin(kPi * static_cast<double>(r) / static_cast<double>(d));
}

double cospi_wide(i128 n, i128 d) { return sinpi_wide(2 * n + d, 2 * d); }

Complex e_wide(i128 n, i128 d) {
    const i128 r = n % d;
    return {cospi_wide(2 * r, d), sinpi_wide(2 * r, d)};
}

void require_positive_den(i64 d) {
    if (d <= 0) throw InvalidArgument("exponential: denominator must be positive");
}

} // namespace

double sinpi_frac(i64 n, i64 d) {
    require_positive_den(d);
    return sinpi_wide(n, d);
}

double cospi_frac(i64 n, i64 d) {
    require_positive_den(d);
    return cospi_wide(n, d);
}

Complex e_frac(i64 n, i64 d) {
    require_positive_den(d);
    return e_wide(n, d);
}

Complex e_real(double x) {
    const double r = x - std::floor(x);
    const double t = 2.0 * kPi * r;
    return {std::cos(t), std::sin(t)};
}

Complex gauss_direct(i64 a, i64 b, i64 h) {
    if (h < 1) throw InvalidArgument("gauss_direct: h must be >= 1");
    const i64 ar = mod_floor(a, h);
    const i64 br = mod_floor(b, h);
    Complex s{0.0, 0.0};
    for (i64 m = 1; m <= h; ++m) {
        const i64 mm = m % h;
        const i64 phase = mod_floor(static_cast<i128>(ar) * mm % h * mm + static_cast<i128>(br) * mm, h);
        s += e_frac(phase, h);
    }
    return s;
}

Complex gauss_closed_variant(i64 a, i64 b, i64 h, GaussReading reading, bool jacobi_factor) {
    if (h < 1 || h % 2 == 0) {
        throw DomainError("gauss_closed: h must be odd and positive, got " + std::to_string(h));
    }
    if (gcd(a, h) != 1) {
        throw DomainError("gauss_closed: a = " + std::to_string(a) + " is not prime to h = " +
                          std::to_string(h));
    }
    if (h == 1) return {1.0, 0.0};

    Complex phase;
    if (reading == GaussReading::inverse_mod_h) {
        const i64 inv4a = mod_inverse(mul_mod(4, a, h), h);
        const i64 num = mod_floor(-static_cast<i128>(inv4a) * mul_mod(b, b, h), h);
        phase = e_frac(num, h);
    } else {
        const i64 inva = mod_inverse(a, h);
        const i64 den = checked_mul(4, h);
        const i64 num = mod_floor(-static_cast<i128>(inva) * b % den * b, den);
        phase = e_frac(num, den);
    }
    const Complex eps = (h % 4 == 1) ? Complex{1.0, 0.0} : Complex{0.0, 1.0};
    const double j = jacobi_factor ? static_cast<double>(jacobi(a, h)) : 1.0;
    return phase * eps * (j * std::sqrt(static_cast<double>(h)));
}

Complex gauss_closed(i64 a, i64 b, i64 h) {
    return gauss_closed_variant(a, b, h, GaussReading::inverse_mod_h, true);
}

WeylCheck weyl_check(double a_real, double linear, double constant, i64 N) {
    if (N < 1) throw InvalidArgument("weyl_check: N must be >= 1");
    using ld = long double;
    const ld two_pi = 2.0L * std::numbers::pi_v<long double>;
    ld re = 0.0L, im = 0.0L;
    for (i64 n = 1; n <= N; ++n) {
        const ld x = static_cast<ld>(n);
        ld phi = (static_cast<ld>(a_real) * x + static_cast<ld>(linear)) * x + static_cast<ld>(constant);
        phi -= std::floor(phi);
        re += std::cos(two_pi * phi);
        im += std::sin(two_pi * phi);
    }
    WeylCheck w;
    w.lhs = static_cast<double>(re * re + im * im);
    const ld cap = static_cast<ld>(N);
    ld rhs = cap;
    for (i64 l = 1; l < N; ++l) {
        const ld t = 2.0L * static_cast<ld>(a_real) * static_cast<ld>(l);
        const ld d = std::fabs(t - std::nearbyint(t));
        rhs += (d == 0.0L) ? cap : std::min(cap, 1.0L / d);
    }
    w.rhs = static_cast<double>(rhs);
    w.ratio = w.lhs / w.rhs;
    return w;
}

Complex dirichlet_kernel(const Rational& x, i64 N) {
    if (N < 1) throw InvalidArgument("dirichlet_kernel: N must be >= 1");
    const Rational f = x.frac();
    const i128 p = f.num();
    const i128 q = f.den();
    if (p == 0) return {static_cast<double>(N), 0.0};
    const double ratio = sinpi_wide(static_cast<i128>(N) * p, q) / sinpi_wide(p, q);
    return e_wide(static_cast<i128>(N + 1) * p, 2 * q) * ratio;
}

Complex dirichlet_kernel(double x, i64 N) {
    if (N < 1) throw InvalidArgument("dirichlet_kernel: N must be >= 1");
    if (!std::isfinite(x)) throw InvalidArgument("dirichlet_kernel: x must be finite");
    const double xr = x - std::nearbyint(x);
    if (xr == 0.0) return {static_cast<double>(N), 0.0};

    // Split N*xr and (N+1)*xr into hi + lo so the mod-2 reduction is exact.
    auto reduced = [xr](double m) {
        const double hi = m * xr;
        const double lo = std::fma(m, xr, -hi);
        return std::fmod(hi, 2.0) + lo;
    };
    const double dn = static_cast<double>(N);
    const double ratio = std::sin(kPi * reduced(dn)) / std::sin(kPi * xr);
    const double theta = kPi * reduced(dn + 1.0);
    return Complex{std::cos(theta), std::sin(theta)} * ratio;
}

Complex dirichlet_kernel_direct(const Rational& x, i64 N) {
    if (N < 1) throw InvalidArgument("dirichlet_kernel_direct: N must be >= 1");
    const Rational f = x.frac();
    const i64 p = f.num();
    const i64 q = f.den();
    long double re = 0.0L, im = 0.0L;
    i64 phase = 0; // n p mod q, updated incrementally
    for (i64 n = 1; n <= N; ++n) {
        phase += p;
        if (phase >= q) phase -= q;
        const Complex t = e_frac(phase, q);
        re += t.real();
        im += t.imag();
    }
    return {static_cast<double>(re), static_cast<double>(im)};
}

} // namespace polysieve

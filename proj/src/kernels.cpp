#include "polysieve/kernels.hpp"

#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace polysieve::kernels {

namespace {

void check_square(std::span<const Complex> matrix, std::size_t n, std::span<const Complex> x,
                  std::span<Complex> y) {
    if (matrix.size() != n * n || x.size() != n || y.size() != n) {
        throw InvalidArgument("matvec: dimension mismatch");
    }
}

Complex row_dot(const Complex* row, const Complex* x, std::size_t n) {
    double re = 0.0, im = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double ar = row[j].real(), ai = row[j].imag();
        const double br = x[j].real(), bi = x[j].imag();
        re += ar * br - ai * bi;
        im += ar * bi + ai * br;
    }
    return {re, im};
}

Complex farey_entry(std::span<const Rational> pts, std::size_t i, std::size_t j, i64 N) {
    return dirichlet_kernel(pts[i] - pts[j], N);
}

// sum_alpha e(alpha d) for a non-negative lag d.
Complex lag_sum(std::span<const Rational> pts, i64 d) {
    double re = 0.0, im = 0.0;
    for (const auto& a : pts) {
        const i64 num = mod_floor(static_cast<i128>(a.num()) * d, a.den());
        const Complex t = e_frac(num, a.den());
        re += t.real();
        im += t.imag();
    }
    return {re, im};
}

void fill_toeplitz(std::span<const Complex> lags, std::size_t n, std::span<Complex> out, bool par) {
    auto row = [&](std::size_t r) {
        for (std::size_t c = 0; c < n; ++c) {
            out[r * n + c] = c >= r ? lags[c - r] : std::conj(lags[r - c]);
        }
    };
    if (par) {
#pragma omp parallel for schedule(static)
        for (std::size_t r = 0; r < n; ++r) row(r);
    } else {
        for (std::size_t r = 0; r < n; ++r) row(r);
    }
}

void check_gram(std::size_t side, std::span<Complex> out) {
    if (out.size() != side * side) throw InvalidArgument("gram assembly: output has wrong size");
}

} // namespace

namespace serial {

void matvec(std::span<const Complex> matrix, std::size_t n, std::span<const Complex> x, std::span<Complex> y) {
    check_square(matrix, n, x, y);
    for (std::size_t i = 0; i < n; ++i) y[i] = row_dot(matrix.data() + i * n, x.data(), n);
}

void assemble_farey_gram(std::span<const Rational> points, i64 N, std::span<Complex> out) {
    const std::size_t n = points.size();
    check_gram(n, out);
    for (std::size_t i = 0; i < n; ++i) {
        out[i * n + i] = Complex(static_cast<double>(N), 0.0);
        for (std::size_t j = i + 1; j < n; ++j) {
            const Complex g = farey_entry(points, i, j, N);
            out[i * n + j] = g;
            out[j * n + i] = std::conj(g);
        }
    }
}

void assemble_time_gram(std::span<const Rational> points, i64 N, std::span<Complex> out) {
    const std::size_t n = static_cast<std::size_t>(N);
    check_gram(n, out);
    std::vector<Complex> lags(n);
    for (std::size_t d = 0; d < n; ++d) lags[d] = lag_sum(points, static_cast<i64>(d));
    fill_toeplitz(lags, n, out, false);
}

} // namespace serial

namespace parallel {

void matvec(std::span<const Complex> matrix, std::size_t n, std::span<const Complex> x, std::span<Complex> y) {
    check_square(matrix, n, x, y);
    const Complex* m = matrix.data();
    const Complex* xv = x.data();
    Complex* yv = y.data();
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < n; ++i) yv[i] = row_dot(m + i * n, xv, n);
}

void assemble_farey_gram(std::span<const Rational> points, i64 N, std::span<Complex> out) {
    const std::size_t n = points.size();
    check_gram(n, out);
    // Each thread writes the upper row segment and its mirrored column.
#pragma omp parallel for schedule(dynamic, 8)
    for (std::size_t i = 0; i < n; ++i) {
        out[i * n + i] = Complex(static_cast<double>(N), 0.0);
        for (std::size_t j = i + 1; j < n; ++j) {
            const Complex g = farey_entry(points, i, j, N);
            out[i * n + j] = g;
            out[j * n + i] = std::conj(g);
        }
    }
}

void assemble_time_gram(std::span<const Rational> points, i64 N, std::span<Complex> out) {
    const std::size_t n = static_cast<std::size_t>(N);
    check_gram(n, out);
    std::vector<Complex> lags(n);
#pragma omp parallel for schedule(dynamic, 16)
    for (std::size_t d = 0; d < n; ++d) lags[d] = lag_sum(points, static_cast<i64>(d));
    fill_toeplitz(lags, n, out, true);
}

} // namespace parallel

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

void set_threads(int n) {
#ifdef _OPENMP
    if (n >= 1) omp_set_num_threads(n);
#else
    (void)n;
#endif
}

} // namespace polysieve::kernels

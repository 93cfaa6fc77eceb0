#include "polysieve/gram.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "polysieve/kernels.hpp"

namespace polysieve {

std::string_view to_string(Basis b) { return b == Basis::farey ? "farey" : "time"; }
std::string_view to_string(NormMethod m) { return m == NormMethod::lanczos ? "lanczos" : "power"; }

GramOperator::GramOperator(Basis basis, std::size_t side, std::vector<Complex> entries)
    : basis_(basis), side_(side), entries_(std::move(entries)) {
    if (entries_.size() != side_ * side_) throw InvalidArgument("GramOperator: entries do not form a square");
}

void GramOperator::apply(std::span<const Complex> x, std::span<Complex> y, bool parallel) const {
    if (parallel) kernels::parallel::matvec(entries_, side_, x, y);
    else kernels::serial::matvec(entries_, side_, x, y);
}

double GramOperator::hermitian_defect() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < side_; ++i) {
        for (std::size_t j = i; j < side_; ++j) {
            worst = std::max(worst, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
        }
    }
    return worst;
}

GramOperator build_gram(std::span<const Rational> points, i64 N, const GramOptions& opt) {
    if (points.empty()) throw InvalidArgument("build_gram: empty set of fractions");
    if (N < 1) throw InvalidArgument("build_gram: N must be >= 1");
    const Basis basis = opt.basis.value_or(points.size() <= static_cast<std::size_t>(N) ? Basis::farey : Basis::time);
    const std::size_t side = basis == Basis::farey ? points.size() : static_cast<std::size_t>(N);
    if (side > opt.max_side) {
        throw TooLarge("build_gram: side " + std::to_string(side) + " exceeds the cap of " +
                       std::to_string(opt.max_side));
    }
    std::vector<Complex> entries(side * side);
    if (basis == Basis::farey) {
        if (opt.parallel) kernels::parallel::assemble_farey_gram(points, N, entries);
        else kernels::serial::assemble_farey_gram(points, N, entries);
    } else {
        if (opt.parallel) kernels::parallel::assemble_time_gram(points, N, entries);
        else kernels::serial::assemble_time_gram(points, N, entries);
    }
    return GramOperator(basis, side, std::move(entries));
}

std::vector<Complex> seeded_unit_vector(std::size_t n, unsigned long long seed) {
    auto next = [state = seed]() mutable {
        state += 0x9E3779B97F4A7C15ULL;
        unsigned long long z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        z ^= z >> 31;
        return static_cast<double>(z >> 11) * 0x1.0p-53 * 2.0 - 1.0;
    };
    std::vector<Complex> v(n);
    double norm2 = 0.0;
    for (auto& x : v) {
        const double re = next();
        const double im = next();
        x = {re, im};
        norm2 += re * re + im * im;
    }
    const double s = 1.0 / std::sqrt(norm2);
    for (auto& x : v) x *= s;
    return v;
}

namespace {

using Vec = std::vector<Complex>;

Complex inner(const Vec& a, const Vec& b) { // a^* b, fixed order
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
        im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
    }
    return {re, im};
}

double norm(const Vec& a) {
    double s = 0.0;
    for (const auto& x : a) s += std::norm(x);
    return std::sqrt(s);
}

void axpy(Complex s, const Vec& x, Vec& y) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += s * x[i];
}

void scale(Vec& x, double s) {
    for (auto& v : x) v *= s;
}

struct Ritz {
    double value;
    double residual;
};

// Rayleigh quotient and residual of a unit vector; w receives G v.
Ritz rayleigh(const GramOperator& g, const Vec& v, Vec& w, bool par) {
    g.apply(v, w, par);
    const double rho = inner(v, w).real();
    double r2 = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) r2 += std::norm(w[i] - rho * v[i]);
    return {rho, std::sqrt(r2)};
}

// --- symmetric tridiagonal helpers ------------------------------------------

int count_below(const std::vector<double>& d, const std::vector<double>& e, double x) {
    int c = 0;
    double q = d[0] - x;
    if (q < 0) ++c;
    for (std::size_t i = 1; i < d.size(); ++i) {
        if (q == 0.0) q = std::numeric_limits<double>::min();
        q = (d[i] - x) - e[i - 1] * e[i - 1] / q;
        if (q < 0) ++c;
    }
    return c;
}

double tridiag_top_eigenvalue(const std::vector<double>& d, const std::vector<double>& e) {
    const std::size_t k = d.size();
    double lo = std::numeric_limits<double>::max();
    double hi = std::numeric_limits<double>::lowest();
    for (std::size_t i = 0; i < k; ++i) {
        const double r = (i > 0 ? std::fabs(e[i - 1]) : 0.0) + (i + 1 < k ? std::fabs(e[i]) : 0.0);
        lo = std::min(lo, d[i] - r);
        hi = std::max(hi, d[i] + r);
    }
    const double span = std::max(std::fabs(lo), std::fabs(hi));
    hi += 1e-12 * span + std::numeric_limits<double>::min();
    for (int it = 0; it < 200 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * span; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (count_below(d, e, mid) == static_cast<int>(k)) hi = mid;
        else lo = mid;
    }
    return 0.5 * (lo + hi);
}

// Solves (T - shift) y = b by Gaussian elimination with partial pivoting
// (LAPACK gtsv layout); zero pivots are nudged so inverse iteration proceeds.
std::vector<double> tridiag_solve(const std::vector<double>& d0, const std::vector<double>& e, double shift,
                                  std::vector<double> b) {
    const std::size_t n = d0.size();
    std::vector<double> d(n), dl(e), du(e);
    for (std::size_t i = 0; i < n; ++i) d[i] = d0[i] - shift;
    dl.resize(n > 0 ? n - 1 : 0);
    du.resize(n > 0 ? n - 1 : 0);
    std::vector<double> du2(n > 1 ? n - 1 : 0, 0.0);
    const double tiny = 1e-300;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (std::fabs(d[i]) >= std::fabs(dl[i])) {
            if (d[i] == 0.0) d[i] = tiny;
            const double fact = dl[i] / d[i];
            d[i + 1] -= fact * du[i];
            b[i + 1] -= fact * b[i];
        } else {
            const double fact = d[i] / dl[i];
            d[i] = dl[i];
            const double temp = d[i + 1];
            d[i + 1] = du[i] - fact * temp;
            if (i + 2 < n) {
                du2[i] = du[i + 1];
                du[i + 1] = -fact * du2[i];
            }
            du[i] = temp;
            const double tb = b[i];
            b[i] = b[i + 1];
            b[i + 1] = tb - fact * b[i + 1];
        }
    }
    if (n == 0) return b;
    if (d[n - 1] == 0.0) d[n - 1] = tiny;
    b[n - 1] /= d[n - 1];
    if (n == 1) return b;
    b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
    for (std::size_t ii = n - 2; ii-- > 0;) {
        b[ii] = (b[ii] - du[ii] * b[ii + 1] - du2[ii] * b[ii + 2]) / d[ii];
    }
    return b;
}

std::vector<double> tridiag_eigenvector(const std::vector<double>& d, const std::vector<double>& e, double theta) {
    std::vector<double> y(d.size(), 1.0);
    for (int it = 0; it < 3; ++it) {
        y = tridiag_solve(d, e, theta, y);
        double s = 0.0;
        for (double v : y) s += v * v;
        s = std::sqrt(s);
        if (!(s > 0.0) || !std::isfinite(s)) {
            // fall back to a unit vector; the caller re-certifies anyway
            std::fill(y.begin(), y.end(), 0.0);
            y[0] = 1.0;
            break;
        }
        for (double& v : y) v /= s;
    }
    return y;
}

NormResult power_iteration(const GramOperator& g, const NormOptions& opt) {
    const std::size_t n = g.side();
    Vec v = seeded_unit_vector(n, opt.seed);
    Vec w(n);
    NormResult res;
    res.method = NormMethod::power;
    for (int it = 0; it < opt.max_iterations; ++it) {
        const Ritz r = rayleigh(g, v, w, opt.parallel);
        ++res.matvecs;
        if (r.residual <= opt.tol * r.value) {
            res.value = r.value;
            res.residual = r.residual;
            res.vector = std::move(v);
            return res;
        }
        const double nw = norm(w);
        if (!(nw > 0.0)) break;
        v = w;
        scale(v, 1.0 / nw);
    }
    throw NumericalFailure("power iteration did not reach residual tolerance " + std::to_string(opt.tol) +
                           " within " + std::to_string(opt.max_iterations) + " iterations");
}

NormResult lanczos(const GramOperator& g, const NormOptions& opt) {
    const std::size_t n = g.side();
    const std::size_t kmax = std::max<std::size_t>(2, std::min(opt.max_krylov, n));
    NormResult res;
    res.method = NormMethod::lanczos;

    Vec start = seeded_unit_vector(n, opt.seed);
    Vec w(n), gu(n);
    int restarts_without_progress = 0;
    double last_residual = std::numeric_limits<double>::infinity();

    while (res.matvecs < opt.max_iterations) {
        std::vector<Vec> V{start};
        std::vector<double> alpha, beta;
        Vec ritz_vec;
        bool certified = false;

        g.apply(V[0], w, opt.parallel);
        ++res.matvecs;
        for (;;) {
            const Vec& v = V.back();
            const double a = inner(v, w).real();
            axpy(-a, v, w);
            // full reorthogonalisation, two passes
            for (int pass = 0; pass < 2; ++pass) {
                for (const auto& u : V) axpy(-inner(u, w), u, w);
            }
            alpha.push_back(a);
            const double b = norm(w);

            const double theta = tridiag_top_eigenvalue(alpha, beta);
            const auto y = tridiag_eigenvector(alpha, beta, theta);
            const double estimate = b * std::fabs(y.back());
            const bool exhausted = V.size() >= kmax || b <= 1e-13 * std::max(std::fabs(theta), 1.0) ||
                                   V.size() >= n;

            if (estimate <= 0.5 * opt.tol * std::fabs(theta) || exhausted) {
                ritz_vec.assign(n, Complex{});
                for (std::size_t i = 0; i < V.size(); ++i) axpy(Complex(y[i], 0.0), V[i], ritz_vec);
                scale(ritz_vec, 1.0 / norm(ritz_vec));
                const Ritz r = rayleigh(g, ritz_vec, gu, opt.parallel);
                ++res.matvecs;
                if (r.residual <= opt.tol * r.value) {
                    res.value = r.value;
                    res.residual = r.residual;
                    res.vector = std::move(ritz_vec);
                    certified = true;
                    break;
                }
                if (exhausted) {
                    if (r.residual >= 0.999 * last_residual) ++restarts_without_progress;
                    else restarts_without_progress = 0;
                    last_residual = r.residual;
                    break;
                }
            }
            if (res.matvecs >= opt.max_iterations) break;

            Vec next = w;
            scale(next, 1.0 / b);
            beta.push_back(b);
            V.push_back(std::move(next));
            g.apply(V.back(), w, opt.parallel);
            ++res.matvecs;
            axpy(Complex(-b, 0.0), V[V.size() - 2], w);
        }
        if (certified) return res;
        if (restarts_without_progress > 20 || ritz_vec.empty()) break;
        start = std::move(ritz_vec);
    }
    throw NumericalFailure("Lanczos did not reach residual tolerance " + std::to_string(opt.tol) + " within " +
                           std::to_string(opt.max_iterations) + " matrix-vector products");
}

} // namespace

NormResult largest_eigenpair(const GramOperator& g, const NormOptions& opt) {
    if (!(opt.tol > 0.0)) throw InvalidArgument("largest_eigenpair: tol must be positive");
    if (g.side() == 1) {
        NormResult r;
        r.value = g(0, 0).real();
        r.vector = {Complex(1.0, 0.0)};
        r.method = opt.method;
        return r;
    }
    return opt.method == NormMethod::power ? power_iteration(g, opt) : lanczos(g, opt);
}

namespace {

Eigen::MatrixXcd to_eigen(const GramOperator& g) {
    const auto n = static_cast<Eigen::Index>(g.side());
    Eigen::MatrixXcd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            m(i, j) = g(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        }
    }
    return m;
}

} // namespace

std::vector<double> dense_eigenvalues(const GramOperator& g) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_eigen(g), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw NumericalFailure("dense eigensolver failed");
    const auto& ev = solver.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

double dense_largest_eigenvalue(const GramOperator& g) { return dense_eigenvalues(g).back(); }

} // namespace polysieve

#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <vector>

#include "polysieve/gram.hpp"

using namespace polysieve;

namespace {

// oracle: lambda_max of A^* A with A(alpha, n) = e(alpha n), built directly
double oracle_norm(std::span<const Rational> pts, i64 N) {
    Eigen::MatrixXcd A(static_cast<Eigen::Index>(pts.size()), static_cast<Eigen::Index>(N));
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (i64 n = 1; n <= N; ++n) {
            const double t = 2.0 * M_PI * (pts[i] * Rational(n)).frac().to_double();
            A(static_cast<Eigen::Index>(i), n - 1) = std::complex<double>(std::cos(t), std::sin(t));
        }
    }
    const Eigen::MatrixXcd G = A.adjoint() * A;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G, Eigen::EigenvaluesOnly);
    return es.eigenvalues().maxCoeff();
}

double vec_norm(std::span<const Complex> v) {
    double s = 0;
    for (const auto& x : v) s += std::norm(x);
    return std::sqrt(s);
}

std::vector<Rational> window(const QuadPoly& f, i64 Q) {
    const auto w = build_farey(f, 1, Q);
    return {w.fractions().begin(), w.fractions().end()};
}

} // namespace

TEST_CASE("build_gram examples") {
    const std::vector<Rational> one{Rational(1)};
    const auto g1 = build_gram(one, 2);
    CHECK(g1.side() == 1);
    CHECK(g1(0, 0) == Complex(2, 0));
    CHECK(operator_norm(g1, 1e-10) == doctest::Approx(2.0));

    const std::vector<Rational> three{Rational(1, 4), Rational(3, 4), Rational(1)};
    const auto g3 = build_gram(three, 1);
    CHECK(g3.basis() == Basis::time); // N = 1 is the smaller side
    GramOptions farey;
    farey.basis = Basis::farey;
    const auto g3f = build_gram(three, 1, farey);
    REQUIRE(g3f.side() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            const auto expect = e_frac(three[i] - three[j]);
            CHECK(std::abs(g3f(i, j) - expect) < 1e-15);
        }
        CHECK(g3f(i, i) == Complex(1, 0));
    }
    CHECK(operator_norm(g3f, 1e-10) == doctest::Approx(3.0));
    CHECK(operator_norm(g3, 1e-10) == doctest::Approx(3.0));

    const std::vector<Rational> halves{Rational(1, 2), Rational(1)};
    const auto gh = build_gram(halves, 4);
    CHECK(gh.basis() == Basis::farey);
    CHECK(std::abs(gh(0, 1)) < 1e-15);
    CHECK(operator_norm(gh, 1e-10) == doctest::Approx(4.0));

    CHECK_THROWS_AS(build_gram(std::vector<Rational>{}, 3), InvalidArgument);
    CHECK_THROWS_AS(build_gram(one, 0), InvalidArgument);
    GramOptions capped;
    capped.max_side = 8;
    CHECK_THROWS_AS(build_gram(window(QuadPoly::make(1, 0, 0), 4), 100, capped), TooLarge);
}

TEST_CASE("gram operators are Hermitian with farey diagonal N") {
    for (const auto& f : {QuadPoly::make(1, 0, 0), QuadPoly::make(2, 3, 1)}) {
        const auto pts = window(f, 4);
        for (i64 N : {3, 50, 700}) {
            for (Basis b : {Basis::farey, Basis::time}) {
                GramOptions o;
                o.basis = b;
                const auto g = build_gram(pts, N, o);
                CHECK(g.hermitian_defect() <= 1e-12);
                for (std::size_t i = 0; i < g.side(); ++i) {
                    CHECK(std::fabs(g(i, i).imag()) <= 1e-12);
                    if (b == Basis::farey) CHECK(g(i, i).real() == doctest::Approx(static_cast<double>(N)));
                    else CHECK(g(i, i).real() == doctest::Approx(static_cast<double>(pts.size())));
                }
            }
        }
    }
}

TEST_CASE("norm: lanczos, power, dense and an independent oracle agree") {
    const std::vector<QuadPoly> polys{QuadPoly::make(1, 0, 0), QuadPoly::make(2, 3, 1), QuadPoly::make(1, -1, 1)};
    for (const auto& f : polys) {
        for (i64 Q : {2, 3, 4}) {
            const auto pts = window(f, Q);
            for (i64 N : {1, 9, 40, 120}) {
                const double ref = oracle_norm(pts, N);
                NormOptions lz;
                const auto rl = largest_eigenpair(build_gram(pts, N), lz);
                CHECK(rl.value == doctest::Approx(ref).epsilon(1e-8));
                CHECK(rl.residual <= lz.tol * rl.value * (1 + 1e-9));
                CHECK(vec_norm(rl.vector) == doctest::Approx(1.0).epsilon(1e-9));
                NormOptions pw;
                pw.method = NormMethod::power;
                pw.tol = 1e-7;
                const auto rp = largest_eigenpair(build_gram(pts, N), pw);
                CHECK(rp.value == doctest::Approx(ref).epsilon(1e-6));
                CHECK(vec_norm(rp.vector) == doctest::Approx(1.0).epsilon(1e-9));
                CHECK(dense_largest_eigenvalue(build_gram(pts, N)) == doctest::Approx(ref).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("farey and time bases share their spectrum") {
    const auto pts = window(QuadPoly::make(1, -1, 1), 3);
    for (i64 N : {2, 8, 16}) {
        GramOptions fo, to;
        fo.basis = Basis::farey;
        to.basis = Basis::time;
        auto ef = dense_eigenvalues(build_gram(pts, N, fo));
        auto et = dense_eigenvalues(build_gram(pts, N, to));
        // nonzero parts coincide: compare the top min(side) eigenvalues
        const std::size_t k = std::min(ef.size(), et.size());
        for (std::size_t i = 0; i < k; ++i) CHECK(ef[ef.size() - 1 - i] == doctest::Approx(et[et.size() - 1 - i]).epsilon(1e-9).scale(static_cast<double>(N)));
        const double nf = operator_norm(build_gram(pts, N, fo), 1e-10);
        const double nt = operator_norm(build_gram(pts, N, to), 1e-10);
        CHECK(nf == doctest::Approx(nt).epsilon(1e-8));
    }
}

TEST_CASE("diagonal gram has norm equal to its largest entry") {
    // fractions 1/n for n <= N... use one fraction per residue that makes the gram diagonal
    const std::vector<Rational> pts{Rational(1, 4), Rational(1, 2), Rational(3, 4), Rational(1)};
    GramOptions fo;
    fo.basis = Basis::farey;
    const auto g = build_gram(pts, 4, fo); // sum_{n<=4} e(k n / 4) = 0 for k != 0
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            if (i != j) CHECK(std::abs(g(i, j)) < 1e-14);
        }
    }
    CHECK(operator_norm(g, 1e-10) == doctest::Approx(4.0));
    std::vector<Complex> diag(9, 0.0);
    for (std::size_t i = 0; i < 3; ++i) diag[i * 4] = Complex(5.0, 0);
    const GramOperator gd(Basis::time, 3, diag);
    CHECK(operator_norm(gd, 1e-10) == doctest::Approx(5.0));
    CHECK_THROWS_AS(GramOperator(Basis::time, 3, std::vector<Complex>(8)), InvalidArgument);
}

TEST_CASE("f = q^2, Q = 2, N = 1 gives 3") {
    const auto pts = window(QuadPoly::make(1, 0, 0), 2);
    CHECK(operator_norm(build_gram(pts, 1), 1e-12) == doctest::Approx(3.0).epsilon(1e-10));
    GramOptions fo;
    fo.basis = Basis::farey;
    CHECK(dense_largest_eigenvalue(build_gram(pts, 1, fo)) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("seeded vectors and determinism") {
    const auto a = seeded_unit_vector(100, 42);
    const auto b = seeded_unit_vector(100, 42);
    const auto c = seeded_unit_vector(100, 43);
    CHECK(a == b);
    CHECK(a != c);
    CHECK(vec_norm(a) == doctest::Approx(1.0).epsilon(1e-12));
    const auto pts = window(QuadPoly::make(2, 3, 1), 4);
    const auto g = build_gram(pts, 200);
    const auto r1 = largest_eigenpair(g);
    const auto r2 = largest_eigenpair(g);
    CHECK(r1.value == r2.value);
    CHECK(r1.vector == r2.vector);
    NormOptions serial;
    serial.parallel = false;
    CHECK(largest_eigenpair(g, serial).value == doctest::Approx(r1.value).epsilon(1e-10));
    NormOptions bad;
    bad.tol = 0;
    CHECK_THROWS_AS(largest_eigenpair(g, bad), InvalidArgument);
    NormOptions starved;
    starved.method = NormMethod::power;
    starved.max_iterations = 3;
    starved.tol = 1e-14;
    CHECK_THROWS_AS(largest_eigenpair(g, starved), NumericalFailure);
}

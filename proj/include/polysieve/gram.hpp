#pragma once

// The large-sieve quadratic form sum_alpha |sum_n z_n e(alpha n)|^2 as a
// Hermitian Gram matrix, and its largest eigenvalue.
//
// With A the (#alpha x N) matrix A(alpha, n) = e(alpha n), the form is
// ||A z||^2 and its sup over unit z is lambda_max(A^* A) = lambda_max(A A^*).
// The "farey" basis stores A A^* (indexed by fractions), the "time" basis
// stores A^* A (indexed by n). Both have the same nonzero spectrum; build_gram
// picks the smaller side unless told otherwise.

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "polysieve/expsum.hpp"
#include "polysieve/farey.hpp"

namespace polysieve {

enum class Basis { farey, time };

std::string_view to_string(Basis b);

class GramOperator {
public:
    GramOperator(Basis basis, std::size_t side, std::vector<Complex> entries);

    Basis basis() const { return basis_; }
    std::size_t side() const { return side_; }
    std::span<const Complex> entries() const { return entries_; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return entries_[i * side_ + j]; }

    void apply(std::span<const Complex> x, std::span<Complex> y, bool parallel = true) const;

    // max |G(i,j) - conj(G(j,i))| over all entries.
    double hermitian_defect() const;

private:
    Basis basis_;
    std::size_t side_;
    std::vector<Complex> entries_;
};

struct GramOptions {
    std::optional<Basis> basis;        // unset: smaller of #fractions and N
    std::size_t max_side = 4096;       // larger sides raise TooLarge
    bool parallel = true;
};

GramOperator build_gram(std::span<const Rational> points, i64 N, const GramOptions& opt = {});
inline GramOperator build_gram(const FareyWindow& w, i64 N, const GramOptions& opt = {}) {
    return build_gram(w.fractions(), N, opt);
}

enum class NormMethod {
    lanczos, // Krylov-accelerated power iteration with full reorthogonalisation
    power,   // plain power iteration
};

std::string_view to_string(NormMethod m);

struct NormOptions {
    NormMethod method = NormMethod::lanczos;
    double tol = 1e-10;
    int max_iterations = 200'000; // matrix-vector products
    std::size_t max_krylov = 240; // Lanczos restart length
    unsigned long long seed = 0x5eed5eedULL;
    bool parallel = true;
};

struct NormResult {
    double value = 0.0;             // Rayleigh quotient of the returned vector
    std::vector<Complex> vector;    // unit eigenvector estimate
    double residual = 0.0;          // ||G v - value v||
    int matvecs = 0;
    NormMethod method = NormMethod::lanczos;
};

// Largest eigenvalue, certified by ||G v - lambda v|| <= tol * lambda.
// NumericalFailure if the certificate is not reached within max_iterations.
NormResult largest_eigenpair(const GramOperator& g, const NormOptions& opt = {});

inline double operator_norm(const GramOperator& g, double tol) {
    NormOptions opt;
    opt.tol = tol;
    return largest_eigenpair(g, opt).value;
}

// Dense full eigensolve (Eigen). Used as an independent cross-check.
double dense_largest_eigenvalue(const GramOperator& g);
std::vector<double> dense_eigenvalues(const GramOperator& g); // ascending

// Deterministic pseudo-random unit vector (splitmix64 stream).
std::vector<Complex> seeded_unit_vector(std::size_t n, unsigned long long seed);

} // namespace polysieve

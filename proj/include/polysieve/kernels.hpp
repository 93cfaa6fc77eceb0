#pragma once

// Data-parallel inner loops of the sieve-norm computation.
//
// Every kernel exists twice: serial:: is the reference implementation kept
// for testing, parallel:: is the OpenMP version used in production. Each
// output element is produced by exactly one thread with a fixed summation
// order, so both variants return bit-identical results for any thread count.

#include <cstddef>
#include <span>

#include "polysieve/expsum.hpp"
#include "polysieve/rational.hpp"

namespace polysieve::kernels {

// Row-major n x n Hermitian matrix times vector.
namespace serial {
void matvec(std::span<const Complex> matrix, std::size_t n, std::span<const Complex> x, std::span<Complex> y);
// out(i, j) = sum_{n <= N} e((x_i - x_j) n)
void assemble_farey_gram(std::span<const Rational> points, i64 N, std::span<Complex> out);
// out(n, m) = sum_alpha e(alpha (m - n)), 1 <= n, m <= N
void assemble_time_gram(std::span<const Rational> points, i64 N, std::span<Complex> out);
} // namespace serial

namespace parallel {
void matvec(std::span<const Complex> matrix, std::size_t n, std::span<const Complex> x, std::span<Complex> y);
void assemble_farey_gram(std::span<const Rational> points, i64 N, std::span<Complex> out);
void assemble_time_gram(std::span<const Rational> points, i64 N, std::span<Complex> out);
} // namespace parallel

// Number of threads the parallel kernels will use.
int max_threads();
void set_threads(int n);

} // namespace polysieve::kernels

#pragma once

// Exact integer number theory shared by the rest of the toolkit.
//
// Everything works on signed 64-bit integers. Intermediate products are
// formed in 128 bits; any result that does not fit back into 64 bits is
// reported with OverflowError rather than wrapped.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "polysieve/error.hpp"

namespace polysieve {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;

// --- checked arithmetic ----------------------------------------------------

i64 checked_add(i64 a, i64 b);
i64 checked_sub(i64 a, i64 b);
i64 checked_mul(i64 a, i64 b);
i64 checked_pow(i64 base, unsigned exp);
i64 narrow(i128 v);

// Floor division and non-negative remainder for a signed dividend.
i64 floor_div(i64 a, i64 m);
i64 mod_floor(i64 a, i64 m);
i64 mod_floor(i128 a, i64 m);

i64 mul_mod(i64 a, i64 b, i64 m);
i64 pow_mod(i64 base, u64 exp, i64 m);

// --- gcd / inverses / CRT --------------------------------------------------

// gcd(|a|, |b|), with gcd(a, 0) = |a|. Both zero is rejected.
i64 gcd(i64 a, i64 b);
i64 lcm(i64 a, i64 b);

// x in [0, m) with a*x = 1 (mod m).
i64 mod_inverse(i64 a, i64 m);

struct Congruence {
    i64 residue = 0;
    i64 modulus = 1;

    friend bool operator==(const Congruence&, const Congruence&) = default;
};

// Combines x = r_i (mod m_i). Non-coprime moduli are merged when the
// residues agree on the common factor; otherwise NoSolution is thrown.
// The returned residue is reduced into [0, combined modulus).
Congruence crt(std::span<const Congruence> congruences);

// --- primes and factorisation ----------------------------------------------

std::vector<i64> sieve_primes(i64 limit);
bool is_prime(i64 n);

struct PrimePower {
    i64 prime = 0;
    int exponent = 0;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

struct Factorization {
    i64 value = 1;
    std::vector<PrimePower> factors; // primes strictly increasing
};

Factorization factorize(i64 n);

// --- multiplicative functions ----------------------------------------------

i64 phi(i64 n);
i64 tau(i64 n);
int omega(i64 n);
int moebius(i64 n);

i64 phi(const Factorization& f);
i64 tau(const Factorization& f);
int omega(const Factorization& f);
int moebius(const Factorization& f);

std::vector<i64> divisors(i64 n); // ascending

// Jacobi symbol (a|n) for odd n >= 1.
int jacobi(i64 a, i64 n);

// Least prime p with p not dividing r.
i64 smallest_prime_not_dividing(i64 r);

// Least prime p >= lower with p not dividing r; ConfigurationError past cap.
i64 smallest_prime_at_least_not_dividing(i64 lower, i64 r, i64 cap = 10'000'000);

// Exact p-adic valuation of a nonzero integer.
int valuation(i64 n, i64 p);

} // namespace polysieve

#pragma once

// Roots of quadratic congruences modulo odd prime powers, and counting
// q in a range with f(q) = c (mod m) through per-prime-power roots and CRT.

#include <vector>

#include "polysieve/arith.hpp"
#include "polysieve/quadpoly.hpp"

namespace polysieve {

// kappa(u) = a u^2 + b u + c
struct QuadForm {
    i64 a = 0;
    i64 b = 0;
    i64 c = 0;

    i64 discriminant() const;
    friend bool operator==(const QuadForm&, const QuadForm&) = default;
};

struct LocalCount {
    QuadForm kappa;
    i64 p = 0;
    int alpha = 0;
    i64 count = 0;
    i64 bound = 0;
    bool degenerate = false; // kappa vanishes identically mod p^alpha
};

// Evaluates kappa at every residue. p^alpha must not exceed kBruteLimit.
inline constexpr i64 kBruteLimit = 1'000'000;
i64 root_count_brute(const QuadForm& kappa, i64 p, int alpha);

// Same count by Hensel-style descent: strip the common p-power of the
// coefficients, then lift each root mod p through the substitution
// u = u0 + p w. Degenerate levels recurse explicitly.
i64 root_count_lifted(const QuadForm& kappa, i64 p, int alpha);

// (alpha + 1) * max((a, p^alpha), [ (a,p^alpha) | disc ] * (disc/(a,p^alpha), p^alpha)),
// with gcd(0, n) = n.
i64 local_root_bound(const QuadForm& kappa, i64 p, int alpha);

// True when every coefficient is divisible by p^alpha.
bool vanishes_identically(const QuadForm& kappa, i64 p, int alpha);

LocalCount local_count(const QuadForm& kappa, i64 p, int alpha);

// All residues u mod p^alpha with kappa(u) = 0 (mod p^alpha), ascending.
std::vector<i64> roots_mod_prime_power(const QuadForm& kappa, i64 p, int alpha);

// Residue classes q mod m (m odd, >= 1) with f(q) = c (mod m), ascending.
std::vector<i64> congruence_classes(const QuadPoly& f, i64 c, i64 m);

// #{q in [q_lo, q_hi] : f(q) = c (mod m)}.
i64 count_f_congruent(const QuadPoly& f, i64 c, i64 m, i64 q_lo, i64 q_hi);

} // namespace polysieve

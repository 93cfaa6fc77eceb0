#include <doctest.h>

#include <limits>
#include <random>
#include <vector>

#include "polysieve/arith.hpp"

using namespace polysieve;

namespace {

// oracles
i64 coprime_count(i64 n) {
    i64 c = 0;
    for (i64 a = 1; a <= n; ++a) {
        i64 x = a, y = n;
        while (y) {
            const i64 t = x % y;
            x = y;
            y = t;
        }
        if (x == 1) ++c;
    }
    return c;
}

bool trial_prime(i64 n) {
    if (n < 2) return false;
    for (i64 d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

} // namespace

TEST_CASE("gcd examples and errors") {
    CHECK(gcd(12, 18) == 6);
    CHECK(gcd(0, 5) == 5);
    CHECK(gcd(17, 31) == 1);
    CHECK(gcd(-12, 18) == 6);
    CHECK_THROWS_AS(gcd(0, 0), InvalidArgument);
    CHECK(lcm(4, 6) == 12);
}

TEST_CASE("mod_inverse") {
    CHECK(mod_inverse(3, 7) == 5);
    CHECK(mod_inverse(1, 2) == 1);
    CHECK_THROWS_AS(mod_inverse(2, 4), DomainError);
    CHECK_THROWS_AS(mod_inverse(1, 1), InvalidArgument);
    CHECK(mod_inverse(-3, 7) == 2);
    for (i64 m = 2; m <= 200; ++m) {
        for (i64 a = 0; a < m; ++a) {
            if (gcd(a, m) != 1) continue;
            CHECK(mul_mod(mod_inverse(a, m), a, m) == 1 % m);
        }
    }
}

TEST_CASE("crt examples") {
    {
        const Congruence c[] = {{1, 3}, {1, 5}};
        CHECK(crt(c) == Congruence{1, 15});
    }
    {
        const Congruence c[] = {{2, 3}, {4, 5}};
        CHECK(crt(c) == Congruence{14, 15});
    }
    {
        const Congruence c[] = {{0, 1}};
        CHECK(crt(c) == Congruence{0, 1});
    }
    {
        const Congruence c[] = {{1, 4}, {3, 6}};
        CHECK(crt(c) == Congruence{9, 12});
    }
    {
        const Congruence c[] = {{1, 4}, {2, 6}};
        CHECK_THROWS_AS(crt(c), NoSolution);
    }
}

TEST_CASE("crt output satisfies every congruence") {
    std::mt19937_64 rng(11);
    const std::vector<i64> moduli{3, 4, 5, 7, 9, 11, 13, 16, 25};
    for (int t = 0; t < 500; ++t) {
        std::vector<Congruence> cs;
        i64 prod = 1;
        for (i64 m : moduli) {
            if (rng() % 2 && gcd(prod, m) == 1) {
                cs.push_back({static_cast<i64>(rng() % 1000) - 500, m});
                prod *= m;
            }
        }
        if (cs.empty()) continue;
        const auto r = crt(cs);
        CHECK(r.modulus == prod);
        CHECK(r.residue >= 0);
        CHECK(r.residue < prod);
        for (const auto& c : cs) CHECK(mod_floor(r.residue - c.residue, c.modulus) == 0);
    }
}

TEST_CASE("sieve_primes") {
    CHECK(sieve_primes(10) == std::vector<i64>{2, 3, 5, 7});
    CHECK(sieve_primes(2) == std::vector<i64>{2});
    const auto p30 = sieve_primes(30);
    CHECK(p30.size() == 10);
    CHECK(p30.back() == 29);
    const auto ps = sieve_primes(5000);
    std::size_t k = 0;
    for (i64 n = 2; n <= 5000; ++n) {
        if (trial_prime(n)) {
            REQUIRE(k < ps.size());
            CHECK(ps[k++] == n);
        }
        CHECK(is_prime(n) == trial_prime(n));
    }
    CHECK(k == ps.size());
}

TEST_CASE("factorize") {
    const auto f12 = factorize(12);
    CHECK(f12.factors == std::vector<PrimePower>{{2, 2}, {3, 1}});
    CHECK(factorize(1).factors.empty());
    CHECK(factorize(97).factors == std::vector<PrimePower>{{97, 1}});
    CHECK_THROWS_AS(factorize(0), InvalidArgument);
    for (i64 n = 1; n <= 3000; ++n) {
        const auto f = factorize(n);
        i64 prod = 1, last = 1;
        for (const auto& [p, e] : f.factors) {
            CHECK(p > last);
            CHECK(e >= 1);
            CHECK(trial_prime(p));
            last = p;
            for (int i = 0; i < e; ++i) prod *= p;
        }
        CHECK(prod == n);
    }
}

TEST_CASE("multiplicative functions") {
    CHECK(phi(4) == 2);
    CHECK(tau(4) == 3);
    CHECK(omega(4) == 1);
    CHECK(moebius(4) == 0);
    CHECK(phi(1) == 1);
    CHECK(moebius(1) == 1);
    CHECK(phi(900) == 240);
    CHECK(moebius(30) == -1);
    CHECK(moebius(15) == 1);
    CHECK(tau(12) == 6);
    CHECK(omega(30) == 3);
    for (i64 n = 1; n <= 10000; ++n) REQUIRE(phi(n) == coprime_count(n));
    for (i64 n = 1; n <= 500; ++n) {
        const auto d = divisors(n);
        CHECK(static_cast<i64>(d.size()) == tau(n));
        i64 mu_sum = 0;
        for (i64 x : d) {
            CHECK(n % x == 0);
            mu_sum += moebius(x);
        }
        CHECK(mu_sum == (n == 1 ? 1 : 0));
    }
}

TEST_CASE("jacobi") {
    CHECK(jacobi(1, 3) == 1);
    CHECK(jacobi(2, 3) == -1);
    CHECK(jacobi(4, 15) == 1);
    CHECK_THROWS_AS(jacobi(1, 4), InvalidArgument);
    for (i64 p : sieve_primes(100)) {
        if (p == 2) continue;
        for (i64 a = -50; a <= 150; ++a) {
            const i64 e = pow_mod(mod_floor(a, p), static_cast<u64>((p - 1) / 2), p);
            const int expect = e == 0 ? 0 : (e == 1 ? 1 : -1);
            CHECK(jacobi(a, p) == expect);
        }
    }
    // multiplicative in the modulus
    for (i64 a = -20; a <= 20; ++a) CHECK(jacobi(a, 15) == jacobi(a, 3) * jacobi(a, 5));
}

TEST_CASE("smallest_prime_not_dividing") {
    CHECK(smallest_prime_not_dividing(1) == 2);
    CHECK(smallest_prime_not_dividing(2) == 3);
    CHECK(smallest_prime_not_dividing(6) == 5);
    for (i64 r = 1; r <= 5000; ++r) {
        const i64 p = smallest_prime_not_dividing(r);
        CHECK(r % p != 0);
        for (i64 q = 2; q < p; ++q) {
            if (trial_prime(q)) CHECK(r % q == 0);
        }
    }
    CHECK(smallest_prime_at_least_not_dividing(2, 2) == 3);
    CHECK(smallest_prime_at_least_not_dividing(4, 35) == 11);
}

TEST_CASE("overflow is signalled, not wrapped") {
    const i64 big = std::numeric_limits<i64>::max();
    CHECK_THROWS_AS(checked_add(big, 1), OverflowError);
    CHECK_THROWS_AS(checked_mul(big / 2 + 1, 2), OverflowError);
    CHECK_THROWS_AS(checked_pow(10, 19), OverflowError);
    CHECK(checked_pow(10, 18) == 1'000'000'000'000'000'000);
    CHECK(mul_mod(big - 1, big - 2, big) == 2);
    CHECK(floor_div(-7, 2) == -4);
    CHECK(mod_floor(i64{-7}, 3) == 2);
    CHECK(valuation(72, 2) == 3);
    CHECK(valuation(-27, 3) == 3);
}

#include "polysieve/arith.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace polysieve {

namespace {

constexpr i64 kI64Max = std::numeric_limits<i64>::max();
constexpr i64 kI64Min = std::numeric_limits<i64>::min();

i64 abs_checked(i64 a) {
    if (a == kI64Min) throw OverflowError("abs: |INT64_MIN| does not fit");
    return a < 0 ? -a : a;
}

} // namespace

i64 checked_add(i64 a, i64 b) {
    i64 r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer overflow in addition");
    return r;
}

i64 checked_sub(i64 a, i64 b) {
    i64 r;
    if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("integer overflow in subtraction");
    return r;
}

i64 checked_mul(i64 a, i64 b) {
    i64 r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer overflow in multiplication");
    return r;
}

i64 checked_pow(i64 base, unsigned exp) {
    i64 r = 1;
    for (unsigned i = 0; i < exp; ++i) r = checked_mul(r, base);
    return r;
}

i64 narrow(i128 v) {
    if (v > kI64Max || v < kI64Min) throw OverflowError("128-bit intermediate does not fit in 64 bits");
    return static_cast<i64>(v);
}

i64 floor_div(i64 a, i64 m) {
    if (m <= 0) throw InvalidArgument("floor_div: divisor must be positive");
    i64 q = a / m;
    if (a % m != 0 && a < 0) --q;
    return q;
}

i64 mod_floor(i64 a, i64 m) {
    if (m <= 0) throw InvalidArgument("mod_floor: modulus must be positive");
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

i64 mod_floor(i128 a, i64 m) {
    if (m <= 0) throw InvalidArgument("mod_floor: modulus must be positive");
    i128 r = a % m;
    if (r < 0) r += m;
    return static_cast<i64>(r);
}

i64 mul_mod(i64 a, i64 b, i64 m) {
    return mod_floor(static_cast<i128>(mod_floor(a, m)) * mod_floor(b, m), m);
}

i64 pow_mod(i64 base, u64 exp, i64 m) {
    if (m == 1) return 0;
    i64 result = 1;
    i64 b = mod_floor(base, m);
    while (exp > 0) {
        if (exp & 1u) result = mul_mod(result, b, m);
        b = mul_mod(b, b, m);
        exp >>= 1;
    }
    return result;
}

i64 gcd(i64 a, i64 b) {
    if (a == 0 && b == 0) throw InvalidArgument("gcd(0, 0) is undefined");
    u64 x = static_cast<u64>(abs_checked(a));
    u64 y = static_cast<u64>(abs_checked(b));
    while (y != 0) {
        u64 t = x % y;
        x = y;
        y = t;
    }
    return static_cast<i64>(x);
}

i64 lcm(i64 a, i64 b) {
    if (a == 0 || b == 0) return 0;
    return checked_mul(abs_checked(a) / gcd(a, b), abs_checked(b));
}

namespace {

// Extended Euclid on 128-bit values: returns g and x with a*x = g (mod b).
i128 ext_gcd(i128 a, i128 b, i128& x) {
    i128 old_r = a, r = b;
    i128 old_s = 1, s = 0;
    while (r != 0) {
        i128 q = old_r / r;
        i128 t = old_r - q * r;
        old_r = r;
        r = t;
        t = old_s - q * s;
        old_s = s;
        s = t;
    }
    x = old_s;
    return old_r;
}

} // namespace

i64 mod_inverse(i64 a, i64 m) {
    if (m < 2) throw InvalidArgument("mod_inverse: modulus must be >= 2, got " + std::to_string(m));
    i64 ar = mod_floor(a, m);
    i128 x;
    i128 g = ext_gcd(ar, m, x);
    if (g != 1) {
        throw DomainError("mod_inverse: " + std::to_string(a) + " is not invertible modulo " +
                          std::to_string(m));
    }
    return mod_floor(x, m);
}

Congruence crt(std::span<const Congruence> congruences) {
    Congruence acc{0, 1};
    for (const auto& c : congruences) {
        if (c.modulus < 1) throw InvalidArgument("crt: moduli must be >= 1");
        const i64 r2 = mod_floor(c.residue, c.modulus);
        const i64 g = gcd(acc.modulus, c.modulus);
        const i64 diff = r2 - acc.residue; // both in range, no overflow
        if (mod_floor(diff, g) != 0) {
            throw NoSolution("crt: x = " + std::to_string(acc.residue) + " mod " +
                             std::to_string(acc.modulus) + " and x = " + std::to_string(r2) +
                             " mod " + std::to_string(c.modulus) + " are inconsistent");
        }
        const i64 m1g = acc.modulus / g;
        const i64 m2g = c.modulus / g;
        const i64 combined = checked_mul(m1g, c.modulus);
        // acc.residue + acc.modulus * t, with t = (diff/g) * inv(m1/g) mod (m2/g)
        i64 t = 0;
        if (m2g > 1) t = mul_mod(diff / g, mod_inverse(m1g, m2g), m2g);
        const i128 x = static_cast<i128>(acc.residue) + static_cast<i128>(acc.modulus) * t;
        acc = Congruence{mod_floor(x, combined), combined};
    }
    return acc;
}

std::vector<i64> sieve_primes(i64 limit) {
    std::vector<i64> primes;
    if (limit < 2) return primes;
    std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
    for (i64 i = 2; i <= limit; ++i) {
        if (composite[static_cast<std::size_t>(i)]) continue;
        primes.push_back(i);
        if (i <= limit / i) {
            for (i64 j = i * i; j <= limit; j += i) composite[static_cast<std::size_t>(j)] = true;
        }
    }
    return primes;
}

bool is_prime(i64 n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0 || n % 3 == 0) return false;
    for (i64 d = 5; d <= n / d; d += 6) {
        if (n % d == 0 || n % (d + 2) == 0) return false;
    }
    return true;
}

Factorization factorize(i64 n) {
    if (n < 1) throw InvalidArgument("factorize: n must be >= 1, got " + std::to_string(n));
    Factorization f;
    f.value = n;
    i64 m = n;
    auto take = [&](i64 p) {
        if (m % p != 0) return;
        int e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        f.factors.push_back({p, e});
    };
    take(2);
    take(3);
    for (i64 d = 5; d <= m / d; d += 6) {
        take(d);
        take(d + 2);
    }
    if (m > 1) f.factors.push_back({m, 1});
    return f;
}

i64 phi(const Factorization& f) {
    i64 r = 1;
    for (const auto& [p, e] : f.factors) r = checked_mul(r, checked_mul(checked_pow(p, static_cast<unsigned>(e - 1)), p - 1));
    return r;
}

i64 tau(const Factorization& f) {
    i64 r = 1;
    for (const auto& pp : f.factors) r *= pp.exponent + 1;
    return r;
}

int omega(const Factorization& f) { return static_cast<int>(f.factors.size()); }

int moebius(const Factorization& f) {
    for (const auto& pp : f.factors) {
        if (pp.exponent > 1) return 0;
    }
    return (f.factors.size() % 2 == 0) ? 1 : -1;
}

i64 phi(i64 n) { return phi(factorize(n)); }
i64 tau(i64 n) { return tau(factorize(n)); }
int omega(i64 n) { return omega(factorize(n)); }
int moebius(i64 n) { return moebius(factorize(n)); }

std::vector<i64> divisors(i64 n) {
    const Factorization f = factorize(n);
    std::vector<i64> ds{1};
    for (const auto& [p, e] : f.factors) {
        const std::size_t base = ds.size();
        i64 pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) ds.push_back(ds[i] * pk);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

int jacobi(i64 a, i64 n) {
    if (n < 1 || n % 2 == 0) {
        throw InvalidArgument("jacobi: n must be odd and positive, got " + std::to_string(n));
    }
    i64 x = mod_floor(a, n);
    i64 m = n;
    int result = 1;
    while (x != 0) {
        while (x % 2 == 0) {
            x /= 2;
            const i64 r = m % 8;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(x, m);
        if (x % 4 == 3 && m % 4 == 3) result = -result;
        x %= m;
    }
    return m == 1 ? result : 0;
}

i64 smallest_prime_not_dividing(i64 r) {
    if (r < 1) throw InvalidArgument("smallest_prime_not_dividing: r must be >= 1");
    return smallest_prime_at_least_not_dividing(2, r);
}

i64 smallest_prime_at_least_not_dividing(i64 lower, i64 r, i64 cap) {
    if (r < 1) throw InvalidArgument("prime search: r must be >= 1");
    for (i64 p = std::max<i64>(lower, 2); p <= cap; ++p) {
        if (is_prime(p) && r % p != 0) return p;
    }
    throw ConfigurationError("no prime >= " + std::to_string(lower) + " not dividing " +
                             std::to_string(r) + " below cap " + std::to_string(cap));
}

int valuation(i64 n, i64 p) {
    if (n == 0) throw InvalidArgument("valuation of zero is infinite");
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

} // namespace polysieve

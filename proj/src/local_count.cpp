#include "polysieve/local_count.hpp"

#include <algorithm>
#include <string>

namespace polysieve {

i64 QuadForm::discriminant() const {
    return checked_sub(checked_mul(b, b), checked_mul(checked_mul(4, a), c));
}

namespace {

void require_odd_prime_power(i64 p, int alpha) {
    if (p < 3 || !is_prime(p)) {
        throw InvalidArgument("local counts need an odd prime, got p = " + std::to_string(p));
    }
    if (alpha < 1) throw InvalidArgument("local counts need alpha >= 1");
}

i64 eval_mod(const QuadForm& k, i64 u, i64 m) {
    const i128 v = (static_cast<i128>(mod_floor(k.a, m)) * u % m * u) + static_cast<i128>(mod_floor(k.b, m)) * u +
                   mod_floor(k.c, m);
    return mod_floor(v, m);
}

// #{u mod p^alpha : a u^2 + b u + c = 0 (mod p^alpha)}, alpha >= 0.
i64 lifted_count(i64 a, i64 b, i64 c, i64 p, int alpha) {
    if (alpha == 0) return 1;
    const i64 pa = checked_pow(p, static_cast<unsigned>(alpha));
    a = mod_floor(a, pa);
    b = mod_floor(b, pa);
    c = mod_floor(c, pa);
    if (a == 0 && b == 0 && c == 0) return pa;

    int v = alpha;
    for (i64 coef : {a, b, c}) {
        if (coef != 0) v = std::min(v, valuation(coef, p));
    }
    if (v >= 1) {
        const i64 pv = checked_pow(p, static_cast<unsigned>(v));
        return checked_mul(pv, lifted_count(a / pv, b / pv, c / pv, p, alpha - v));
    }

    // Some coefficient is a unit: at most two roots mod p, each lifted via
    // u = u0 + p w. The shifted form has every coefficient divisible by p and
    // depends on w only modulo p^(alpha-1), hence the division by p.
    i64 total = 0;
    const QuadForm k{a, b, c};
    const i64 p2 = mul_mod(p, p, pa);
    for (i64 u0 = 0; u0 < p; ++u0) {
        if (eval_mod(k, u0, p) != 0) continue;
        const i64 la = mul_mod(a, p2, pa);
        const i64 lb = mul_mod(mod_floor(static_cast<i128>(2) * a * u0 + b, pa), p, pa);
        const i64 lc = eval_mod(k, u0, pa);
        total += lifted_count(la, lb, lc, p, alpha) / p;
    }
    return total;
}

} // namespace

i64 root_count_brute(const QuadForm& kappa, i64 p, int alpha) {
    require_odd_prime_power(p, alpha);
    const i64 pa = checked_pow(p, static_cast<unsigned>(alpha));
    if (pa > kBruteLimit) {
        throw TooLarge("root_count_brute: p^alpha = " + std::to_string(pa) +
                       " exceeds the brute-force limit; use root_count_lifted");
    }
    i64 count = 0;
    for (i64 u = 0; u < pa; ++u) {
        if (eval_mod(kappa, u, pa) == 0) ++count;
    }
    return count;
}

i64 root_count_lifted(const QuadForm& kappa, i64 p, int alpha) {
    require_odd_prime_power(p, alpha);
    return lifted_count(kappa.a, kappa.b, kappa.c, p, alpha);
}

i64 local_root_bound(const QuadForm& kappa, i64 p, int alpha) {
    require_odd_prime_power(p, alpha);
    if (kappa.a == 0) throw InvalidArgument("local_root_bound: leading coefficient must be nonzero");
    const i64 pa = checked_pow(p, static_cast<unsigned>(alpha));
    const i64 g = gcd(kappa.a, pa);
    const i64 disc = kappa.discriminant();
    i64 second = 0;
    if (disc % g == 0) second = gcd(disc / g, pa); // gcd(0, n) = n
    return checked_mul(alpha + 1, std::max(g, second));
}

bool vanishes_identically(const QuadForm& kappa, i64 p, int alpha) {
    const i64 pa = checked_pow(p, static_cast<unsigned>(alpha));
    return kappa.a % pa == 0 && kappa.b % pa == 0 && kappa.c % pa == 0;
}

LocalCount local_count(const QuadForm& kappa, i64 p, int alpha) {
    LocalCount lc;
    lc.kappa = kappa;
    lc.p = p;
    lc.alpha = alpha;
    lc.count = root_count_lifted(kappa, p, alpha);
    lc.bound = local_root_bound(kappa, p, alpha);
    lc.degenerate = vanishes_identically(kappa, p, alpha);
    return lc;
}

std::vector<i64> roots_mod_prime_power(const QuadForm& kappa, i64 p, int alpha) {
    require_odd_prime_power(p, alpha);
    std::vector<i64> roots;
    for (i64 u = 0; u < p; ++u) {
        if (eval_mod(kappa, u, p) == 0) roots.push_back(u);
    }
    i64 pk = p;
    for (int k = 1; k < alpha; ++k) {
        const i64 next = checked_mul(pk, p);
        std::vector<i64> lifted;
        for (i64 u : roots) {
            for (i64 t = 0; t < p; ++t) {
                const i64 cand = u + t * pk;
                if (eval_mod(kappa, cand, next) == 0) lifted.push_back(cand);
            }
        }
        roots = std::move(lifted);
        pk = next;
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

std::vector<i64> congruence_classes(const QuadPoly& f, i64 c, i64 m) {
    if (m < 1 || m % 2 == 0) {
        throw InvalidArgument("congruence_classes: modulus must be odd and >= 1, got " + std::to_string(m));
    }
    std::vector<i64> classes{0};
    i64 modulus = 1;
    for (const auto& [p, e] : factorize(m).factors) {
        const QuadForm k{f.A(), f.B(), checked_sub(f.C(), c)};
        const auto roots = roots_mod_prime_power(k, p, e);
        const i64 pe = checked_pow(p, static_cast<unsigned>(e));
        std::vector<i64> merged;
        merged.reserve(classes.size() * roots.size());
        for (i64 x : classes) {
            for (i64 y : roots) {
                const Congruence parts[] = {{x, modulus}, {y, pe}};
                merged.push_back(crt(parts).residue);
            }
        }
        classes = std::move(merged);
        modulus = checked_mul(modulus, pe);
    }
    std::sort(classes.begin(), classes.end());
    return classes;
}

i64 count_f_congruent(const QuadPoly& f, i64 c, i64 m, i64 q_lo, i64 q_hi) {
    if (q_lo > q_hi) throw InvalidArgument("count_f_congruent: empty range");
    i64 total = 0;
    for (i64 r : congruence_classes(f, c, m)) {
        total += floor_div(checked_sub(q_hi, r), m) - floor_div(checked_sub(checked_sub(q_lo, 1), r), m);
    }
    return total;
}

} // namespace polysieve

#include "polysieve/characters.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace polysieve {

namespace {

i64 primitive_root_mod_prime(i64 p) {
    if (p == 2) return 1;
    const auto fac = factorize(p - 1);
    for (i64 g = 2; g < p; ++g) {
        bool ok = true;
        for (const auto& [s, e] : fac.factors) {
            if (pow_mod(g, static_cast<u64>((p - 1) / s), p) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
    throw NumericalFailure("no primitive root mod " + std::to_string(p));
}

struct Cyclic {
    i64 gen = 1; // residue mod the prime power
    i64 order = 1;
};

std::vector<Cyclic> local_factors(i64 p, int e) {
    const i64 pe = checked_pow(p, static_cast<unsigned>(e));
    if (p != 2) {
        i64 g = primitive_root_mod_prime(p);
        if (e >= 2 && pow_mod(g, static_cast<u64>(p - 1), checked_mul(p, p)) == 1) g += p;
        return {{g % pe, pe / p * (p - 1)}};
    }
    if (e == 1) return {};
    if (e == 2) return {{3, 2}};
    return {{pe - 1, 2}, {5, pe / 4}};
}

} // namespace

std::shared_ptr<const CharacterGroup> CharacterGroup::make(i64 n) {
    if (n < 1) throw InvalidArgument("character group: modulus must be >= 1, got " + std::to_string(n));
    std::shared_ptr<CharacterGroup> g(new CharacterGroup());
    g->n_ = n;
    g->size_ = phi(n);
    for (const auto& [p, e] : factorize(n).factors) {
        const i64 pe = checked_pow(p, static_cast<unsigned>(e));
        for (const auto& c : local_factors(p, e)) {
            const Congruence parts[] = {{c.gen, pe}, {1 % (n / pe), n / pe}};
            g->gens_.push_back(crt(parts).residue);
            g->orders_.push_back(c.order);
            g->exponent_ = lcm(g->exponent_, c.order);
        }
    }

    const std::size_t k = g->gens_.size();
    g->unit_.assign(static_cast<std::size_t>(n), 0);
    g->logs_.assign(static_cast<std::size_t>(n) * k, 0);
    // Walk every exponent tuple, first factor fastest.
    std::vector<i64> exps(k, 0);
    i64 count = 0;
    for (;;) {
        i64 x = 1 % n;
        for (std::size_t i = 0; i < k; ++i) x = mul_mod(x, pow_mod(g->gens_[i], static_cast<u64>(exps[i]), n), n);
        const auto row = static_cast<std::size_t>(x);
        if (g->unit_[row]) throw NumericalFailure("character group: generators are not independent");
        g->unit_[row] = 1;
        std::copy(exps.begin(), exps.end(), g->logs_.begin() + static_cast<std::ptrdiff_t>(row * k));
        ++count;
        std::size_t i = 0;
        while (i < k && ++exps[i] == g->orders_[i]) exps[i++] = 0;
        if (i == k) break;
    }
    if (count != g->size_) throw NumericalFailure("character group: generator orders do not multiply to phi(n)");
    return g;
}

std::span<const i64> CharacterGroup::log(i64 a) const {
    if (!is_unit(a)) throw DomainError("discrete log of a non-unit mod " + std::to_string(n_));
    const std::size_t k = gens_.size();
    return std::span<const i64>(logs_).subspan(static_cast<std::size_t>(mod_floor(a, n_)) * k, k);
}

DirichletCharacter::DirichletCharacter(std::shared_ptr<const CharacterGroup> group, std::vector<i64> exponents)
    : group_(std::move(group)), exponents_(std::move(exponents)) {
    if (!group_) throw InvalidArgument("character: null group");
    if (exponents_.size() != group_->orders().size()) throw InvalidArgument("character: wrong number of exponents");
    for (std::size_t i = 0; i < exponents_.size(); ++i) exponents_[i] = mod_floor(exponents_[i], group_->orders()[i]);
}

i64 DirichletCharacter::index() const {
    i64 idx = 0, radix = 1;
    for (std::size_t i = 0; i < exponents_.size(); ++i) {
        idx += exponents_[i] * radix;
        radix *= group_->orders()[i];
    }
    return idx;
}

i64 DirichletCharacter::phase(i64 a) const {
    const auto lg = group_->log(a);
    const i64 L = group_->exponent();
    i128 acc = 0;
    for (std::size_t i = 0; i < exponents_.size(); ++i) {
        acc += static_cast<i128>(exponents_[i]) * lg[i] * (L / group_->orders()[i]);
    }
    return mod_floor(acc, L);
}

Complex DirichletCharacter::operator()(i64 a) const {
    if (!group_->is_unit(a)) return {0.0, 0.0};
    return e_frac(phase(a), group_->exponent());
}

bool DirichletCharacter::is_principal() const {
    return std::all_of(exponents_.begin(), exponents_.end(), [](i64 e) { return e == 0; });
}

i64 DirichletCharacter::conductor() const {
    if (conductor_ != 0) return conductor_;
    const i64 n = modulus();
    for (i64 d : divisors(n)) {
        bool trivial = true;
        for (i64 a = 1 % n; trivial && a < std::max<i64>(n, 1); a += d) {
            if (group_->is_unit(a) && phase(a) != 0) trivial = false;
        }
        if (trivial) {
            conductor_ = d;
            return d;
        }
    }
    conductor_ = n;
    return n;
}

namespace {

std::vector<i64> decode_index(const CharacterGroup& g, i64 index) {
    std::vector<i64> exps;
    for (i64 ord : g.orders()) {
        exps.push_back(index % ord);
        index /= ord;
    }
    return exps;
}

} // namespace

std::vector<DirichletCharacter> characters_mod(i64 n) {
    const auto g = CharacterGroup::make(n);
    std::vector<DirichletCharacter> out;
    out.reserve(static_cast<std::size_t>(g->size()));
    for (i64 i = 0; i < g->size(); ++i) out.emplace_back(g, decode_index(*g, i));
    return out;
}

DirichletCharacter character_at(i64 n, i64 index) {
    const auto g = CharacterGroup::make(n);
    if (index < 0 || index >= g->size()) {
        throw InvalidArgument("character index " + std::to_string(index) + " out of range for modulus " +
                              std::to_string(n));
    }
    return DirichletCharacter(g, decode_index(*g, index));
}

Complex gauss_sum_char(const DirichletCharacter& chi) {
    const i64 n = chi.modulus();
    const i64 L = chi.group().exponent();
    const i64 den = checked_mul(L, n);
    double re = 0.0, im = 0.0;
    for (i64 a = 1; a <= n; ++a) {
        if (!chi.group().is_unit(a)) continue;
        const i64 num = mod_floor(static_cast<i128>(chi.phase(a)) * n + static_cast<i128>(a) * L, den);
        const Complex t = e_frac(num, den);
        re += t.real();
        im += t.imag();
    }
    return {re, im};
}

DirichletCharacter product_character(const DirichletCharacter& psi, const DirichletCharacter& chi) {
    const i64 r = psi.modulus();
    const i64 f = chi.modulus();
    if (gcd(r, f) != 1) {
        throw DomainError("product character needs coprime moduli, got " + std::to_string(r) + " and " +
                          std::to_string(f));
    }
    const auto g = CharacterGroup::make(checked_mul(r, f));
    const i64 Lp = psi.group().exponent();
    const i64 Lc = chi.group().exponent();
    const i128 L = static_cast<i128>(Lp) * Lc;
    std::vector<i64> exps;
    for (std::size_t i = 0; i < g->generators().size(); ++i) {
        const i64 x = g->generators()[i];
        const i128 num = (static_cast<i128>(psi.phase(x)) * Lc + static_cast<i128>(chi.phase(x)) * Lp) % L;
        const i128 scaled = num * g->orders()[i];
        if (scaled % L != 0) throw NumericalFailure("product character: value is not a power of the generator");
        exps.push_back(static_cast<i64>(scaled / L));
    }
    return DirichletCharacter(g, std::move(exps));
}

TauIdentity verify_tau_identity(const DirichletCharacter& psi, const DirichletCharacter& chi, double tol) {
    const i64 r = psi.modulus();
    const i64 f = chi.modulus();
    if (gcd(r, f) != 1) {
        throw DomainError("tau identity needs coprime moduli, got " + std::to_string(r) + " and " + std::to_string(f));
    }
    if (!chi.is_primitive()) throw DomainError("tau identity needs chi primitive mod " + std::to_string(f));
    TauIdentity out;
    out.tau_product = gauss_sum_char(product_character(psi, chi));
    out.tau_psi = gauss_sum_char(psi);
    out.lhs = std::abs(out.tau_product);
    out.rhs = std::abs(out.tau_psi) * std::sqrt(static_cast<double>(f));
    out.rel_error = std::fabs(out.lhs - out.rhs) / std::max(out.rhs, 1.0);
    out.holds = out.rel_error <= tol;
    return out;
}

MultSieveCheck mult_sieve_check(const QuadPoly& f, i64 Q, i64 r, std::span<const Complex> z) {
    if (Q < 1) throw InvalidArgument("mult_sieve_check: Q must be >= 1");
    if (r < 1) throw InvalidArgument("mult_sieve_check: r must be >= 1");
    const i64 N = static_cast<i64>(z.size());
    MultSieveCheck out;
    const auto psis = characters_mod(r);
    const i64 phi_r = phi(r);
    std::vector<double> psi_weight;
    for (const auto& psi : psis) psi_weight.push_back(std::norm(gauss_sum_char(psi)) / static_cast<double>(phi_r));

    bool have_ratio = false;
    for (i64 q = 1; q <= Q; ++q) {
        const i64 fq = f.eval(q);
        if (gcd(r, fq) != 1) continue;
        const i64 m = checked_mul(r, fq);

        for (i64 a = 1; a <= m; ++a) {
            if (gcd(a, m) != 1) continue;
            Complex s{};
            for (i64 n = 1; n <= N; ++n) s += z[static_cast<std::size_t>(n - 1)] * e_frac(mul_mod(a, n, m), m);
            out.rhs += std::norm(s);
        }

        const double phi_m = static_cast<double>(phi(m));
        for (const auto& chi : characters_mod(fq)) {
            if (!chi.is_primitive()) continue;
            for (std::size_t ip = 0; ip < psis.size(); ++ip) {
                const auto prod = product_character(psis[ip], chi);
                if (prod.is_principal()) {
                    ++out.excluded;
                    continue;
                }
                const double w = std::norm(gauss_sum_char(prod)) / phi_m;
                Complex s{};
                for (i64 n = 1; n <= N; ++n) s += z[static_cast<std::size_t>(n - 1)] * prod(n);
                out.lhs += w * std::norm(s);
                ++out.terms;
                if (psi_weight[ip] > 0.0) {
                    const double ratio = w / psi_weight[ip];
                    out.min_weight_ratio = have_ratio ? std::min(out.min_weight_ratio, ratio) : ratio;
                    have_ratio = true;
                    if (ratio < 1.0 - 1e-9) out.weights_dominate = false;
                }
            }
        }
    }
    out.holds = out.lhs <= out.rhs + 1e-6 * out.rhs;
    return out;
}

} // namespace polysieve

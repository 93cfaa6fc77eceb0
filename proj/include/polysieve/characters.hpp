#pragma once

// Dirichlet characters through the structure of (Z/n)^*: one cyclic
// generator per odd prime power (a lifted primitive root), -1 for 4, and
// <-1, 5> for 2^a with a >= 3, glued together by CRT. A character is its
// exponent vector on those generators.

#include <memory>
#include <span>
#include <vector>

#include "polysieve/expsum.hpp"
#include "polysieve/quadpoly.hpp"

namespace polysieve {

class CharacterGroup {
public:
    static std::shared_ptr<const CharacterGroup> make(i64 n);

    i64 modulus() const { return n_; }
    i64 size() const { return size_; } // phi(n)
    // Cyclic factors: generator residue mod n and its order.
    std::span<const i64> generators() const { return gens_; }
    std::span<const i64> orders() const { return orders_; }
    i64 exponent() const { return exponent_; } // lcm of the orders

    bool is_unit(i64 a) const { return unit_[static_cast<std::size_t>(mod_floor(a, n_))] != 0; }
    // Discrete logarithm of a unit on the generators.
    std::span<const i64> log(i64 a) const;

private:
    CharacterGroup() = default;

    i64 n_ = 1;
    i64 size_ = 1;
    i64 exponent_ = 1;
    std::vector<i64> gens_;
    std::vector<i64> orders_;
    std::vector<char> unit_;
    std::vector<i64> logs_; // n_ rows of gens_.size() entries
};

class DirichletCharacter {
public:
    DirichletCharacter(std::shared_ptr<const CharacterGroup> group, std::vector<i64> exponents);

    i64 modulus() const { return group_->modulus(); }
    const CharacterGroup& group() const { return *group_; }
    std::span<const i64> exponents() const { return exponents_; }
    // Position in characters_mod(modulus()) (mixed radix, first factor fastest).
    i64 index() const;

    // chi(a) = e(phase(a) / group().exponent()) on units, 0 elsewhere.
    Complex operator()(i64 a) const;
    i64 phase(i64 a) const;

    bool is_principal() const;
    i64 conductor() const;
    bool is_primitive() const { return conductor() == modulus(); }

private:
    std::shared_ptr<const CharacterGroup> group_;
    std::vector<i64> exponents_;
    mutable i64 conductor_ = 0;
};

// All phi(n) characters mod n; index 0 is principal.
std::vector<DirichletCharacter> characters_mod(i64 n);
DirichletCharacter character_at(i64 n, i64 index);

// tau(chi) = sum_{a <= n} chi(a) e(a/n)
Complex gauss_sum_char(const DirichletCharacter& chi);

// psi * chi on the group mod r f, for coprime r and f.
DirichletCharacter product_character(const DirichletCharacter& psi, const DirichletCharacter& chi);

struct TauIdentity {
    Complex tau_product;
    Complex tau_psi;
    double lhs = 0.0; // |tau(psi chi)|
    double rhs = 0.0; // |tau(psi)| sqrt(f)
    double rel_error = 0.0;
    bool holds = false;
};

// |tau(psi chi)| = |tau(psi)| sqrt(f) for coprime moduli and primitive chi mod f.
// DomainError when the moduli share a factor or chi is imprimitive.
TauIdentity verify_tau_identity(const DirichletCharacter& psi, const DirichletCharacter& chi,
                                double tol = 1e-8);

struct MultSieveCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;          // lhs <= rhs (1 + 1e-6)
    double min_weight_ratio = 0.0; // min of (|tau(psi chi)|^2 / phi(r f)) / (|tau(psi)|^2 / phi(r))
    bool weights_dominate = true;
    i64 terms = 0;               // products psi chi counted on the left
    i64 excluded = 0;            // principal products left out
};

// Left: sum over q <= Q with (r, f(q)) = 1, psi mod r, primitive chi mod f(q),
// psi chi not principal, of |tau(psi chi)|^2 / phi(r f(q)) |sum_n z_n psi chi(n)|^2.
// Right: sum over the same q and a mod r f(q), (a, r f(q)) = 1, of
// |sum_n z_n e(a n / (r f(q)))|^2.
MultSieveCheck mult_sieve_check(const QuadPoly& f, i64 Q, i64 r, std::span<const Complex> z);

} // namespace polysieve

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "polysieve/arith.hpp"

namespace polysieve {

// Closed integer interval [lo, hi]; empty when lo > hi.
struct IntRange {
    i64 lo = 1;
    i64 hi = 0;

    bool empty() const { return lo > hi; }
    i64 size() const { return empty() ? 0 : hi - lo + 1; }
    friend bool operator==(const IntRange&, const IntRange&) = default;
};

// f(q) = A q^2 + B q + C with f(1) >= 1 and f strictly increasing on the
// naturals. Construct through make(); the invariants hold for every instance.
class QuadPoly {
public:
    static QuadPoly make(i64 A, i64 B, i64 C);

    i64 A() const { return A_; }
    i64 B() const { return B_; }
    i64 C() const { return C_; }
    i64 discriminant() const { return disc_; }

    // Exact value for q >= 1; OverflowError if it leaves 64 bits.
    i64 eval(i64 q) const;
    // Same, in 128 bits, for range searches that may probe past the limit.
    i128 eval_wide(i64 q) const;

    std::string to_string() const;

    friend bool operator==(const QuadPoly&, const QuadPoly&) = default;

private:
    QuadPoly(i64 A, i64 B, i64 C, i64 disc) : A_(A), B_(B), C_(C), disc_(disc) {}

    i64 A_;
    i64 B_;
    i64 C_;
    i64 disc_;
};

// {q <= Q : A M^2 < f(q) <= 2 A M^2}. f is increasing so the set is an
// interval.
IntRange dyadic_block(const QuadPoly& f, i64 M, i64 Q);

// Generalised block {q <= Q : A 2^j < f(q) <= A 2^(j+1)}. For even j this is
// dyadic_block with M = 2^(j/2); consecutive j tile {q <= Q : f(q) > A}.
IntRange dyadic_window(const QuadPoly& f, int j, i64 Q);

struct DyadicPiece {
    int j = 0;          // window (A 2^j, A 2^(j+1)]
    IntRange block;
};

// Non-empty windows j = 0, 1, 2, ... covering {q <= Q : f(q) > A}.
std::vector<DyadicPiece> dyadic_tiling(const QuadPoly& f, i64 Q);

struct HypothesisCheck {
    bool holds = false;
    bool disc_condition = false;  // Q >= |disc| / A^2
    bool growth_condition = false; // 3 A Q^2 >= f(Q)
    double disc_margin = 0.0;     // Q - |disc| / A^2
    double growth_margin = 0.0;   // 3 A Q^2 - f(Q)
};

HypothesisCheck hypothesis_check(const QuadPoly& f, i64 Q);

} // namespace polysieve

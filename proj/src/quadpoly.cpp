#include "polysieve/quadpoly.hpp"

#include <cstdlib>

namespace polysieve {

QuadPoly QuadPoly::make(i64 A, i64 B, i64 C) {
    const std::string which = "(" + std::to_string(A) + ", " + std::to_string(B) + ", " +
                              std::to_string(C) + ")";
    if (A <= 0) throw InvalidArgument("invalid modulus polynomial " + which + ": A must be >= 1");
    if (checked_add(checked_add(A, B), C) <= 0) {
        throw InvalidArgument("invalid modulus polynomial " + which + ": f(1) = A+B+C must be >= 1");
    }
    if (checked_add(checked_mul(3, A), B) <= 0) {
        throw InvalidArgument("invalid modulus polynomial " + which +
                              ": 3A+B must be >= 1 for f to increase on the naturals");
    }
    const i64 disc = checked_sub(checked_mul(B, B), checked_mul(checked_mul(4, A), C));
    return QuadPoly(A, B, C, disc);
}

i128 QuadPoly::eval_wide(i64 q) const {
    const i128 x = q;
    return (static_cast<i128>(A_) * x + B_) * x + C_;
}

i64 QuadPoly::eval(i64 q) const {
    if (q < 1) throw InvalidArgument("eval: q must be >= 1");
    // |q| < 2^32 keeps A q^2 representable in 128 bits for any 64-bit A.
    if (q > (i64{1} << 32)) throw OverflowError("eval: q too large");
    return narrow(eval_wide(q));
}

std::string QuadPoly::to_string() const {
    return std::to_string(A_) + "q^2 + " + std::to_string(B_) + "q + " + std::to_string(C_);
}

namespace {

// Smallest q in [1, Q+1] with f(q) > bound (Q+1 if none).
i64 first_above(const QuadPoly& f, i128 bound, i64 Q) {
    i64 lo = 1, hi = Q + 1;
    while (lo < hi) {
        const i64 mid = lo + (hi - lo) / 2;
        if (f.eval_wide(mid) > bound) hi = mid;
        else lo = mid + 1;
    }
    return lo;
}

IntRange window(const QuadPoly& f, i128 low_exclusive, i128 high_inclusive, i64 Q) {
    if (Q < 1) return {};
    const i64 lo = first_above(f, low_exclusive, Q);
    const i64 hi = first_above(f, high_inclusive, Q) - 1;
    return {lo, hi};
}

} // namespace

IntRange dyadic_block(const QuadPoly& f, i64 M, i64 Q) {
    if (M < 1) throw InvalidArgument("dyadic_block: M must be >= 1");
    if (Q < 1) throw InvalidArgument("dyadic_block: Q must be >= 1");
    if (Q > (i64{1} << 32)) throw OverflowError("dyadic_block: Q too large");
    const i128 base = static_cast<i128>(f.A()) * M * M;
    return window(f, base, 2 * base, Q);
}

IntRange dyadic_window(const QuadPoly& f, int j, i64 Q) {
    if (j < 0 || j > 120) throw InvalidArgument("dyadic_window: j out of range");
    if (Q < 1) throw InvalidArgument("dyadic_window: Q must be >= 1");
    const i128 base = static_cast<i128>(f.A()) << j;
    return window(f, base, 2 * base, Q);
}

std::vector<DyadicPiece> dyadic_tiling(const QuadPoly& f, i64 Q) {
    std::vector<DyadicPiece> pieces;
    const i128 top = f.eval_wide(Q);
    for (int j = 0; (static_cast<i128>(f.A()) << j) < top; ++j) {
        IntRange r = dyadic_window(f, j, Q);
        if (!r.empty()) pieces.push_back({j, r});
    }
    return pieces;
}

HypothesisCheck hypothesis_check(const QuadPoly& f, i64 Q) {
    if (Q < 1) throw InvalidArgument("hypothesis_check: Q must be >= 1");
    HypothesisCheck h;
    const i128 A = f.A();
    const i128 abs_disc = f.discriminant() < 0 ? -static_cast<i128>(f.discriminant()) : f.discriminant();
    h.disc_condition = static_cast<i128>(Q) * A * A >= abs_disc;
    const i128 lhs = 3 * A * Q * Q;
    const i128 fq = f.eval_wide(Q);
    h.growth_condition = lhs >= fq;
    h.disc_margin = static_cast<double>(Q) - static_cast<double>(abs_disc) / static_cast<double>(A * A);
    h.growth_margin = static_cast<double>(lhs - fq);
    h.holds = h.disc_condition && h.growth_condition;
    return h;
}

} // namespace polysieve

#pragma once

#include <compare>
#include <string>
#include <string_view>

#include "polysieve/arith.hpp"

namespace polysieve {

// Reduced fraction num/den with den >= 1. Arithmetic is exact; results
// that leave 64 bits raise OverflowError.
class Rational {
public:
    Rational() = default;
    Rational(i64 num) : num_(num), den_(1) {} // NOLINT: implicit from integer is intended
    Rational(i64 num, i64 den);

    i64 num() const { return num_; }
    i64 den() const { return den_; }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    long double to_long_double() const {
        return static_cast<long double>(num_) / static_cast<long double>(den_);
    }

    // "a/b", always with the denominator, as used in reports.
    std::string to_string() const;
    static Rational parse(std::string_view text);

    i64 floor() const { return floor_div(num_, den_); }
    // Fractional part in [0, 1).
    Rational frac() const { return Rational(mod_floor(num_, den_), den_, Reduced{}); }
    Rational abs() const { return num_ < 0 ? Rational(-num_, den_, Reduced{}) : *this; }

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational operator-() const { return Rational(checked_sub(0, num_), den_, Reduced{}); }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const i128 l = static_cast<i128>(a.num_) * b.den_;
        const i128 r = static_cast<i128>(b.num_) * a.den_;
        return l <=> r;
    }

private:
    struct Reduced {};
    Rational(i64 num, i64 den, Reduced) : num_(num), den_(den) {}
    static Rational from_wide(i128 num, i128 den);

    i64 num_ = 0;
    i64 den_ = 1;
};

// Distance to the nearest integer, exactly.
Rational dist_to_int(const Rational& x);

} // namespace polysieve

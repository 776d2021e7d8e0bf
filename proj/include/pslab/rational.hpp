#pragma once

#include <string>
#include <string_view>
#include <utility>

#include "pslab/bigint.hpp"

namespace pslab {

/// Exact rational number. Always in lowest terms with a positive denominator;
/// zero is canonically 0/1. All arithmetic is exact — nothing in the
/// allocation pipeline ever rounds.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long v) : num_(v), den_(1) {}
    Rational(int v) : num_(static_cast<long long>(v)), den_(1) {}
    Rational(BigInt numerator, BigInt denominator);
    explicit Rational(BigInt integer) : num_(std::move(integer)), den_(1) {}

    /// Parses "p/q" or a bare integer "k". Throws std::invalid_argument.
    static Rational parse(std::string_view text);

    const BigInt& num() const noexcept { return num_; }
    const BigInt& den() const noexcept { return den_; }

    bool is_zero() const noexcept { return num_.is_zero(); }
    bool is_integer() const noexcept;
    int sign() const noexcept { return num_.sign(); }

    Rational operator-() const;
    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    int compare(const Rational& o) const;
    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const { return compare(o) < 0; }
    bool operator<=(const Rational& o) const { return compare(o) <= 0; }
    bool operator>(const Rational& o) const { return compare(o) > 0; }
    bool operator>=(const Rational& o) const { return compare(o) >= 0; }

    Rational abs() const;

    /// Greatest rational g such that both a/g and b/g are integers.
    /// gcd(0, x) == |x|.
    static Rational gcd(const Rational& a, const Rational& b);

    /// Lowest terms; integers render without the denominator ("3/4", "5").
    std::string to_string() const;

    /// Decimal expansion rounded half-up to `places` digits; exact arithmetic
    /// throughout, used only for rendering.
    std::string to_decimal(int places) const;

    double to_double() const noexcept { return num_.to_double() / den_.to_double(); }

private:
    BigInt num_;
    BigInt den_;

    void normalize();
};

inline Rational min(const Rational& a, const Rational& b) { return a <= b ? a : b; }
inline Rational max(const Rational& a, const Rational& b) { return a >= b ? a : b; }

}  // namespace pslab

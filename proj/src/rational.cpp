#include "pslab/rational.hpp"

#include <stdexcept>

namespace pslab {

Rational::Rational(BigInt numerator, BigInt denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
    if (den_.is_zero()) throw std::domain_error("Rational: zero denominator");
    normalize();
}

void Rational::normalize() {
    if (den_.is_negative()) {
        num_ = -num_;
        den_ = -den_;
    }
    if (num_.is_zero()) {
        den_ = BigInt(1);
        return;
    }
    BigInt g = BigInt::gcd(num_, den_);
    if (g != BigInt(1)) {
        num_ = num_ / g;
        den_ = den_ / g;
    }
}

bool Rational::is_integer() const noexcept { return den_ == BigInt(1); }

Rational Rational::operator-() const {
    Rational r(*this);
    r.num_ = -r.num_;
    return r;
}

Rational Rational::operator+(const Rational& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    // Knuth's reduced addition keeps intermediate gcds small.
    BigInt g = BigInt::gcd(den_, o.den_);
    if (g == BigInt(1)) {
        Rational r;
        r.num_ = num_ * o.den_ + o.num_ * den_;
        r.den_ = den_ * o.den_;
        if (r.num_.is_zero()) r.den_ = BigInt(1);
        return r;
    }
    BigInt db = den_ / g;
    BigInt dob = o.den_ / g;
    BigInt t = num_ * dob + o.num_ * db;
    BigInt g2 = BigInt::gcd(t, g);
    Rational r;
    r.num_ = g2 == BigInt(1) ? std::move(t) : t / g2;
    r.den_ = (den_ / g2) * dob;
    if (r.num_.is_zero()) r.den_ = BigInt(1);
    return r;
}

Rational Rational::operator-(const Rational& o) const { return *this + (-o); }

Rational Rational::operator*(const Rational& o) const {
    Rational r;
    if (is_zero() || o.is_zero()) return r;
    BigInt g1 = BigInt::gcd(num_, o.den_);
    BigInt g2 = BigInt::gcd(o.num_, den_);
    r.num_ = (num_ / g1) * (o.num_ / g2);
    r.den_ = (den_ / g2) * (o.den_ / g1);
    return r;
}

Rational Rational::operator/(const Rational& o) const {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    Rational inv;
    inv.num_ = o.den_;
    inv.den_ = o.num_;
    if (inv.den_.is_negative()) {
        inv.num_ = -inv.num_;
        inv.den_ = -inv.den_;
    }
    return *this * inv;
}

int Rational::compare(const Rational& o) const {
    int s = num_.sign();
    int os = o.num_.sign();
    if (s != os) return s < os ? -1 : 1;
    return (num_ * o.den_).compare(o.num_ * den_);
}

Rational Rational::abs() const {
    return sign() < 0 ? -*this : *this;
}

Rational Rational::gcd(const Rational& a, const Rational& b) {
    if (a.is_zero()) return b.abs();
    if (b.is_zero()) return a.abs();
    // gcd(p1/q1, p2/q2) = gcd(p1*q2, p2*q1) / (q1*q2)
    BigInt n = BigInt::gcd(a.num_ * b.den_, b.num_ * a.den_);
    return Rational(std::move(n), a.den_ * b.den_);
}

Rational Rational::parse(std::string_view text) {
    std::size_t slash = text.find('/');
    if (slash != std::string_view::npos) {
        BigInt n = BigInt::from_decimal(text.substr(0, slash));
        BigInt d = BigInt::from_decimal(text.substr(slash + 1));
        if (d.is_zero()) throw std::invalid_argument("Rational: zero denominator");
        return Rational(std::move(n), std::move(d));
    }
    std::size_t dot = text.find('.');
    if (dot == std::string_view::npos) {
        return Rational(BigInt::from_decimal(text));
    }
    // Decimal notation stays exact: "0.3" is 3/10.
    std::string_view head = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    if (frac.empty()) throw std::invalid_argument("Rational: trailing decimal point");
    bool negative = !head.empty() && head[0] == '-';
    if (negative || (!head.empty() && head[0] == '+')) head = head.substr(1);
    BigInt scale(1);
    for (char c : frac) {
        if (c < '0' || c > '9') throw std::invalid_argument("Rational: bad digit");
        scale *= BigInt(10);
    }
    BigInt value = (head.empty() ? BigInt(0) : BigInt::from_decimal(head)) * scale +
                   BigInt::from_decimal(frac);
    if (negative) value = -value;
    return Rational(std::move(value), std::move(scale));
}

std::string Rational::to_string() const {
    if (is_integer()) return num_.to_string();
    return num_.to_string() + "/" + den_.to_string();
}

std::string Rational::to_decimal(int places) const {
    BigInt scale(1);
    for (int i = 0; i < places; ++i) scale *= BigInt(10);
    // Round half-up on the magnitude.
    BigInt scaled_twice = num_.is_negative() ? -(num_ * scale * BigInt(2)) : num_ * scale * BigInt(2);
    BigInt q = (scaled_twice + den_) / (den_ * BigInt(2));
    auto [ip, fp] = BigInt::divmod(q, scale);
    std::string out = ip.to_string();
    if (num_.is_negative() && !(ip.is_zero() && fp.is_zero())) out.insert(0, 1, '-');
    if (places > 0) {
        std::string frac = fp.to_string();
        frac.insert(0, static_cast<std::size_t>(places) - frac.size(), '0');
        out += "." + frac;
    }
    return out;
}

}  // namespace pslab

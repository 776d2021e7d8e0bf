#include "pslab/bigint.hpp"

#include <algorithm>
#include <cassert>
#include <cstring>
#include <stdexcept>
#include <vector>

namespace pslab {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

namespace {

int mag_cmp(const u64* a, std::size_t an, const u64* b, std::size_t bn) {
    if (an != bn) return an < bn ? -1 : 1;
    for (std::size_t i = an; i-- > 0;) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
}

// dst must hold max(an, bn) + 1 limbs; returns limb count.
std::size_t mag_add(const u64* a, std::size_t an, const u64* b, std::size_t bn, u64* dst) {
    if (an < bn) {
        std::swap(a, b);
        std::swap(an, bn);
    }
    u64 carry = 0;
    std::size_t i = 0;
    for (; i < bn; ++i) {
        u64 s = a[i] + carry;
        carry = s < carry;
        u64 t = s + b[i];
        carry += t < s;
        dst[i] = t;
    }
    for (; i < an; ++i) {
        u64 t = a[i] + carry;
        carry = t < carry;
        dst[i] = t;
    }
    dst[an] = carry;
    return an + (carry != 0);
}

// Requires |a| >= |b|; dst must hold an limbs; returns limb count.
std::size_t mag_sub(const u64* a, std::size_t an, const u64* b, std::size_t bn, u64* dst) {
    u64 borrow = 0;
    std::size_t i = 0;
    for (; i < bn; ++i) {
        u64 bi = b[i] + borrow;
        borrow = bi < borrow;
        borrow += a[i] < bi;
        dst[i] = a[i] - bi;
    }
    for (; i < an; ++i) {
        u64 bi = borrow;
        borrow = a[i] < bi;
        dst[i] = a[i] - bi;
    }
    assert(borrow == 0);
    while (an > 0 && dst[an - 1] == 0) --an;
    return an;
}

// dst must hold an + bn zeroed limbs; returns limb count.
std::size_t mag_mul(const u64* a, std::size_t an, const u64* b, std::size_t bn, u64* dst) {
    for (std::size_t i = 0; i < an; ++i) {
        u64 carry = 0;
        u64 ai = a[i];
        for (std::size_t j = 0; j < bn; ++j) {
            u128 cur = static_cast<u128>(ai) * b[j] + dst[i + j] + carry;
            dst[i + j] = static_cast<u64>(cur);
            carry = static_cast<u64>(cur >> 64);
        }
        dst[i + bn] = carry;
    }
    std::size_t rn = an + bn;
    while (rn > 0 && dst[rn - 1] == 0) --rn;
    return rn;
}

// q must hold an limbs; returns remainder.
u64 mag_div_small(const u64* a, std::size_t an, u64 d, u64* q) {
    u64 rem = 0;
    for (std::size_t i = an; i-- > 0;) {
        u128 cur = (static_cast<u128>(rem) << 64) | a[i];
        q[i] = static_cast<u64>(cur / d);
        rem = static_cast<u64>(cur % d);
    }
    return rem;
}

u64 gcd_u64(u64 a, u64 b) {
    if (a == 0) return b;
    if (b == 0) return a;
    int sh = __builtin_ctzll(a | b);
    a >>= __builtin_ctzll(a);
    while (b != 0) {
        b >>= __builtin_ctzll(b);
        if (a > b) std::swap(a, b);
        b -= a;
    }
    return a << sh;
}

}  // namespace

void BigInt::set_uint64(u64 v, int sign) noexcept {
    release();
    cap_ = kInlineLimbs;
    small_[0] = v;
    size_ = v != 0;
    sign_ = static_cast<std::int8_t>(size_ ? sign : 0);
}

void BigInt::release() noexcept {
    if (!inlined()) delete[] heap_;
    cap_ = kInlineLimbs;
    size_ = 0;
    sign_ = 0;
}

u64* BigInt::alloc(std::uint32_t n) {
    release();
    if (n > kInlineLimbs) {
        heap_ = new u64[n];
        cap_ = n;
    }
    size_ = n;
    return limbs();
}

void BigInt::trim() noexcept {
    const u64* p = limbs();
    while (size_ > 0 && p[size_ - 1] == 0) --size_;
    if (size_ == 0) sign_ = 0;
}

BigInt::BigInt(const BigInt& o) : sign_(o.sign_), size_(o.size_), cap_(kInlineLimbs) {
    if (o.size_ > kInlineLimbs) {
        heap_ = new u64[o.size_];
        cap_ = o.size_;
        std::memcpy(heap_, o.heap_, o.size_ * sizeof(u64));
    } else {
        std::memcpy(small_, o.limbs(), o.size_ * sizeof(u64));
    }
}

BigInt::BigInt(BigInt&& o) noexcept : sign_(o.sign_), size_(o.size_), cap_(o.cap_) {
    if (o.inlined()) {
        std::memcpy(small_, o.small_, o.size_ * sizeof(u64));
    } else {
        heap_ = o.heap_;
        o.cap_ = kInlineLimbs;
    }
    o.size_ = 0;
    o.sign_ = 0;
}

BigInt& BigInt::operator=(const BigInt& o) {
    if (this == &o) return *this;
    if (o.size_ <= cap_) {
        std::memcpy(limbs(), o.limbs(), o.size_ * sizeof(u64));
        size_ = o.size_;
        sign_ = o.sign_;
    } else {
        u64* p = alloc(o.size_);
        std::memcpy(p, o.limbs(), o.size_ * sizeof(u64));
        sign_ = o.sign_;
    }
    return *this;
}

BigInt& BigInt::operator=(BigInt&& o) noexcept {
    if (this == &o) return *this;
    release();
    sign_ = o.sign_;
    size_ = o.size_;
    cap_ = o.cap_;
    if (o.inlined()) {
        std::memcpy(small_, o.small_, o.size_ * sizeof(u64));
    } else {
        heap_ = o.heap_;
        o.cap_ = kInlineLimbs;
    }
    o.size_ = 0;
    o.sign_ = 0;
    return *this;
}

BigInt BigInt::from_limbs(const u64* p, std::size_t n, int sign) {
    while (n > 0 && p[n - 1] == 0) --n;
    BigInt r;
    if (n == 0) return r;
    u64* dst = r.alloc(static_cast<std::uint32_t>(n));
    std::memcpy(dst, p, n * sizeof(u64));
    r.sign_ = static_cast<std::int8_t>(sign);
    return r;
}

int BigInt::compare(const BigInt& o) const noexcept {
    if (sign_ != o.sign_) return sign_ < o.sign_ ? -1 : 1;
    int m = mag_cmp(limbs(), size_, o.limbs(), o.size_);
    return sign_ >= 0 ? m : -m;
}

BigInt BigInt::operator-() const {
    BigInt r(*this);
    r.sign_ = static_cast<std::int8_t>(-r.sign_);
    return r;
}

BigInt BigInt::operator+(const BigInt& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    BigInt r;
    if (sign_ == o.sign_) {
        std::uint32_t need = std::max(size_, o.size_) + 1;
        if (need <= kInlineLimbs) {
            r.size_ = static_cast<std::uint32_t>(
                mag_add(limbs(), size_, o.limbs(), o.size_, r.small_));
        } else {
            u64* dst = r.alloc(need);
            r.size_ = static_cast<std::uint32_t>(
                mag_add(limbs(), size_, o.limbs(), o.size_, dst));
        }
        r.sign_ = sign_;
        return r;
    }
    int m = mag_cmp(limbs(), size_, o.limbs(), o.size_);
    if (m == 0) return r;
    const BigInt* big = m > 0 ? this : &o;
    const BigInt* sml = m > 0 ? &o : this;
    u64* dst = big->size_ <= kInlineLimbs ? r.small_ : r.alloc(big->size_);
    std::size_t n = mag_sub(big->limbs(), big->size_, sml->limbs(), sml->size_, dst);
    r.size_ = static_cast<std::uint32_t>(n);
    r.sign_ = big->sign_;
    r.trim();
    return r;
}

BigInt BigInt::operator-(const BigInt& o) const { return *this + (-o); }

BigInt BigInt::operator*(const BigInt& o) const {
    BigInt r;
    if (is_zero() || o.is_zero()) return r;
    if (size_ == 1 && o.size_ == 1) {
        u128 p = static_cast<u128>(limbs()[0]) * o.limbs()[0];
        r.small_[0] = static_cast<u64>(p);
        r.small_[1] = static_cast<u64>(p >> 64);
        r.size_ = r.small_[1] ? 2 : 1;
        r.sign_ = static_cast<std::int8_t>(sign_ * o.sign_);
        return r;
    }
    std::uint32_t need = size_ + o.size_;
    u64* dst;
    if (need <= kInlineLimbs) {
        dst = r.small_;
        r.size_ = need;
    } else {
        dst = r.alloc(need);
    }
    std::memset(dst, 0, need * sizeof(u64));
    r.size_ = static_cast<std::uint32_t>(mag_mul(limbs(), size_, o.limbs(), o.size_, dst));
    r.sign_ = static_cast<std::int8_t>(sign_ * o.sign_);
    return r;
}

std::pair<BigInt, BigInt> BigInt::divmod(const BigInt& a, const BigInt& b) {
    if (b.is_zero()) throw std::domain_error("BigInt: division by zero");
    int m = mag_cmp(a.limbs(), a.size_, b.limbs(), b.size_);
    if (m < 0) return {BigInt(), a};
    if (b.size_ == 1) {
        std::vector<u64> q(a.size_);
        u64 rem = mag_div_small(a.limbs(), a.size_, b.limbs()[0], q.data());
        BigInt qq = from_limbs(q.data(), q.size(), a.sign_ * b.sign_);
        BigInt rr;
        if (rem != 0) rr.set_uint64(rem, a.sign_);
        return {std::move(qq), std::move(rr)};
    }

    // Knuth algorithm D. Normalize so the divisor's top limb has its high bit set.
    const std::size_t n = b.size_;
    const std::size_t mlen = a.size_;
    int shift = __builtin_clzll(b.limbs()[n - 1]);
    std::vector<u64> u(mlen + 1, 0), v(n, 0);
    {
        const u64* ap = a.limbs();
        const u64* bp = b.limbs();
        if (shift == 0) {
            std::copy(ap, ap + mlen, u.begin());
            std::copy(bp, bp + n, v.begin());
        } else {
            for (std::size_t i = mlen; i-- > 0;) {
                u64 hi = ap[i] << shift;
                u64 lo = i > 0 ? ap[i - 1] >> (64 - shift) : 0;
                u[i] = hi | lo;
            }
            u[mlen] = ap[mlen - 1] >> (64 - shift);
            for (std::size_t i = n; i-- > 0;) {
                u64 hi = bp[i] << shift;
                u64 lo = i > 0 ? bp[i - 1] >> (64 - shift) : 0;
                v[i] = hi | lo;
            }
        }
    }
    std::vector<u64> q(mlen - n + 1, 0);
    constexpr u128 kBase = static_cast<u128>(1) << 64;
    for (std::size_t j = mlen - n + 1; j-- > 0;) {
        u128 num = (static_cast<u128>(u[j + n]) << 64) | u[j + n - 1];
        u128 qhat = num / v[n - 1];
        u128 rhat = num % v[n - 1];
        while (qhat >= kBase ||
               qhat * v[n - 2] > ((rhat << 64) | u[j + n - 2])) {
            --qhat;
            rhat += v[n - 1];
            if (rhat >= kBase) break;
        }
        u64 q64 = static_cast<u64>(qhat);
        // Multiply-subtract q64 * v from u[j .. j+n].
        u64 borrow = 0;
        u64 carry = 0;
        for (std::size_t i = 0; i < n; ++i) {
            u128 p = static_cast<u128>(q64) * v[i] + carry;
            carry = static_cast<u64>(p >> 64);
            u64 sub = static_cast<u64>(p) + borrow;
            borrow = sub < static_cast<u64>(p);
            borrow += u[j + i] < sub;
            u[j + i] -= sub;
        }
        u128 tail = static_cast<u128>(carry) + borrow;
        borrow = static_cast<u128>(u[j + n]) < tail;
        u[j + n] = static_cast<u64>(u[j + n] - tail);
        if (borrow) {
            // q64 was one too large; add v back.
            --q64;
            u64 c = 0;
            for (std::size_t i = 0; i < n; ++i) {
                u64 s = u[j + i] + c;
                c = s < c;
                u64 t = s + v[i];
                c += t < s;
                u[j + i] = t;
            }
            u[j + n] += c;
        }
        q[j] = q64;
    }
    // Denormalize the remainder.
    std::vector<u64> r(n, 0);
    if (shift == 0) {
        std::copy(u.begin(), u.begin() + n, r.begin());
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            u64 lo = u[i] >> shift;
            u64 hi = i + 1 < n + 1 ? u[i + 1] << (64 - shift) : 0;
            r[i] = lo | hi;
        }
    }
    BigInt qq = from_limbs(q.data(), q.size(), a.sign_ * b.sign_);
    BigInt rr = from_limbs(r.data(), r.size(), a.sign_);
    return {std::move(qq), std::move(rr)};
}

BigInt BigInt::gcd(const BigInt& a, const BigInt& b) {
    if (a.is_zero()) {
        BigInt r(b);
        if (r.sign_ < 0) r.sign_ = 1;
        return r;
    }
    if (b.is_zero()) {
        BigInt r(a);
        if (r.sign_ < 0) r.sign_ = 1;
        return r;
    }
    if (a.size_ == 1 && b.size_ == 1) {
        BigInt r;
        r.set_uint64(gcd_u64(a.limbs()[0], b.limbs()[0]), 1);
        return r;
    }
    BigInt x(a), y(b);
    x.sign_ = 1;
    y.sign_ = 1;
    while (!y.is_zero()) {
        if (x.size_ == 1 && y.size_ == 1) {
            BigInt r;
            r.set_uint64(gcd_u64(x.limbs()[0], y.limbs()[0]), 1);
            return r;
        }
        BigInt rem = divmod(x, y).second;
        x = std::move(y);
        y = std::move(rem);
    }
    return x;
}

BigInt BigInt::from_decimal(std::string_view text) {
    std::size_t pos = 0;
    int sign = 1;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        sign = text[pos] == '-' ? -1 : 1;
        ++pos;
    }
    if (pos == text.size()) throw std::invalid_argument("BigInt: empty numeral");
    BigInt r;
    constexpr u64 chunk_base = 10000000000000000000ull;  // 10^19
    while (pos < text.size()) {
        std::size_t take = std::min<std::size_t>(19, text.size() - pos);
        u64 chunk = 0;
        u64 scale = 1;
        for (std::size_t i = 0; i < take; ++i) {
            char c = text[pos + i];
            if (c < '0' || c > '9') throw std::invalid_argument("BigInt: bad digit");
            chunk = chunk * 10 + static_cast<u64>(c - '0');
            scale *= 10;
        }
        r = r * BigInt(take == 19 ? chunk_base : scale) + BigInt(chunk);
        pos += take;
    }
    if (sign < 0 && !r.is_zero()) r.sign_ = -1;
    return r;
}

std::string BigInt::to_string() const {
    if (is_zero()) return "0";
    std::vector<u64> work(limbs(), limbs() + size_);
    std::size_t n = size_;
    std::string out;
    constexpr u64 chunk_base = 10000000000000000000ull;  // 10^19
    while (n > 0) {
        u64 rem = mag_div_small(work.data(), n, chunk_base, work.data());
        while (n > 0 && work[n - 1] == 0) --n;
        std::string part = std::to_string(rem);
        if (n > 0) part.insert(0, 19 - part.size(), '0');
        out.insert(0, part);
    }
    if (sign_ < 0) out.insert(0, 1, '-');
    return out;
}

std::uint64_t BigInt::to_uint64_abs() const {
    if (size_ > 1) throw std::overflow_error("BigInt: does not fit in 64 bits");
    return size_ ? limbs()[0] : 0;
}

double BigInt::to_double() const noexcept {
    double v = 0;
    const u64* p = limbs();
    for (std::size_t i = size_; i-- > 0;) v = v * 18446744073709551616.0 + static_cast<double>(p[i]);
    return sign_ < 0 ? -v : v;
}

}  // namespace pslab

#pragma once

#include <cstdint>
#include <type_traits>
#include <string>
#include <string_view>
#include <utility>

namespace pslab {

/// Signed arbitrary-precision integer, sign-magnitude with 64-bit limbs.
///
/// Values up to two limbs (|x| < 2^128) live inline; larger magnitudes spill
/// to the heap. Assignment enumeration runs millions of rational operations
/// whose operands almost always fit one limb, so the inline path is the one
/// that counts.
class BigInt {
public:
    BigInt() noexcept : sign_(0), size_(0), cap_(kInlineLimbs) {}

    template <typename T, std::enable_if_t<std::is_integral_v<T>>* = nullptr>
    BigInt(T v) : BigInt() {
        if (v == 0) return;
        if constexpr (std::is_signed_v<T>) {
            std::uint64_t mag = v < 0 ? ~static_cast<std::uint64_t>(v) + 1
                                      : static_cast<std::uint64_t>(v);
            set_uint64(mag, v < 0 ? -1 : 1);
        } else {
            set_uint64(static_cast<std::uint64_t>(v), 1);
        }
    }

    /// Parses an optionally signed decimal string. Throws std::invalid_argument
    /// on empty or non-digit input.
    static BigInt from_decimal(std::string_view text);

    BigInt(const BigInt& o);
    BigInt(BigInt&& o) noexcept;
    BigInt& operator=(const BigInt& o);
    BigInt& operator=(BigInt&& o) noexcept;
    ~BigInt() { release(); }

    bool is_zero() const noexcept { return size_ == 0; }
    bool is_negative() const noexcept { return sign_ < 0; }
    int sign() const noexcept { return sign_; }
    std::size_t limb_count() const noexcept { return size_; }

    /// Total ordering; returns -1, 0 or +1.
    int compare(const BigInt& o) const noexcept;

    BigInt operator-() const;
    BigInt operator+(const BigInt& o) const;
    BigInt operator-(const BigInt& o) const;
    BigInt operator*(const BigInt& o) const;

    BigInt& operator+=(const BigInt& o) { return *this = *this + o; }
    BigInt& operator-=(const BigInt& o) { return *this = *this - o; }
    BigInt& operator*=(const BigInt& o) { return *this = *this * o; }

    /// Truncated division; remainder carries the dividend's sign.
    /// Throws std::domain_error on zero divisor.
    static std::pair<BigInt, BigInt> divmod(const BigInt& a, const BigInt& b);
    BigInt operator/(const BigInt& o) const { return divmod(*this, o).first; }
    BigInt operator%(const BigInt& o) const { return divmod(*this, o).second; }

    /// Nonnegative greatest common divisor; gcd(0, 0) == 0.
    static BigInt gcd(const BigInt& a, const BigInt& b);

    bool operator==(const BigInt& o) const noexcept { return compare(o) == 0; }
    bool operator!=(const BigInt& o) const noexcept { return compare(o) != 0; }
    bool operator<(const BigInt& o) const noexcept { return compare(o) < 0; }
    bool operator<=(const BigInt& o) const noexcept { return compare(o) <= 0; }
    bool operator>(const BigInt& o) const noexcept { return compare(o) > 0; }
    bool operator>=(const BigInt& o) const noexcept { return compare(o) >= 0; }

    std::string to_string() const;

    /// Magnitude must fit in a single limb.
    std::uint64_t to_uint64_abs() const;
    bool fits_uint64_abs() const noexcept { return size_ <= 1; }

    /// Nearest double; only used for human-facing approximations.
    double to_double() const noexcept;

private:
    static constexpr std::uint32_t kInlineLimbs = 2;

    std::int8_t sign_;
    std::uint32_t size_;
    std::uint32_t cap_;
    union {
        std::uint64_t small_[kInlineLimbs];
        std::uint64_t* heap_;
    };

    bool inlined() const noexcept { return cap_ == kInlineLimbs; }
    const std::uint64_t* limbs() const noexcept { return inlined() ? small_ : heap_; }
    std::uint64_t* limbs() noexcept { return inlined() ? small_ : heap_; }

    void release() noexcept;
    /// Makes room for n limbs, discarding current contents.
    std::uint64_t* alloc(std::uint32_t n);
    void trim() noexcept;
    void set_uint64(std::uint64_t v, int sign) noexcept;

    static BigInt from_limbs(const std::uint64_t* p, std::size_t n, int sign);

    friend struct BigIntOps;
};

}  // namespace pslab

#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace modenergy {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

// Largest value accepted for the public inputs m and n. Keeping both below
// 2^63 guarantees that m*n and m(m-1)/2 fit comfortably in 128 bits.
inline constexpr u64 kInputCap = (u64{1} << 63) - 1;

// Arithmetic left the representable range. Nothing in this library wraps
// silently; every operation that can overflow goes through a checked path.
struct OverflowError : std::runtime_error {
    explicit OverflowError(const std::string& what) : std::runtime_error(what) {}
};

// A sieve or table build was asked to exceed its configured memory cap.
struct CapExceeded : std::runtime_error {
    explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

// A query fell outside the bound a table was built for.
struct RangeExceeded : std::runtime_error {
    explicit RangeExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Nonnegative integer with 128-bit range and checked arithmetic.
class WideInt {
public:
    constexpr WideInt() = default;
    constexpr WideInt(u64 v) : v_(v) {}  // implicit on purpose: u64 mixes freely

    static constexpr WideInt from_raw(u128 v) {
        WideInt w;
        w.v_ = v;
        return w;
    }

    constexpr u128 raw() const { return v_; }

    constexpr bool fits_u64() const { return v_ <= u128{~u64{0}}; }

    u64 as_u64() const {
        if (!fits_u64()) throw OverflowError("WideInt value exceeds 64 bits");
        return static_cast<u64>(v_);
    }

    WideInt operator+(WideInt o) const {
        u128 r;
        if (__builtin_add_overflow(v_, o.v_, &r)) throw OverflowError("WideInt addition overflow");
        return from_raw(r);
    }

    // Subtraction below zero violates the nonnegativity invariant.
    WideInt operator-(WideInt o) const {
        if (o.v_ > v_) throw OverflowError("WideInt subtraction below zero");
        return from_raw(v_ - o.v_);
    }

    WideInt operator*(WideInt o) const {
        u128 r;
        if (__builtin_mul_overflow(v_, o.v_, &r)) throw OverflowError("WideInt multiplication overflow");
        return from_raw(r);
    }

    WideInt operator/(WideInt o) const {
        if (o.v_ == 0) throw std::domain_error("WideInt division by zero");
        return from_raw(v_ / o.v_);
    }

    WideInt operator%(WideInt o) const {
        if (o.v_ == 0) throw std::domain_error("WideInt modulo by zero");
        return from_raw(v_ % o.v_);
    }

    WideInt& operator+=(WideInt o) { return *this = *this + o; }
    WideInt& operator-=(WideInt o) { return *this = *this - o; }
    WideInt& operator*=(WideInt o) { return *this = *this * o; }

    constexpr auto operator<=>(const WideInt&) const = default;

    std::string str() const {
        if (v_ == 0) return "0";
        char buf[40];
        int pos = 40;
        u128 x = v_;
        while (x != 0) {
            buf[--pos] = char('0' + int(x % 10));
            x /= 10;
        }
        return std::string(buf + pos, buf + 40);
    }

    // Decimal parse; rejects empty strings, junk and values beyond 128 bits.
    static WideInt parse(std::string_view s) {
        if (s.empty()) throw std::invalid_argument("WideInt::parse: empty string");
        u128 v = 0;
        for (char c : s) {
            if (c < '0' || c > '9') throw std::invalid_argument("WideInt::parse: non-digit");
            u128 r;
            if (__builtin_mul_overflow(v, u128{10}, &r) ||
                __builtin_add_overflow(r, u128(c - '0'), &r))
                throw OverflowError("WideInt::parse: value exceeds 128 bits");
            v = r;
        }
        return from_raw(v);
    }

private:
    u128 v_ = 0;
};

inline std::string to_string(WideInt v) { return v.str(); }

inline std::string to_string_i128(i128 v) {
    if (v < 0) return "-" + WideInt::from_raw(u128(-(v + 1)) + 1).str();
    return WideInt::from_raw(u128(v)).str();
}

}  // namespace modenergy

#pragma once

// Prime moduli, residues, base-p digit words and exact rationals.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "motzkin/errors.hpp"

namespace motzkin {

using BigInt = boost::multiprecision::cpp_int;

/// Deterministic trial division; exact for every 64-bit input.
constexpr bool is_prime(std::uint64_t n) noexcept {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    if (n % 3 == 0) return n == 3;
    for (std::uint64_t d = 5; d <= n / d; d += 6) {
        if (n % d == 0 || n % (d + 2) == 0) return false;
    }
    return true;
}

/// A prime modulus. Values are kept below 2^32 so that products of two
/// residues fit in 64 bits.
class Modulus {
public:
    explicit Modulus(std::uint64_t p) : p_(static_cast<std::uint32_t>(p)) {
        if (p > 0xFFFFFFFFull) throw not_prime_error("modulus exceeds 32 bits: " + std::to_string(p));
        if (!is_prime(p)) throw not_prime_error("modulus is not prime: " + std::to_string(p));
    }

    std::uint32_t value() const noexcept { return p_; }
    operator std::uint32_t() const noexcept { return p_; }

    friend bool operator==(Modulus, Modulus) = default;

private:
    std::uint32_t p_;
};

namespace detail {

inline std::uint32_t reduce(std::int64_t v, std::uint32_t p) noexcept {
    std::int64_t r = v % static_cast<std::int64_t>(p);
    return static_cast<std::uint32_t>(r < 0 ? r + p : r);
}

inline std::uint32_t reduce(const BigInt& v, std::uint32_t p) {
    BigInt r = v % p;
    if (r < 0) r += p;
    return r.convert_to<std::uint32_t>();
}

inline std::uint32_t mul(std::uint32_t x, std::uint32_t y, std::uint32_t p) noexcept {
    return static_cast<std::uint32_t>(static_cast<std::uint64_t>(x) * y % p);
}

inline std::uint32_t add(std::uint32_t x, std::uint32_t y, std::uint32_t p) noexcept {
    std::uint64_t s = static_cast<std::uint64_t>(x) + y;
    return static_cast<std::uint32_t>(s >= p ? s - p : s);
}

inline std::uint32_t sub(std::uint32_t x, std::uint32_t y, std::uint32_t p) noexcept {
    return x >= y ? x - y : static_cast<std::uint32_t>(static_cast<std::uint64_t>(x) + p - y);
}

inline std::uint32_t pow(std::uint32_t base, std::uint64_t e, std::uint32_t p) noexcept {
    std::uint32_t result = 1 % p;
    while (e > 0) {
        if (e & 1) result = mul(result, base, p);
        base = mul(base, base, p);
        e >>= 1;
    }
    return result;
}

// Extended Euclid; x must be nonzero mod p.
inline std::uint32_t inverse(std::uint32_t x, std::uint32_t p) noexcept {
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = p, new_r = x;
    while (new_r != 0) {
        std::int64_t q = r / new_r;
        t = std::exchange(new_t, t - q * new_t);
        r = std::exchange(new_r, r - q * new_r);
    }
    return reduce(t, p);
}

}  // namespace detail

/// An element of the prime field F_p.
class Residue {
public:
    Residue(std::int64_t v, Modulus m) : value_(detail::reduce(v, m)), mod_(m) {}
    Residue(const BigInt& v, Modulus m) : value_(detail::reduce(v, m)), mod_(m) {}

    static Residue from_reduced(std::uint32_t v, Modulus m) noexcept { return Residue(v, m, 0); }

    std::uint32_t value() const noexcept { return value_; }
    Modulus modulus() const noexcept { return mod_; }
    bool is_zero() const noexcept { return value_ == 0; }

    friend Residue operator+(Residue x, Residue y) {
        return from_reduced(detail::add(x.value_, y.value_, x.mod_), x.mod_);
    }
    friend Residue operator-(Residue x, Residue y) {
        return from_reduced(detail::sub(x.value_, y.value_, x.mod_), x.mod_);
    }
    friend Residue operator*(Residue x, Residue y) {
        return from_reduced(detail::mul(x.value_, y.value_, x.mod_), x.mod_);
    }
    Residue operator-() const { return from_reduced(detail::sub(0, value_, mod_), mod_); }
    Residue& operator+=(Residue y) { return *this = *this + y; }
    Residue& operator-=(Residue y) { return *this = *this - y; }
    Residue& operator*=(Residue y) { return *this = *this * y; }

    friend bool operator==(Residue x, Residue y) noexcept { return x.value_ == y.value_ && x.mod_ == y.mod_; }
    friend bool operator==(Residue x, std::int64_t y) noexcept { return x.value_ == detail::reduce(y, x.mod_); }

    friend std::ostream& operator<<(std::ostream& os, Residue r) { return os << r.value_; }

private:
    Residue(std::uint32_t v, Modulus m, int) noexcept : value_(v), mod_(m) {}

    std::uint32_t value_;
    Modulus mod_;
};

inline Residue mod_inverse(Residue r) {
    if (r.is_zero()) throw non_invertible_error("0 has no inverse mod " + std::to_string(r.modulus().value()));
    return Residue::from_reduced(detail::inverse(r.value(), r.modulus()), r.modulus());
}

/// r^e mod p. Negative exponents go through the inverse; 0^0 is 1.
inline Residue mod_pow(Residue r, std::int64_t e) {
    if (e < 0) {
        r = mod_inverse(r);
        e = -e;
    }
    return Residue::from_reduced(detail::pow(r.value(), static_cast<std::uint64_t>(e), r.modulus()),
                                 r.modulus());
}

// ---------------------------------------------------------------------------
// Digit words

/// Base-p digits, most significant first. Words that differ only by leading
/// zeros denote the same integer and compare equal.
class DigitWord {
public:
    explicit DigitWord(Modulus p) : mod_(p) {}

    DigitWord(std::vector<std::uint32_t> digits, Modulus p) : digits_(std::move(digits)), mod_(p) {
        for (std::uint32_t d : digits_) {
            if (d >= p.value())
                throw malformed_word_error("digit " + std::to_string(d) + " out of range for base " +
                                           std::to_string(p.value()));
        }
    }

    std::span<const std::uint32_t> digits() const noexcept { return digits_; }
    std::size_t size() const noexcept { return digits_.size(); }
    bool empty() const noexcept { return digits_.empty(); }
    Modulus modulus() const noexcept { return mod_; }
    std::uint32_t operator[](std::size_t i) const { return digits_[i]; }

    /// Drops leading zeros; the empty word is the canonical zero.
    DigitWord stripped() const {
        auto first = std::find_if(digits_.begin(), digits_.end(), [](std::uint32_t d) { return d != 0; });
        return DigitWord(std::vector<std::uint32_t>(first, digits_.end()), mod_, 0);
    }

    friend DigitWord concat(const DigitWord& u, const DigitWord& v) {
        std::vector<std::uint32_t> out(u.digits_);
        out.insert(out.end(), v.digits_.begin(), v.digits_.end());
        return DigitWord(std::move(out), u.mod_, 0);
    }

    friend bool operator==(const DigitWord& x, const DigitWord& y) {
        if (x.mod_ != y.mod_) return false;
        return x.stripped().digits_ == y.stripped().digits_;
    }

private:
    DigitWord(std::vector<std::uint32_t> digits, Modulus p, int) : digits_(std::move(digits)), mod_(p) {}

    std::vector<std::uint32_t> digits_;
    Modulus mod_;
};

/// Canonical base-p expansion; 0 maps to the single digit 0.
inline DigitWord to_digits(std::uint64_t n, Modulus p) {
    std::vector<std::uint32_t> digits;
    do {
        digits.push_back(static_cast<std::uint32_t>(n % p.value()));
        n /= p.value();
    } while (n > 0);
    std::reverse(digits.begin(), digits.end());
    return DigitWord(std::move(digits), p);
}

inline std::uint64_t from_digits(const DigitWord& w) {
    const std::uint64_t p = w.modulus().value();
    std::uint64_t n = 0;
    for (std::uint32_t d : w.digits()) {
        if (n > (UINT64_MAX - d) / p) throw malformed_word_error("digit word overflows 64 bits");
        n = n * p + d;
    }
    return n;
}

inline std::uint64_t from_digits(std::span<const std::uint32_t> digits, Modulus p) {
    return from_digits(DigitWord(std::vector<std::uint32_t>(digits.begin(), digits.end()), p));
}

// ---------------------------------------------------------------------------
// Exact rationals

/// Reduced fraction with positive denominator.
class ExactRatio {
public:
    ExactRatio() = default;
    ExactRatio(std::int64_t n) : value_(n) {}  // NOLINT(google-explicit-constructor)
    ExactRatio(const BigInt& num, const BigInt& den) {
        if (den == 0) throw error("ExactRatio with zero denominator");
        if (den < 0)
            value_ = Rational(BigInt(-num), BigInt(-den));
        else
            value_ = Rational(num, den);
    }

    BigInt numerator() const { return boost::multiprecision::numerator(value_); }
    BigInt denominator() const { return boost::multiprecision::denominator(value_); }

    friend ExactRatio operator+(const ExactRatio& x, const ExactRatio& y) { return ExactRatio(x.value_ + y.value_); }
    friend ExactRatio operator-(const ExactRatio& x, const ExactRatio& y) { return ExactRatio(x.value_ - y.value_); }
    friend ExactRatio operator*(const ExactRatio& x, const ExactRatio& y) { return ExactRatio(x.value_ * y.value_); }
    friend ExactRatio operator/(const ExactRatio& x, const ExactRatio& y) {
        if (y.value_ == 0) throw error("ExactRatio division by zero");
        return ExactRatio(x.value_ / y.value_);
    }
    ExactRatio operator-() const { return ExactRatio(-value_); }
    ExactRatio& operator+=(const ExactRatio& y) { return *this = *this + y; }

    friend bool operator==(const ExactRatio& x, const ExactRatio& y) { return x.value_ == y.value_; }
    friend std::strong_ordering operator<=>(const ExactRatio& x, const ExactRatio& y) {
        if (x.value_ < y.value_) return std::strong_ordering::less;
        if (x.value_ > y.value_) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    ExactRatio abs() const { return value_ < 0 ? ExactRatio(-value_) : *this; }

    double to_double() const { return value_.convert_to<double>(); }

    /// "num/den"; integers print as "num/1" so the format is uniform.
    std::string to_string() const { return numerator().str() + "/" + denominator().str(); }

    std::string decimal(int places = 6) const {
        std::ostringstream os;
        os << std::fixed << std::setprecision(places) << to_double();
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const ExactRatio& r) { return os << r.to_string(); }

private:
    using Rational = boost::multiprecision::cpp_rational;
    explicit ExactRatio(Rational v) : value_(std::move(v)) {}

    Rational value_{0};
};

// ---------------------------------------------------------------------------
// Multiplicative group F_p^x

/// Distinct prime factors of n, ascending.
inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d <= n / d; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

/// Multiplicative order of a nonzero residue.
inline std::uint64_t multiplicative_order(Residue r) {
    if (r.is_zero()) throw non_invertible_error("0 has no multiplicative order");
    const std::uint32_t p = r.modulus();
    std::uint64_t order = p - 1;
    for (std::uint64_t q : prime_factors(p - 1)) {
        while (order % q == 0 && detail::pow(r.value(), order / q, p) == 1) order /= q;
    }
    return order;
}

/// Order of the subgroup of F_p^x generated by nonzero values. F_p^x is
/// cyclic, so this is the lcm of the element orders.
inline std::uint64_t generated_subgroup_order(std::span<const std::uint32_t> values, Modulus p) {
    std::uint64_t order = 1;
    for (std::uint32_t v : values) {
        if (v % p.value() == 0) throw non_invertible_error("0 does not lie in F_p^x");
        order = std::lcm(order, multiplicative_order(Residue::from_reduced(v % p.value(), p)));
        if (order == p.value() - 1) break;
    }
    return order;
}

/// True iff the values generate all of F_p^x: for each prime q | p-1, some
/// value lies outside the index-q subgroup.
inline bool generates_unit_group(std::span<const std::uint32_t> values, Modulus p) {
    const std::uint32_t pm1 = p.value() - 1;
    for (std::uint64_t q : prime_factors(pm1)) {
        bool escapes = std::any_of(values.begin(), values.end(), [&](std::uint32_t v) {
            return detail::pow(v % p.value(), pm1 / q, p) != 1;
        });
        if (!escapes) return false;
    }
    return true;
}

}  // namespace motzkin

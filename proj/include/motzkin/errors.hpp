#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace motzkin {

/// Base class of every error raised by the library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class not_prime_error : public error {
public:
    using error::error;
};

class non_invertible_error : public error {
public:
    using error::error;
};

class malformed_word_error : public error {
public:
    using error::error;
};

/// A shift-combination whose width h is not below p.
class unsupported_width_error : public error {
public:
    using error::error;
};

/// The requested computation lies outside the range where the underlying
/// congruence is valid (e.g. a symmetry check at p = 2).
class out_of_scope_error : public error {
public:
    using error::error;
};

/// An enumeration or oracle request larger than its configured budget.
class budget_error : public error {
public:
    budget_error(const std::string& what, std::uint64_t required, std::uint64_t budget)
        : error(what + " (requires " + std::to_string(required) + ", budget " +
                std::to_string(budget) + ")"),
          required_(required),
          budget_(budget) {}

    std::uint64_t required() const noexcept { return required_; }
    std::uint64_t budget() const noexcept { return budget_; }

private:
    std::uint64_t required_;
    std::uint64_t budget_;
};

enum class Hypothesis {
    PGreaterThanTwo,
    DiscriminantInvertible,
    NoTrinomialZero,
    ANonzero,
};

inline const char* to_string(Hypothesis h) noexcept {
    switch (h) {
        case Hypothesis::PGreaterThanTwo: return "p > 2";
        case Hypothesis::DiscriminantInvertible: return "p does not divide b^2 - 4a^2";
        case Hypothesis::NoTrinomialZero: return "T_j != 0 mod p for all j < p";
        case Hypothesis::ANonzero: return "p does not divide a";
    }
    return "unknown hypothesis";
}

/// Raised when an evaluator's preconditions fail. Carries the first failed
/// hypothesis so callers can pick a fallback method.
class hypothesis_error : public error {
public:
    explicit hypothesis_error(Hypothesis h)
        : error(std::string("hypothesis violated: ") + to_string(h)), hypothesis_(h) {}

    Hypothesis hypothesis() const noexcept { return hypothesis_; }

private:
    Hypothesis hypothesis_;
};

}  // namespace motzkin

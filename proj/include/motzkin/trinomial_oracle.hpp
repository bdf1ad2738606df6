#pragma once

// Brute-force ground truth: exact Laurent polynomial powers and constant terms.
//
// Every sequence handled by the library is ct(P^n * Q) for the step
// polynomial P = a x^-1 + b + a x and a fixed weight Q. The routines here
// evaluate that definition literally over the integers, with no recurrences
// and no digit tricks, so they can serve as an independent reference.

#include <cstdint>
#include <initializer_list>
#include <map>
#include <utility>
#include <vector>

#include "motzkin/core_arith.hpp"

namespace motzkin {

struct SeqParams {
    std::int64_t a = 1;
    std::int64_t b = 1;

    friend bool operator==(const SeqParams&, const SeqParams&) = default;
};

/// Finitely supported map exponent -> coefficient. Zero coefficients are never stored.
class LaurentPoly {
public:
    using Exponent = std::int64_t;

    LaurentPoly() = default;

    LaurentPoly(std::initializer_list<std::pair<Exponent, std::int64_t>> terms) {
        for (const auto& [e, c] : terms) add_term(e, BigInt(c));
    }

    static LaurentPoly constant(std::int64_t c) { return LaurentPoly{{0, c}}; }

    void add_term(Exponent e, const BigInt& c) {
        if (c == 0) return;
        auto [it, inserted] = coeffs_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) coeffs_.erase(it);
        }
    }

    BigInt coefficient(Exponent e) const {
        auto it = coeffs_.find(e);
        return it == coeffs_.end() ? BigInt(0) : it->second;
    }

    BigInt constant_term() const { return coefficient(0); }

    /// Largest |exponent| with a nonzero coefficient; 0 for the zero polynomial.
    Exponent degree() const {
        if (coeffs_.empty()) return 0;
        Exponent lo = coeffs_.begin()->first;
        Exponent hi = coeffs_.rbegin()->first;
        return std::max(lo < 0 ? -lo : lo, hi < 0 ? -hi : hi);
    }

    bool is_zero() const noexcept { return coeffs_.empty(); }
    std::size_t term_count() const noexcept { return coeffs_.size(); }
    const std::map<Exponent, BigInt>& terms() const noexcept { return coeffs_; }

    friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

private:
    std::map<Exponent, BigInt> coeffs_;
};

inline LaurentPoly poly_mul(const LaurentPoly& f, const LaurentPoly& g) {
    LaurentPoly out;
    for (const auto& [ef, cf] : f.terms())
        for (const auto& [eg, cg] : g.terms()) out.add_term(ef + eg, cf * cg);
    return out;
}

inline LaurentPoly operator*(const LaurentPoly& f, const LaurentPoly& g) { return poly_mul(f, g); }

/// P = a x^-1 + b + a x.
inline LaurentPoly step_polynomial(const SeqParams& params) {
    return LaurentPoly{{-1, params.a}, {0, params.b}, {1, params.a}};
}

namespace weights {
inline LaurentPoly trinomial() { return LaurentPoly::constant(1); }
inline LaurentPoly motzkin() { return LaurentPoly{{0, 1}, {2, -1}}; }
inline LaurentPoly a005717() { return LaurentPoly{{1, 1}}; }
inline LaurentPoly riordan() { return LaurentPoly{{0, 1}, {1, -1}}; }
inline LaurentPoly a005773() { return LaurentPoly{{0, 1}, {1, 1}}; }
}  // namespace weights

/// Default ceiling on the index handed to the oracle.
inline constexpr std::uint64_t kOracleDefaultMaxN = 2000;

namespace detail {

inline BigInt pair_ct(const LaurentPoly& power, const LaurentPoly& weight) {
    BigInt ct = 0;
    for (const auto& [e, c] : weight.terms()) ct += c * power.coefficient(-e);
    return ct;
}

inline void check_oracle_budget(std::uint64_t n, std::uint64_t max_n) {
    if (n > max_n) throw budget_error("oracle index above cap", n, max_n);
}

}  // namespace detail

/// ct(P^n * weight) over the integers.
inline BigInt oracle_ct(const SeqParams& params, std::uint64_t n, const LaurentPoly& weight,
                        std::uint64_t max_n = kOracleDefaultMaxN) {
    detail::check_oracle_budget(n, max_n);
    const LaurentPoly step = step_polynomial(params);
    LaurentPoly power = LaurentPoly::constant(1);
    for (std::uint64_t i = 0; i < n; ++i) power = poly_mul(power, step);
    return detail::pair_ct(power, weight);
}

/// ct(P^n * weight) for n = 0 .. count-1, sharing the successive powers.
inline std::vector<BigInt> oracle_prefix(const SeqParams& params, std::uint64_t count, const LaurentPoly& weight,
                                         std::uint64_t max_n = kOracleDefaultMaxN) {
    std::vector<BigInt> out;
    if (count == 0) return out;
    detail::check_oracle_budget(count - 1, max_n);
    out.reserve(count);
    const LaurentPoly step = step_polynomial(params);
    LaurentPoly power = LaurentPoly::constant(1);
    for (std::uint64_t n = 0; n < count; ++n) {
        if (n > 0) power = poly_mul(power, step);
        out.push_back(detail::pair_ct(power, weight));
    }
    return out;
}

inline Residue oracle_seq_mod(const SeqParams& params, std::uint64_t n, const LaurentPoly& weight, Modulus p,
                              std::uint64_t max_n = kOracleDefaultMaxN) {
    return Residue(oracle_ct(params, n, weight, max_n), p);
}

/// oracle_prefix reduced mod p. Powers are reduced coefficient-wise after
/// every multiplication (reduction is a ring map, so constant terms agree),
/// which keeps long prefixes affordable.
inline std::vector<Residue> oracle_prefix_mod(const SeqParams& params, std::uint64_t count, const LaurentPoly& weight,
                                              Modulus p, std::uint64_t max_n = kOracleDefaultMaxN) {
    std::vector<Residue> out;
    if (count == 0) return out;
    detail::check_oracle_budget(count - 1, max_n);
    out.reserve(count);

    const std::uint32_t m = p;
    const std::uint32_t a = detail::reduce(params.a, m);
    const std::uint32_t b = detail::reduce(params.b, m);

    // Dense coefficients of P^n for exponents -n..n, stored at offset n.
    std::vector<std::uint32_t> power{1 % m};
    std::vector<std::uint32_t> next;
    auto ct_with_weight = [&](std::uint64_t n) {
        std::uint32_t acc = 0;
        for (const auto& [e, c] : weight.terms()) {
            const std::int64_t idx = static_cast<std::int64_t>(n) - e;
            if (idx < 0 || idx >= static_cast<std::int64_t>(power.size())) continue;
            acc = detail::add(acc, detail::mul(detail::reduce(c, m), power[static_cast<std::size_t>(idx)], m), m);
        }
        return Residue::from_reduced(acc, p);
    };
    for (std::uint64_t n = 0; n < count; ++n) {
        if (n > 0) {
            next.assign(power.size() + 2, 0);
            for (std::size_t i = 0; i < power.size(); ++i) {
                const std::uint32_t c = power[i];
                if (c == 0) continue;
                next[i] = detail::add(next[i], detail::mul(c, a, m), m);
                next[i + 1] = detail::add(next[i + 1], detail::mul(c, b, m), m);
                next[i + 2] = detail::add(next[i + 2], detail::mul(c, a, m), m);
            }
            power.swap(next);
        }
        out.push_back(ct_with_weight(n));
    }
    return out;
}

}  // namespace motzkin

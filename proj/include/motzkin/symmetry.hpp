#pragma once

// Exhaustive checks of the reflection symmetries of the first p terms:
//   T_{p-1-k} = d^{(p-1)/2 - k} T_k   (p > 2, 0 <= k <= (p-1)/2)
//   M_{p-3-k} = d^{(p-3)/2 - k} M_k   (p > 3, 0 <= k <= (p-3)/2)
// with d = b^2 - 4a^2.

#include <cstdint>
#include <string_view>
#include <vector>

#include "motzkin/core_arith.hpp"
#include "motzkin/sequence_tables.hpp"

namespace motzkin {

enum class Theorem { TrinomialSymmetry, MotzkinSymmetry, TrinomialSymmetryInverted };

inline std::string_view to_string(Theorem t) noexcept {
    switch (t) {
        case Theorem::TrinomialSymmetry: return "trinomial-symmetry";
        case Theorem::MotzkinSymmetry: return "motzkin-symmetry";
        case Theorem::TrinomialSymmetryInverted: return "trinomial-symmetry-inverted";
    }
    return "unknown";
}

struct Violation {
    std::uint64_t index;  // k
    std::uint32_t lhs;
    std::uint32_t rhs;
};

struct SymmetryReport {
    Modulus modulus;
    SeqParams params;
    Theorem theorem;
    /// Checked k range, inclusive on both ends.
    std::uint64_t k_first = 0;
    std::uint64_t k_last = 0;
    std::vector<Violation> violations;

    bool holds() const noexcept { return violations.empty(); }
};

inline SymmetryReport check_t_symmetry(const SeqParams& params, Modulus p) {
    if (p.value() == 2) throw out_of_scope_error("trinomial symmetry requires p > 2");
    const TTable t = t_table(params, p);
    const std::uint32_t half = (p.value() - 1) / 2;
    SymmetryReport report{p, params, Theorem::TrinomialSymmetry, 0, half, {}};
    for (std::uint32_t k = 0; k <= half; ++k) {
        const Residue lhs = t[p.value() - 1 - k];
        const Residue rhs = mod_pow(t.disc(), half - k) * t[k];
        if (lhs != rhs) report.violations.push_back({k, lhs.value(), rhs.value()});
    }
    return report;
}

/// T_k = d^{k-(p-1)/2} T_{p-1-k} over the full range 0 <= k < p; needs d invertible.
inline SymmetryReport check_t_symmetry_inverted(const SeqParams& params, Modulus p) {
    if (p.value() == 2) throw out_of_scope_error("trinomial symmetry requires p > 2");
    const TTable t = t_table(params, p);
    if (t.disc().is_zero()) throw out_of_scope_error("inverted symmetry requires p not dividing b^2 - 4a^2");
    const std::int64_t half = (p.value() - 1) / 2;
    SymmetryReport report{p, params, Theorem::TrinomialSymmetryInverted, 0, p.value() - 1u, {}};
    for (std::uint32_t k = 0; k < p.value(); ++k) {
        const Residue lhs = t[k];
        const Residue rhs = mod_pow(t.disc(), static_cast<std::int64_t>(k) - half) * t[p.value() - 1 - k];
        if (lhs != rhs) report.violations.push_back({k, lhs.value(), rhs.value()});
    }
    return report;
}

inline SymmetryReport check_m_symmetry(const SeqParams& params, Modulus p) {
    if (p.value() <= 3) throw out_of_scope_error("Motzkin symmetry requires p > 3");
    const MTable mt = m_table(params, p);
    const Residue disc = discriminant(params, p);
    const std::uint32_t half = (p.value() - 3) / 2;
    SymmetryReport report{p, params, Theorem::MotzkinSymmetry, 0, half, {}};
    for (std::uint32_t k = 0; k <= half; ++k) {
        const Residue lhs = mt[p.value() - 3 - k];
        const Residue rhs = mod_pow(disc, half - k) * mt[k];
        if (lhs != rhs) report.violations.push_back({k, lhs.value(), rhs.value()});
    }
    return report;
}

/// (T_{p-1})^2 = 1 mod p.
inline bool t_pm1_square_check(const SeqParams& params, Modulus p) {
    if (p.value() == 2) throw out_of_scope_error("T_{p-1}^2 check requires p > 2");
    const TTable t = t_table(params, p);
    if (t.disc().is_zero()) throw out_of_scope_error("T_{p-1}^2 check requires p not dividing b^2 - 4a^2");
    const Residue last = t[p.value() - 1];
    return last * last == 1;
}

struct Pm2Criterion {
    bool divides;          // p | M_{p-2}, a = b = 1
    bool one_mod_three;    // p = 1 mod 3

    bool agrees() const noexcept { return divides == one_mod_three; }
};

inline Pm2Criterion motzkin_pm2_criterion(Modulus p) {
    const MTable mt = m_table(SeqParams{1, 1}, p);
    return {mt[p.value() - 2].is_zero(), p.value() % 3 == 1};
}

}  // namespace motzkin

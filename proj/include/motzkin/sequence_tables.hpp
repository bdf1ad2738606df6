#pragma once

// The first p (and a few more) terms of T, M and shift-combinations of T mod p.
// Everything about these sequences mod p is determined by this finite data.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "motzkin/core_arith.hpp"
#include "motzkin/trinomial_oracle.hpp"

namespace motzkin {

/// b^2 - 4a^2 mod p.
inline Residue discriminant(const SeqParams& params, Modulus p) {
    const Residue a(params.a, p);
    const Residue b(params.b, p);
    return b * b - Residue(4, p) * a * a;
}

/// T_0 .. T_{p+1} mod p for fixed (a, b).
class TTable {
public:
    const SeqParams& params() const noexcept { return params_; }
    Modulus modulus() const noexcept { return mod_; }

    /// Number of stored entries, p + 2.
    std::size_t size() const noexcept { return values_.size(); }
    Residue operator[](std::size_t n) const { return Residue::from_reduced(values_.at(n), mod_); }
    std::uint32_t raw(std::size_t n) const { return values_[n]; }
    std::span<const std::uint32_t> raw_values() const noexcept { return values_; }
    /// T_0 .. T_{p-1}.
    std::span<const std::uint32_t> first_p() const noexcept { return {values_.data(), mod_.value()}; }

    Residue disc() const noexcept { return disc_; }
    /// Smallest j < p with T_j = 0 mod p, if any.
    std::optional<std::uint32_t> first_zero() const noexcept { return first_zero_; }
    bool has_zero() const noexcept { return first_zero_.has_value(); }

private:
    friend TTable t_table(const SeqParams&, Modulus);
    TTable(SeqParams params, Modulus p) : params_(params), mod_(p), disc_(discriminant(params, p)) {}

    SeqParams params_;
    Modulus mod_;
    Residue disc_;
    std::vector<std::uint32_t> values_;
    std::optional<std::uint32_t> first_zero_;
};

/// T_0 .. T_{p-1} from the two-term recurrence
///   n T_n = b(2n-1) T_{n-1} - (b^2-4a^2)(n-1) T_{n-2},
/// whose leading coefficient is invertible for 1 <= n < p. T_p and T_{p+1}
/// are the digit products T_1 T_0 and T_1 T_1.
inline TTable t_table(const SeqParams& params, Modulus p) {
    TTable t(params, p);
    const std::uint32_t m = p;
    const std::uint32_t b = detail::reduce(params.b, m);
    const std::uint32_t d = t.disc_.value();

    auto& v = t.values_;
    v.reserve(m + 2);
    v.push_back(1 % m);
    v.push_back(b);
    for (std::uint32_t n = 2; n < m; ++n) {
        const std::uint32_t lhs = detail::mul(detail::mul(b, (2 * n - 1) % m, m), v[n - 1], m);
        const std::uint32_t rhs = detail::mul(detail::mul(d, n - 1, m), v[n - 2], m);
        v.push_back(detail::mul(detail::sub(lhs, rhs, m), detail::inverse(n, m), m));
    }
    // For p = 2 the loop is skipped and v = [T_0, T_1] already.
    v.push_back(detail::mul(v[1], v[0], m));
    v.push_back(detail::mul(v[1], v[1], m));

    for (std::uint32_t j = 0; j < m; ++j) {
        if (v[j] == 0) {
            t.first_zero_ = j;
            break;
        }
    }
    return t;
}

enum class MSource {
    ViaTrinomial,  // (2a^2)^-1 ((4a^2-b^2)T_n + 2b T_{n+1} - T_{n+2})
    PDividesA,     // M_n = b^n
    Oracle,        // p = 2
};

inline std::string_view to_string(MSource s) noexcept {
    switch (s) {
        case MSource::ViaTrinomial: return "via-trinomial";
        case MSource::PDividesA: return "p-divides-a";
        case MSource::Oracle: return "oracle";
    }
    return "unknown";
}

/// M_0 .. M_{p-1} mod p.
class MTable {
public:
    const SeqParams& params() const noexcept { return params_; }
    Modulus modulus() const noexcept { return mod_; }
    MSource source() const noexcept { return source_; }
    std::size_t size() const noexcept { return values_.size(); }
    Residue operator[](std::size_t n) const { return Residue::from_reduced(values_.at(n), mod_); }
    std::uint32_t raw(std::size_t n) const { return values_[n]; }
    std::span<const std::uint32_t> raw_values() const noexcept { return values_; }

private:
    friend MTable m_table(const SeqParams&, Modulus);
    MTable(SeqParams params, Modulus p, MSource s) : params_(params), mod_(p), source_(s) {}

    SeqParams params_;
    Modulus mod_;
    MSource source_;
    std::vector<std::uint32_t> values_;
};

inline MTable m_table(const SeqParams& params, Modulus p) {
    const std::uint32_t m = p;
    if (m == 2) {
        MTable out(params, p, MSource::Oracle);
        for (const Residue& r : oracle_prefix_mod(params, m, weights::motzkin(), p)) out.values_.push_back(r.value());
        return out;
    }
    const Residue a(params.a, p);
    const Residue b(params.b, p);
    if (a.is_zero()) {
        MTable out(params, p, MSource::PDividesA);
        Residue power(1, p);
        for (std::uint32_t n = 0; n < m; ++n, power *= b) out.values_.push_back(power.value());
        return out;
    }
    MTable out(params, p, MSource::ViaTrinomial);
    const TTable t = t_table(params, p);
    const Residue two_a2 = Residue(2, p) * a * a;
    const Residue inv = mod_inverse(two_a2);
    const Residue c0 = Residue(4, p) * a * a - b * b;
    const Residue c1 = Residue(2, p) * b;
    for (std::uint32_t n = 0; n < m; ++n) {
        const Residue value = inv * (c0 * t[n] + c1 * t[n + 1] - t[n + 2]);
        out.values_.push_back(value.value());
    }
    return out;
}

/// Coefficients alpha_0 .. alpha_h of b_n = sum_i alpha_i T_{n+i}.
/// Stored over the integers; the highest coefficient is nonzero.
class ShiftCombo {
public:
    explicit ShiftCombo(std::vector<std::int64_t> alphas) : alphas_(std::move(alphas)) {
        if (alphas_.empty()) throw error("shift combination needs at least one coefficient");
        if (alphas_.back() == 0) throw error("leading shift coefficient must be nonzero");
    }

    std::uint32_t width() const noexcept { return static_cast<std::uint32_t>(alphas_.size() - 1); }
    std::span<const std::int64_t> alphas() const noexcept { return alphas_; }
    Residue alpha(std::size_t i, Modulus p) const { return Residue(alphas_.at(i), p); }

    /// Throws unless h < p, the range where carries reach at most one digit.
    void require_width_below(Modulus p) const {
        if (width() >= p.value())
            throw unsupported_width_error("shift width " + std::to_string(width()) + " is not below p = " +
                                          std::to_string(p.value()));
    }

    friend bool operator==(const ShiftCombo&, const ShiftCombo&) = default;

private:
    std::vector<std::int64_t> alphas_;
};

/// T_n for n < p^2 straight from the table (at most two digits).
inline Residue t_small(const TTable& t, std::uint64_t n) {
    const std::uint32_t p = t.modulus();
    if (n < t.size()) return t[static_cast<std::size_t>(n)];
    return t[static_cast<std::size_t>(n / p)] * t[static_cast<std::size_t>(n % p)];
}

/// b_0 .. b_{p-1} for the combination, using T up to index p-1+h.
inline std::vector<Residue> combo_table(const ShiftCombo& combo, const TTable& t) {
    const Modulus p = t.modulus();
    combo.require_width_below(p);
    std::vector<Residue> out;
    out.reserve(p.value());
    for (std::uint32_t n = 0; n < p.value(); ++n) {
        Residue acc(0, p);
        for (std::uint32_t i = 0; i <= combo.width(); ++i) acc += combo.alpha(i, p) * t_small(t, n + i);
        out.push_back(acc);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Named sequences as shift-combinations

enum class SequenceId { Trinomial, Motzkin, A005717, A005043, A005773, Custom };

inline std::string_view to_string(SequenceId id) noexcept {
    switch (id) {
        case SequenceId::Trinomial: return "trinomial";
        case SequenceId::Motzkin: return "motzkin";
        case SequenceId::A005717: return "a005717";
        case SequenceId::A005043: return "a005043";
        case SequenceId::A005773: return "a005773";
        case SequenceId::Custom: return "custom";
    }
    return "unknown";
}

inline std::optional<SequenceId> parse_sequence_id(std::string_view s) {
    for (SequenceId id : {SequenceId::Trinomial, SequenceId::Motzkin, SequenceId::A005717, SequenceId::A005043,
                          SequenceId::A005773, SequenceId::Custom}) {
        if (s == to_string(id)) return id;
    }
    return std::nullopt;
}

/// divisor * s_n = sum_i alpha_i T_{n+i}, with s_n = ct(P^n * weight).
/// Zeros of s_n and of the combination agree whenever p does not divide
/// the divisor.
struct NamedSequence {
    SequenceId id;
    ShiftCombo combo;
    std::int64_t divisor;
    LaurentPoly weight;
};

/// Coefficients follow from T_{n+1} = 2a A_n + b T_n and
/// 2a^2 B_n = T_{n+2} - 2b T_{n+1} + (b^2-2a^2) T_n, where
/// A_n = ct(x P^n) and B_n = ct(x^2 P^n).
inline NamedSequence named_sequence(SequenceId id, const SeqParams& params) {
    const std::int64_t a = params.a;
    const std::int64_t b = params.b;
    switch (id) {
        case SequenceId::Trinomial:
            return {id, ShiftCombo({1}), 1, weights::trinomial()};
        case SequenceId::Motzkin:
            return {id, ShiftCombo({4 * a * a - b * b, 2 * b, -1}), 2 * a * a, weights::motzkin()};
        case SequenceId::A005717:
            return {id, ShiftCombo({-b, 1}), 2 * a, weights::a005717()};
        case SequenceId::A005043:
            return {id, ShiftCombo({2 * a + b, -1}), 2 * a, weights::riordan()};
        case SequenceId::A005773:
            return {id, ShiftCombo({2 * a - b, 1}), 2 * a, weights::a005773()};
        case SequenceId::Custom:
            break;
    }
    throw error("custom sequences carry their own coefficients");
}

/// s_0 .. s_{p-1} = divisor^-1 * combo_table.
inline std::vector<Residue> sequence_table(const NamedSequence& seq, const TTable& t) {
    const Modulus p = t.modulus();
    const Residue inv = mod_inverse(Residue(seq.divisor, p));
    std::vector<Residue> out = combo_table(seq.combo, t);
    for (Residue& r : out) r *= inv;
    return out;
}

}  // namespace motzkin

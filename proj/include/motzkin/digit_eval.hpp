#pragma once

// Evaluation at arbitrary n from base-p digits.
//
// T_n is the product of T over the digits of n. A shift-combination
// b_n = sum_i alpha_i T_{n+i} factors through the canonical tail form
//   (n)_p = q m (p-1)^k n0,
// since adding i <= h < p to n either stays inside the last digit or carries
// through the run of (p-1)s into m.

#include <cstdint>
#include <optional>
#include <vector>

#include "motzkin/core_arith.hpp"
#include "motzkin/sequence_tables.hpp"

namespace motzkin {

enum class TailCase { Plain, Tail };

/// (n)_p = q m (p-1)^k n0. In the Plain case (n0 < p - h) only q and n0
/// are meaningful and q holds every digit before n0.
struct CanonicalForm {
    DigitWord q;
    std::uint32_t m = 0;
    std::uint64_t k = 0;
    std::uint32_t n0 = 0;
    TailCase tail_case = TailCase::Plain;
    /// m was supplied by the implicit leading zero rather than read from the word.
    bool m_padded = false;
};

inline CanonicalForm parse_tail(std::uint64_t n, Modulus p, std::uint32_t h) {
    if (h >= p.value())
        throw unsupported_width_error("shift width " + std::to_string(h) + " is not below p = " +
                                      std::to_string(p.value()));
    const DigitWord word = to_digits(n, p);
    const auto digits = word.digits();
    CanonicalForm form{DigitWord(p)};
    form.n0 = digits.back();
    std::size_t end = digits.size() - 1;  // digits[0, end) precede n0

    if (form.n0 < p.value() - h) {
        form.tail_case = TailCase::Plain;
        form.q = DigitWord(std::vector<std::uint32_t>(digits.begin(), digits.begin() + end), p);
        return form;
    }

    form.tail_case = TailCase::Tail;
    while (end > 0 && digits[end - 1] == p.value() - 1) {
        --end;
        ++form.k;
    }
    if (end == 0) {
        form.m = 0;
        form.m_padded = true;
    } else {
        form.m = digits[--end];
    }
    form.q = DigitWord(std::vector<std::uint32_t>(digits.begin(), digits.begin() + end), p);
    return form;
}

/// Product of T over the digits of a word; the empty word gives T_0 = 1.
inline Residue t_eval(const DigitWord& word, const TTable& t) {
    Residue acc(1, t.modulus());
    for (std::uint32_t d : word.digits()) acc *= t[d];
    return acc;
}

inline Residue t_eval(std::uint64_t n, const TTable& t) {
    const std::uint32_t p = t.modulus();
    std::uint32_t acc = 1 % p;
    do {
        acc = detail::mul(acc, t.raw(n % p), p);
        n /= p;
    } while (n > 0 && acc != 0);
    return Residue::from_reduced(acc, t.modulus());
}

/// sum_i alpha_i T_{n+i} with every T evaluated by digit products. This is
/// the direct definition, independent of the tail factorization.
inline Residue combo_direct(const ShiftCombo& combo, std::uint64_t n, const TTable& t) {
    const Modulus p = t.modulus();
    Residue acc(0, p);
    for (std::uint32_t i = 0; i <= combo.width(); ++i) acc += combo.alpha(i, p) * t_eval(n + i, t);
    return acc;
}

/// sum_i alpha_i T_{n+i} through the canonical-form factorization.
inline Residue combo_eval(const ShiftCombo& combo, std::uint64_t n, const TTable& t) {
    const Modulus p = t.modulus();
    const std::uint32_t h = combo.width();
    const CanonicalForm form = parse_tail(n, p, h);
    const Residue tq = t_eval(form.q, t);

    if (form.tail_case == TailCase::Plain) {
        Residue inner(0, p);
        for (std::uint32_t i = 0; i <= h; ++i) inner += combo.alpha(i, p) * t[form.n0 + i];
        return tq * inner;
    }

    // Shifts 0..C stay in the last digit; shifts p-n0..h carry into m.
    const std::uint32_t c = std::min(h, p.value() - form.n0 - 1);
    Residue stay(0, p);
    for (std::uint32_t i = 0; i <= c; ++i) stay += combo.alpha(i, p) * t[form.n0 + i];
    Residue carry(0, p);
    for (std::uint32_t i = p.value() - form.n0; i <= h; ++i) carry += combo.alpha(i, p) * t[i - (p.value() - form.n0)];

    const Residue run = mod_pow(t[p.value() - 1], static_cast<std::int64_t>(form.k));
    return tq * (t[form.m] * run * stay + t[form.m + 1] * carry);
}

/// Checks the hypotheses of the three-case Motzkin evaluation, in the order
/// p > 2, p not dividing the discriminant, no T zero below p, p not dividing a.
inline std::optional<Hypothesis> motzkin_hypothesis_failure(const TTable& t) {
    if (t.modulus().value() <= 2) return Hypothesis::PGreaterThanTwo;
    if (t.disc().is_zero()) return Hypothesis::DiscriminantInvertible;
    if (t.has_zero()) return Hypothesis::NoTrinomialZero;
    if (Residue(t.params().a, t.modulus()).is_zero()) return Hypothesis::ANonzero;
    return std::nullopt;
}

/// M_n mod p by the three-case formula:
///   n0 < p-2:   T_q M_{n0}
///   n0 = p-2:   (2a^2)^-1 T_q (b T_m T_{p-1}^{k+1} - T_{m+1})
///   n0 = p-1:   (2a^2)^-1 d^{m+1-(p-1)/2} T_q (b T_l - T_{p-1}^{k+1} T_{l+1}),  l = p-2-m
/// with d = b^2 - 4a^2. Throws hypothesis_error outside its range of validity.
inline Residue m_eval(std::uint64_t n, const TTable& t, const MTable& mt) {
    if (auto failed = motzkin_hypothesis_failure(t)) throw hypothesis_error(*failed);
    const Modulus p = t.modulus();
    const std::uint32_t pm = p.value();
    const CanonicalForm form = parse_tail(n, p, 2);
    const Residue tq = t_eval(form.q, t);
    if (form.tail_case == TailCase::Plain) return tq * mt[form.n0];

    const Residue a(t.params().a, p);
    const Residue b(t.params().b, p);
    const Residue inv_two_a2 = mod_inverse(Residue(2, p) * a * a);
    const Residue run = mod_pow(t[pm - 1], static_cast<std::int64_t>(form.k) + 1);

    if (form.n0 == pm - 2) return inv_two_a2 * tq * (b * t[form.m] * run - t[form.m + 1]);

    const std::uint32_t l = pm - 2 - form.m;
    const std::int64_t e = static_cast<std::int64_t>(form.m) + 1 - static_cast<std::int64_t>((pm - 1) / 2);
    return inv_two_a2 * mod_pow(t.disc(), e) * tq * (b * t[l] - run * t[l + 1]);
}

}  // namespace motzkin

#pragma once

// Exact densities of 0 in shift-combinations of T mod p, and the exact
// zero counts over n < p^N that converge to them.
//
// A word (n)_p = q m (p-1)^k n0 over F_p ends in a given n0 with frequency
// 1/p. When n0 >= p-h the run length k is geometric; since T_{p-1}^2 = 1
// only its parity matters, even with weight p/(p+1) and odd with 1/(p+1).
// Hence the three-summand formula with denominators p, (p-1)(p+1) and
// (p-1)p(p+1).

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "motzkin/core_arith.hpp"
#include "motzkin/digit_eval.hpp"
#include "motzkin/sequence_tables.hpp"

namespace motzkin {

enum class Degeneracy {
    TZeroFound,            // some T_j = 0, j < p: density 1
    PDividesDiscriminant,  // implies T_{p-1} = 0 for p > 2
    PEquals2,
    PDividesA,             // M_n = b^n never vanishes
};

inline std::string_view to_string(Degeneracy d) noexcept {
    switch (d) {
        case Degeneracy::TZeroFound: return "t-zero-found";
        case Degeneracy::PDividesDiscriminant: return "p-divides-discriminant";
        case Degeneracy::PEquals2: return "p-equals-2";
        case Degeneracy::PDividesA: return "p-divides-a";
    }
    return "unknown";
}

enum class GenerationStatus { Generates, FailsToGenerate };

inline std::string_view to_string(GenerationStatus g) noexcept {
    return g == GenerationStatus::Generates ? "generates" : "fails-to-generate";
}

struct CaseContributions {
    ExactRatio plain;
    ExactRatio even_tail;
    ExactRatio odd_tail;

    ExactRatio sum() const { return plain + even_tail + odd_tail; }
};

struct DensityReport {
    Modulus modulus;
    SeqParams params;
    std::string sequence_id;
    ExactRatio d0;
    CaseContributions cases;
    std::optional<Degeneracy> degenerate;
    std::optional<ExactRatio> lower_bound;

    // Raw sizes behind the case contributions.
    std::uint64_t plain_count = 0;
    std::uint64_t even_count = 0;
    std::uint64_t odd_count = 0;

    // Filled by value_densities.
    std::optional<GenerationStatus> generation;
    std::optional<ExactRatio> nonzero_density;
    std::optional<bool> transitions_regular;
    std::optional<std::uint64_t> subgroup_order;
};

/// The finite sets that decide b_n = 0 for a non-degenerate table.
struct ZeroSets {
    std::uint32_t h = 0;
    std::vector<std::uint32_t> plain;                          // n0 < p-h with b_{n0} = 0
    std::vector<std::pair<std::uint32_t, std::uint32_t>> even; // (n0, m): zero for even k
    std::vector<std::pair<std::uint32_t, std::uint32_t>> odd;  // (n0, m): zero for odd k
};

/// For n0 >= p-h and m < p-1, b_n = T_q (T_m T_{p-1}^k S + T_{m+1} C) with
///   S = sum_{i <= min(h, p-n0-1)} alpha_i T_{n0+i},
///   C = sum_{i >= p-n0} alpha_i T_{i-(p-n0)}.
inline ZeroSets zero_sets(const ShiftCombo& combo, const TTable& t) {
    const Modulus p = t.modulus();
    const std::uint32_t pm = p.value();
    combo.require_width_below(p);
    ZeroSets sets;
    sets.h = combo.width();
    const std::uint32_t h = sets.h;

    const std::vector<Residue> b = combo_table(combo, t);
    for (std::uint32_t n0 = 0; n0 < pm - h; ++n0)
        if (b[n0].is_zero()) sets.plain.push_back(n0);

    const Residue last = t[pm - 1];
    for (std::uint32_t n0 = pm - h; n0 < pm; ++n0) {
        const std::uint32_t c = std::min(h, pm - n0 - 1);
        Residue stay(0, p);
        for (std::uint32_t i = 0; i <= c; ++i) stay += combo.alpha(i, p) * t[n0 + i];
        Residue carry(0, p);
        for (std::uint32_t i = pm - n0; i <= h; ++i) carry += combo.alpha(i, p) * t[i - (pm - n0)];
        for (std::uint32_t m = 0; m + 1 < pm; ++m) {
            if ((t[m] * stay + t[m + 1] * carry).is_zero()) sets.even.emplace_back(n0, m);
            if ((t[m] * last * stay + t[m + 1] * carry).is_zero()) sets.odd.emplace_back(n0, m);
        }
    }
    return sets;
}

namespace detail {

inline ExactRatio ratio(std::uint64_t num, const BigInt& den) { return ExactRatio(BigInt(num), den); }

inline DensityReport blank_report(Modulus p, const SeqParams& params, std::string id) {
    return DensityReport{.modulus = p,
                         .params = params,
                         .sequence_id = std::move(id),
                         .d0 = ExactRatio(0),
                         .cases = {},
                         .degenerate = std::nullopt,
                         .lower_bound = std::nullopt,
                         .plain_count = 0,
                         .even_count = 0,
                         .odd_count = 0,
                         .generation = std::nullopt,
                         .nonzero_density = std::nullopt,
                         .transitions_regular = std::nullopt,
                         .subgroup_order = std::nullopt};
}

inline DensityReport density_one(Modulus p, const SeqParams& params, std::string id, Degeneracy why) {
    DensityReport r = blank_report(p, params, std::move(id));
    r.d0 = ExactRatio(1);
    r.degenerate = why;
    return r;
}

inline BigInt big_pow(std::uint64_t base, std::uint64_t e) {
    return boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(e));
}

}  // namespace detail

/// Density of 0 in b_n = sum alpha_i T_{n+i} mod p.
inline DensityReport density_zero_generic(const ShiftCombo& combo, const SeqParams& params, Modulus p,
                                          std::string sequence_id = "custom") {
    combo.require_width_below(p);
    const TTable t = t_table(params, p);
    if (t.has_zero()) return detail::density_one(p, params, std::move(sequence_id), Degeneracy::TZeroFound);
    if (t.disc().is_zero())
        return detail::density_one(p, params, std::move(sequence_id), Degeneracy::PDividesDiscriminant);

    const ZeroSets sets = zero_sets(combo, t);
    const BigInt pp = p.value();
    DensityReport r = detail::blank_report(p, params, std::move(sequence_id));
    r.plain_count = sets.plain.size();
    r.even_count = sets.even.size();
    r.odd_count = sets.odd.size();
    r.cases.plain = detail::ratio(r.plain_count, pp);
    r.cases.even_tail = detail::ratio(r.even_count, (pp - 1) * (pp + 1));
    r.cases.odd_tail = detail::ratio(r.odd_count, (pp - 1) * pp * (pp + 1));
    r.d0 = r.cases.sum();
    if (p.value() == 2) r.degenerate = Degeneracy::PEquals2;
    return r;
}

/// Density of 0 in M_n mod p from the first p values of T and M:
///   |{n < p-2 : M_n = 0}| / p
///   + 2 |{m < p-1 : b T_m = T_{p-1} T_{m+1}}| / ((p-1)(p+1))
///   + 2 |{m < p-1 : b T_m = T_{m+1}}| / ((p-1)p(p+1)).
/// The factor 2 counts the two tail endings n0 = p-2 and n0 = p-1, which
/// vanish on the same sets of m.
inline DensityReport density_zero_motzkin(const SeqParams& params, Modulus p) {
    const std::string id = "motzkin";
    const BigInt pp = p.value();
    const bool standard = params.a == 1 && params.b == 1;

    if (p.value() == 2) {
        const bool a_odd = detail::reduce(params.a, 2) == 1;
        const bool b_odd = detail::reduce(params.b, 2) == 1;
        if (!b_odd) return detail::density_one(p, params, id, Degeneracy::TZeroFound);
        DensityReport r = detail::blank_report(p, params, id);
        r.d0 = a_odd ? ExactRatio(1, 3) : ExactRatio(0);
        r.degenerate = Degeneracy::PEquals2;
        return r;
    }

    const TTable t = t_table(params, p);
    std::optional<ExactRatio> bound;
    if (standard) bound = ExactRatio(2, pp * (pp - 1));

    if (t.has_zero()) {
        DensityReport r = detail::density_one(p, params, id, Degeneracy::TZeroFound);
        r.lower_bound = bound;
        return r;
    }
    if (t.disc().is_zero()) return detail::density_one(p, params, id, Degeneracy::PDividesDiscriminant);
    if (Residue(params.a, p).is_zero()) {
        DensityReport r = detail::blank_report(p, params, id);
        r.degenerate = Degeneracy::PDividesA;
        return r;
    }

    const MTable mt = m_table(params, p);
    const Residue b(params.b, p);
    const Residue last = t[p.value() - 1];
    DensityReport r = detail::blank_report(p, params, id);
    r.lower_bound = bound;
    for (std::uint32_t n = 0; n + 2 < p.value(); ++n)
        if (mt[n].is_zero()) ++r.plain_count;
    for (std::uint32_t m = 0; m + 1 < p.value(); ++m) {
        if (b * t[m] == last * t[m + 1]) ++r.even_count;
        if (b * t[m] == t[m + 1]) ++r.odd_count;
    }
    r.cases.plain = detail::ratio(r.plain_count, pp);
    r.cases.even_tail = detail::ratio(2 * r.even_count, (pp - 1) * (pp + 1));
    r.cases.odd_tail = detail::ratio(2 * r.odd_count, (pp - 1) * pp * (pp + 1));
    r.d0 = r.cases.sum();
    return r;
}

/// Densities of 0 for A005717, A005043 (Riordan) and A005773 with a = b = 1,
/// each by its two-set formula
///   (|{m < p-1 : c T_m = s T_{p-1} T_{m+1}}| + p |{m < p-1 : c T_m = s T_{m+1}}|) / ((p-1)(p+1))
/// with (c, s) = (1, 1), (3, 1), (1, -1) respectively.
inline DensityReport density_zero_named(SequenceId id, Modulus p) {
    if (id != SequenceId::A005717 && id != SequenceId::A005043 && id != SequenceId::A005773)
        throw error("density_zero_named covers a005717, a005043 and a005773");
    if (p.value() == 2)
        throw out_of_scope_error("closed-form density needs p > 2; use enumeration (count --p 2) instead");

    const SeqParams params{1, 1};
    const std::string name(to_string(id));
    const BigInt pp = p.value();
    const ExactRatio bound(1, pp - 1);
    const TTable t = t_table(params, p);
    if (t.has_zero()) {
        DensityReport r = detail::density_one(p, params, name, Degeneracy::TZeroFound);
        r.lower_bound = bound;
        return r;
    }

    const std::int64_t c = id == SequenceId::A005043 ? 3 : 1;
    const std::int64_t s = id == SequenceId::A005773 ? -1 : 1;
    const Residue cc(c, p);
    const Residue ss(s, p);
    const Residue last = t[p.value() - 1];

    DensityReport r = detail::blank_report(p, params, name);
    r.lower_bound = bound;
    for (std::uint32_t m = 0; m + 1 < p.value(); ++m) {
        if (cc * t[m] == ss * last * t[m + 1]) ++r.even_count;
        if (cc * t[m] == ss * t[m + 1]) ++r.odd_count;
    }
    r.d0 = ExactRatio(BigInt(r.even_count) + pp * r.odd_count, (pp - 1) * (pp + 1));

    // Per-case breakdown, with the plain set read off the sequence itself.
    const std::vector<Residue> values = sequence_table(named_sequence(id, params), t);
    for (std::uint32_t n = 0; n + 1 < p.value(); ++n)
        if (values[n].is_zero()) ++r.plain_count;
    r.cases.plain = detail::ratio(r.plain_count, pp);
    r.cases.even_tail = detail::ratio(r.even_count, (pp - 1) * (pp + 1));
    r.cases.odd_tail = detail::ratio(r.odd_count, (pp - 1) * pp * (pp + 1));
    if (r.cases.sum() != r.d0)
        throw std::logic_error("two-set density disagrees with case breakdown for " + name + " at p = " +
                               std::to_string(p.value()));
    return r;
}

// ---------------------------------------------------------------------------
// Exact zero counts over n < p^N

/// |{n < p^N : b_n = 0}| from the zero sets, summing the run length k
/// explicitly: the plain endings contribute |plain| p^{N-1}, a tail with run
/// k <= N-2 followed by a real digit m contributes p^{N-2-k} per (n0, m) of
/// matching parity, and the word (p-1)^{N-1} n0 uses the padded m = 0.
/// Requires T_j != 0 for all j < p.
inline BigInt count_zeros_closed_form(const ShiftCombo& combo, const SeqParams& params, Modulus p, std::uint32_t N) {
    combo.require_width_below(p);
    const TTable t = t_table(params, p);
    if (t.has_zero()) throw hypothesis_error(Hypothesis::NoTrinomialZero);
    if (N == 0) return combo_table(combo, t)[0].is_zero() ? 1 : 0;

    const Residue last = t[p.value() - 1];
    if (last * last != 1) throw hypothesis_error(Hypothesis::DiscriminantInvertible);

    const ZeroSets sets = zero_sets(combo, t);
    BigInt total = BigInt(sets.plain.size()) * detail::big_pow(p, N - 1);
    for (std::uint32_t k = 0; k + 2 <= N; ++k) {
        const std::size_t matches = (k % 2 == 0) ? sets.even.size() : sets.odd.size();
        total += BigInt(matches) * detail::big_pow(p, N - 2 - k);
    }
    const auto& boundary = ((N - 1) % 2 == 0) ? sets.even : sets.odd;
    total += std::count_if(boundary.begin(), boundary.end(), [](const auto& e) { return e.second == 0; });
    return total;
}

/// |{n < p^N : b_n = 0}| by dynamic programming over digits, least
/// significant first. The state is, for every shift i, the running digit
/// product of T over n+i and its pending carry. Valid for every table,
/// including those with a zero below p.
inline BigInt count_zeros_automaton(const ShiftCombo& combo, const SeqParams& params, Modulus p, std::uint32_t N) {
    combo.require_width_below(p);
    const TTable t = t_table(params, p);
    const std::uint32_t pm = p.value();
    const std::uint32_t h = combo.width();
    if (N == 0) return combo_table(combo, t)[0].is_zero() ? 1 : 0;

    // state[i] = 2 * product + carry
    using State = std::vector<std::uint64_t>;
    std::map<State, BigInt> states;
    for (std::uint32_t d = 0; d < pm; ++d) {
        State s(h + 1);
        for (std::uint32_t i = 0; i <= h; ++i) {
            const std::uint32_t sum = d + i;
            s[i] = 2ull * t.raw(sum % pm) + (sum >= pm ? 1 : 0);
        }
        states[s] += 1;
    }
    for (std::uint32_t level = 1; level < N; ++level) {
        std::map<State, BigInt> next;
        for (const auto& [s, count] : states) {
            for (std::uint32_t d = 0; d < pm; ++d) {
                State ns(h + 1);
                for (std::uint32_t i = 0; i <= h; ++i) {
                    const std::uint32_t product = static_cast<std::uint32_t>(s[i] >> 1);
                    const std::uint32_t sum = d + static_cast<std::uint32_t>(s[i] & 1);
                    ns[i] = 2ull * detail::mul(product, t.raw(sum % pm), pm) + (sum >= pm ? 1 : 0);
                }
                next[ns] += count;
            }
        }
        states = std::move(next);
    }
    BigInt zeros = 0;
    for (const auto& [s, count] : states) {
        Residue value(0, p);
        for (std::uint32_t i = 0; i <= h; ++i) {
            Residue term = Residue::from_reduced(static_cast<std::uint32_t>(s[i] >> 1), p);
            if (s[i] & 1) term *= t[1];  // carry out of the top digit adds a digit 1
            value += combo.alpha(i, p) * term;
        }
        if (value.is_zero()) zeros += count;
    }
    return zeros;
}

/// Closed form when the table has no zero below p, digit automaton otherwise.
inline BigInt count_zeros_exact(const ShiftCombo& combo, const SeqParams& params, Modulus p, std::uint32_t N) {
    combo.require_width_below(p);
    if (t_table(params, p).has_zero()) return count_zeros_automaton(combo, params, p, N);
    return count_zeros_closed_form(combo, params, p, N);
}

inline constexpr std::uint64_t kDefaultEnumerationBudget = 100'000'000;

namespace detail {

inline std::uint64_t checked_span(Modulus p, std::uint32_t N, std::uint64_t budget) {
    std::uint64_t total = 1;
    for (std::uint32_t i = 0; i < N; ++i) {
        if (total > budget / p.value()) {
            const BigInt need = big_pow(p, N);
            const std::uint64_t shown = need > BigInt(UINT64_MAX) ? UINT64_MAX : need.convert_to<std::uint64_t>();
            throw budget_error("enumeration over p^N indices exceeds budget", shown, budget);
        }
        total *= p.value();
    }
    return total;
}

/// Splits [0, total) into contiguous chunks and runs fn(begin, end, slot)
/// on up to `jobs` threads; results land in per-slot storage.
template <class Fn>
void parallel_ranges(std::uint64_t total, unsigned jobs, Fn&& fn) {
    jobs = std::max(1u, jobs);
    if (jobs == 1 || total < 4096) {
        fn(0, total, 0u);
        return;
    }
    std::vector<std::thread> workers;
    const std::uint64_t chunk = (total + jobs - 1) / jobs;
    for (unsigned w = 0; w < jobs; ++w) {
        const std::uint64_t begin = std::min(total, w * chunk);
        const std::uint64_t end = std::min(total, begin + chunk);
        workers.emplace_back([&fn, begin, end, w] { fn(begin, end, w); });
    }
    for (auto& th : workers) th.join();
}

}  // namespace detail

/// Counts zeros by direct evaluation of sum alpha_i T_{n+i} for every n < p^N.
inline BigInt count_zeros_enum(const ShiftCombo& combo, const SeqParams& params, Modulus p, std::uint32_t N,
                               std::uint64_t budget = kDefaultEnumerationBudget, unsigned jobs = 1) {
    const std::uint64_t total = detail::checked_span(p, N, budget);
    const TTable t = t_table(params, p);
    std::vector<std::uint64_t> partial(std::max(1u, jobs), 0);
    detail::parallel_ranges(total, jobs, [&](std::uint64_t begin, std::uint64_t end, unsigned slot) {
        std::uint64_t zeros = 0;
        for (std::uint64_t n = begin; n < end; ++n)
            if (combo_direct(combo, n, t).is_zero()) ++zeros;
        partial[slot] = zeros;
    });
    BigInt sum = 0;
    for (std::uint64_t z : partial) sum += z;
    return sum;
}

// ---------------------------------------------------------------------------
// Nonzero values

/// Adds the generation status of {T_j : j < p} in F_p^x and, when it
/// generates, the common density (1 - D0)/(p-1) of every nonzero residue in
/// M_n. Also checks that the value-transition multigraph on F_p^x
/// (i -> i T_k for each digit k) has in-degree p at every state.
/// p | a is admitted: then T_n = M_n = b^n, which generates iff b is a primitive root.
inline DensityReport value_densities(const SeqParams& params, Modulus p) {
    const TTable t = t_table(params, p);
    if (auto failed = motzkin_hypothesis_failure(t); failed && *failed != Hypothesis::ANonzero)
        throw hypothesis_error(*failed);
    DensityReport r = density_zero_motzkin(params, p);

    const auto values = t.first_p();
    r.subgroup_order = generated_subgroup_order(values, p);
    const bool generates = generates_unit_group(values, p);
    r.generation = generates ? GenerationStatus::Generates : GenerationStatus::FailsToGenerate;
    if (generates) r.nonzero_density = (ExactRatio(1) - r.d0) / ExactRatio(p.value() - 1);

    const std::uint32_t pm = p.value();
    std::vector<std::uint32_t> in_degree(pm, 0);
    for (std::uint32_t i = 1; i < pm; ++i)
        for (std::uint32_t k = 0; k < pm; ++k) ++in_degree[detail::mul(i, values[k], pm)];
    r.transitions_regular = in_degree[0] == 0 && std::all_of(in_degree.begin() + 1, in_degree.end(),
                                                             [pm](std::uint32_t d) { return d == pm; });
    return r;
}

/// Histogram of M_n mod p over n < p^N, evaluated with m_eval.
inline std::map<std::uint32_t, std::uint64_t> empirical_value_counts(const SeqParams& params, Modulus p,
                                                                     std::uint32_t N,
                                                                     std::uint64_t budget = kDefaultEnumerationBudget) {
    const std::uint64_t total = detail::checked_span(p, N, budget);
    const TTable t = t_table(params, p);
    if (auto failed = motzkin_hypothesis_failure(t)) throw hypothesis_error(*failed);
    const MTable mt = m_table(params, p);
    std::vector<std::uint64_t> counts(p.value(), 0);
    for (std::uint64_t n = 0; n < total; ++n) ++counts[m_eval(n, t, mt).value()];
    std::map<std::uint32_t, std::uint64_t> out;
    for (std::uint32_t v = 0; v < p.value(); ++v)
        if (counts[v] > 0) out.emplace(v, counts[v]);
    return out;
}

}  // namespace motzkin

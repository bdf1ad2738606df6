#include <random>

#include <gtest/gtest.h>

#include "motzkin/sequence_tables.hpp"
#include "motzkin/scans.hpp"

namespace motzkin {
namespace {

std::vector<std::uint32_t> raw(std::span<const std::uint32_t> s) { return {s.begin(), s.end()}; }

std::vector<std::uint32_t> raw(const std::vector<Residue>& v) {
    std::vector<std::uint32_t> out;
    for (const Residue& r : v) out.push_back(r.value());
    return out;
}

TEST(TTable, UnitWeightsModFive) {
    const TTable t = t_table({1, 1}, Modulus(5));
    EXPECT_EQ(raw(t.raw_values()), (std::vector<std::uint32_t>{1, 1, 3, 2, 4, 1, 1}));
    EXPECT_FALSE(t.has_zero());
    EXPECT_EQ(t.disc().value(), 2u);  // -3 mod 5
}

TEST(TTable, UnitWeightsModThree) {
    const TTable t = t_table({1, 1}, Modulus(3));
    EXPECT_EQ(raw(t.raw_values()), (std::vector<std::uint32_t>{1, 1, 0, 1, 1}));
    EXPECT_EQ(t.first_zero(), 2u);
    EXPECT_TRUE(t.disc().is_zero());
}

TEST(TTable, ConstantStepPolynomial) {
    const TTable t = t_table({0, 1}, Modulus(5));
    EXPECT_EQ(raw(t.raw_values()), (std::vector<std::uint32_t>(7, 1)));
}

TEST(TTable, ModTwo) {
    EXPECT_EQ(raw(t_table({1, 1}, Modulus(2)).raw_values()), (std::vector<std::uint32_t>{1, 1, 1, 1}));
    EXPECT_EQ(raw(t_table({1, 0}, Modulus(2)).raw_values()), (std::vector<std::uint32_t>{1, 0, 0, 0}));
}

TEST(MTable, Examples) {
    const MTable unit = m_table({1, 1}, Modulus(5));
    EXPECT_EQ(raw(unit.raw_values()), (std::vector<std::uint32_t>{1, 1, 2, 4, 4}));
    EXPECT_EQ(unit.source(), MSource::ViaTrinomial);

    const MTable powers = m_table({0, 2}, Modulus(5));
    EXPECT_EQ(raw(powers.raw_values()), (std::vector<std::uint32_t>{1, 2, 4, 3, 1}));
    EXPECT_EQ(powers.source(), MSource::PDividesA);

    const MTable two = m_table({1, 1}, Modulus(2));
    EXPECT_EQ(raw(two.raw_values()), (std::vector<std::uint32_t>{1, 1}));
    EXPECT_EQ(two.source(), MSource::Oracle);
}

TEST(ComboTable, RiordanModFive) {
    const NamedSequence riordan = named_sequence(SequenceId::A005043, {1, 1});
    EXPECT_EQ(riordan.combo, ShiftCombo({3, -1}));
    EXPECT_EQ(riordan.divisor, 2);
    EXPECT_EQ(raw(sequence_table(riordan, t_table({1, 1}, Modulus(5)))), (std::vector<std::uint32_t>{1, 0, 1, 1, 3}));
}

TEST(ComboTable, A005717ModFive) {
    const NamedSequence s = named_sequence(SequenceId::A005717, {1, 1});
    EXPECT_EQ(s.combo, ShiftCombo({-1, 1}));
    // 0, 1, 2, 6, 16 over the integers.
    EXPECT_EQ(raw(sequence_table(s, t_table({1, 1}, Modulus(5)))), (std::vector<std::uint32_t>{0, 1, 2, 1, 1}));
}

TEST(ComboTable, MotzkinCombinationMatchesMTable) {
    for (std::uint32_t q : {5u, 7u, 11u, 13u, 101u}) {
        const Modulus p(q);
        for (const SeqParams params : {SeqParams{1, 1}, SeqParams{2, 3}, SeqParams{-1, 4}}) {
            const NamedSequence m = named_sequence(SequenceId::Motzkin, params);
            EXPECT_EQ(raw(sequence_table(m, t_table(params, p))), raw(m_table(params, p).raw_values())) << q;
        }
    }
}

TEST(ShiftCombo, Validation) {
    EXPECT_THROW(ShiftCombo({}), error);
    EXPECT_THROW(ShiftCombo({1, 0}), error);
    EXPECT_EQ(ShiftCombo({3, 2, -1}).width(), 2u);
    EXPECT_THROW(combo_table(ShiftCombo({3, 2, -1}), t_table({1, 1}, Modulus(2))), unsupported_width_error);
    EXPECT_NO_THROW(combo_table(ShiftCombo({3, 2, -1}), t_table({1, 1}, Modulus(3))));
}

TEST(SequenceId, NamesRoundTrip) {
    for (SequenceId id : {SequenceId::Trinomial, SequenceId::Motzkin, SequenceId::A005717, SequenceId::A005043,
                          SequenceId::A005773, SequenceId::Custom})
        EXPECT_EQ(parse_sequence_id(to_string(id)), id);
    EXPECT_FALSE(parse_sequence_id("catalan"));
}

// Every table entry against the Laurent-polynomial oracle, for all primes
// up to 97 and 24 parameter pairs each.
TEST(OracleAgreement, TablesForSmallPrimes) {
    std::mt19937 rng(2024);
    for (std::uint32_t q : primes_up_to(97)) {
        const Modulus p(q);
        for (int trial = 0; trial < 24; ++trial) {
            const SeqParams params{static_cast<std::int64_t>(rng() % q), static_cast<std::int64_t>(rng() % q)};
            const TTable t = t_table(params, p);
            const auto t_ref = oracle_prefix_mod(params, q + 2, weights::trinomial(), p);
            for (std::uint32_t n = 0; n < q + 2; ++n) ASSERT_EQ(t[n], t_ref[n]) << "p=" << q << " n=" << n;
            const MTable mt = m_table(params, p);
            const auto m_ref = oracle_prefix_mod(params, q, weights::motzkin(), p);
            for (std::uint32_t n = 0; n < q; ++n) ASSERT_EQ(mt[n], m_ref[n]) << "p=" << q << " n=" << n;
        }
    }
}

TEST(OracleAgreement, NamedSequencesWhereDivisorIsAUnit) {
    for (std::uint32_t q : {3u, 5u, 7u, 13u, 31u}) {
        const Modulus p(q);
        for (std::int64_t a = -2; a <= 2; ++a)
            for (std::int64_t b = -2; b <= 2; ++b)
                for (SequenceId id : {SequenceId::A005717, SequenceId::A005043, SequenceId::A005773}) {
                    const NamedSequence s = named_sequence(id, {a, b});
                    if (Residue(s.divisor, p).is_zero()) continue;
                    const auto ours = sequence_table(s, t_table({a, b}, p));
                    const auto ref = oracle_prefix_mod({a, b}, q, s.weight, p);
                    ASSERT_EQ(raw(ours), raw(ref)) << to_string(id) << " p=" << q << " a=" << a << " b=" << b;
                }
    }
}

TEST(TTable, ForcedTail) {
    for (std::uint32_t q : primes_up_to(200)) {
        const Modulus p(q);
        for (const SeqParams params : {SeqParams{1, 1}, SeqParams{3, -2}, SeqParams{0, 5}}) {
            const TTable t = t_table(params, p);
            EXPECT_EQ(t[q], t[1] * t[0]);
            EXPECT_EQ(t[q + 1], t[1] * t[1]);
            EXPECT_EQ(t[0].value(), 1 % q);
            EXPECT_EQ(t[1], Residue(params.b, p));
        }
    }
}

TEST(MTable, PMinusTwoCriterion) {
    for (std::uint32_t q : primes_up_to(500)) {
        if (q < 5) continue;
        const MTable mt = m_table({1, 1}, Modulus(q));
        EXPECT_EQ(mt[q - 2].is_zero(), q % 3 == 1) << q;
    }
}

}  // namespace
}  // namespace motzkin

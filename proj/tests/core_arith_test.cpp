#include <random>

#include <gtest/gtest.h>

#include "motzkin/core_arith.hpp"

namespace motzkin {
namespace {

std::vector<std::uint32_t> digits_of(const DigitWord& w) { return {w.digits().begin(), w.digits().end()}; }

TEST(Modulus, RejectsComposites) {
    EXPECT_NO_THROW(Modulus(2));
    EXPECT_NO_THROW(Modulus(97));
    EXPECT_THROW(Modulus(1), not_prime_error);
    EXPECT_THROW(Modulus(91), not_prime_error);
    EXPECT_THROW(Modulus(0), not_prime_error);
    EXPECT_THROW(Modulus(4294967311ull), not_prime_error);  // prime, but wider than 32 bits
}

TEST(Modulus, TrialDivisionMatchesSieve) {
    std::vector<bool> composite(5000, false);
    for (std::size_t i = 2; i < composite.size(); ++i) {
        if (!composite[i])
            for (std::size_t j = i * i; j < composite.size(); j += i) composite[j] = true;
        EXPECT_EQ(is_prime(i), !composite[i]) << i;
    }
}

TEST(Digits, ToDigits) {
    const Modulus p(5);
    EXPECT_EQ(digits_of(to_digits(19, p)), (std::vector<std::uint32_t>{3, 4}));
    EXPECT_EQ(digits_of(to_digits(0, p)), (std::vector<std::uint32_t>{0}));
    EXPECT_EQ(digits_of(to_digits(124, p)), (std::vector<std::uint32_t>{4, 4, 4}));
}

TEST(Digits, FromDigits) {
    const Modulus p(5);
    EXPECT_EQ(from_digits(DigitWord({3, 4}, p)), 19u);
    EXPECT_EQ(from_digits(DigitWord({0, 3, 4}, p)), 19u);
    EXPECT_EQ(from_digits(DigitWord({}, p)), 0u);
    EXPECT_THROW(DigitWord({1, 5}, p), malformed_word_error);
    const std::vector<std::uint32_t> bad{2, 7};
    EXPECT_THROW(from_digits(bad, p), malformed_word_error);
}

TEST(Digits, LeadingZerosAreEquivalent) {
    const Modulus p(7);
    EXPECT_EQ(DigitWord({0, 0, 3, 1}, p), DigitWord({3, 1}, p));
    EXPECT_EQ(DigitWord({0}, p), DigitWord({}, p));
    EXPECT_FALSE(DigitWord({3, 1}, p) == DigitWord({3, 1, 0}, p));
}

TEST(Digits, RoundTrip) {
    for (std::uint64_t q = 2; q <= 97; ++q) {
        if (!is_prime(q)) continue;
        const Modulus p(q);
        for (std::uint64_t n = 0; n < 1'000'000; n += (q < 10 ? 1 : 37)) ASSERT_EQ(from_digits(to_digits(n, p)), n);
    }
}

TEST(ModInverse, Examples) {
    const Modulus five(5), seven(7);
    EXPECT_EQ(mod_inverse(Residue(2, five)).value(), 3u);
    EXPECT_EQ(mod_inverse(Residue(1, seven)).value(), 1u);
    EXPECT_EQ(mod_inverse(Residue(4, five)).value(), 4u);
    EXPECT_THROW(mod_inverse(Residue(10, five)), non_invertible_error);
}

TEST(ModPow, Examples) {
    const Modulus five(5), seven(7);
    EXPECT_EQ(mod_pow(Residue(2, five), 2).value(), 4u);
    EXPECT_EQ(mod_pow(Residue(-3, five), 2).value(), 4u);
    EXPECT_EQ(mod_pow(Residue(3, seven), 0).value(), 1u);
    EXPECT_EQ(mod_pow(Residue(3, seven), -1).value(), 5u);
    EXPECT_EQ(mod_pow(Residue(0, seven), 0).value(), 1u);
    EXPECT_THROW(mod_pow(Residue(0, seven), -2), non_invertible_error);
}

TEST(ModPow, FermatForAllPrimesBelow200) {
    for (std::uint64_t q = 2; q <= 200; ++q) {
        if (!is_prime(q)) continue;
        const Modulus p(q);
        for (std::int64_t r = 1; r < static_cast<std::int64_t>(q); ++r)
            ASSERT_EQ(mod_pow(Residue(r, p), static_cast<std::int64_t>(q) - 1).value(), 1u) << r << " mod " << q;
    }
}

TEST(Residue, NegativeInputsReduce) {
    const Modulus p(11);
    EXPECT_EQ(Residue(-1, p).value(), 10u);
    EXPECT_EQ(Residue(BigInt(-23), p).value(), 10u);
    EXPECT_EQ((Residue(3, p) - Residue(5, p)).value(), 9u);
    EXPECT_EQ((-Residue(0, p)).value(), 0u);
}

TEST(ExactRatio, IsReduced) {
    const ExactRatio r(BigInt(6), BigInt(-8));
    EXPECT_EQ(r.numerator(), -3);
    EXPECT_EQ(r.denominator(), 4);
    EXPECT_EQ(r.to_string(), "-3/4");
    EXPECT_EQ(ExactRatio(BigInt(1), BigInt(10)).decimal(), "0.100000");
    EXPECT_THROW(ExactRatio(BigInt(1), BigInt(0)), error);
}

TEST(ExactRatio, SumMatchesCrossMultiplication) {
    std::mt19937_64 rng(12345);
    std::uniform_int_distribution<std::int64_t> num(-1'000'000, 1'000'000);
    std::uniform_int_distribution<std::int64_t> den(1, 1'000'000);
    for (int trial = 0; trial < 2000; ++trial) {
        const BigInt a = num(rng), b = den(rng), c = num(rng), d = den(rng);
        const ExactRatio sum = ExactRatio(a, b) + ExactRatio(c, d);
        // sum = n/m in lowest terms  <=>  n * (b d) == m * (a d + c b)
        ASSERT_EQ(sum.numerator() * (b * d), sum.denominator() * (a * d + c * b));
        ASSERT_EQ(gcd(abs(sum.numerator()), sum.denominator()), sum.numerator() == 0 ? sum.denominator() : 1);
        ASSERT_GT(sum.denominator(), 0);
    }
}

TEST(UnitGroup, Generation) {
    const Modulus p(5);
    const std::vector<std::uint32_t> table{1, 1, 3, 2, 4};
    EXPECT_TRUE(generates_unit_group(table, p));
    EXPECT_EQ(generated_subgroup_order(table, p), 4u);
    const std::vector<std::uint32_t> ones{1, 1, 1};
    EXPECT_FALSE(generates_unit_group(ones, p));
    EXPECT_EQ(generated_subgroup_order(ones, p), 1u);
    const std::vector<std::uint32_t> squares{1, 4};
    EXPECT_FALSE(generates_unit_group(squares, p));
    EXPECT_EQ(generated_subgroup_order(squares, p), 2u);
}

TEST(UnitGroup, AgreesWithClosureBruteForce) {
    std::mt19937 rng(7);
    for (std::uint32_t q : {7u, 13u, 31u, 41u, 97u}) {
        const Modulus p(q);
        for (int trial = 0; trial < 40; ++trial) {
            std::vector<std::uint32_t> gens(1 + rng() % 3);
            for (auto& g : gens) g = 1 + rng() % (q - 1);
            std::vector<bool> seen(q, false);
            std::vector<std::uint32_t> frontier{1};
            seen[1] = true;
            while (!frontier.empty()) {
                const std::uint32_t x = frontier.back();
                frontier.pop_back();
                for (std::uint32_t g : gens) {
                    const std::uint32_t y = static_cast<std::uint32_t>(std::uint64_t(x) * g % q);
                    if (!seen[y]) {
                        seen[y] = true;
                        frontier.push_back(y);
                    }
                }
            }
            const auto closure = std::count(seen.begin(), seen.end(), true);
            EXPECT_EQ(generated_subgroup_order(gens, p), static_cast<std::uint64_t>(closure));
            EXPECT_EQ(generates_unit_group(gens, p), closure == q - 1);
        }
    }
}

}  // namespace
}  // namespace motzkin

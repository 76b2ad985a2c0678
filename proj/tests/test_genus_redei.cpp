#include <gtest/gtest.h>

#include "oracles.hpp"
#include "twoclass/error.hpp"
#include "twoclass/forms.hpp"
#include "twoclass/genus.hpp"
#include "twoclass/quadfield.hpp"
#include "twoclass/redei.hpp"

using namespace twoclass;
using namespace twoclass::genus;
using quadfield::QuadraticField;

TEST(Genus, StarredPrime)
{
    EXPECT_EQ(starred_prime(5), 5);
    EXPECT_EQ(starred_prime(7), -7);
    EXPECT_THROW(starred_prime(2), even_prime);
    EXPECT_THROW(starred_prime(9), precondition_violation);
}

TEST(Genus, PrimeDiscriminants)
{
    EXPECT_EQ(prime_discriminants(1365), (std::vector<std::int64_t>{-3, 5, -7, 13}));
    EXPECT_EQ(prime_discriminants(10920), (std::vector<std::int64_t>{8, -3, 5, -7, 13}));
    EXPECT_EQ(prime_discriminants(12), (std::vector<std::int64_t>{-4, -3}));
    EXPECT_EQ(prime_discriminants(24), (std::vector<std::int64_t>{-8, -3}));
    EXPECT_THROW(prime_discriminants(16), not_fundamental);
    EXPECT_EQ(kernel(-4), -1);
    EXPECT_EQ(kernel(8), 2);
    EXPECT_EQ(kernel(-8), -2);
    EXPECT_EQ(kernel(-7), -7);
}

TEST(GenusProperty, PrimeDiscriminantsMultiplyBack)
{
    for (std::int64_t D = 5; D < 20000; ++D) {
        ASSERT_EQ(is_fundamental(D), oracle::is_discriminant_or_one(D) && D != 1) << D;
        if (!is_fundamental(D))
            continue;
        std::int64_t prod = 1;
        for (auto q : prime_discriminants(D)) {
            ASSERT_TRUE(oracle::is_discriminant_or_one(q));
            ASSERT_EQ(oracle::prime_divisors(q).size(), 1u);
            prod *= q;
        }
        ASSERT_EQ(prod, D);
    }
}

TEST(Genus, GenusFieldOf1365)
{
    auto K = QuadraticField::of(1365);
    auto G = genus_field(K);
    EXPECT_EQ(G.radicands, (std::vector<std::int64_t>{5, 13, 21}));
    EXPECT_EQ(G.degree(), 8);
    EXPECT_TRUE(G.same_field(GenusField{{105, 5, 13}}));
    EXPECT_FALSE(G.same_field(GenusField{{5, 13, 3}}));
    EXPECT_EQ(rank_A(K), 2);
    EXPECT_EQ(rank_A_narrow(K), 3);
    EXPECT_EQ(narrow_genus_field(K).degree(), 16);
    EXPECT_EQ(genus_fixed_order(K), 4);
    EXPECT_EQ(genus_fixed_order(QuadraticField::of(65)), 2);
}

TEST(GenusProperty, RankMatchesOracleForSmallFields)
{
    for (std::int64_t d = 2; d < 3000; ++d) {
        if (!oracle::is_squarefree(d))
            continue;
        auto K = QuadraticField::of(d);
        auto D = K.discriminant();
        auto narrow = forms::two_sylow(forms::narrow_class_group(D));
        auto ordinary = forms::two_sylow(forms::ordinary_class_group(D, quadfield::unit_norm(K)));
        ASSERT_EQ(rank_A(K), ordinary.rank()) << d;
        ASSERT_EQ(rank_A_narrow(K), narrow.rank()) << d;
        ASSERT_EQ(genus_field(K).degree(), std::int64_t{2} << rank_A(K)) << d;
    }
}

TEST(Redei, S1Examples)
{
    auto s1 = redei::enumerate_S1(1365);
    ASSERT_EQ(s1.size(), 8u);
    EXPECT_EQ(s1.front(), (redei::Decomposition{1, 1365}));
    EXPECT_EQ(redei::enumerate_S1(10920).size(), 16u);
    EXPECT_EQ(redei::filter_S2(1365).size(), 1u);
    EXPECT_TRUE(redei::narrow_two_elementary(1365));
    EXPECT_FALSE(redei::narrow_two_elementary(328));
    EXPECT_THROW(redei::enumerate_S1(1364), not_fundamental);
    for (std::size_t i = 2; i < s1.size(); ++i)
        EXPECT_LE(std::abs(s1[i - 1].D1), std::abs(s1[i].D1));
}

TEST(RedeiProperty, S1MatchesDivisorEnumeration)
{
    for (std::int64_t D = 5; D < 6000; ++D) {
        if (!is_fundamental(D))
            continue;
        auto s1 = redei::enumerate_S1(D);
        std::set<std::pair<std::int64_t, std::int64_t>> got;
        for (auto const & s : s1) {
            ASSERT_EQ(s.D1 * s.D2, D);
            ASSERT_LT(std::abs(s.D1), std::abs(s.D2));
            got.insert({s.D1, s.D2});
        }
        ASSERT_EQ(got.size(), s1.size());
        ASSERT_EQ(got, oracle::splittings(D)) << D;
    }
}

TEST(RedeiProperty, CharacterTestBySymbols)
{
    for (std::int64_t D = 5; D < 3000; ++D) {
        if (!is_fundamental(D))
            continue;
        for (auto const & s : redei::enumerate_S1(D)) {
            bool ok = true;
            for (auto p : oracle::prime_divisors(s.D2))
                ok = ok && oracle::kronecker(s.D1, p) == 1;
            for (auto p : oracle::prime_divisors(s.D1))
                ok = ok && oracle::kronecker(s.D2, p) == 1;
            ASSERT_EQ(redei::passes_character_test(s), ok) << D << " " << s.D1;
        }
    }
}

TEST(RedeiProperty, IdentityAgainstNarrowGroup)
{
    for (std::int64_t D = 5; D < 8000; ++D) {
        if (!is_fundamental(D))
            continue;
        auto A = forms::two_sylow(forms::narrow_class_group(D));
        ASSERT_EQ(static_cast<std::int64_t>(redei::enumerate_S1(D).size()), A.count_mod_2()) << D;
        ASSERT_EQ(static_cast<std::int64_t>(redei::filter_S2(D).size()), A.count_2_mod_4()) << D;
        ASSERT_EQ(redei::narrow_two_elementary(D), A.is_elementary()) << D;
    }
}

TEST(Redei, ElementaryTransfer)
{
    EXPECT_TRUE(redei::elementary_transfer_applies(arith::factor_squarefree(1365)));
    EXPECT_FALSE(redei::elementary_transfer_applies(arith::factor_squarefree(1885)));
}

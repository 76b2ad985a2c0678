#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "twoclass/classify.hpp"
#include "twoclass/error.hpp"

using namespace twoclass;
using namespace twoclass::classify;

namespace {

arith::FactoredSquarefree F(std::int64_t d) { return arith::factor_squarefree(d); }

/// Legendre table of actual primes, labels as given.
SymbolFn table_of(std::vector<std::int64_t> const & ps)
{
    return [ps](int i, int j) { return oracle::legendre(ps[static_cast<std::size_t>(i)], ps[static_cast<std::size_t>(j)]); };
}

} // namespace

TEST(Classify, TableRows)
{
    auto const & rows = table_rows();
    EXPECT_EQ(rows.size(), 15u);
    EXPECT_EQ(rows.front(), "2pp/2");
    EXPECT_EQ(rows.back(), "qqqq/1");
}

TEST(Classify, ShapeOf)
{
    auto s = shape_of(F(1365));
    EXPECT_EQ(s.row, "ppqq/1");
    EXPECT_EQ(s.p_primes, (std::vector<std::int64_t>{5, 13}));
    EXPECT_EQ(s.q_primes, (std::vector<std::int64_t>{3, 7}));
    EXPECT_EQ(s.pattern, "p1, p2, q1, q2");
    EXPECT_EQ(shape_of(F(1885)).row, "ppp/1");
    EXPECT_EQ(shape_of(F(26961)).row, "qqqq/1");
    EXPECT_EQ(shape_of(F(26277)).row, "pqq/1");
    EXPECT_EQ(shape_of(F(15)).row, "2pq/3");
    EXPECT_EQ(shape_of(F(30)).row, "2pq/2");
    EXPECT_TRUE(shape_of(F(130)).has_two);
    EXPECT_THROW(shape_of(F(3 * 5 * 7 * 11 * 13)), out_of_table);
    EXPECT_THROW(shape_of(F(13)), out_of_table);
}

TEST(ClassifyProperty, EveryThreeOrFourPrimeFieldHasOneRow)
{
    auto const & rows = table_rows();
    std::set<std::string> seen;
    for (std::int64_t d = 2; d < 33000; ++d) {
        if (!oracle::is_squarefree(d))
            continue;
        auto ps = oracle::prime_divisors(d);
        std::size_t t = ps.size() + (d % 4 == 3 && d % 2 == 1 ? 1 : 0);
        if (t != 3 && t != 4) {
            ASSERT_THROW(shape_of(F(d)), out_of_table) << d;
            continue;
        }
        auto s = shape_of(F(d));
        ASSERT_EQ(static_cast<std::size_t>(s.ramified_prime_count), t);
        ASSERT_NE(std::find(rows.begin(), rows.end(), s.row), rows.end()) << s.row;
        seen.insert(s.row);
    }
    EXPECT_EQ(seen.size(), rows.size());
}

TEST(Classify, RankStableType)
{
    EXPECT_EQ(rank_stable_type(F(1885)), 1);
    EXPECT_EQ(rank_stable_type(F(1365)), 2);
    EXPECT_EQ(rank_stable_type(F(26961)), 3);
    EXPECT_EQ(rank_stable_type(F(2665)), 1);
    EXPECT_EQ(rank_stable_type(F(26277)), std::nullopt);
    EXPECT_THROW(rank_stable_type(F(30)), even_radicand);
}

TEST(Classify, PpqqConditionReproducesExample)
{
    auto m = ppqq_condition(F(1365));
    ASSERT_TRUE(m);
    EXPECT_EQ(m->condition, 1);
    EXPECT_EQ(m->labeling, (std::vector<std::int64_t>{13, 5, 7, 3}));
    EXPECT_TRUE(ppqq_conditions()[0](table_of({13, 5, 7, 3})));
    EXPECT_THROW(ppqq_condition(F(1885)), wrong_shape);
    EXPECT_THROW(qqqq_condition(F(1365)), wrong_shape);
}

TEST(ClassifyProperty, SpecsForSatisfyTheirCondition)
{
    for (std::size_t c = 0; c < 3; ++c) {
        auto specs = specs_for(ppqq_residues, ppqq_conditions()[c]);
        ASSERT_FALSE(specs.empty());
        for (auto const & s : specs) {
            ASSERT_EQ(s.symbols.size(), 6u);
            ASSERT_TRUE(ppqq_conditions()[c](s.as_symbol_fn()));
        }
    }
    for (std::size_t c = 0; c < 9; ++c) {
        auto specs = specs_for(qqqq_residues, qqqq_conditions()[c]);
        ASSERT_FALSE(specs.empty()) << c;
        for (auto const & s : specs)
            ASSERT_TRUE(qqqq_conditions()[c](s.as_symbol_fn()));
    }
}

TEST(ClassifyProperty, SymbolTableObeysReciprocity)
{
    for (auto const & s : specs_for(qqqq_residues, qqqq_conditions()[0])) {
        auto f = s.as_symbol_fn();
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                if (i == j)
                    continue;
                int sign = (s.residues[i] % 4 == 3 && s.residues[j] % 4 == 3) ? -1 : 1;
                ASSERT_EQ(f(i, j) * f(j, i), sign);
            }
    }
}

TEST(Classify, FindPrimeTupleExamples)
{
    SymbolSpec spec{{5, 5, 7, 3}, {{{1, 0}, -1}, {{2, 0}, 1}}};
    for (auto mode : {SearchMode::crt_progression, SearchMode::smallest}) {
        auto ps = find_prime_tuple(spec, default_search_bound, mode);
        ASSERT_EQ(ps.size(), 4u);
        EXPECT_TRUE(satisfies(spec, ps));
        for (std::size_t i = 0; i < ps.size(); ++i) {
            EXPECT_TRUE(oracle::is_prime(ps[i]));
            EXPECT_EQ(ps[i] % 8, spec.residues[i]);
        }
        EXPECT_EQ(oracle::legendre(ps[1], ps[0]), -1);
        EXPECT_EQ(oracle::legendre(ps[2], ps[0]), 1);
    }
    auto big = find_prime_tuple(spec, default_search_bound, SearchMode::smallest, 1000);
    for (auto p : big)
        EXPECT_GE(p, 1000);
    EXPECT_THROW(find_prime_tuple(SymbolSpec{{4}, {}}), precondition_violation);
    EXPECT_THROW(find_prime_tuple(SymbolSpec{{1, 1}, {{{0, 1}, 1}}}), precondition_violation);
    EXPECT_THROW(find_prime_tuple(SymbolSpec{{1, 1, 1, 1}, {{{1, 0}, 1}, {{2, 0}, 1}}}, 1), not_found_within_bound);
}

TEST(ClassifyProperty, RandomSpecsSolved)
{
    std::mt19937_64 rng(77);
    int odd[] = {1, 3, 5, 7};
    for (int i = 0; i < 60; ++i) {
        SymbolSpec spec;
        int t = 1 + static_cast<int>(rng() % 4);
        for (int k = 0; k < t; ++k)
            spec.residues.push_back(odd[rng() % 4]);
        for (int k = 1; k < t; ++k)
            for (int j = 0; j < k; ++j)
                if (rng() % 3)
                    spec.symbols[{k, j}] = rng() % 2 ? 1 : -1;
        for (auto mode : {SearchMode::crt_progression, SearchMode::smallest}) {
            auto ps = find_prime_tuple(spec, default_search_bound, mode);
            ASSERT_TRUE(satisfies(spec, ps));
            std::set<std::int64_t> distinct(ps.begin(), ps.end());
            ASSERT_EQ(distinct.size(), ps.size());
            for (int k = 1; k < t; ++k)
                for (int j = 0; j < k; ++j) {
                    auto it = spec.symbols.find({k, j});
                    if (it != spec.symbols.end())
                        ASSERT_EQ(oracle::legendre(ps[k], ps[j]), it->second);
                }
        }
    }
}

TEST(Classify, PredictRequiresOddRadicand)
{
    EXPECT_THROW(predict(F(30)), even_radicand);
    EXPECT_THROW(predict(F(1)), precondition_violation);
}

TEST(Classify, PredictExamples)
{
    auto r = predict(F(1365));
    EXPECT_EQ(r.rank_K.rank, 2);
    EXPECT_EQ(r.rank_Kprime.rank, 3);
    EXPECT_EQ(r.rank_K1.rank, 2);
    EXPECT_EQ(r.structure_K1.group, Abelian2Group({2, 4}));
    EXPECT_EQ(r.structure_K1.direction, Direction::iff);
    ASSERT_TRUE(r.tower);
    EXPECT_EQ(r.tower->stable_rank, 2);
    EXPECT_TRUE(r.tower->mu_zero);
    EXPECT_FALSE(r.tower->lambda_zero);
    EXPECT_TRUE(r.findings.empty());

    auto t = predict(F(2665));
    EXPECT_EQ(t.rank_stable, 1);
    EXPECT_EQ(t.rank_K1.rank, 3);
    EXPECT_EQ(t.findings.size(), 2u);
    EXPECT_FALSE(t.tower);

    auto q = predict(F(26961));
    EXPECT_EQ(q.rank_stable, 3);
    EXPECT_FALSE(q.qqqq);
    EXPECT_EQ(to_string(Direction::sufficient), "sufficient");
}

TEST(Classify, VerifyAgainstOracle)
{
    auto r = predict(F(1365));
    auto v = verify_against_oracle(r);
    EXPECT_TRUE(v.all_match());
    EXPECT_EQ(v.A_K, Abelian2Group::elementary(2));
    EXPECT_EQ(v.A_Kprime, Abelian2Group::elementary(3));
    EXPECT_EQ(v.hasse_index, 1);
    EXPECT_EQ(v.A_K1_order, 8);
    EXPECT_EQ(v.A_K1, Abelian2Group({2, 4}));
    EXPECT_THROW(verify_against_oracle(r, 1000), oracle_range_exceeded);
}

TEST(ClassifyProperty, TowerClaimExactlyWhenPreconditionsHold)
{
    for (std::int64_t d = 3; d < 6000; d += 2) {
        if (!oracle::is_squarefree(d))
            continue;
        auto r = predict(F(d));
        bool expect = d % 4 == 1 && r.rank_K.rank == r.rank_K1.rank;
        ASSERT_EQ(r.tower.has_value(), expect) << d;
        if (r.tower) {
            ASSERT_EQ(r.tower->stable_rank, r.rank_K.rank);
            ASSERT_TRUE(r.tower->mu_zero);
        }
    }
}

TEST(ClassifyProperty, SweepAgreesWithOracle)
{
    for (std::int64_t d = 3; d < 4000; d += 2) {
        if (!oracle::is_squarefree(d))
            continue;
        auto v = verify_against_oracle(predict(F(d)));
        for (auto const & c : v.checks)
            ASSERT_TRUE(c.match) << d << ": " << c.claim << " predicted " << c.predicted << " observed " << c.observed;
    }
}

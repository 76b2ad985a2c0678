#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "twoclass/error.hpp"
#include "twoclass/forms.hpp"
#include "twoclass/genus.hpp"
#include "twoclass/quadfield.hpp"

using namespace twoclass;
using namespace twoclass::forms;

namespace {

std::vector<IndefiniteForm> brute_reduced(std::int64_t D)
{
    std::vector<IndefiniteForm> out;
    std::int64_t r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(D))) + 1;
    for (std::int64_t a = -r; a <= r; ++a) {
        if (a == 0)
            continue;
        for (std::int64_t b = 1; b * b < D; ++b) {
            if ((b * b - D) % (4 * a) != 0)
                continue;
            std::int64_t c = (b * b - D) / (4 * a);
            std::int64_t A = std::abs(a);
            bool lower = D < (2 * A + b) * (2 * A + b);
            bool upper = 2 * A - b <= 0 || (2 * A - b) * (2 * A - b) < D;
            if (lower && upper)
                out.push_back({a, b, c});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::int64_t> fundamental_discriminants(std::int64_t lo, std::int64_t hi)
{
    std::vector<std::int64_t> out;
    for (std::int64_t D = lo; D < hi; ++D)
        if (D > 1 && oracle::is_discriminant_or_one(D))
            out.push_back(D);
    return out;
}

/// h from h log(eps) = -1/2 sum_{a<D} chi(a) log sin(pi a / D).
long long analytic_class_number(std::int64_t D, double log_eps)
{
    long double s = 0;
    for (std::int64_t a = 1; a < D; ++a) {
        int chi = oracle::kronecker(D, a);
        if (chi)
            s += chi * std::log(std::sin(std::numbers::pi_v<long double> * a / D));
    }
    return std::llround(static_cast<double>(-s / 2 / log_eps));
}

double log_unit(std::int64_t D)
{
    auto K = quadfield::QuadraticField::of(D % 4 == 0 ? D / 4 : D);
    auto u = quadfield::fundamental_unit(K).value;
    return std::log(u.a.get_d() + u.b.get_d() * std::sqrt(static_cast<double>(u.d)));
}

} // namespace

TEST(Forms, DiscriminantChecks)
{
    EXPECT_NO_THROW(check_discriminant(5));
    EXPECT_NO_THROW(check_discriminant(20));
    EXPECT_THROW(check_discriminant(16), invalid_discriminant);
    EXPECT_THROW(check_discriminant(7), invalid_discriminant);
    EXPECT_THROW(check_discriminant(-4), invalid_discriminant);
    EXPECT_THROW(form_from(3, 1, 40), invalid_discriminant);
    EXPECT_EQ(form_from(3, 2, 40), (IndefiniteForm{3, 2, -3}));
}

TEST(Forms, ReductionExamples)
{
    EXPECT_EQ(reduce({1, 0, -2}), (IndefiniteForm{1, 2, -1}));
    EXPECT_TRUE(principal_form(40).is_reduced());
    EXPECT_EQ(principal_form(40).a, 1);
    EXPECT_EQ(principal_form(1365).discriminant(), 1365);
    EXPECT_EQ((IndefiniteForm{2, 1, -3}).to_string(), "(2, 1, -3)");
}

TEST(Forms, ReducedFormsMatchBruteEnumeration)
{
    for (std::int64_t D = 5; D < 1500; ++D) {
        if (D % 4 > 1 || arith::is_square(D))
            continue;
        ASSERT_EQ(reduced_forms(D), brute_reduced(D)) << D;
    }
}

TEST(FormsProperty, RhoPreservesReducedness)
{
    for (std::int64_t D : {40, 60, 229, 1365, 10920}) {
        for (auto const & f : reduced_forms(D)) {
            auto g = rho(f);
            ASSERT_TRUE(g.is_reduced()) << f.to_string();
            ASSERT_EQ(g.discriminant(), D);
        }
    }
}

TEST(FormsProperty, ReduceGivesEquivalentReducedForm)
{
    std::mt19937_64 rng(31);
    for (int i = 0; i < 2000; ++i) {
        std::int64_t a = static_cast<std::int64_t>(rng() % 400) - 200;
        std::int64_t b = static_cast<std::int64_t>(rng() % 400) - 200;
        std::int64_t c = static_cast<std::int64_t>(rng() % 400) - 200;
        IndefiniteForm f{a, b, c};
        auto D = f.discriminant();
        if (a == 0 || c == 0 || D <= 0 || arith::is_square(D) || !f.is_primitive())
            continue;
        auto g = reduce(f);
        ASSERT_TRUE(g.is_reduced());
        ASSERT_EQ(g.discriminant(), D);
        auto G = narrow_class_group(D);
        ASSERT_EQ(G.class_of(f), G.class_of(g));
    }
}

TEST(Forms, NarrowClassGroupExamples)
{
    auto g40 = narrow_class_group(40);
    EXPECT_EQ(g40.order(), 2u);
    EXPECT_EQ(g40.invariant_factors(), (std::vector<std::int64_t>{2}));
    EXPECT_EQ(g40.cycle_count(), 2u);
    EXPECT_EQ(narrow_class_group(60).invariant_factors(), (std::vector<std::int64_t>{2, 2}));
    EXPECT_EQ(two_sylow(narrow_class_group(1365)), Abelian2Group::elementary(3));
    EXPECT_EQ(narrow_class_group(10920).order(), 16u);
    EXPECT_EQ(narrow_class_group(229).invariant_factors(), (std::vector<std::int64_t>{3}));
    EXPECT_EQ(two_sylow(narrow_class_group(229)), Abelian2Group());
    EXPECT_EQ(narrow_class_group(328).invariant_factors(), (std::vector<std::int64_t>{4}));
    EXPECT_EQ(narrow_class_group(5).order(), 1u);
}

TEST(Forms, OrdinaryClassGroupExamples)
{
    EXPECT_EQ(two_sylow(ordinary_class_group(1365, 1)), Abelian2Group::elementary(2));
    EXPECT_EQ(two_sylow(ordinary_class_group(10920, 1)), Abelian2Group::elementary(3));
    EXPECT_EQ(ordinary_class_group(229, -1).order(), 3u);
    EXPECT_EQ(ordinary_class_group(40, -1).order(), 2u);
    EXPECT_THROW(ordinary_class_group(1365, -1), inconsistent);
}

TEST(FormsProperty, ClassNumberFormula)
{
    for (auto D : fundamental_discriminants(5, 2500)) {
        auto d = D % 4 == 0 ? D / 4 : D;
        int n = quadfield::unit_norm(quadfield::QuadraticField::of(d));
        auto G = ordinary_class_group(D, n);
        ASSERT_EQ(static_cast<long long>(G.order()), analytic_class_number(D, log_unit(D))) << D;
        auto H = narrow_class_group(D);
        ASSERT_EQ(H.order(), G.order() * (n == 1 ? 2 : 1)) << D;
    }
}

TEST(FormsProperty, GroupAxioms)
{
    for (std::int64_t D : {60, 145, 229, 328, 1365, 2305, 4729, 10920, 17160}) {
        for (bool narrow : {true, false}) {
            auto d = D % 4 == 0 ? D / 4 : D;
            auto G = narrow ? narrow_class_group(D)
                            : ordinary_class_group(D, quadfield::unit_norm(quadfield::QuadraticField::of(d)));
            auto n = G.order();
            std::vector<std::int64_t> orders;
            for (std::size_t i = 0; i < n; ++i) {
                ASSERT_EQ(G.multiply(i, G.identity()), i);
                ASSERT_EQ(G.multiply(i, G.inverse(i)), G.identity());
                orders.push_back(G.element_order(i));
                for (std::size_t j = 0; j < n; ++j) {
                    ASSERT_EQ(G.multiply(i, j), G.multiply(j, i));
                    for (std::size_t k = 0; k < n; ++k)
                        ASSERT_EQ(G.multiply(G.multiply(i, j), k), G.multiply(i, G.multiply(j, k)));
                }
            }
            ASSERT_EQ(invariant_factors_from_orders(orders), G.invariant_factors()) << D;
        }
    }
}

TEST(FormsProperty, CompositionAgreesWithClassTable)
{
    for (std::int64_t D : {229, 1365, 4729, 10920}) {
        auto G = narrow_class_group(D);
        auto const & reps = G.classes();
        for (std::size_t i = 0; i < reps.size(); ++i)
            for (std::size_t j = 0; j < reps.size(); ++j) {
                auto h = compose(reps[i], reps[j]);
                ASSERT_TRUE(h.is_reduced());
                ASSERT_EQ(G.class_of(h), G.multiply(i, j));
                ASSERT_EQ(G.class_of(compose(reps[i], reps[i].inverse())), G.identity());
            }
    }
    EXPECT_THROW(compose({1, 1, -1}, {1, 0, -2}), discriminant_mismatch);
}

TEST(FormsProperty, LargeGroupsWithoutTable)
{
    // order above the composition-table limit: products go through compose
    for (auto D : fundamental_discriminants(40000, 200000)) {
        auto G = narrow_class_group(D);
        if (G.order() <= composition_table_limit)
            continue;
        for (std::size_t i = 0; i < G.order(); i += 7) {
            auto j = (i * 5 + 3) % G.order();
            ASSERT_EQ(G.multiply(i, j), G.multiply(j, i));
            ASSERT_EQ(G.multiply(G.multiply(i, j), G.inverse(j)), i);
        }
        std::int64_t order = 1;
        for (auto f : G.invariant_factors())
            order *= f;
        ASSERT_EQ(order, static_cast<std::int64_t>(G.order()));
        return;
    }
    FAIL() << "no large class group found";
}

#include "twoclass/redei.hpp"

#include <algorithm>
#include <cstdlib>

#include "twoclass/error.hpp"
#include "twoclass/genus.hpp"

namespace twoclass::redei {

namespace {

std::vector<std::int64_t> prime_divisors(std::int64_t n)
{
    std::vector<std::int64_t> ps;
    for (auto [p, e] : arith::factor(static_cast<std::uint64_t>(std::llabs(n))))
        ps.push_back(static_cast<std::int64_t>(p));
    return ps;
}

bool all_residues(std::int64_t a, std::int64_t b)
{
    for (auto p : prime_divisors(b)) {
        if (arith::kronecker(a, p) != 1)
            return false;
    }
    return true;
}

} // namespace

std::vector<Decomposition> enumerate_S1(std::int64_t D)
{
    auto pd = genus::prime_discriminants(D);
    auto t = pd.size();
    std::vector<Decomposition> out;
    // fixing the last prime discriminant in D2 picks one of each pair
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (t - 1)); ++mask) {
        std::int64_t D1 = 1;
        for (std::size_t i = 0; i + 1 < t; ++i) {
            if (mask >> i & 1)
                D1 *= pd[i];
        }
        std::int64_t D2 = D / D1;
        if (std::llabs(D1) > std::llabs(D2))
            std::swap(D1, D2);
        out.push_back({D1, D2});
    }
    std::sort(out.begin(), out.end(), [](Decomposition const & x, Decomposition const & y) {
        auto ax = std::llabs(x.D1), ay = std::llabs(y.D1);
        return ax != ay ? ax < ay : x.D1 > y.D1;
    });
    return out;
}

bool passes_character_test(Decomposition const & s)
{
    return all_residues(s.D1, s.D2) && all_residues(s.D2, s.D1);
}

std::vector<Decomposition> filter_S2(std::int64_t D)
{
    std::vector<Decomposition> out;
    for (auto const & s : enumerate_S1(D)) {
        if (s.D1 == 1 || passes_character_test(s))
            out.push_back(s);
    }
    return out;
}

bool narrow_two_elementary(std::int64_t D)
{
    return filter_S2(D).size() == 1;
}

bool elementary_transfer_applies(arith::FactoredSquarefree const & d)
{
    auto const & ps = d.primes();
    return std::any_of(ps.begin(), ps.end(), [](std::int64_t p) { return p % 4 == 3; });
}

} // namespace twoclass::redei

#include "twoclass/group.hpp"

#include <algorithm>
#include <bit>
#include <map>

#include "twoclass/arith.hpp"
#include "twoclass/error.hpp"

namespace twoclass {

Abelian2Group::Abelian2Group(std::vector<std::int64_t> factors) : factors_(std::move(factors))
{
    for (auto f : factors_) {
        if (f < 2 || !std::has_single_bit(static_cast<std::uint64_t>(f)))
            throw precondition_violation("Abelian2Group factor " + std::to_string(f) +
                                         " is not a power of two >= 2");
    }
    std::sort(factors_.begin(), factors_.end());
}

Abelian2Group Abelian2Group::elementary(int rank)
{
    return Abelian2Group(std::vector<std::int64_t>(static_cast<std::size_t>(rank), 2));
}

std::int64_t Abelian2Group::order() const
{
    std::int64_t n = 1;
    for (auto f : factors_)
        n *= f;
    return n;
}

bool Abelian2Group::is_elementary() const
{
    return std::all_of(factors_.begin(), factors_.end(), [](auto f) { return f == 2; });
}

std::int64_t Abelian2Group::count_mod_2() const
{
    return std::int64_t{1} << rank();
}

std::int64_t Abelian2Group::count_2_mod_4() const
{
    auto big = std::count_if(factors_.begin(), factors_.end(), [](auto f) { return f >= 4; });
    return std::int64_t{1} << big;
}

std::string Abelian2Group::to_string() const
{
    if (factors_.empty())
        return "0";
    std::string s;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (i)
            s += " + ";
        s += "Z/" + std::to_string(factors_[i]);
    }
    return s;
}

std::vector<std::int64_t> invariant_factors_from_orders(std::span<std::int64_t const> orders)
{
    auto n = static_cast<std::int64_t>(orders.size());
    if (n == 0)
        throw precondition_violation("group with no elements");

    // p -> exponents of the cyclic p-primary factors, largest first
    std::map<std::int64_t, std::vector<int>> primary;
    for (auto [p_u, E] : arith::factor(static_cast<std::uint64_t>(n))) {
        auto p = static_cast<std::int64_t>(p_u);
        // at_least[k] = #{i : e_i >= k}, from counts of elements killed by p^k
        std::vector<int> at_least(static_cast<std::size_t>(E) + 2, 0);
        int prev_log = 0;
        std::int64_t pk = 1;
        for (int k = 1; k <= E; ++k) {
            pk *= p;
            std::int64_t count = std::count_if(orders.begin(), orders.end(),
                                               [&](std::int64_t o) { return pk % o == 0; });
            int lg = 0;
            for (std::int64_t c = count; c > 1; c /= p) {
                if (c % p != 0)
                    throw inconsistent("element orders do not describe an abelian group");
                ++lg;
            }
            at_least[static_cast<std::size_t>(k)] = lg - prev_log;
            prev_log = lg;
        }
        if (prev_log != E)
            throw inconsistent("element orders do not account for the group order");
        std::vector<int> exps;
        for (int k = E; k >= 1; --k) {
            int exact = at_least[static_cast<std::size_t>(k)] - at_least[static_cast<std::size_t>(k) + 1];
            for (int j = 0; j < exact; ++j)
                exps.push_back(k);
        }
        primary[p] = std::move(exps);
    }

    std::size_t r = 0;
    for (auto const & [p, exps] : primary)
        r = std::max(r, exps.size());
    // largest invariant factor first, then reverse
    std::vector<std::int64_t> result(r, 1);
    for (auto const & [p, exps] : primary) {
        for (std::size_t i = 0; i < exps.size(); ++i) {
            for (int j = 0; j < exps[i]; ++j)
                result[i] *= p;
        }
    }
    std::reverse(result.begin(), result.end());
    return result;
}

Abelian2Group two_part(std::span<std::int64_t const> invariant_factors)
{
    std::vector<std::int64_t> twos;
    for (auto f : invariant_factors) {
        std::int64_t t = f & -f;
        if (t >= 2)
            twos.push_back(t);
    }
    return Abelian2Group(std::move(twos));
}

} // namespace twoclass

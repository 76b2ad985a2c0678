#include "twoclass/genus.hpp"

#include <algorithm>
#include <map>

#include "twoclass/arith.hpp"
#include "twoclass/error.hpp"

namespace twoclass::genus {

namespace {

using support = std::vector<std::int64_t>; // -1 and the primes dividing r

support support_of(std::int64_t r)
{
    if (r == 0)
        throw precondition_violation("radicand 0");
    support s;
    if (r < 0)
        s.push_back(-1);
    for (auto [p, e] : arith::factor(static_cast<std::uint64_t>(r < 0 ? -r : r))) {
        if (e % 2 != 0)
            s.push_back(static_cast<std::int64_t>(p));
    }
    return s;
}

/* F2-rank of the span of the given radicands modulo squares. */
int f2_rank(std::vector<std::int64_t> const & radicands)
{
    std::map<std::int64_t, int> index;
    std::vector<std::vector<bool>> rows;
    for (auto r : radicands) {
        for (auto p : support_of(r))
            index.emplace(p, 0);
    }
    int k = 0;
    for (auto & [p, i] : index)
        i = k++;
    for (auto r : radicands) {
        std::vector<bool> row(static_cast<std::size_t>(k));
        for (auto p : support_of(r))
            row[static_cast<std::size_t>(index[p])] = true;
        rows.push_back(std::move(row));
    }

    int rank = 0;
    for (int col = 0; col < k && rank < static_cast<int>(rows.size()); ++col) {
        auto c = static_cast<std::size_t>(col);
        auto pivot = std::find_if(rows.begin() + rank, rows.end(), [&](auto const & r) { return r[c]; });
        if (pivot == rows.end())
            continue;
        std::iter_swap(rows.begin() + rank, pivot);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i != static_cast<std::size_t>(rank) && rows[i][c]) {
                for (std::size_t j = 0; j < rows[i].size(); ++j)
                    rows[i][j] = rows[i][j] != rows[static_cast<std::size_t>(rank)][j];
            }
        }
        ++rank;
    }
    return rank;
}

} // namespace

bool GenusField::same_field(GenusField const & o) const
{
    int ra = f2_rank(radicands);
    int rb = f2_rank(o.radicands);
    if (ra != rb)
        return false;
    std::vector<std::int64_t> both = radicands;
    both.insert(both.end(), o.radicands.begin(), o.radicands.end());
    return f2_rank(both) == ra;
}

std::int64_t starred_prime(std::int64_t p)
{
    if (p == 2)
        throw even_prime("2 has no starred form");
    if (p < 2 || !arith::is_prime(static_cast<std::uint64_t>(p)))
        throw precondition_violation(std::to_string(p) + " is not an odd prime");
    return p % 4 == 1 ? p : -p;
}

bool is_fundamental(std::int64_t D)
{
    if (D == 0 || D == 1)
        return false;
    auto squarefree = [](std::int64_t m) {
        if (m == 1 || m == -1)
            return true;
        for (auto [p, e] : arith::factor(static_cast<std::uint64_t>(m < 0 ? -m : m))) {
            if (e > 1)
                return false;
        }
        return true;
    };
    std::int64_t r = ((D % 4) + 4) % 4;
    if (r == 1)
        return squarefree(D);
    if (r != 0)
        return false;
    std::int64_t m = D / 4;
    std::int64_t mr = ((m % 4) + 4) % 4;
    return (mr == 2 || mr == 3) && squarefree(m);
}

std::vector<std::int64_t> prime_discriminants(std::int64_t D)
{
    if (!is_fundamental(D))
        throw not_fundamental(std::to_string(D) + " is not a fundamental discriminant");
    std::vector<std::int64_t> odd;
    std::int64_t prod = 1;
    for (auto [p, e] : arith::factor(static_cast<std::uint64_t>(D < 0 ? -D : D))) {
        if (p == 2)
            continue;
        auto ps = starred_prime(static_cast<std::int64_t>(p));
        odd.push_back(ps);
        prod *= ps;
    }
    std::int64_t residual = D / prod;
    std::vector<std::int64_t> out;
    if (residual != 1) {
        if (residual != -4 && residual != 8 && residual != -8)
            throw inconsistent("2-part " + std::to_string(residual) + " of " + std::to_string(D));
        out.push_back(residual);
    }
    out.insert(out.end(), odd.begin(), odd.end());
    return out;
}

std::int64_t kernel(std::int64_t prime_disc)
{
    switch (prime_disc) {
    case -4: return -1;
    case 8: return 2;
    case -8: return -2;
    default: return prime_disc;
    }
}

GenusField narrow_genus_field(quadfield::QuadraticField const & K)
{
    GenusField g;
    for (auto q : prime_discriminants(K.discriminant()))
        g.radicands.push_back(kernel(q));
    return g;
}

GenusField genus_field(quadfield::QuadraticField const & K)
{
    GenusField narrow = narrow_genus_field(K);
    GenusField g;
    std::int64_t anchor = 0;
    std::vector<std::int64_t> paired;
    for (auto r : narrow.radicands) {
        if (r > 0)
            g.radicands.push_back(r);
        else if (anchor == 0)
            anchor = r;
        else
            paired.push_back(anchor * r);
    }
    g.radicands.insert(g.radicands.end(), paired.begin(), paired.end());
    return g;
}

int rank_A(quadfield::QuadraticField const & K)
{
    return static_cast<int>(genus_field(K).radicands.size()) - 1;
}

int rank_A_narrow(quadfield::QuadraticField const & K)
{
    return static_cast<int>(narrow_genus_field(K).radicands.size()) - 1;
}

std::int64_t genus_fixed_order(quadfield::QuadraticField const & K)
{
    auto t = prime_discriminants(K.discriminant()).size();
    std::int64_t n = quadfield::minus_one_is_norm(K) ? 1 : 2;
    std::int64_t top = std::int64_t{1} << (t - 1);
    if (top % n != 0)
        throw non_integral("2^(t-1)/n with t = 1 and -1 not a norm");
    return top / n;
}

} // namespace twoclass::genus

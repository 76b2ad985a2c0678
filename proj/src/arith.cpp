#include "twoclass/arith.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>

#include "twoclass/error.hpp"

namespace twoclass::arith {

namespace {

using u128 = unsigned __int128;
using i128 = __int128;

constexpr std::uint64_t trial_division_limit = 1'000'000;

/* Witness set {2,...,37} is deterministic for every n < 3.3e24. */
constexpr std::uint64_t mr_witnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

bool miller_rabin_round(std::uint64_t n, std::uint64_t a, std::uint64_t d, int r)
{
    std::uint64_t x = pow_mod(a % n, d, n);
    if (x == 1 || x == n - 1)
        return true;
    for (int i = 1; i < r; ++i) {
        x = mul_mod(x, x, n);
        if (x == n - 1)
            return true;
    }
    return false;
}

std::uint64_t pollard_brent(std::uint64_t n)
{
    if (n % 2 == 0)
        return 2;
    for (std::uint64_t c = 1;; ++c) {
        auto f = [&](std::uint64_t x) { return (mul_mod(x, x, n) + c) % n; };
        std::uint64_t y = 2, x = 2, g = 1, q = 1, ys = 2;
        std::uint64_t r = 1;
        constexpr std::uint64_t m = 128;
        do {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i)
                y = f(y);
            std::uint64_t k = 0;
            do {
                ys = y;
                for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = mul_mod(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
                k += m;
            } while (k < r && g == 1);
            r *= 2;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n)
            return g;
    }
}

void factor_large(std::uint64_t n, std::vector<std::uint64_t> & out)
{
    if (n == 1)
        return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    std::uint64_t f = pollard_brent(n);
    factor_large(f, out);
    factor_large(n / f, out);
}

/* Returns (v, u) with a = p^v * u and p not dividing u. */
std::pair<int, std::int64_t> split_valuation(std::int64_t a, std::int64_t p)
{
    int v = 0;
    while (a % p == 0) {
        a /= p;
        ++v;
    }
    return {v, a};
}

} // namespace

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m)
{
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1)
            result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

std::uint64_t isqrt(std::uint64_t n)
{
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && static_cast<u128>(r) * r > n)
        --r;
    while (static_cast<u128>(r + 1) * (r + 1) <= n)
        ++r;
    return r;
}

bool is_square(std::int64_t n)
{
    if (n < 0)
        return false;
    auto r = isqrt(static_cast<std::uint64_t>(n));
    return static_cast<u128>(r) * r == static_cast<std::uint64_t>(n);
}

bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t p : mr_witnesses) {
        if (n % p == 0)
            return n == p;
    }
    std::uint64_t d = n - 1;
    int r = std::countr_zero(d);
    d >>= r;
    for (std::uint64_t a : mr_witnesses) {
        if (!miller_rabin_round(n, a, d, r))
            return false;
    }
    return true;
}

std::vector<std::pair<std::uint64_t, int>> factor(std::uint64_t n)
{
    std::vector<std::pair<std::uint64_t, int>> result;
    if (n <= 1)
        return result;
    auto take = [&](std::uint64_t p) {
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e > 0)
            result.emplace_back(p, e);
    };
    take(2);
    take(3);
    for (std::uint64_t p = 5; p <= trial_division_limit && p * p <= n; p += 6) {
        take(p);
        take(p + 2);
    }
    if (n == 1)
        return result;

    std::vector<std::uint64_t> big;
    factor_large(n, big);
    std::sort(big.begin(), big.end());
    for (std::uint64_t p : big) {
        if (!result.empty() && result.back().first == p)
            ++result.back().second;
        else
            result.emplace_back(p, 1);
    }
    return result;
}

bool FactoredSquarefree::divisible_by(std::int64_t p) const
{
    return std::binary_search(primes_.begin(), primes_.end(), p);
}

FactoredSquarefree factor_squarefree(std::int64_t n)
{
    if (n < 1)
        throw precondition_violation("factor_squarefree needs n >= 1, got " + std::to_string(n));
    std::vector<std::int64_t> primes;
    for (auto [p, e] : factor(static_cast<std::uint64_t>(n))) {
        if (e > 1)
            throw not_squarefree(std::to_string(p) + "^2 divides " + std::to_string(n));
        primes.push_back(static_cast<std::int64_t>(p));
    }
    return FactoredSquarefree(n, std::move(primes));
}

int kronecker(std::int64_t a, std::int64_t n)
{
    if (n == 0) {
        if (a == 0)
            throw undefined_symbol("(0/0)");
        return (a == 1 || a == -1) ? 1 : 0;
    }
    if (a % 2 == 0 && n % 2 == 0)
        return 0;

    static constexpr int two_table[8] = {0, 1, 0, -1, 0, -1, 0, 1};
    int k = 1;
    int v = std::countr_zero(static_cast<std::uint64_t>(n < 0 ? -n : n));
    std::int64_t m = n / (std::int64_t{1} << v);
    if (v & 1)
        k = two_table[a & 7];
    if (m < 0) {
        m = -m;
        if (a < 0)
            k = -k;
    }

    // Jacobi symbol (a/m) for odd positive m.
    std::uint64_t um = static_cast<std::uint64_t>(m);
    std::uint64_t ua = static_cast<std::uint64_t>(((a % m) + m) % m);
    while (ua != 0) {
        int z = std::countr_zero(ua);
        ua >>= z;
        if ((z & 1) && two_table[um & 7] == -1)
            k = -k;
        if ((ua & um & 2) != 0)
            k = -k;
        std::uint64_t r = um % ua;
        um = ua;
        ua = r;
    }
    return um == 1 ? k : 0;
}

ResidueClass::ResidueClass(std::int64_t r, std::int64_t m) : residue(0), modulus(m)
{
    if (m <= 0)
        throw precondition_violation("residue class modulus must be positive");
    residue = ((r % m) + m) % m;
}

bool ResidueClass::contains(std::int64_t x) const
{
    return ((x % modulus) + modulus) % modulus == residue;
}

ResidueClass crt(std::span<ResidueClass const> congruences)
{
    if (congruences.empty())
        throw precondition_violation("crt of an empty system");
    i128 r = congruences[0].residue;
    i128 m = congruences[0].modulus;
    for (std::size_t i = 1; i < congruences.size(); ++i) {
        i128 r2 = congruences[i].residue;
        i128 m2 = congruences[i].modulus;
        if (std::gcd(static_cast<std::int64_t>(m), static_cast<std::int64_t>(m2)) != 1)
            throw non_coprime_moduli("moduli " + std::to_string(static_cast<std::int64_t>(m)) +
                                     " and " + std::to_string(static_cast<std::int64_t>(m2)));
        // inverse of m modulo m2 by extended Euclid
        i128 old_r = m % m2, cur_r = m2, old_s = 1, cur_s = 0;
        while (cur_r != 0) {
            i128 q = old_r / cur_r;
            std::tie(old_r, cur_r) = std::make_pair(cur_r, old_r - q * cur_r);
            std::tie(old_s, cur_s) = std::make_pair(cur_s, old_s - q * cur_s);
        }
        i128 inv = ((old_s % m2) + m2) % m2;
        i128 t = (((r2 - r) % m2 + m2) % m2) * inv % m2;
        r = r + m * t;
        m = m * m2;
        if (m > std::numeric_limits<std::int64_t>::max())
            throw precondition_violation("crt modulus exceeds 63 bits");
        r %= m;
    }
    return ResidueClass(static_cast<std::int64_t>(r), static_cast<std::int64_t>(m));
}

std::string Place::to_string() const
{
    return is_infinite() ? std::string("inf") : std::to_string(prime);
}

int hilbert_symbol(std::int64_t a, std::int64_t b, Place place)
{
    if (a == 0 || b == 0)
        throw precondition_violation("hilbert_symbol needs nonzero arguments");
    if (place.is_infinite())
        return (a < 0 && b < 0) ? -1 : 1;

    std::int64_t p = place.prime;
    if (p < 2 || !is_prime(static_cast<std::uint64_t>(p)))
        throw precondition_violation("hilbert_symbol at non-prime " + std::to_string(p));

    auto [alpha, u] = split_valuation(a, p);
    auto [beta, v] = split_valuation(b, p);

    if (p == 2) {
        auto eps = [](std::int64_t x) { return static_cast<int>((((x % 8) + 8) % 8 - 1) / 2 % 2); };
        auto omega = [](std::int64_t x) {
            std::int64_t r = ((x % 8) + 8) % 8;
            return (r == 3 || r == 5) ? 1 : 0;
        };
        int e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u);
        return (e % 2 == 0) ? 1 : -1;
    }

    int sign = ((alpha * beta) % 2 == 1 && p % 4 == 3) ? -1 : 1;
    if (beta % 2 == 1)
        sign *= kronecker(u, p);
    if (alpha % 2 == 1)
        sign *= kronecker(v, p);
    return sign;
}

bool two_power_residue_test(std::int64_t p)
{
    if (p % 8 != 1)
        throw wrong_residue_class(std::to_string(p) + " is not 1 mod 8");
    auto up = static_cast<std::uint64_t>(p);
    std::uint64_t lhs = pow_mod(2, (up - 1) / 4, up);
    std::uint64_t rhs = ((up - 1) / 8) % 2 == 0 ? 1 : up - 1;
    return lhs != rhs;
}

} // namespace twoclass::arith

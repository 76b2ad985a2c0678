#include "twoclass/forms.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <sstream>
#include <tuple>

#include "twoclass/arith.hpp"
#include "twoclass/error.hpp"

namespace twoclass::forms {

namespace {

using i128 = __int128;

std::int64_t isqrt_disc(std::int64_t D)
{
    return static_cast<std::int64_t>(arith::isqrt(static_cast<std::uint64_t>(D)));
}

i128 floor_mod(i128 x, i128 m)
{
    i128 r = x % m;
    return r < 0 ? r + m : r;
}

/* g = gcd(|a|, |b|) >= 0 and x a + y b = g */
std::tuple<i128, i128, i128> ext_gcd(i128 a, i128 b)
{
    i128 old_r = a < 0 ? -a : a, r = b < 0 ? -b : b;
    i128 old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        i128 q = old_r / r;
        std::tie(old_r, r) = std::make_tuple(r, old_r - q * r);
        std::tie(old_s, s) = std::make_tuple(s, old_s - q * s);
        std::tie(old_t, t) = std::make_tuple(t, old_t - q * t);
    }
    if (a < 0)
        old_s = -old_s;
    if (b < 0)
        old_t = -old_t;
    return {old_r, old_s, old_t};
}

/* Sort key used to pick the canonical form of a cycle. */
auto canonical_key(IndefiniteForm const & f)
{
    return std::make_tuple(f.a < 0 ? -f.a : f.a, f.a < 0, f.b, f.c);
}

bool reduced_with(IndefiniteForm const & f, std::int64_t s)
{
    std::int64_t two_a = 2 * (f.a < 0 ? -f.a : f.a);
    return f.b > 0 && f.b <= s && s - f.b + 1 <= two_a && two_a <= s + f.b;
}

IndefiniteForm normalize_with(IndefiniteForm const & f, std::int64_t D, std::int64_t s)
{
    i128 A = f.a < 0 ? -i128(f.a) : i128(f.a);
    i128 lo = (A > s) ? -A + 1 : s - 2 * A + 1;
    i128 b = lo + floor_mod(i128(f.b) - lo, 2 * A);
    i128 c = (b * b - D) / (4 * i128(f.a));
    return {f.a, static_cast<std::int64_t>(b), static_cast<std::int64_t>(c)};
}

void append_divisors(std::vector<std::pair<std::uint64_t, int>> const & fac, std::size_t idx,
                     std::int64_t cur, std::vector<std::int64_t> & out)
{
    if (idx == fac.size()) {
        out.push_back(cur);
        return;
    }
    auto [p, e] = fac[idx];
    std::int64_t v = cur;
    for (int i = 0; i <= e; ++i) {
        append_divisors(fac, idx + 1, v, out);
        v *= static_cast<std::int64_t>(p);
    }
}

} // namespace

bool IndefiniteForm::is_primitive() const
{
    return std::gcd(std::gcd(a, b), c) == 1;
}

bool IndefiniteForm::is_reduced() const
{
    std::int64_t D = discriminant();
    if (D <= 0)
        return false;
    return reduced_with(*this, isqrt_disc(D));
}

std::string IndefiniteForm::to_string() const
{
    std::ostringstream os;
    os << *this;
    return os.str();
}

std::ostream & operator<<(std::ostream & os, IndefiniteForm const & f)
{
    return os << "(" << f.a << ", " << f.b << ", " << f.c << ")";
}

void check_discriminant(std::int64_t D)
{
    if (D <= 0)
        throw invalid_discriminant(std::to_string(D) + " is not positive");
    if (arith::is_square(D))
        throw invalid_discriminant(std::to_string(D) + " is a perfect square");
    if (D % 4 != 0 && D % 4 != 1)
        throw invalid_discriminant(std::to_string(D) + " is not 0 or 1 mod 4");
}

IndefiniteForm form_from(std::int64_t a, std::int64_t b, std::int64_t D)
{
    if (a == 0)
        throw invalid_discriminant("form with a = 0");
    i128 num = i128(b) * b - D;
    if (num % (4 * i128(a)) != 0)
        throw invalid_discriminant("4a does not divide b^2 - D");
    return {a, b, static_cast<std::int64_t>(num / (4 * i128(a)))};
}

IndefiniteForm principal_form(std::int64_t D)
{
    check_discriminant(D);
    return reduce(form_from(1, D % 2, D));
}

std::vector<IndefiniteForm> reduced_forms(std::int64_t D)
{
    check_discriminant(D);
    std::int64_t s = isqrt_disc(D);
    std::vector<IndefiniteForm> out;
    std::vector<std::int64_t> divisors;
    for (std::int64_t b = (D % 2 == 0) ? 2 : 1; b <= s; b += 2) {
        std::int64_t N = (D - b * b) / 4; // a*c = -N
        std::int64_t lo = (s - b + 2) / 2; // ceil((s - b + 1)/2)
        std::int64_t hi = (s + b) / 2;
        divisors.clear();
        append_divisors(arith::factor(static_cast<std::uint64_t>(N)), 0, 1, divisors);
        for (std::int64_t m : divisors) {
            if (m < lo || m > hi)
                continue;
            out.push_back({m, b, -N / m});
            out.push_back({-m, b, N / m});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

IndefiniteForm normalize(IndefiniteForm const & f)
{
    std::int64_t D = f.discriminant();
    check_discriminant(D);
    return normalize_with(f, D, isqrt_disc(D));
}

IndefiniteForm rho(IndefiniteForm const & f)
{
    return normalize(IndefiniteForm{f.c, -f.b, f.a});
}

IndefiniteForm reduce(IndefiniteForm const & f)
{
    std::int64_t D = f.discriminant();
    check_discriminant(D);
    std::int64_t s = isqrt_disc(D);
    IndefiniteForm g = normalize_with(f, D, s);
    while (!reduced_with(g, s))
        g = normalize_with(IndefiniteForm{g.c, -g.b, g.a}, D, s);
    return g;
}

IndefiniteForm compose(IndefiniteForm const & f, IndefiniteForm const & g)
{
    std::int64_t D = f.discriminant();
    if (g.discriminant() != D)
        throw discriminant_mismatch(f.to_string() + " and " + g.to_string());

    i128 a1 = f.a, b1 = f.b, a2 = g.a, b2 = g.b, c2 = g.c;
    i128 s = (b1 + b2) / 2;
    auto [g1, u1, v1] = ext_gcd(a1, a2);
    auto [e, x, w] = ext_gcd(g1, s);
    i128 v = x * v1;
    (void)u1;

    i128 a3 = (a1 / e) * (a2 / e);
    i128 two_a3 = 2 * (a3 < 0 ? -a3 : a3);
    i128 t = floor_mod(v * (s - b2) - w * c2, two_a3);
    i128 b3 = floor_mod(b2 + floor_mod(2 * (a2 / e) % two_a3 * t, two_a3), two_a3);
    i128 num = b3 * b3 - D;
    if (num % (4 * a3) != 0)
        throw inconsistent("composition produced a non-integral form");
    IndefiniteForm h{static_cast<std::int64_t>(a3), static_cast<std::int64_t>(b3),
                     static_cast<std::int64_t>(num / (4 * a3))};
    return reduce(h);
}

std::size_t FormClassGroup::narrow_index(IndefiniteForm const & f) const
{
    auto it = cycle_of_.find(reduce(f));
    if (it == cycle_of_.end())
        throw inconsistent("form " + f.to_string() + " reduced outside every known cycle");
    return it->second;
}

std::size_t FormClassGroup::class_of(IndefiniteForm const & f) const
{
    if (f.discriminant() != disc_)
        throw discriminant_mismatch(f.to_string() + " vs D = " + std::to_string(disc_));
    if (!f.is_primitive())
        throw precondition_violation(f.to_string() + " is not primitive");
    return class_of_cycle_[narrow_index(f)];
}

std::size_t FormClassGroup::multiply(std::size_t i, std::size_t j) const
{
    if (!table_.empty())
        return table_[i * reps_.size() + j];
    return class_of_cycle_[narrow_index(compose(reps_[i], reps_[j]))];
}

std::size_t FormClassGroup::inverse(std::size_t i) const
{
    return class_of(reps_[i].inverse());
}

std::int64_t FormClassGroup::element_order(std::size_t i) const
{
    std::int64_t n = 1;
    for (std::size_t x = i; x != identity(); x = multiply(x, i))
        ++n;
    return n;
}

void FormClassGroup::build_structure()
{
    std::size_t h = reps_.size();
    table_.clear();
    if (h <= composition_table_limit) {
        std::vector<std::uint32_t> t(h * h);
        for (std::size_t i = 0; i < h; ++i) {
            for (std::size_t j = i; j < h; ++j) {
                auto k = static_cast<std::uint32_t>(
                    class_of_cycle_[narrow_index(compose(reps_[i], reps_[j]))]);
                t[i * h + j] = k;
                t[j * h + i] = k;
            }
        }
        table_ = std::move(t);
    }
    std::vector<std::int64_t> orders(h);
    for (std::size_t i = 0; i < h; ++i)
        orders[i] = element_order(i);
    invariants_ = invariant_factors_from_orders(orders);
}

FormClassGroup narrow_class_group(std::int64_t D)
{
    check_discriminant(D);
    FormClassGroup G;
    G.disc_ = D;
    G.narrow_ = true;

    std::vector<IndefiniteForm> forms;
    for (auto const & f : reduced_forms(D)) {
        if (f.is_primitive())
            forms.push_back(f);
    }
    G.cycle_of_.reserve(forms.size());

    std::vector<IndefiniteForm> raw_reps;
    for (auto const & f : forms) {
        if (G.cycle_of_.count(f))
            continue;
        auto id = static_cast<std::uint32_t>(raw_reps.size());
        IndefiniteForm best = f;
        IndefiniteForm g = f;
        do {
            G.cycle_of_.emplace(g, id);
            if (canonical_key(g) < canonical_key(best))
                best = g;
            g = rho(g);
        } while (g != f);
        raw_reps.push_back(best);
    }

    // principal cycle first, the rest by canonical key
    std::uint32_t principal = G.cycle_of_.at(principal_form(D));
    std::vector<std::uint32_t> order(raw_reps.size());
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](std::uint32_t x, std::uint32_t y) {
        if ((x == principal) != (y == principal))
            return x == principal;
        return canonical_key(raw_reps[x]) < canonical_key(raw_reps[y]);
    });
    std::vector<std::uint32_t> rank(raw_reps.size());
    for (std::uint32_t i = 0; i < order.size(); ++i)
        rank[order[i]] = i;
    for (auto & [form, id] : G.cycle_of_)
        id = rank[id];
    for (auto idx : order)
        G.cycle_reps_.push_back(raw_reps[idx]);

    G.class_of_cycle_.resize(G.cycle_reps_.size());
    std::iota(G.class_of_cycle_.begin(), G.class_of_cycle_.end(), 0u);
    G.reps_ = G.cycle_reps_;
    G.build_structure();
    return G;
}

FormClassGroup ordinary_class_group(std::int64_t D, int unit_norm)
{
    if (unit_norm != 1 && unit_norm != -1)
        throw precondition_violation("unit norm must be +1 or -1");
    FormClassGroup G = narrow_class_group(D);
    G.narrow_ = false;

    std::size_t sign_class = G.class_of(form_from(-1, D % 2, D));
    if ((sign_class == G.identity()) != (unit_norm == -1))
        throw inconsistent("sign class of D = " + std::to_string(D) +
                           " contradicts fundamental unit norm " + std::to_string(unit_norm));
    if (sign_class == G.identity())
        return G;

    // cosets {x, x*s}; the smaller narrow index names the coset
    std::size_t h = G.reps_.size();
    std::vector<std::uint32_t> coset(h, UINT32_MAX);
    std::vector<IndefiniteForm> reps;
    for (std::size_t i = 0; i < h; ++i) {
        if (coset[i] != UINT32_MAX)
            continue;
        std::size_t j = G.multiply(i, sign_class);
        auto id = static_cast<std::uint32_t>(reps.size());
        coset[i] = id;
        coset[j] = id;
        reps.push_back(G.reps_[i]);
    }
    G.class_of_cycle_ = std::move(coset);
    G.reps_ = std::move(reps);
    G.build_structure();
    return G;
}

Abelian2Group two_sylow(FormClassGroup const & g)
{
    return two_part(g.invariant_factors());
}

} // namespace twoclass::forms

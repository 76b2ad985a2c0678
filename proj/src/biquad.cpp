#include "twoclass/biquad.hpp"

#include <algorithm>
#include <bit>
#include <climits>
#include <memory>
#include <sstream>

#include <mpfr.h>

#include "twoclass/error.hpp"

namespace twoclass::biquad {

namespace {

class mpfr_var {
  public:
    explicit mpfr_var(long prec) { mpfr_init2(v_, prec); }
    ~mpfr_var() { mpfr_clear(v_); }
    mpfr_var(mpfr_var const &) = delete;
    mpfr_var & operator=(mpfr_var const &) = delete;
    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }

  private:
    mpfr_t v_;
};

arith::FactoredSquarefree checked_odd(arith::FactoredSquarefree d)
{
    if (d.value() % 2 == 0)
        throw even_radicand(std::to_string(d.value()));
    if (d.value() < 3)
        throw precondition_violation("K1 needs an odd square-free d >= 3");
    return d;
}

int mod8(std::int64_t p) { return static_cast<int>(p % 8); }

enum class attempt { yes, no, more_precision };

/*
 * One pass at a fixed precision.  X holds integer coordinates.  Every
 * error estimate is an upper bound expressed as a power of two.
 */
attempt square_at_precision(std::array<mpz_class, 4> const & X, std::int64_t d, long prec)
{
    mpfr_var r2(prec), rd(prec), r2d(prec);
    mpfr_sqrt_ui(r2.get(), 2, MPFR_RNDN);
    mpfr_set_si(rd.get(), d, MPFR_RNDN);
    mpfr_sqrt(rd.get(), rd.get(), MPFR_RNDN);
    mpfr_set_si(r2d.get(), 2 * d, MPFR_RNDN);
    mpfr_sqrt(r2d.get(), r2d.get(), MPFR_RNDN);
    mpfr_srcptr roots[4] = {nullptr, r2.get(), rd.get(), r2d.get()};

    long bits = 0;
    for (auto const & xi : X)
        bits = std::max<long>(bits, static_cast<long>(mpz_sizeinbase(xi.get_mpz_t(), 2)));
    long const e_log = bits + (std::bit_width(static_cast<std::uint64_t>(2 * d)) + 1) / 2 + 6 - prec;

    // sigma[k]: embedding sqrt2 -> s sqrt2, sqrt d -> t sqrt d with k = (s<0) + 2(t<0)
    mpfr_var term(prec);
    std::array<std::unique_ptr<mpfr_var>, 4> root;
    long er_log = LONG_MIN;
    for (int k = 0; k < 4; ++k) {
        int s = (k & 1) ? -1 : 1, t = (k & 2) ? -1 : 1;
        int signs[4] = {1, s, t, s * t};
        auto sigma = std::make_unique<mpfr_var>(prec);
        mpfr_set_z(sigma->get(), X[0].get_mpz_t(), MPFR_RNDN);
        for (int i = 1; i < 4; ++i) {
            mpfr_mul_z(term.get(), roots[i], X[static_cast<std::size_t>(i)].get_mpz_t(), MPFR_RNDN);
            if (signs[i] < 0)
                mpfr_sub(sigma->get(), sigma->get(), term.get(), MPFR_RNDN);
            else
                mpfr_add(sigma->get(), sigma->get(), term.get(), MPFR_RNDN);
        }
        if (mpfr_zero_p(sigma->get()))
            return attempt::more_precision;
        long ex = mpfr_get_exp(sigma->get()); // 2^(ex-1) <= |sigma| < 2^ex
        if (e_log > ex - 2)
            return attempt::more_precision;
        if (mpfr_sgn(sigma->get()) < 0)
            return attempt::no;
        // |sqrt(a) - sqrt(b)| <= |a - b| / sqrt(min), plus the rounding of sqrt
        long from_input = e_log - (ex - 2) / 2 + 1;
        long from_sqrt = ex / 2 + 2 - prec;
        er_log = std::max({er_log, from_input, from_sqrt});
        mpfr_sqrt(sigma->get(), sigma->get(), MPFR_RNDN);
        root[static_cast<std::size_t>(k)] = std::move(sigma);
    }
    if (er_log + 4 > -5)
        return attempt::more_precision;

    mpfr_var acc(prec), v(prec), diff(prec);
    mpz_class n;
    for (int combo = 0; combo < 8; ++combo) {
        int u[4] = {1, (combo & 1) ? -1 : 1, (combo & 2) ? -1 : 1, (combo & 4) ? -1 : 1};
        std::array<mpq_class, 4> y;
        bool ok = true;
        for (int i = 0; i < 4 && ok; ++i) {
            mpfr_set_ui(acc.get(), 0, MPFR_RNDN);
            for (int k = 0; k < 4; ++k) {
                int s = (k & 1) ? -1 : 1, t = (k & 2) ? -1 : 1;
                int signs[4] = {1, s, t, s * t};
                if (u[k] * signs[i] < 0)
                    mpfr_sub(acc.get(), acc.get(), root[static_cast<std::size_t>(k)]->get(), MPFR_RNDN);
                else
                    mpfr_add(acc.get(), acc.get(), root[static_cast<std::size_t>(k)]->get(), MPFR_RNDN);
            }
            if (i > 0)
                mpfr_div(acc.get(), acc.get(), roots[i], MPFR_RNDN);
            // acc approximates 4 y_i
            mpfr_round(v.get(), acc.get());
            mpfr_sub(diff.get(), acc.get(), v.get(), MPFR_RNDN);
            if (mpfr_cmp_d(diff.get(), 0.25) > 0 || mpfr_cmp_d(diff.get(), -0.25) < 0) {
                ok = false;
                break;
            }
            mpfr_get_z(n.get_mpz_t(), v.get(), MPFR_RNDN);
            y[static_cast<std::size_t>(i)] = mpq_class(n, 4);
            y[static_cast<std::size_t>(i)].canonicalize();
        }
        if (!ok)
            continue;
        BiquadNumber Y(y[0], y[1], y[2], y[3], d);
        BiquadNumber sq = Y * Y;
        if (sq.x[0] == X[0] && sq.x[1] == X[1] && sq.x[2] == X[2] && sq.x[3] == X[3])
            return attempt::yes;
    }
    return attempt::no;
}

BiquadNumber power_product(std::array<BiquadNumber, 3> const & units, std::array<int, 3> const & v)
{
    BiquadNumber x = BiquadNumber::one(units[0].d);
    for (std::size_t i = 0; i < 3; ++i) {
        if (v[i])
            x = x * units[i];
    }
    return x;
}

} // namespace

BiquadField::BiquadField(arith::FactoredSquarefree d)
    : d_(checked_odd(std::move(d))), f1_(quadfield::QuadraticField::of(2)), f2_(d_),
      f3_(quadfield::QuadraticField::of(2 * d_.value()))
{
}

BiquadField BiquadField::of(std::int64_t d)
{
    return BiquadField(arith::factor_squarefree(d));
}

BiquadNumber::BiquadNumber(mpq_class x0, mpq_class x1, mpq_class x2, mpq_class x3, std::int64_t d_)
    : x{std::move(x0), std::move(x1), std::move(x2), std::move(x3)}, d(d_)
{
    for (auto & c : x)
        c.canonicalize();
}

BiquadNumber BiquadNumber::embed(quadfield::QuadInteger const & q, std::int64_t d)
{
    if (q.d == 2)
        return {q.a, q.b, 0, 0, d};
    if (q.d == d)
        return {q.a, 0, q.b, 0, d};
    if (q.d == 2 * d)
        return {q.a, 0, 0, q.b, d};
    throw precondition_violation("Q(sqrt " + std::to_string(q.d) + ") is not a subfield of Q(sqrt 2, sqrt " +
                                 std::to_string(d) + ")");
}

bool BiquadNumber::is_zero() const
{
    return std::all_of(x.begin(), x.end(), [](mpq_class const & c) { return sgn(c) == 0; });
}

BiquadNumber BiquadNumber::operator*(BiquadNumber const & o) const
{
    if (d != o.d)
        throw precondition_violation("product across different biquadratic fields");
    auto const & a = x;
    auto const & b = o.x;
    return {a[0] * b[0] + 2 * a[1] * b[1] + d * a[2] * b[2] + 2 * d * a[3] * b[3],
            a[0] * b[1] + a[1] * b[0] + d * (a[2] * b[3] + a[3] * b[2]),
            a[0] * b[2] + a[2] * b[0] + 2 * (a[1] * b[3] + a[3] * b[1]),
            a[0] * b[3] + a[3] * b[0] + a[1] * b[2] + a[2] * b[1], d};
}

BiquadNumber BiquadNumber::operator-() const
{
    return {-x[0], -x[1], -x[2], -x[3], d};
}

std::string BiquadNumber::to_string() const
{
    std::ostringstream os;
    os << x[0] << " + " << x[1] << "*sqrt(2) + " << x[2] << "*sqrt(" << d << ") + " << x[3] << "*sqrt("
       << 2 * d << ")";
    return os.str();
}

int t1_count(arith::FactoredSquarefree const & d)
{
    if (d.value() % 2 == 0)
        throw even_radicand(std::to_string(d.value()));
    int t = 0;
    for (auto p : d.primes())
        t += (mod8(p) == 1 || mod8(p) == 7) ? 2 : 1;
    if (d.value() % 4 == 3)
        ++t;
    return t;
}

int t1_count_by_splitting(arith::FactoredSquarefree const & d)
{
    BiquadField K1(d);
    std::vector<std::int64_t> primes{2};
    primes.insert(primes.end(), d.primes().begin(), d.primes().end());
    using quadfield::SplitType;
    int t = 0;
    for (auto p : primes) {
        auto in1 = quadfield::splitting_in(p, K1.F1());
        bool r1 = in1 == SplitType::ramified;
        bool r2 = quadfield::splitting_in(p, K1.F2()) == SplitType::ramified;
        bool r3 = quadfield::splitting_in(p, K1.F3()) == SplitType::ramified;
        // inertia group of p in K1 is all of (Z/2)^2 iff all three subfields ramify
        int e_K1 = (r1 && r2 && r3) ? 4 : (r1 || r2 || r3) ? 2 : 1;
        int e_F1 = r1 ? 2 : 1;
        if (e_K1 / e_F1 == 2)
            t += (in1 == SplitType::split) ? 2 : 1;
    }
    return t;
}

int rank_A_K1(arith::FactoredSquarefree const & d)
{
    int t1 = t1_count(d);
    auto const & ps = d.primes();
    bool has_3mod4 = std::any_of(ps.begin(), ps.end(), [](auto p) { return p % 4 == 3; });
    if (has_3mod4) {
        bool has_7mod8 = std::any_of(ps.begin(), ps.end(), [](auto p) { return mod8(p) == 7; });
        return has_7mod8 ? t1 - 3 : t1 - 2;
    }
    bool obstruct = std::any_of(ps.begin(), ps.end(),
                                [](auto p) { return mod8(p) == 1 && arith::two_power_residue_test(p); });
    return obstruct ? t1 - 2 : t1 - 1;
}

bool is_square_in_K1(BiquadNumber const & x, BiquadField const & field, SquareTestOptions const & opt)
{
    if (x.d != field.d())
        throw precondition_violation("number and field disagree on d");
    if (x.is_zero())
        throw precondition_violation("is_square_in_K1(0)");

    mpz_class L = 1;
    for (auto const & c : x.x)
        mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), c.get_den().get_mpz_t());
    std::array<mpz_class, 4> X;
    for (std::size_t i = 0; i < 4; ++i) {
        mpq_class scaled = x.x[i] * L * L;
        X[i] = scaled.get_num();
    }

    for (long prec = opt.start_bits; prec <= opt.max_bits; prec *= 2) {
        switch (square_at_precision(X, field.d(), prec)) {
        case attempt::yes: return true;
        case attempt::no: return false;
        case attempt::more_precision: break;
        }
    }
    throw precision_exhausted("square test in Q(sqrt 2, sqrt " + std::to_string(field.d()) + ") needs more than " +
                              std::to_string(opt.max_bits) + " bits");
}

HasseIndex hasse_unit_index_detail(BiquadField const & field, SquareTestOptions const & opt)
{
    std::int64_t d = field.d();
    std::array<quadfield::FundamentalUnit, 3> fu = {quadfield::fundamental_unit(field.F1()),
                                                   quadfield::fundamental_unit(field.F2()),
                                                   quadfield::fundamental_unit(field.F3())};
    std::array<BiquadNumber, 3> units;
    for (std::size_t i = 0; i < 3; ++i)
        units[i] = BiquadNumber::embed(fu[i].value, d);

    HasseIndex h;
    std::vector<bool> is_sq(8, false);
    is_sq[0] = true;
    for (int m = 1; m < 8; ++m) {
        std::array<int, 3> v = {m & 1, (m >> 1) & 1, (m >> 2) & 1};
        BiquadNumber x = power_product(units, v);
        if (is_square_in_K1(x, field, opt) || is_square_in_K1(-x, field, opt)) {
            is_sq[static_cast<std::size_t>(m)] = true;
            h.square_vectors.push_back(v);
        }
    }
    for (int a = 0; a < 8; ++a) {
        for (int b = 0; b < 8; ++b) {
            if (is_sq[static_cast<std::size_t>(a)] && is_sq[static_cast<std::size_t>(b)] &&
                !is_sq[static_cast<std::size_t>(a ^ b)])
                throw inconsistent("square exponent vectors are not closed under addition for d = " +
                                   std::to_string(d));
        }
    }
    h.index = static_cast<int>(h.square_vectors.size()) + 1;
    if (h.index > 4)
        throw inconsistent("unit index " + std::to_string(h.index) + " exceeds 4 for d = " + std::to_string(d));

    // a square vector must avoid the norm -1 units, or use all three
    for (auto const & v : h.square_vectors) {
        int negative = 0, used = 0;
        for (std::size_t i = 0; i < 3; ++i) {
            used += v[i];
            negative += v[i] && fu[i].norm == -1;
        }
        if (negative != 0 && !(negative == 3 && used == 3))
            throw inconsistent("square unit product with mixed norms for d = " + std::to_string(d));
    }

    // echelon basis of the square vectors, written as a unit system
    std::vector<int> basis;
    for (int m = 1; m < 8; ++m) {
        if (!is_sq[static_cast<std::size_t>(m)])
            continue;
        int r = m;
        for (int b : basis) {
            if ((r ^ b) < r)
                r ^= b;
        }
        if (r) {
            basis.push_back(r);
            std::sort(basis.rbegin(), basis.rend());
        }
    }
    auto product_name = [](int m) {
        std::string s;
        for (int i = 0; i < 3; ++i) {
            if (m >> i & 1)
                s += (s.empty() ? "e" : "*e") + std::to_string(i + 1);
        }
        return s;
    };
    std::vector<std::string> parts;
    int covered = 0;
    for (int b : basis) {
        parts.push_back("sqrt(" + product_name(b) + ")");
        covered |= static_cast<int>(std::bit_floor(static_cast<unsigned>(b))); // pivot unit is replaced
    }
    for (int i = 0; i < 3; ++i) {
        if (!(covered >> i & 1))
            parts.push_back("e" + std::to_string(i + 1));
    }
    h.unit_system = "{";
    for (std::size_t i = 0; i < parts.size(); ++i)
        h.unit_system += (i ? ", " : "") + parts[i];
    h.unit_system += "}";
    return h;
}

int hasse_unit_index(BiquadField const & field, SquareTestOptions const & opt)
{
    return hasse_unit_index_detail(field, opt).index;
}

std::int64_t kuroda_order(std::int64_t Q, std::int64_t hA_K, std::int64_t hA_Kprime, std::int64_t hA_Q2)
{
    if (Q < 1 || hA_K < 1 || hA_Kprime < 1 || hA_Q2 < 1)
        throw precondition_violation("Kuroda inputs must be positive");
    std::int64_t prod = Q * hA_K * hA_Kprime * hA_Q2;
    if (prod % 4 != 0)
        throw non_integral(std::to_string(prod) + "/4");
    return prod / 4;
}

std::optional<Abelian2Group> structure_A_K1(int rank, std::int64_t order)
{
    if (order < 1 || !std::has_single_bit(static_cast<std::uint64_t>(order)))
        throw precondition_violation("order " + std::to_string(order) + " is not a power of two");
    int log = std::countr_zero(static_cast<std::uint64_t>(order));
    if (rank < 0 || rank > log || (rank == 0 && log > 0))
        throw inconsistent("no abelian 2-group of rank " + std::to_string(rank) + " and order " +
                           std::to_string(order));
    if (rank == log)
        return Abelian2Group::elementary(rank);
    if (rank == 1)
        return Abelian2Group({order});
    if (log == rank + 1) {
        std::vector<std::int64_t> f(static_cast<std::size_t>(rank - 1), 2);
        f.push_back(4);
        return Abelian2Group(std::move(f));
    }
    return std::nullopt;
}

} // namespace twoclass::biquad

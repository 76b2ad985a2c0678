#include "twoclass/quadfield.hpp"

#include <ostream>
#include <sstream>

#include "twoclass/error.hpp"

namespace twoclass::quadfield {

namespace {

bool rational_sqrt(mpq_class const & x, mpq_class & root)
{
    if (sgn(x) < 0)
        return false;
    mpz_class const & num = x.get_num();
    mpz_class const & den = x.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
        return false;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    root = mpq_class(rn, rd);
    root.canonicalize();
    return true;
}

} // namespace

std::int64_t discriminant(arith::FactoredSquarefree const & d)
{
    std::int64_t v = d.value();
    return (v % 4 == 1) ? v : 4 * v;
}

QuadraticField::QuadraticField(arith::FactoredSquarefree d) : d_(std::move(d)), disc_(0)
{
    if (d_.value() < 2)
        throw precondition_violation("real quadratic field needs d >= 2");
    disc_ = quadfield::discriminant(d_);
}

QuadraticField QuadraticField::of(std::int64_t d)
{
    return QuadraticField(arith::factor_squarefree(d));
}

QuadInteger::QuadInteger(mpq_class a_, mpq_class b_, std::int64_t d_)
    : a(std::move(a_)), b(std::move(b_)), d(d_)
{
    a.canonicalize();
    b.canonicalize();
}

int QuadInteger::sign() const
{
    int sa = sgn(a), sb = sgn(b);
    if (sb == 0)
        return sa;
    if (sa == 0 || sa == sb)
        return sa == 0 ? sb : sa;
    // opposite signs: compare a^2 with d b^2
    int c = cmp(mpq_class(a * a), mpq_class(d * b * b));
    return c > 0 ? sa : sb;
}

QuadInteger QuadInteger::operator*(QuadInteger const & o) const
{
    if (d != o.d)
        throw precondition_violation("product of elements of different quadratic fields");
    return {a * o.a + d * b * o.b, a * o.b + b * o.a, d};
}

std::string QuadInteger::to_string() const
{
    std::ostringstream os;
    os << *this;
    return os.str();
}

std::ostream & operator<<(std::ostream & os, QuadInteger const & x)
{
    // Print as (A + B sqrt d)/den when both share a denominator 2.
    if (x.a.get_den() == 2 || x.b.get_den() == 2) {
        mpq_class A = 2 * x.a, B = 2 * x.b;
        os << "(" << A << (sgn(B) < 0 ? " - " : " + ") << abs(B) << "*sqrt(" << x.d << "))/2";
    } else {
        os << x.a << (sgn(x.b) < 0 ? " - " : " + ") << abs(x.b) << "*sqrt(" << x.d << ")";
    }
    return os;
}

std::string to_string(SplitType s)
{
    switch (s) {
    case SplitType::split: return "split";
    case SplitType::inert: return "inert";
    case SplitType::ramified: return "ramified";
    }
    return "?";
}

SplitType splitting_in(std::int64_t p, QuadraticField const & field)
{
    if (p < 2 || !arith::is_prime(static_cast<std::uint64_t>(p)))
        throw precondition_violation("splitting_in needs a prime, got " + std::to_string(p));
    std::int64_t D = field.discriminant();
    if (D % p == 0)
        return SplitType::ramified;
    return arith::kronecker(D, p) == 1 ? SplitType::split : SplitType::inert;
}

FundamentalUnit fundamental_unit(QuadraticField const & field)
{
    std::int64_t const d = field.radicand();
    auto const s = static_cast<std::int64_t>(arith::isqrt(static_cast<std::uint64_t>(d)));
    bool const half = (d % 4 == 1);

    // complete quotients (P + sqrt d)/Q, starting at sqrt d or (1 + sqrt d)/2
    std::int64_t const Q0 = half ? 2 : 1;
    std::int64_t P = half ? 1 : 0;
    std::int64_t Q = Q0;

    mpz_class p_prev = 1, p_prev2 = 0;
    mpz_class q_prev = 0, q_prev2 = 1;
    int k = 0;
    for (;;) {
        std::int64_t a = (P + s) / Q;
        mpz_class p = a * p_prev + p_prev2;
        mpz_class q = a * q_prev + q_prev2;
        p_prev2 = p_prev;
        p_prev = p;
        q_prev2 = q_prev;
        q_prev = q;

        std::int64_t P_next = a * Q - P;
        std::int64_t Q_next = (d - P_next * P_next) / Q;
        ++k;
        P = P_next;
        Q = Q_next;
        if (Q == Q0)
            break;
    }

    FundamentalUnit unit;
    unit.cf_period = k;
    if (half) {
        // epsilon = p - q * (1 - sqrt d)/2
        unit.value = QuadInteger(mpq_class(2 * p_prev - q_prev, 2), mpq_class(q_prev, 2), d);
    } else {
        unit.value = QuadInteger(mpq_class(p_prev), mpq_class(q_prev), d);
    }
    unit.norm = (k % 2 == 0) ? 1 : -1;
    return unit;
}

int unit_norm(QuadraticField const & field)
{
    return fundamental_unit(field).norm;
}

bool is_square_in_K(QuadInteger const & x)
{
    if (x.is_zero())
        throw precondition_violation("is_square_in_K(0)");
    mpq_class s;
    if (!rational_sqrt(x.norm(), s))
        return false;
    for (int sign : {1, -1}) {
        mpq_class t = (x.a + sign * s) / 2;
        mpq_class u;
        if (!rational_sqrt(t, u))
            continue;
        mpq_class v;
        if (sgn(u) == 0) {
            if (sgn(x.b) != 0)
                continue;
            if (!rational_sqrt(mpq_class(x.a / x.d), v))
                continue;
        } else {
            v = x.b / (2 * u);
        }
        if (u * u + x.d * v * v == x.a && 2 * u * v == x.b)
            return true;
    }
    return false;
}

bool minus_one_is_norm(QuadraticField const & field)
{
    std::int64_t d = field.radicand();
    if (arith::hilbert_symbol(-1, d, arith::Place::infinity()) != 1)
        return false;
    if (arith::hilbert_symbol(-1, d, arith::Place::at(2)) != 1)
        return false;
    for (std::int64_t p : field.factored_radicand().primes()) {
        if (arith::hilbert_symbol(-1, d, arith::Place::at(p)) != 1)
            return false;
    }
    return true;
}

} // namespace twoclass::quadfield

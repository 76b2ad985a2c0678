#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include <gmpxx.h>

#include "twoclass/arith.hpp"

namespace twoclass::quadfield {

/// Real quadratic field Q(sqrt d), d >= 2 square-free.
class QuadraticField {
  public:
    explicit QuadraticField(arith::FactoredSquarefree d);
    /// Factors d; throws not_squarefree or precondition_violation (d < 2).
    static QuadraticField of(std::int64_t d);

    std::int64_t radicand() const { return d_.value(); }
    arith::FactoredSquarefree const & factored_radicand() const { return d_; }
    std::int64_t discriminant() const { return disc_; }

    bool operator==(QuadraticField const & o) const { return disc_ == o.disc_; }

  private:
    arith::FactoredSquarefree d_;
    std::int64_t disc_;
};

/// d if d = 1 (mod 4), else 4d.
std::int64_t discriminant(arith::FactoredSquarefree const & d);

/*
 * a + b*sqrt(d) with rational a, b.  Elements of the ring of integers
 * have denominators dividing 2; arithmetic here is exact for any
 * rational coordinates.
 */
struct QuadInteger {
    mpq_class a;
    mpq_class b;
    std::int64_t d = 2;

    QuadInteger() = default;
    QuadInteger(mpq_class a_, mpq_class b_, std::int64_t d_);

    mpq_class norm() const { return a * a - d * b * b; }
    QuadInteger conjugate() const { return {a, -b, d}; }
    bool is_zero() const { return sgn(a) == 0 && sgn(b) == 0; }
    /// Sign of a + b*sqrt(d) under sqrt(d) > 0, decided exactly.
    int sign() const;

    QuadInteger operator*(QuadInteger const & o) const;
    QuadInteger operator-() const { return {-a, -b, d}; }
    bool operator==(QuadInteger const & o) const { return d == o.d && a == o.a && b == o.b; }

    std::string to_string() const;
};

std::ostream & operator<<(std::ostream & os, QuadInteger const & x);

struct FundamentalUnit {
    QuadInteger value;
    int norm = 1;
    int cf_period = 0;
};

enum class SplitType { split, inert, ramified };

std::string to_string(SplitType s);

/// Decomposition type of the rational prime p in the field.
SplitType splitting_in(std::int64_t p, QuadraticField const & field);

/*
 * Fundamental unit > 1 by the continued fraction of sqrt(d), or of
 * (1 + sqrt d)/2 when d = 1 (mod 4).  Convergents are GMP integers, so
 * there is no overflow regime; norm = (-1)^period.
 */
FundamentalUnit fundamental_unit(QuadraticField const & field);

int unit_norm(QuadraticField const & field);

/// Exact test for x in K^{x2}.  Throws precondition_violation for x = 0.
bool is_square_in_K(QuadInteger const & x);

/// -1 in N(K^x), decided by local Hilbert symbols at 2, p | d and infinity.
bool minus_one_is_norm(QuadraticField const & field);

} // namespace twoclass::quadfield

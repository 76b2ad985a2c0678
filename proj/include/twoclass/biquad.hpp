#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "twoclass/group.hpp"
#include "twoclass/quadfield.hpp"

namespace twoclass::biquad {

/// Q(sqrt 2, sqrt d) for odd square-free d >= 3, with its three
/// quadratic subfields F1 = Q(sqrt 2), F2 = Q(sqrt d), F3 = Q(sqrt 2d).
class BiquadField {
  public:
    /// Throws even_radicand for even d, precondition_violation for d < 3.
    explicit BiquadField(arith::FactoredSquarefree d);
    static BiquadField of(std::int64_t d);

    std::int64_t d() const { return d_.value(); }
    arith::FactoredSquarefree const & factored_d() const { return d_; }
    quadfield::QuadraticField const & F1() const { return f1_; }
    quadfield::QuadraticField const & F2() const { return f2_; }
    quadfield::QuadraticField const & F3() const { return f3_; }

  private:
    arith::FactoredSquarefree d_;
    quadfield::QuadraticField f1_, f2_, f3_;
};

/// x0 + x1 sqrt2 + x2 sqrt d + x3 sqrt(2d) with rational coordinates.
struct BiquadNumber {
    std::array<mpq_class, 4> x;
    std::int64_t d = 3;

    BiquadNumber() = default;
    BiquadNumber(mpq_class x0, mpq_class x1, mpq_class x2, mpq_class x3, std::int64_t d_);
    static BiquadNumber one(std::int64_t d) { return {1, 0, 0, 0, d}; }
    /// Image of an element of Q(sqrt 2), Q(sqrt d) or Q(sqrt 2d).
    static BiquadNumber embed(quadfield::QuadInteger const & q, std::int64_t d);

    bool is_zero() const;
    BiquadNumber operator*(BiquadNumber const & o) const;
    BiquadNumber operator-() const;
    bool operator==(BiquadNumber const & o) const { return d == o.d && x == o.x; }
    std::string to_string() const;
};

/// Places of Q(sqrt 2) ramified in K1, from the congruence classes of
/// the primes of d.  Throws even_radicand.
int t1_count(arith::FactoredSquarefree const & d);
/// Same count, obtained by walking the decomposition of each prime of 2d
/// in the three quadratic subfields.
int t1_count_by_splitting(arith::FactoredSquarefree const & d);

/// 2-rank of the class group of K1 from t1 and the residues of d's primes.
int rank_A_K1(arith::FactoredSquarefree const & d);

struct SquareTestOptions {
    long start_bits = 128;
    long max_bits = 8192;
};

/*
 * Exact decision of x in K1^x2.  The square root is computed in all four
 * real embeddings, its coordinates recovered by the trace formulas,
 * rounded to quarter-integers and the square verified exactly.
 * Throws precondition_violation for x = 0 and precision_exhausted when
 * max_bits is not enough to separate the candidates.
 */
bool is_square_in_K1(BiquadNumber const & x, BiquadField const & field,
                     SquareTestOptions const & opt = {});

struct HasseIndex {
    int index = 1;
    /// exponent vectors (a, b, c) with +-e1^a e2^b e3^c a square in K1
    std::vector<std::array<int, 3>> square_vectors;
    /// basis of a system of fundamental units, e.g. "{e1, e2, e3}"
    std::string unit_system;
};

/*
 * [E(K1) : <-1, e1, e2, e3>] from square tests on the seven nonzero
 * exponent vectors.  Throws inconsistent when the square vectors do not
 * form a subspace, when the index exceeds 4, or when a square vector
 * involves units whose norms forbid total positivity.
 */
HasseIndex hasse_unit_index_detail(BiquadField const & field, SquareTestOptions const & opt = {});
int hasse_unit_index(BiquadField const & field, SquareTestOptions const & opt = {});

/// Q * hK * hK' * hQ2 / 4; throws non_integral.
std::int64_t kuroda_order(std::int64_t Q, std::int64_t hA_K, std::int64_t hA_Kprime,
                          std::int64_t hA_Q2);

/*
 * The abelian 2-group of the given rank and order when there is only one
 * (elementary, cyclic, or a single factor 4 on top of Z/2's); nullopt
 * when several are possible.  Throws inconsistent when no group has
 * these invariants.
 */
std::optional<Abelian2Group> structure_A_K1(int rank, std::int64_t order);

} // namespace twoclass::biquad

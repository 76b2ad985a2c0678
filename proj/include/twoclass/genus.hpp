#pragma once

#include <cstdint>
#include <vector>

#include "twoclass/quadfield.hpp"

namespace twoclass::genus {

/*
 * Multiquadratic field Q(sqrt r_1, ..., sqrt r_n) given by square-free
 * radicands that are independent modulo squares.  Two GenusFields are
 * equal when their radicands span the same subgroup of Q^x / Q^x2.
 */
struct GenusField {
    std::vector<std::int64_t> radicands;

    /// [F : Q] = 2^n
    std::int64_t degree() const { return std::int64_t{1} << radicands.size(); }
    bool same_field(GenusField const & o) const;
};

/// p if p = 1 (mod 4), -p if p = 3 (mod 4).  Throws even_prime for 2,
/// precondition_violation for non-primes.
std::int64_t starred_prime(std::int64_t p);

bool is_fundamental(std::int64_t D);

/*
 * The prime discriminants whose product is D: the 2-part (one of -4, 8,
 * -8) first when D is even, then p* for the odd primes in increasing
 * order.  Throws not_fundamental.
 */
std::vector<std::int64_t> prime_discriminants(std::int64_t D);

/// Square-free kernel of a prime discriminant: -4 -> -1, 8 -> 2, -8 -> -2.
std::int64_t kernel(std::int64_t prime_disc);

/// Q(sqrt p*, ...) over all prime discriminants of D_K; degree 2^t.
GenusField narrow_genus_field(quadfield::QuadraticField const & K);

/*
 * Real part of the narrow genus field: positive radicands are kept, and
 * each later negative radicand is multiplied by the first negative one.
 */
GenusField genus_field(quadfield::QuadraticField const & K);

/// 2-rank of the class group of K, log2 [K_G : K].
int rank_A(quadfield::QuadraticField const & K);
/// 2-rank of the narrow class group, log2 [K_G+ : K].
int rank_A_narrow(quadfield::QuadraticField const & K);

/// 2^(t-1) / n with t ramified primes and n = 1 exactly when -1 is a
/// norm from K.
std::int64_t genus_fixed_order(quadfield::QuadraticField const & K);

} // namespace twoclass::genus

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace twoclass::arith {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// floor(sqrt(n)), exact for every 64-bit input.
std::uint64_t isqrt(std::uint64_t n);
bool is_square(std::int64_t n);

/// Deterministic Miller-Rabin; exact on the whole uint64 range.
bool is_prime(std::uint64_t n);

/// Full factorization as (prime, exponent) pairs in increasing prime order.
/// Trial division up to 10^6, Pollard-Brent rho for the cofactor.
std::vector<std::pair<std::uint64_t, int>> factor(std::uint64_t n);

/*
 * A positive square-free integer together with its prime divisors in
 * strictly increasing order.  The only way to get one is through
 * factor_squarefree(), which enforces the invariants.
 */
class FactoredSquarefree {
  public:
    std::int64_t value() const { return value_; }
    std::vector<std::int64_t> const & primes() const { return primes_; }
    std::size_t prime_count() const { return primes_.size(); }
    bool divisible_by(std::int64_t p) const;

    bool operator==(FactoredSquarefree const &) const = default;

    friend FactoredSquarefree factor_squarefree(std::int64_t n);

  private:
    FactoredSquarefree(std::int64_t v, std::vector<std::int64_t> ps)
        : value_(v), primes_(std::move(ps)) {}

    std::int64_t value_ = 1;
    std::vector<std::int64_t> primes_;
};

/// Throws not_squarefree when p^2 | n, precondition_violation when n < 1.
FactoredSquarefree factor_squarefree(std::int64_t n);

/// Kronecker symbol (a/n).  Throws undefined_symbol for a = n = 0.
int kronecker(std::int64_t a, std::int64_t n);

struct ResidueClass {
    std::int64_t residue = 0;
    std::int64_t modulus = 1;

    ResidueClass() = default;
    /// Normalizes residue into [0, modulus).  modulus must be positive.
    ResidueClass(std::int64_t r, std::int64_t m);

    bool contains(std::int64_t x) const;
    bool operator==(ResidueClass const &) const = default;
};

/// Chinese remainder theorem over pairwise coprime moduli.
/// Throws non_coprime_moduli; precondition_violation if the product
/// of the moduli does not fit in 63 bits or the list is empty.
ResidueClass crt(std::span<ResidueClass const> congruences);

/// A place of Q: a rational prime, or the real place.
struct Place {
    std::int64_t prime = 0; // 0 encodes the infinite place

    static Place infinity() { return Place{0}; }
    static Place at(std::int64_t p) { return Place{p}; }
    bool is_infinite() const { return prime == 0; }
    std::string to_string() const;
};

/// Local Hilbert symbol (a,b)_v for nonzero integers a, b.
int hilbert_symbol(std::int64_t a, std::int64_t b, Place v);

/*
 * For a prime p = 1 (mod 8): true iff 2^((p-1)/4) != (-1)^((p-1)/8) mod p.
 * A prime divisor of d passing this test lowers the 2-rank of the class
 * group of Q(sqrt 2, sqrt d) by one in the no-(3 mod 4)-prime case.
 * Throws wrong_residue_class if p != 1 (mod 8).
 */
bool two_power_residue_test(std::int64_t p);

} // namespace twoclass::arith

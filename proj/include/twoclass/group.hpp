#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace twoclass {

/*
 * Finite abelian 2-group given by its invariant factors, e.g. [2, 4] for
 * Z/2 + Z/4.  Factors are powers of two >= 2 in non-decreasing order; the
 * empty list is the trivial group.
 */
class Abelian2Group {
  public:
    Abelian2Group() = default;
    /// Sorts the factors; throws precondition_violation on a factor that
    /// is not a power of two >= 2.
    explicit Abelian2Group(std::vector<std::int64_t> factors);

    static Abelian2Group elementary(int rank);

    std::vector<std::int64_t> const & factors() const { return factors_; }
    int rank() const { return static_cast<int>(factors_.size()); }
    std::int64_t order() const;
    bool is_elementary() const;
    bool is_trivial() const { return factors_.empty(); }

    /// #(A/2A) = 2^rank
    std::int64_t count_mod_2() const;
    /// #(2A/4A) = 2^(number of factors >= 4)
    std::int64_t count_2_mod_4() const;

    /// "Z/2 + Z/4" style; "0" for the trivial group.
    std::string to_string() const;

    bool operator==(Abelian2Group const &) const = default;

  private:
    std::vector<std::int64_t> factors_;
};

/*
 * Invariant factors d_1 | d_2 | ... | d_r (each > 1, non-decreasing) of a
 * finite abelian group, given the multiset of all element orders.  For
 * each prime p the counts #{x : x^(p^k) = 1} determine the p-primary
 * part; the primary parts are then recombined.
 */
std::vector<std::int64_t> invariant_factors_from_orders(std::span<std::int64_t const> orders);

/// 2-power parts of a list of invariant factors.
Abelian2Group two_part(std::span<std::int64_t const> invariant_factors);

} // namespace twoclass

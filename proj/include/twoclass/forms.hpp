#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "twoclass/group.hpp"

namespace twoclass::forms {

/// Binary quadratic form a x^2 + b xy + c y^2 of positive non-square
/// discriminant b^2 - 4ac.
struct IndefiniteForm {
    std::int64_t a = 1;
    std::int64_t b = 0;
    std::int64_t c = 0;

    std::int64_t discriminant() const { return b * b - 4 * a * c; }
    bool is_primitive() const;
    /// 0 < b < sqrt(D) and sqrt(D) - b < 2|a| < sqrt(D) + b.
    bool is_reduced() const;
    IndefiniteForm inverse() const { return {a, -b, c}; }

    auto operator<=>(IndefiniteForm const &) const = default;
    std::string to_string() const;
};

std::ostream & operator<<(std::ostream & os, IndefiniteForm const & f);

struct IndefiniteFormHash {
    std::size_t operator()(IndefiniteForm const & f) const noexcept
    {
        std::uint64_t h = static_cast<std::uint64_t>(f.a) * 0x9E3779B97F4A7C15ull;
        h ^= static_cast<std::uint64_t>(f.b) + 0x7F4A7C159E3779B9ull + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h);
    }
};

/// Throws invalid_discriminant unless D > 0, D not a square, D = 0,1 mod 4.
void check_discriminant(std::int64_t D);

/// Form with given a, b and the c forced by D.  Throws invalid_discriminant
/// if 4a does not divide b^2 - D.
IndefiniteForm form_from(std::int64_t a, std::int64_t b, std::int64_t D);

/// (1, b0, (b0^2 - D)/4) with b0 = D mod 2, made reduced.
IndefiniteForm principal_form(std::int64_t D);

/// Every reduced form of discriminant D (primitive or not), sorted.
std::vector<IndefiniteForm> reduced_forms(std::int64_t D);

/// Translate b into the standard window for |a|; properly equivalent.
IndefiniteForm normalize(IndefiniteForm const & f);
/// One reduction step: normalize((c, -b, a)).
IndefiniteForm rho(IndefiniteForm const & f);
/// A reduced form properly equivalent to f.
IndefiniteForm reduce(IndefiniteForm const & f);

/// Gauss composition via the united-forms formula; result is reduced.
/// Throws discriminant_mismatch.
IndefiniteForm compose(IndefiniteForm const & f, IndefiniteForm const & g);

/*
 * Narrow (or ordinary) class group of primitive forms of discriminant D.
 *
 * The narrow group is built by partitioning the reduced primitive forms
 * into rho-cycles; one cycle is one proper equivalence class.  The
 * ordinary group is the quotient by the class of (-1, b0, c), which is
 * trivial exactly when the fundamental unit has norm -1.
 */
class FormClassGroup {
  public:
    std::int64_t discriminant() const { return disc_; }
    bool is_narrow() const { return narrow_; }

    /// One canonical form per class (the cycle member minimal in
    /// (|a|, a, b, c) order); index 0 is the principal class.
    std::vector<IndefiniteForm> const & classes() const { return reps_; }
    std::size_t order() const { return reps_.size(); }
    std::vector<std::int64_t> const & invariant_factors() const { return invariants_; }
    /// Number of rho-cycles of reduced primitive forms.
    std::size_t cycle_count() const { return cycle_reps_.size(); }

    std::size_t identity() const { return 0; }
    /// Class index of any primitive form of this discriminant.
    std::size_t class_of(IndefiniteForm const & f) const;
    std::size_t multiply(std::size_t i, std::size_t j) const;
    std::size_t inverse(std::size_t i) const;
    std::int64_t element_order(std::size_t i) const;

    friend FormClassGroup narrow_class_group(std::int64_t D);
    friend FormClassGroup ordinary_class_group(std::int64_t D, int unit_norm);

  private:
    FormClassGroup() = default;
    std::size_t narrow_index(IndefiniteForm const & f) const;
    void build_structure();

    std::int64_t disc_ = 0;
    bool narrow_ = true;
    std::vector<IndefiniteForm> cycle_reps_;
    std::unordered_map<IndefiniteForm, std::uint32_t, IndefiniteFormHash> cycle_of_;
    std::vector<std::uint32_t> class_of_cycle_;
    std::vector<IndefiniteForm> reps_;
    std::vector<std::int64_t> invariants_;
    std::vector<std::uint32_t> table_; // full multiplication table when small
};

/// Groups up to this order carry a full composition table.
inline constexpr std::size_t composition_table_limit = 64;

FormClassGroup narrow_class_group(std::int64_t D);
/// Throws inconsistent when the sign class contradicts unit_norm.
FormClassGroup ordinary_class_group(std::int64_t D, int unit_norm);

Abelian2Group two_sylow(FormClassGroup const & g);

} // namespace twoclass::forms

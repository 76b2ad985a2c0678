#pragma once

#include <stdexcept>
#include <string>

namespace twoclass {

/* Every failure raised by the library derives from this, so callers can
 * map a whole family to one exit code. */
class error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

#define TWOCLASS_DEFINE_ERROR(name)                                          \
    class name : public error {                                              \
      public:                                                                \
        explicit name(std::string const & what) : error(#name ": " + what) {} \
    }

TWOCLASS_DEFINE_ERROR(precondition_violation);
TWOCLASS_DEFINE_ERROR(not_squarefree);
TWOCLASS_DEFINE_ERROR(undefined_symbol);
TWOCLASS_DEFINE_ERROR(non_coprime_moduli);
TWOCLASS_DEFINE_ERROR(wrong_residue_class);
TWOCLASS_DEFINE_ERROR(invalid_discriminant);
TWOCLASS_DEFINE_ERROR(discriminant_mismatch);
TWOCLASS_DEFINE_ERROR(even_prime);
TWOCLASS_DEFINE_ERROR(not_fundamental);
TWOCLASS_DEFINE_ERROR(even_radicand);
TWOCLASS_DEFINE_ERROR(non_integral);
TWOCLASS_DEFINE_ERROR(inconsistent);
TWOCLASS_DEFINE_ERROR(out_of_table);
TWOCLASS_DEFINE_ERROR(wrong_shape);
TWOCLASS_DEFINE_ERROR(not_found_within_bound);

/* Resource exhaustion: the answer exists but this run could not reach it.
 * The CLI maps both of these to exit code 3. */
TWOCLASS_DEFINE_ERROR(precision_exhausted);
TWOCLASS_DEFINE_ERROR(oracle_range_exceeded);

#undef TWOCLASS_DEFINE_ERROR

} // namespace twoclass

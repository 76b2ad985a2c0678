#pragma once

#include <cstdint>
#include <vector>

#include "twoclass/arith.hpp"

namespace twoclass::redei {

/// D = D1 * D2 with D1, D2 discriminants, |D1| < |D2|.
struct Decomposition {
    std::int64_t D1 = 1;
    std::int64_t D2 = 1;

    bool operator==(Decomposition const &) const = default;
};

/*
 * All splittings of the fundamental discriminant D into two products of
 * complementary sets of prime discriminants, (1, D) first, the rest
 * ordered by |D1|.  There are 2^(t-1) of them.  Throws not_fundamental.
 */
std::vector<Decomposition> enumerate_S1(std::int64_t D);

/// True when (D1/p) = 1 for every prime p | D2 and (D2/p) = 1 for
/// every prime p | D1 (p = 2 included).
bool passes_character_test(Decomposition const & s);

/// (1, D) together with the members of S1 passing the character test.
std::vector<Decomposition> filter_S2(std::int64_t D);

/// #S2 = 1, i.e. the narrow 2-class group is elementary.
bool narrow_two_elementary(std::int64_t D);

/// d has a prime divisor = 3 (mod 4).
bool elementary_transfer_applies(arith::FactoredSquarefree const & d);

} // namespace twoclass::redei

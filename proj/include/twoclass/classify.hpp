#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "twoclass/arith.hpp"
#include "twoclass/group.hpp"

namespace twoclass::classify {

/*
 * Ramification pattern of K = Q(sqrt d) when D_K has three or four prime
 * divisors: whether 2 ramifies, how many odd primes are 1 resp. 3 mod 4,
 * and d mod 4.  Every such d falls in exactly one of fifteen rows.
 */
struct FieldShape {
    int ramified_prime_count = 0;
    bool has_two = false;
    std::vector<std::int64_t> p_primes; // odd primes = 1 (mod 4), increasing
    std::vector<std::int64_t> q_primes; // odd primes = 3 (mod 4), increasing
    int d_mod_4 = 1;
    /// e.g. "ppqq/1", "2pq/3": roles followed by d mod 4
    std::string row;
    /// e.g. "2, p1, q1"
    std::string pattern;

    bool operator==(FieldShape const &) const = default;
};

/// Row ids of the three- and four-prime tables, in table order.
std::vector<std::string> const & table_rows();

/// Throws out_of_table unless D_K has 3 or 4 prime divisors.
FieldShape shape_of(arith::FactoredSquarefree const & d);

/*
 * Congruence types for which 2 is totally ramified in K1/K and
 * rank A(K) = rank A(K1) = 2, rank A(K') = 3:
 *   1: p1 p2 p3, p1 = 1 or 5, p2 = p3 = 5 (mod 8)
 *   2: p1 p2 q1 q2, p1 = p2 = 5, q1 = 3 or 7, q2 = 3 (mod 8)
 *   3: q1 q2 q3 q4, q1 = 3 or 7, q2 = q3 = q4 = 3 (mod 8)
 * Throws even_radicand.
 */
std::optional<int> rank_stable_type(arith::FactoredSquarefree const & d);

/*
 * Legendre symbol oracle on labeled primes: symbol(i, j) = (l_i / l_j).
 * Either backed by actual primes or by a sign table completed through
 * quadratic reciprocity.
 */
using SymbolFn = std::function<int(int, int)>;

/// A symbol condition on four labeled primes.
using Condition = std::function<bool(SymbolFn const &)>;

/// Conditions for d = p1 p2 q1 q2, p1 = p2 = 5, q1 = 7, q2 = 3 (mod 8),
/// characterizing A(K) = (Z/2)^2, A(K') = (Z/2)^3, A(K1) = Z/2 + Z/4.
std::array<Condition, 3> const & ppqq_conditions();
/// Sufficient conditions for the same structures when d = q1 q2 q3 q4,
/// q1 = 7, q2 = q3 = q4 = 3 (mod 8).
std::array<Condition, 9> const & qqqq_conditions();

inline constexpr std::array<int, 4> ppqq_residues = {5, 5, 7, 3};
inline constexpr std::array<int, 4> qqqq_residues = {7, 3, 3, 3};

struct LabeledMatch {
    int condition = 0;                   // 1-based
    std::vector<std::int64_t> labeling;  // primes in label order
};

/// First matching condition under both orders of the two 5 (mod 8)
/// primes.  Throws wrong_shape when the residues do not fit.
std::optional<LabeledMatch> ppqq_condition(arith::FactoredSquarefree const & d);
/// First matching condition under all six orders of the 3 (mod 8)
/// primes.  Throws wrong_shape.
std::optional<LabeledMatch> qqqq_condition(arith::FactoredSquarefree const & d);

/*
 * Target residues mod 8 and prescribed symbols (p_k / p_j) for j < k,
 * keyed (k, j), 0-based.  Pairs without an entry are unconstrained.
 */
struct SymbolSpec {
    std::vector<int> residues;
    std::map<std::pair<int, int>, int> symbols;

    /// Symbol table of a hypothetical tuple meeting this spec; needs
    /// every pair present.
    SymbolFn as_symbol_fn() const;
    bool operator==(SymbolSpec const &) const = default;
};

/// Every fully specified SymbolSpec with the given residues whose
/// symbol table satisfies the condition (unlabeled order).
std::vector<SymbolSpec> specs_for(std::array<int, 4> const & residues, Condition const & cond);

enum class SearchMode {
    /// p_i from the CRT class of (a_i mod 8, v_j mod p_j) with the
    /// least admissible v_j, scanning that progression upward
    crt_progression,
    /// least admissible prime, i.e. scanning all admissible classes at once
    smallest,
};

inline constexpr std::int64_t default_search_bound = 1'000'000;

/*
 * Primes p_1..p_t with p_i = a_i (mod 8) and (p_k / p_j) as specified,
 * built one prime at a time; every constraint is rechecked before
 * returning.  All primes are >= min_prime.  Throws not_found_within_bound
 * when one prime needs more than search_bound candidates, and
 * precondition_violation for an even residue or a malformed spec.
 */
std::vector<std::int64_t> find_prime_tuple(SymbolSpec const & spec,
                                           std::int64_t search_bound = default_search_bound,
                                           SearchMode mode = SearchMode::crt_progression,
                                           std::int64_t min_prime = 2);

/// True when the tuple meets every residue and symbol in the spec.
bool satisfies(SymbolSpec const & spec, std::vector<std::int64_t> const & primes);

enum class Direction { iff, sufficient };
std::string to_string(Direction d);

struct RankClaim {
    int rank = 0;
    std::string source;
};

struct StructureClaim {
    std::optional<Abelian2Group> group; // nullopt: unknown
    std::string source;
    Direction direction = Direction::iff;
};

/// rank A(K_n) constant for n >= 0, hence mu = 0; lambda = 0 as well when
/// the orders of A(K) and A(K1) are known to agree.
struct TowerClaim {
    int stable_rank = 0;
    bool mu_zero = true;
    bool lambda_zero = false;
    std::string source;
};

struct ClaimCheck {
    std::string claim;
    std::string predicted;
    std::string observed;
    bool match = true;
};

struct Verification {
    Abelian2Group A_K;
    Abelian2Group A_Kprime;
    int hasse_index = 1;
    std::string unit_system;
    std::int64_t A_K1_order = 1;
    std::optional<Abelian2Group> A_K1; // from rank and Kuroda order when determined
    std::vector<ClaimCheck> checks;

    bool all_match() const;
};

struct PredictionReport {
    std::int64_t d = 0;
    std::vector<std::int64_t> primes;
    std::optional<FieldShape> shape;
    RankClaim rank_K, rank_Kprime, rank_K1;
    StructureClaim structure_K, structure_Kprime, structure_K1;
    std::optional<int> rank_stable;
    std::optional<LabeledMatch> ppqq;
    std::optional<LabeledMatch> qqqq;
    std::optional<TowerClaim> tower;
    /// disagreements between independent criteria, reported rather than resolved
    std::vector<std::string> findings;
    std::optional<Verification> verified;
};

/// Ranks, structures and tower claims for odd square-free d >= 3.
/// Throws even_radicand.  Deterministic.
PredictionReport predict(arith::FactoredSquarefree const & d);

inline constexpr std::int64_t default_oracle_limit = 1'000'000'000;

/*
 * Class groups of K and K' = Q(sqrt 2d) by the forms oracle, compared
 * with the report's rank and structure claims; #A(K1) from Kuroda's
 * formula with oracle inputs and the computed unit index.  Throws
 * oracle_range_exceeded when 8d exceeds the limit.
 */
Verification verify_against_oracle(PredictionReport const & report,
                                   std::int64_t oracle_limit = default_oracle_limit);

} // namespace twoclass::classify

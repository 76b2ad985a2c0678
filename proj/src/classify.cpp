#include "twoclass/classify.hpp"

#include <algorithm>
#include <set>

#include "twoclass/biquad.hpp"
#include "twoclass/error.hpp"
#include "twoclass/forms.hpp"
#include "twoclass/genus.hpp"
#include "twoclass/quadfield.hpp"

namespace twoclass::classify {

namespace {

int mod8(std::int64_t p) { return static_cast<int>(p % 8); }

std::string join(std::vector<std::int64_t> const & v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? ", " : "") + std::to_string(v[i]);
    return s;
}

/* L(a, b) for products of labels: a and b are label lists. */
int L(SymbolFn const & s, std::initializer_list<int> num, int den)
{
    int r = 1;
    for (int i : num)
        r *= s(i, den);
    return r;
}

SymbolFn symbols_of(std::vector<std::int64_t> const & labeled)
{
    return [labeled](int i, int j) {
        return arith::kronecker(labeled[static_cast<std::size_t>(i)], labeled[static_cast<std::size_t>(j)]);
    };
}

std::vector<std::int64_t> with_residue(std::vector<std::int64_t> const & ps, int r)
{
    std::vector<std::int64_t> out;
    std::copy_if(ps.begin(), ps.end(), std::back_inserter(out), [r](auto p) { return mod8(p) == r; });
    return out;
}

/* the (k, j) pairs with j < k over t labels, in a fixed order */
std::vector<std::pair<int, int>> lower_pairs(int t)
{
    std::vector<std::pair<int, int>> out;
    for (int k = 1; k < t; ++k) {
        for (int j = 0; j < k; ++j)
            out.emplace_back(k, j);
    }
    return out;
}

void check_spec(SymbolSpec const & spec)
{
    if (spec.residues.empty())
        throw precondition_violation("empty SymbolSpec");
    for (int a : spec.residues) {
        if (a != 1 && a != 3 && a != 5 && a != 7)
            throw precondition_violation("residue " + std::to_string(a) + " is not in {1, 3, 5, 7}");
    }
    auto t = static_cast<int>(spec.residues.size());
    for (auto const & [kj, e] : spec.symbols) {
        auto [k, j] = kj;
        if (!(0 <= j && j < k && k < t))
            throw precondition_violation("symbol index (" + std::to_string(k) + ", " + std::to_string(j) +
                                         ") out of range");
        if (e != 1 && e != -1)
            throw precondition_violation("symbol value " + std::to_string(e));
    }
}

bool symbols_ok(SymbolSpec const & spec, std::vector<std::int64_t> const & chosen, std::int64_t x)
{
    auto i = static_cast<int>(chosen.size());
    for (int j = 0; j < i; ++j) {
        auto it = spec.symbols.find({i, j});
        if (it != spec.symbols.end() && arith::kronecker(x, chosen[static_cast<std::size_t>(j)]) != it->second)
            return false;
    }
    return true;
}

std::int64_t next_crt_prime(SymbolSpec const & spec, std::vector<std::int64_t> const & chosen,
                            std::int64_t bound, std::int64_t min_prime)
{
    auto i = static_cast<int>(chosen.size());
    std::vector<arith::ResidueClass> system{{spec.residues[static_cast<std::size_t>(i)], 8}};
    for (int j = 0; j < i; ++j) {
        auto it = spec.symbols.find({i, j});
        if (it == spec.symbols.end())
            continue;
        std::int64_t pj = chosen[static_cast<std::size_t>(j)];
        std::int64_t v = 1;
        while (arith::kronecker(v, pj) != it->second)
            ++v;
        system.emplace_back(v, pj);
    }
    auto cls = arith::crt(system);
    __int128 M = cls.modulus;
    __int128 x = cls.residue;
    if (x < min_prime)
        x += ((min_prime - x + M - 1) / M) * M;
    for (std::int64_t step = 0; step < bound; ++step, x += M) {
        if (x > INT64_MAX)
            break;
        auto xi = static_cast<std::int64_t>(x);
        if (arith::is_prime(static_cast<std::uint64_t>(xi)) &&
            std::find(chosen.begin(), chosen.end(), xi) == chosen.end() && symbols_ok(spec, chosen, xi))
            return xi;
    }
    throw not_found_within_bound("no prime for position " + std::to_string(i + 1) + " within " +
                                 std::to_string(bound) + " steps of " + std::to_string(cls.residue) + " mod " +
                                 std::to_string(cls.modulus));
}

std::int64_t next_smallest_prime(SymbolSpec const & spec, std::vector<std::int64_t> const & chosen,
                                 std::int64_t bound, std::int64_t min_prime)
{
    auto i = static_cast<int>(chosen.size());
    std::int64_t a = spec.residues[static_cast<std::size_t>(i)];
    std::int64_t x = a;
    if (x < min_prime)
        x += ((min_prime - x + 7) / 8) * 8;
    for (std::int64_t step = 0; step < bound; ++step, x += 8) {
        if (arith::is_prime(static_cast<std::uint64_t>(x)) &&
            std::find(chosen.begin(), chosen.end(), x) == chosen.end() && symbols_ok(spec, chosen, x))
            return x;
    }
    throw not_found_within_bound("no prime = " + std::to_string(a) + " mod 8 for position " +
                                 std::to_string(i + 1) + " within " + std::to_string(bound) + " candidates");
}

std::string structure_string(std::optional<Abelian2Group> const & g)
{
    return g ? g->to_string() : "unknown";
}

} // namespace

std::vector<std::string> const & table_rows()
{
    static std::vector<std::string> const rows = {
        "2pp/2", "2pq/3", "2pq/2", "2qq/2", "ppp/1", "pqq/1",
        "2ppp/2", "2ppq/3", "2ppq/2", "2pqq/2", "2qqq/3", "2qqq/2", "pppp/1", "ppqq/1", "qqqq/1",
    };
    return rows;
}

FieldShape shape_of(arith::FactoredSquarefree const & d)
{
    FieldShape s;
    std::int64_t v = d.value();
    s.d_mod_4 = static_cast<int>(v % 4);
    s.has_two = s.d_mod_4 != 1;
    for (auto p : d.primes()) {
        if (p == 2)
            continue;
        (p % 4 == 1 ? s.p_primes : s.q_primes).push_back(p);
    }
    s.ramified_prime_count = static_cast<int>(s.p_primes.size() + s.q_primes.size()) + (s.has_two ? 1 : 0);
    if (s.ramified_prime_count != 3 && s.ramified_prime_count != 4)
        throw out_of_table(std::to_string(v) + " has " + std::to_string(s.ramified_prime_count) +
                           " ramified primes");

    std::string roles = s.has_two ? "2" : "";
    roles += std::string(s.p_primes.size(), 'p') + std::string(s.q_primes.size(), 'q');
    s.row = roles + "/" + std::to_string(s.d_mod_4);

    std::vector<std::string> parts;
    if (s.has_two)
        parts.push_back("2");
    for (std::size_t i = 0; i < s.p_primes.size(); ++i)
        parts.push_back("p" + std::to_string(i + 1));
    for (std::size_t i = 0; i < s.q_primes.size(); ++i)
        parts.push_back("q" + std::to_string(i + 1));
    for (std::size_t i = 0; i < parts.size(); ++i)
        s.pattern += (i ? ", " : "") + parts[i];

    auto const & rows = table_rows();
    if (std::find(rows.begin(), rows.end(), s.row) == rows.end())
        throw inconsistent("shape " + s.row + " missing from the tables");
    return s;
}

std::optional<int> rank_stable_type(arith::FactoredSquarefree const & d)
{
    if (d.value() % 2 == 0)
        throw even_radicand(std::to_string(d.value()));
    auto const & ps = d.primes();
    auto count = [&](int r) { return std::count_if(ps.begin(), ps.end(), [r](auto p) { return mod8(p) == r; }); };
    auto n1 = count(1), n3 = count(3), n5 = count(5), n7 = count(7);
    if (ps.size() == 3 && n3 + n7 == 0 && n5 >= 2)
        return 1;
    if (ps.size() == 4 && n5 == 2 && n1 == 0 && n3 >= 1 && n3 + n7 == 2)
        return 2;
    if (ps.size() == 4 && n1 + n5 == 0 && n3 >= 3)
        return 3;
    return std::nullopt;
}

std::array<Condition, 3> const & ppqq_conditions()
{
    // labels: 0 = p1, 1 = p2, 2 = q1, 3 = q2
    static std::array<Condition, 3> const conds = {
        [](SymbolFn const & s) {
            return s(0, 1) == -1 && s(0, 2) == -1 && s(0, 3) == 1 && L(s, {2, 3}, 1) == 1;
        },
        [](SymbolFn const & s) {
            return s(0, 1) == -1 && L(s, {2, 3}, 0) == 1 && s(1, 2) == -1 && s(1, 3) == 1;
        },
        [](SymbolFn const & s) {
            return s(0, 1) == 1 && L(s, {0, 1}, 2) == -1 && L(s, {0, 1}, 3) == -1 && s(0, 2) == s(1, 3);
        },
    };
    return conds;
}

std::array<Condition, 9> const & qqqq_conditions()
{
    // labels: 0 = q1, 1 = q2, 2 = q3, 3 = q4
    static std::array<Condition, 9> const conds = {
        [](SymbolFn const & s) {
            return s(0, 2) == 1 && s(1, 2) == 1 && s(3, 1) == 1 && s(3, 0) == 1 && s(3, 2) == -1;
        },
        [](SymbolFn const & s) {
            return s(0, 2) == -1 && s(1, 2) == -1 && s(3, 1) == -1 && s(3, 0) == -1 && s(3, 2) == 1;
        },
        [](SymbolFn const & s) {
            return L(s, {0, 1}, 2) == -1 && L(s, {0, 1}, 3) == -1 && s(1, 2) == s(0, 3) && s(0, 3) == s(2, 3);
        },
        [](SymbolFn const & s) {
            return L(s, {0, 1}, 2) == 1 && L(s, {0, 1}, 3) == -1 && s(1, 2) == s(1, 3) && s(0, 1) == s(3, 2);
        },
        [](SymbolFn const & s) {
            return L(s, {0, 1}, 2) == -1 && L(s, {0, 1}, 3) == 1 && s(1, 2) == s(0, 3) && s(0, 1) == s(2, 3);
        },
        [](SymbolFn const & s) {
            return s(0, 2) == 1 && s(1, 2) == 1 && s(0, 3) == 1 && s(1, 3) == -1 && s(0, 1) == -1;
        },
        [](SymbolFn const & s) {
            return s(0, 2) == -1 && s(1, 2) == -1 && s(0, 3) == -1 && s(1, 3) == 1 && s(0, 1) == 1 &&
                   s(2, 3) == 1;
        },
        [](SymbolFn const & s) {
            return s(0, 2) == 1 && s(1, 2) == -1 && s(0, 3) == 1 && s(1, 3) == 1 && s(0, 1) == -1;
        },
        [](SymbolFn const & s) {
            return s(0, 2) == -1 && s(1, 2) == 1 && s(0, 3) == -1 && s(1, 3) == -1 && s(0, 1) == 1 &&
                   s(2, 3) == -1;
        },
    };
    return conds;
}

std::optional<LabeledMatch> ppqq_condition(arith::FactoredSquarefree const & d)
{
    auto const & ps = d.primes();
    auto fives = with_residue(ps, 5), sevens = with_residue(ps, 7), threes = with_residue(ps, 3);
    if (ps.size() != 4 || fives.size() != 2 || sevens.size() != 1 || threes.size() != 1)
        throw wrong_shape(std::to_string(d.value()) + " is not p1 p2 q1 q2 with residues 5, 5, 7, 3 mod 8");
    std::vector<std::vector<std::int64_t>> labelings = {{fives[0], fives[1], sevens[0], threes[0]},
                                                        {fives[1], fives[0], sevens[0], threes[0]}};
    auto const & conds = ppqq_conditions();
    for (std::size_t c = 0; c < conds.size(); ++c) {
        for (auto const & lab : labelings) {
            if (conds[c](symbols_of(lab)))
                return LabeledMatch{static_cast<int>(c) + 1, lab};
        }
    }
    return std::nullopt;
}

std::optional<LabeledMatch> qqqq_condition(arith::FactoredSquarefree const & d)
{
    auto const & ps = d.primes();
    auto sevens = with_residue(ps, 7), threes = with_residue(ps, 3);
    if (ps.size() != 4 || sevens.size() != 1 || threes.size() != 3)
        throw wrong_shape(std::to_string(d.value()) + " is not q1 q2 q3 q4 with residues 7, 3, 3, 3 mod 8");
    std::vector<std::vector<std::int64_t>> labelings;
    std::sort(threes.begin(), threes.end());
    do {
        labelings.push_back({sevens[0], threes[0], threes[1], threes[2]});
    } while (std::next_permutation(threes.begin(), threes.end()));
    auto const & conds = qqqq_conditions();
    for (std::size_t c = 0; c < conds.size(); ++c) {
        for (auto const & lab : labelings) {
            if (conds[c](symbols_of(lab)))
                return LabeledMatch{static_cast<int>(c) + 1, lab};
        }
    }
    return std::nullopt;
}

SymbolFn SymbolSpec::as_symbol_fn() const
{
    return [spec = *this](int i, int j) {
        if (i == j)
            throw precondition_violation("symbol of a label with itself");
        if (i > j)
            return spec.symbols.at({i, j});
        // (p_i / p_j) from (p_j / p_i) by reciprocity
        int ri = spec.residues.at(static_cast<std::size_t>(i)), rj = spec.residues.at(static_cast<std::size_t>(j));
        int flip = (ri % 4 == 3 && rj % 4 == 3) ? -1 : 1;
        return flip * spec.symbols.at({j, i});
    };
}

std::vector<SymbolSpec> specs_for(std::array<int, 4> const & residues, Condition const & cond)
{
    auto pairs = lower_pairs(4);
    std::vector<SymbolSpec> out;
    for (unsigned mask = 0; mask < (1u << pairs.size()); ++mask) {
        SymbolSpec spec;
        spec.residues.assign(residues.begin(), residues.end());
        for (std::size_t i = 0; i < pairs.size(); ++i)
            spec.symbols[pairs[i]] = (mask >> i & 1) ? -1 : 1;
        if (cond(spec.as_symbol_fn()))
            out.push_back(std::move(spec));
    }
    return out;
}

bool satisfies(SymbolSpec const & spec, std::vector<std::int64_t> const & primes)
{
    if (primes.size() != spec.residues.size())
        return false;
    std::set<std::int64_t> distinct(primes.begin(), primes.end());
    if (distinct.size() != primes.size())
        return false;
    for (std::size_t i = 0; i < primes.size(); ++i) {
        if (!arith::is_prime(static_cast<std::uint64_t>(primes[i])) || mod8(primes[i]) != spec.residues[i])
            return false;
    }
    for (auto const & [kj, e] : spec.symbols) {
        auto [k, j] = kj;
        if (arith::kronecker(primes[static_cast<std::size_t>(k)], primes[static_cast<std::size_t>(j)]) != e)
            return false;
    }
    return true;
}

std::vector<std::int64_t> find_prime_tuple(SymbolSpec const & spec, std::int64_t search_bound, SearchMode mode,
                                           std::int64_t min_prime)
{
    check_spec(spec);
    if (search_bound < 1)
        throw precondition_violation("search bound must be positive");
    std::vector<std::int64_t> chosen;
    while (chosen.size() < spec.residues.size()) {
        chosen.push_back(mode == SearchMode::crt_progression
                             ? next_crt_prime(spec, chosen, search_bound, min_prime)
                             : next_smallest_prime(spec, chosen, search_bound, min_prime));
    }
    if (!satisfies(spec, chosen))
        throw inconsistent("prime tuple (" + join(chosen) + ") fails its own symbol constraints");
    return chosen;
}

std::string to_string(Direction d)
{
    return d == Direction::iff ? "iff" : "sufficient";
}

bool Verification::all_match() const
{
    return std::all_of(checks.begin(), checks.end(), [](ClaimCheck const & c) { return c.match; });
}

PredictionReport predict(arith::FactoredSquarefree const & d)
{
    std::int64_t v = d.value();
    if (v % 2 == 0)
        throw even_radicand(std::to_string(v));
    if (v < 3)
        throw precondition_violation("predict needs d >= 3");

    PredictionReport rep;
    rep.d = v;
    rep.primes = d.primes();
    try {
        rep.shape = shape_of(d);
    } catch (out_of_table const &) {
    }

    auto K = quadfield::QuadraticField(d);
    auto Kp = quadfield::QuadraticField::of(2 * v);
    rep.rank_K = {genus::rank_A(K), "genus field"};
    rep.rank_Kprime = {genus::rank_A(Kp), "genus field"};
    rep.rank_K1 = {biquad::rank_A_K1(d), "2-rank criterion for Q(sqrt 2, sqrt d)"};

    auto trivial_if_rank0 = [](RankClaim const & r, StructureClaim & s) {
        if (r.rank == 0)
            s = {Abelian2Group(), "rank 0", Direction::iff};
    };
    trivial_if_rank0(rep.rank_K, rep.structure_K);
    trivial_if_rank0(rep.rank_Kprime, rep.structure_Kprime);
    trivial_if_rank0(rep.rank_K1, rep.structure_K1);

    rep.rank_stable = rank_stable_type(d);
    if (rep.rank_stable) {
        auto note = [&](std::string const & what, int got, int want) {
            if (got != want)
                rep.findings.push_back("congruence type " + std::to_string(*rep.rank_stable) + " implies " + what +
                                       " = " + std::to_string(want) + " but the independent computation gives " +
                                       std::to_string(got));
        };
        note("rank A(K)", rep.rank_K.rank, 2);
        note("rank A(K')", rep.rank_Kprime.rank, 3);
        note("rank A(K1)", rep.rank_K1.rank, 2);
        for (auto p : d.primes()) {
            if (mod8(p) == 1 && !arith::two_power_residue_test(p))
                rep.findings.push_back("prime " + std::to_string(p) +
                                       " = 1 mod 8 has 2^((p-1)/4) = (-1)^((p-1)/8) mod p, which raises rank A(K1)");
        }
    }

    auto const ppqq_groups = std::array{Abelian2Group::elementary(2), Abelian2Group::elementary(3),
                                        Abelian2Group({2, 4})};
    auto apply_structures = [&](std::string const & source, Direction dir) {
        rep.structure_K = {ppqq_groups[0], source, dir};
        rep.structure_Kprime = {ppqq_groups[1], source, dir};
        rep.structure_K1 = {ppqq_groups[2], source, dir};
    };
    try {
        rep.ppqq = ppqq_condition(d);
        if (rep.ppqq)
            apply_structures("p1 p2 q1 q2 symbol criterion, condition " + std::to_string(rep.ppqq->condition) +
                                 ", labeling (" + join(rep.ppqq->labeling) + ")",
                             Direction::iff);
    } catch (wrong_shape const &) {
    }
    try {
        rep.qqqq = qqqq_condition(d);
        if (rep.qqqq)
            apply_structures("q1 q2 q3 q4 symbol criterion, condition " + std::to_string(rep.qqqq->condition) +
                                 ", labeling (" + join(rep.qqqq->labeling) + ")",
                             Direction::sufficient);
    } catch (wrong_shape const &) {
    }

    auto check_rank = [&](char const * name, StructureClaim const & s, RankClaim const & r) {
        if (s.group && s.group->rank() != r.rank)
            rep.findings.push_back(std::string("structure claim for ") + name + " has rank " +
                                   std::to_string(s.group->rank()) + " but the rank claim is " +
                                   std::to_string(r.rank));
    };
    check_rank("A(K)", rep.structure_K, rep.rank_K);
    check_rank("A(K')", rep.structure_Kprime, rep.rank_Kprime);
    check_rank("A(K1)", rep.structure_K1, rep.rank_K1);

    if (v % 4 == 1 && rep.rank_K.rank == rep.rank_K1.rank) {
        TowerClaim t;
        t.stable_rank = rep.rank_K.rank;
        t.mu_zero = true;
        t.lambda_zero = rep.structure_K.group && rep.structure_K1.group &&
                        rep.structure_K.group->order() == rep.structure_K1.group->order();
        t.source = "Fukuda stability: 2 is totally ramified in K1/K and rank A(K) = rank A(K1)";
        if (t.lambda_zero)
            t.source += ", #A(K) = #A(K1)";
        rep.tower = t;
    }
    return rep;
}

Verification verify_against_oracle(PredictionReport const & rep, std::int64_t oracle_limit)
{
    auto d = arith::factor_squarefree(rep.d);
    auto K = quadfield::QuadraticField(d);
    auto Kp = quadfield::QuadraticField::of(2 * rep.d);
    if (Kp.discriminant() > oracle_limit || K.discriminant() > oracle_limit)
        throw oracle_range_exceeded("discriminant " + std::to_string(Kp.discriminant()) + " exceeds " +
                                    std::to_string(oracle_limit));

    auto oracle = [](quadfield::QuadraticField const & F) {
        return forms::two_sylow(forms::ordinary_class_group(F.discriminant(), quadfield::unit_norm(F)));
    };
    Verification v;
    v.A_K = oracle(K);
    v.A_Kprime = oracle(Kp);
    auto A_Q2 = oracle(quadfield::QuadraticField::of(2));

    auto rank_check = [&](std::string name, RankClaim const & r, Abelian2Group const & g) {
        v.checks.push_back({name, std::to_string(r.rank), std::to_string(g.rank()), r.rank == g.rank()});
    };
    auto structure_check = [&](std::string name, StructureClaim const & s, std::optional<Abelian2Group> const & g) {
        if (!s.group)
            return;
        v.checks.push_back({name, s.group->to_string(), structure_string(g), g && *g == *s.group});
    };
    rank_check("rank A(K)", rep.rank_K, v.A_K);
    rank_check("rank A(K')", rep.rank_Kprime, v.A_Kprime);
    structure_check("A(K)", rep.structure_K, v.A_K);
    structure_check("A(K')", rep.structure_Kprime, v.A_Kprime);

    auto hasse = biquad::hasse_unit_index_detail(biquad::BiquadField(d));
    v.hasse_index = hasse.index;
    v.unit_system = hasse.unit_system;
    v.A_K1_order = biquad::kuroda_order(hasse.index, v.A_K.order(), v.A_Kprime.order(), A_Q2.order());

    std::int64_t min_order = std::int64_t{1} << rep.rank_K1.rank;
    v.checks.push_back({"#A(K1) >= 2^rank A(K1)", std::to_string(min_order), std::to_string(v.A_K1_order),
                        v.A_K1_order >= min_order});
    try {
        v.A_K1 = biquad::structure_A_K1(rep.rank_K1.rank, v.A_K1_order);
    } catch (inconsistent const &) {
    }
    if (rep.structure_K1.group) {
        v.checks.push_back({"#A(K1)", std::to_string(rep.structure_K1.group->order()),
                            std::to_string(v.A_K1_order), rep.structure_K1.group->order() == v.A_K1_order});
        structure_check("A(K1)", rep.structure_K1, v.A_K1);
    }
    return v;
}

} // namespace twoclass::classify

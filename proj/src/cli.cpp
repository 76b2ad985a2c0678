#include "twoclass/cli.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "twoclass/biquad.hpp"
#include "twoclass/classify.hpp"
#include "twoclass/error.hpp"
#include "twoclass/forms.hpp"
#include "twoclass/genus.hpp"
#include "twoclass/quadfield.hpp"
#include "twoclass/redei.hpp"
#include "twoclass/report.hpp"

namespace twoclass::cli {

namespace {

using nlohmann::json;

struct usage_error : error {
    using error::error;
};

/// Runs fn(i) for i in [0, n) on up to `threads` workers; results keep
/// index order and the first failing index rethrows.
template <class T>
std::vector<T> parallel_map(std::size_t n, unsigned threads, std::function<T(std::size_t)> const & fn)
{
    std::vector<std::optional<T>> slots(n);
    std::vector<std::exception_ptr> failures(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < n;) {
            try {
                slots[i] = fn(i);
            } catch (...) {
                failures[i] = std::current_exception();
            }
        }
    };
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back(worker);
    }
    std::vector<T> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (failures[i])
            std::rethrow_exception(failures[i]);
        out.push_back(std::move(*slots[i]));
    }
    return out;
}

/// Odd square-free d in [lo, hi], lo clamped to 3.
std::vector<std::int64_t> odd_squarefree_range(std::int64_t lo, std::int64_t hi)
{
    std::vector<std::int64_t> out;
    for (std::int64_t d = std::max<std::int64_t>(lo, 3) | 1; d <= hi; d += 2) {
        bool sf = true;
        for (std::int64_t p = 3; p * p <= d && sf; p += 2)
            sf = d % (p * p) != 0;
        if (sf)
            out.push_back(d);
    }
    return out;
}

std::vector<std::int64_t> parse_int_list(std::string const & s)
{
    std::vector<std::int64_t> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');) {
        try {
            std::size_t pos = 0;
            out.push_back(std::stoll(item, &pos));
            if (pos != item.size())
                throw std::invalid_argument(item);
        } catch (std::logic_error const &) {
            throw usage_error("not an integer: '" + item + "'");
        }
    }
    return out;
}

/*
 * "k,j=s;..." with 1-based labels and s = +-1, meaning (p_k / p_j) = s.
 * Pairs with k < j are turned around through quadratic reciprocity.
 */
classify::SymbolSpec parse_spec(std::vector<std::int64_t> const & residues, std::string const & symbols)
{
    classify::SymbolSpec spec;
    for (auto r : residues)
        spec.residues.push_back(static_cast<int>(r));
    std::stringstream ss(symbols);
    for (std::string item; std::getline(ss, item, ';');) {
        if (item.empty())
            continue;
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw usage_error("symbol entry '" + item + "' lacks '='");
        auto idx = parse_int_list(item.substr(0, eq));
        auto val = parse_int_list(item.substr(eq + 1));
        if (idx.size() != 2 || val.size() != 1 || (val[0] != 1 && val[0] != -1))
            throw usage_error("symbol entry '" + item + "' is not k,j=+-1");
        auto k = idx[0] - 1, j = idx[1] - 1;
        auto t = static_cast<std::int64_t>(residues.size());
        if (k < 0 || j < 0 || k >= t || j >= t || k == j)
            throw usage_error("symbol entry '" + item + "' has bad labels");
        int s = static_cast<int>(val[0]);
        if (k < j) {
            if (residues[k] % 4 == 3 && residues[j] % 4 == 3)
                s = -s;
            std::swap(k, j);
        }
        auto key = std::pair{static_cast<int>(k), static_cast<int>(j)};
        auto [it, fresh] = spec.symbols.emplace(key, s);
        if (!fresh && it->second != s)
            throw usage_error("contradictory entries for labels " + std::to_string(k + 1) + "," +
                              std::to_string(j + 1));
    }
    return spec;
}

arith::FactoredSquarefree field_radicand(std::int64_t d)
{
    if (d < 2)
        throw usage_error("d must be a square-free integer >= 2");
    return arith::factor_squarefree(d);
}

/// d with disc(Q(sqrt d)) = D; throws usage_error otherwise.
quadfield::QuadraticField field_of_discriminant(std::int64_t D)
{
    if (!genus::is_fundamental(D) || D < 5)
        throw usage_error(std::to_string(D) + " is not a positive fundamental discriminant");
    return quadfield::QuadraticField::of(D % 4 == 0 ? D / 4 : D);
}

struct Outcome {
    report::ReportDocument doc;
    std::vector<std::string> csv; // rows after the header when --csv
    bool csv_mode = false;
};

struct SweepItem {
    classify::PredictionReport prediction;
    std::optional<classify::Verification> verification;
};

bool matches_converse(SweepItem const & it)
{
    if (!it.prediction.shape || it.prediction.shape->row != "qqqq/1" || it.prediction.qqqq || !it.verification)
        return false;
    auto const & v = *it.verification;
    std::vector<int> res;
    for (auto p : it.prediction.primes)
        res.push_back(static_cast<int>(p % 8));
    std::sort(res.begin(), res.end());
    return res == std::vector<int>{3, 3, 3, 7} && v.A_K == Abelian2Group::elementary(2) &&
           v.A_Kprime == Abelian2Group::elementary(3) && v.A_K1 && *v.A_K1 == Abelian2Group({2, 4});
}

std::vector<SweepItem> sweep(std::vector<std::int64_t> const & ds, bool oracle, std::int64_t limit, unsigned threads)
{
    return parallel_map<SweepItem>(ds.size(), threads, [&](std::size_t i) {
        SweepItem it{classify::predict(arith::factor_squarefree(ds[i])), std::nullopt};
        if (oracle)
            it.verification = classify::verify_against_oracle(it.prediction, limit);
        return it;
    });
}

} // namespace

int run(std::vector<std::string> const & args, std::ostream & out, std::ostream & err)
{
    CLI::App app{"2-class groups along the cyclotomic Z2-extension of real quadratic fields"};
    app.require_subcommand(1);
    app.fallthrough();
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    bool csv = false;
    app.add_option("--threads", threads, "worker threads for sweeps")->check(CLI::Range(1u, 1024u));
    app.add_flag("--json", "JSON output (default)");
    app.add_flag("--csv", csv, "CSV output for classify, enumerate and verify");
    std::int64_t oracle_limit = classify::default_oracle_limit;
    app.add_option("--oracle-limit", oracle_limit, "largest discriminant handed to the forms oracle")
        ->check(CLI::PositiveNumber);

    Outcome result;
    std::function<void()> action;

    auto * classify_cmd = app.add_subcommand("classify", "predict ranks and structures for Q(sqrt d), d odd");
    std::int64_t classify_d = 0;
    bool classify_oracle = false;
    classify_cmd->add_option("d", classify_d)->required();
    classify_cmd->add_flag("--oracle,--verify", classify_oracle, "check the claims with the forms oracle");
    classify_cmd->callback([&] {
        action = [&] {
            SweepItem it{classify::predict(arith::factor_squarefree(classify_d)), std::nullopt};
            if (classify_oracle) {
                it.verification = classify::verify_against_oracle(it.prediction, oracle_limit);
                it.prediction.verified = it.verification;
            }
            result.doc.command = "classify";
            result.doc.inputs = {{"d", classify_d}, {"oracle", classify_oracle}};
            result.doc.results = report::prediction_json(it.prediction);
            if (it.verification)
                result.doc.mismatches = report::mismatches_of(classify_d, *it.verification);
            result.csv.push_back(report::csv_row(it.prediction, it.verification ? &*it.verification : nullptr));
        };
    });

    auto * enumerate_cmd = app.add_subcommand("enumerate", "predictions for every odd square-free d in a range");
    std::int64_t enum_min = 3, enum_max = 0;
    std::string enum_shape;
    bool enum_oracle = false;
    enumerate_cmd->add_option("--min", enum_min);
    enumerate_cmd->add_option("--max", enum_max)->required();
    enumerate_cmd->add_option("--shape", enum_shape, "table row such as ppqq/1");
    enumerate_cmd->add_flag("--oracle,--verify", enum_oracle);
    enumerate_cmd->callback([&] {
        action = [&] {
            if (!enum_shape.empty()) {
                auto const & rows = classify::table_rows();
                if (std::find(rows.begin(), rows.end(), enum_shape) == rows.end())
                    throw usage_error("unknown shape '" + enum_shape + "'");
            }
            if (enum_max - enum_min > 50'000'000)
                throw usage_error("range too large");
            auto ds = odd_squarefree_range(enum_min, enum_max);
            if (!enum_shape.empty()) {
                std::erase_if(ds, [&](std::int64_t d) {
                    auto f = arith::factor_squarefree(d);
                    auto t = f.prime_count() + (d % 4 == 1 ? 0 : 1);
                    if (t != 3 && t != 4)
                        return true;
                    return classify::shape_of(f).row != enum_shape;
                });
            }
            auto items = sweep(ds, enum_oracle, oracle_limit, threads);
            result.doc.command = "enumerate";
            result.doc.inputs = {{"min", enum_min}, {"max", enum_max}, {"oracle", enum_oracle}};
            result.doc.inputs["shape"] = enum_shape.empty() ? json(nullptr) : json(enum_shape);
            json rows = json::array();
            for (auto & it : items) {
                it.prediction.verified = it.verification;
                rows.push_back(report::prediction_json(it.prediction));
                if (it.verification)
                    for (auto & m : report::mismatches_of(it.prediction.d, *it.verification))
                        result.doc.mismatches.push_back(m);
                result.csv.push_back(
                    report::csv_row(it.prediction, it.verification ? &*it.verification : nullptr));
            }
            result.doc.results = {{"count", items.size()}, {"rows", rows}};
        };
    });

    auto * find_cmd = app.add_subcommand("find-primes", "primes with prescribed residues mod 8 and symbols");
    std::string mod8_text, symbols_text, mode_text = "crt";
    std::int64_t bound = classify::default_search_bound, min_prime = 2;
    find_cmd->add_option("--mod8", mod8_text, "a1,a2,...")->required();
    find_cmd->add_option("--symbols", symbols_text, "k,j=+-1;... meaning (p_k/p_j), labels from 1");
    find_cmd->add_option("--bound", bound)->check(CLI::PositiveNumber);
    find_cmd->add_option("--mode", mode_text)->check(CLI::IsMember({"crt", "smallest"}));
    find_cmd->add_option("--min-prime", min_prime);
    find_cmd->callback([&] {
        action = [&] {
            auto residues = parse_int_list(mod8_text);
            auto spec = parse_spec(residues, symbols_text);
            auto mode = mode_text == "crt" ? classify::SearchMode::crt_progression : classify::SearchMode::smallest;
            auto primes = classify::find_prime_tuple(spec, bound, mode, min_prime);
            json symbols = json::array();
            for (auto const & [kj, s] : spec.symbols)
                symbols.push_back({{"k", kj.first + 1}, {"j", kj.second + 1}, {"value", s}});
            result.doc.command = "find-primes";
            result.doc.inputs = {{"mod8", residues}, {"symbols", symbols_text}, {"bound", bound},
                                 {"mode", mode_text},  {"min_prime", min_prime}};
            result.doc.results = {{"primes", primes},
                                  {"normalized_symbols", symbols},
                                  {"verified", classify::satisfies(spec, primes)}};
        };
    });

    auto * verify_cmd = app.add_subcommand("verify", "oracle check of every prediction for odd d <= max");
    std::int64_t verify_max = 20000;
    verify_cmd->add_option("--max", verify_max)->check(CLI::Range(std::int64_t{3}, std::int64_t{100'000'000}));
    verify_cmd->callback([&] {
        action = [&] {
            auto items = sweep(odd_squarefree_range(3, verify_max), true, oracle_limit, threads);
            std::size_t claims = 0;
            json findings = json::array(), converse = json::array();
            for (auto const & it : items) {
                claims += it.verification->checks.size();
                for (auto const & f : it.prediction.findings)
                    findings.push_back({{"d", it.prediction.d}, {"finding", f}});
                if (matches_converse(it))
                    converse.push_back(it.prediction.d);
                for (auto & m : report::mismatches_of(it.prediction.d, *it.verification))
                    result.doc.mismatches.push_back(m);
                result.csv.push_back(report::csv_row(it.prediction, &*it.verification));
            }
            result.doc.command = "verify";
            result.doc.inputs = {{"max", verify_max}};
            result.doc.results = {{"fields_checked", items.size()},
                                  {"claims_checked", claims},
                                  {"findings", findings},
                                  {"unlisted_qqqq_structures", converse}};
        };
    });

    auto * unit_cmd = app.add_subcommand("unit", "fundamental unit of Q(sqrt d)");
    std::int64_t unit_d = 0;
    unit_cmd->add_option("d", unit_d)->required();
    unit_cmd->callback([&] {
        action = [&] {
            auto K = quadfield::QuadraticField(field_radicand(unit_d));
            result.doc.command = "unit";
            result.doc.inputs = {{"d", unit_d}};
            result.doc.results = report::unit_json(quadfield::fundamental_unit(K));
            result.doc.results["discriminant"] = K.discriminant();
        };
    });

    auto * cg_cmd = app.add_subcommand("classgroup", "class group of discriminant D from binary forms");
    std::int64_t cg_D = 0;
    bool cg_narrow = false, cg_ordinary = false;
    cg_cmd->add_option("D", cg_D)->required();
    auto * narrow_flag = cg_cmd->add_flag("--narrow", cg_narrow, "narrow class group (default)");
    cg_cmd->add_flag("--ordinary", cg_ordinary, "ordinary class group; D must be fundamental")
        ->excludes(narrow_flag);
    cg_cmd->callback([&] {
        action = [&] {
            if (cg_D > oracle_limit)
                throw oracle_range_exceeded(std::to_string(cg_D) + " exceeds " + std::to_string(oracle_limit));
            result.doc.command = "classgroup";
            result.doc.inputs = {{"D", cg_D}, {"narrow", !cg_ordinary}};
            if (cg_ordinary) {
                auto K = field_of_discriminant(cg_D);
                auto g = forms::ordinary_class_group(cg_D, quadfield::unit_norm(K));
                result.doc.results = report::class_group_json(g);
            } else {
                forms::check_discriminant(cg_D);
                result.doc.results = report::class_group_json(forms::narrow_class_group(cg_D));
            }
        };
    });

    auto * s_cmd = app.add_subcommand("s1s2", "discriminant splittings counting A+/2A+ and 2A+/4A+");
    std::int64_t s_D = 0;
    s_cmd->add_option("D", s_D)->required();
    s_cmd->callback([&] {
        action = [&] {
            field_of_discriminant(s_D);
            auto s1 = redei::enumerate_S1(s_D);
            auto s2 = redei::filter_S2(s_D);
            result.doc.command = "s1s2";
            result.doc.inputs = {{"D", s_D}};
            result.doc.results = {{"S1", report::decompositions_json(s1)},
                                  {"S2", report::decompositions_json(s2)},
                                  {"S1_count", s1.size()},
                                  {"S2_count", s2.size()},
                                  {"narrow_two_elementary", redei::narrow_two_elementary(s_D)},
                                  {"oracle", nullptr}};
            if (s_D <= oracle_limit) {
                auto A = forms::two_sylow(forms::narrow_class_group(s_D));
                result.doc.results["oracle"] = {{"A_plus", report::group_json(A)},
                                                {"mod_2", A.count_mod_2()},
                                                {"two_mod_4", A.count_2_mod_4()}};
                auto expect = [&](char const * what, std::size_t got, std::int64_t want) {
                    if (static_cast<std::int64_t>(got) != want)
                        result.doc.mismatches.push_back({{"D", s_D},
                                                         {"claim", what},
                                                         {"predicted", std::to_string(got)},
                                                         {"observed", std::to_string(want)}});
                };
                expect("#S1 = #(A+/2A+)", s1.size(), A.count_mod_2());
                expect("#S2 = #(2A+/4A+)", s2.size(), A.count_2_mod_4());
            }
        };
    });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (CLI::CallForHelp const &) {
        out << app.help();
        return ok;
    } catch (CLI::CallForAllHelp const &) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (CLI::ParseError const & e) {
        err << "error: " << e.what() << '\n';
        return usage;
    }

    try {
        action();
    } catch (usage_error const & e) {
        err << "error: " << e.what() << '\n';
        return usage;
    } catch (oracle_range_exceeded const & e) {
        err << "error: " << e.what() << '\n';
        return exhausted;
    } catch (precision_exhausted const & e) {
        err << "error: " << e.what() << '\n';
        return exhausted;
    } catch (not_found_within_bound const & e) {
        err << "error: " << e.what() << '\n';
        return exhausted;
    } catch (inconsistent const & e) {
        err << "error: internal inconsistency: " << e.what() << '\n';
        return mismatch;
    } catch (error const & e) {
        err << "error: " << e.what() << '\n';
        return usage;
    } catch (std::exception const & e) {
        err << "error: " << e.what() << '\n';
        return usage;
    }

    if (csv) {
        if (result.doc.command != "classify" && result.doc.command != "enumerate" && result.doc.command != "verify") {
            err << "error: --csv applies to classify, enumerate and verify\n";
            return usage;
        }
        out << report::csv_header() << '\n';
        for (auto const & row : result.csv)
            out << row << '\n';
    } else {
        out << json(result.doc).dump(2) << '\n';
    }
    return result.doc.mismatches.empty() ? ok : mismatch;
}

} // namespace twoclass::cli

#include "twoclass/report.hpp"

#include <sstream>

namespace twoclass::report {

using nlohmann::json;

void to_json(json & j, ReportDocument const & doc)
{
    j = json{{"schema_version", doc.schema_version},
             {"command", doc.command},
             {"inputs", doc.inputs},
             {"results", doc.results},
             {"mismatches", doc.mismatches}};
}

void from_json(json const & j, ReportDocument & doc)
{
    j.at("schema_version").get_to(doc.schema_version);
    j.at("command").get_to(doc.command);
    doc.inputs = j.at("inputs");
    doc.results = j.at("results");
    doc.mismatches = j.at("mismatches");
}

json group_json(Abelian2Group const & g)
{
    return json{{"factors", g.factors()}, {"order", g.order()}, {"rank", g.rank()}, {"text", g.to_string()}};
}

namespace {

json optional_group(std::optional<Abelian2Group> const & g)
{
    return g ? group_json(*g) : json(nullptr);
}

json rank_json(classify::RankClaim const & r)
{
    return json{{"rank", r.rank}, {"source", r.source}};
}

json structure_json(classify::StructureClaim const & s)
{
    return json{{"group", optional_group(s.group)},
                {"source", s.source},
                {"direction", classify::to_string(s.direction)}};
}

json match_json(std::optional<classify::LabeledMatch> const & m)
{
    if (!m)
        return nullptr;
    return json{{"condition", m->condition}, {"labeling", m->labeling}};
}

std::string csv_escape(std::string const & s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

} // namespace

json prediction_json(classify::PredictionReport const & r)
{
    json j;
    j["d"] = r.d;
    j["primes"] = r.primes;
    if (r.shape)
        j["shape"] = json{{"row", r.shape->row},
                          {"pattern", r.shape->pattern},
                          {"ramified_prime_count", r.shape->ramified_prime_count},
                          {"d_mod_4", r.shape->d_mod_4}};
    else
        j["shape"] = nullptr;
    j["rank_K"] = rank_json(r.rank_K);
    j["rank_Kprime"] = rank_json(r.rank_Kprime);
    j["rank_K1"] = rank_json(r.rank_K1);
    j["structure_K"] = structure_json(r.structure_K);
    j["structure_Kprime"] = structure_json(r.structure_Kprime);
    j["structure_K1"] = structure_json(r.structure_K1);
    j["rank_stable_type"] = r.rank_stable ? json(*r.rank_stable) : json(nullptr);
    j["ppqq_condition"] = match_json(r.ppqq);
    j["qqqq_condition"] = match_json(r.qqqq);
    if (r.tower)
        j["tower"] = json{{"stable_rank", r.tower->stable_rank},
                          {"mu_zero", r.tower->mu_zero},
                          {"lambda_zero", r.tower->lambda_zero},
                          {"source", r.tower->source}};
    else
        j["tower"] = nullptr;
    j["findings"] = r.findings;
    j["verified"] = r.verified ? verification_json(*r.verified) : json(nullptr);
    return j;
}

json verification_json(classify::Verification const & v)
{
    json checks = json::array();
    for (auto const & c : v.checks)
        checks.push_back(
            json{{"claim", c.claim}, {"predicted", c.predicted}, {"observed", c.observed}, {"match", c.match}});
    return json{{"A_K", group_json(v.A_K)},
                {"A_Kprime", group_json(v.A_Kprime)},
                {"hasse_index", v.hasse_index},
                {"unit_system", v.unit_system},
                {"A_K1_order", v.A_K1_order},
                {"A_K1", optional_group(v.A_K1)},
                {"checks", checks},
                {"all_match", v.all_match()}};
}

json class_group_json(forms::FormClassGroup const & g)
{
    json reps = json::array();
    for (auto const & f : g.classes())
        reps.push_back(json::array({f.a, f.b, f.c}));
    return json{{"discriminant", g.discriminant()},
                {"narrow", g.is_narrow()},
                {"order", g.order()},
                {"invariant_factors", g.invariant_factors()},
                {"two_sylow", group_json(forms::two_sylow(g))},
                {"cycle_count", g.cycle_count()},
                {"classes", reps}};
}

json unit_json(quadfield::FundamentalUnit const & u)
{
    return json{{"a", u.value.a.get_str()},
                {"b", u.value.b.get_str()},
                {"d", u.value.d},
                {"text", u.value.to_string()},
                {"norm", u.norm},
                {"cf_period", u.cf_period}};
}

json decompositions_json(std::vector<redei::Decomposition> const & s)
{
    json out = json::array();
    for (auto const & x : s)
        out.push_back(json::array({x.D1, x.D2}));
    return out;
}

json mismatches_of(std::int64_t d, classify::Verification const & v)
{
    json out = json::array();
    for (auto const & c : v.checks)
        if (!c.match)
            out.push_back(json{{"d", d}, {"claim", c.claim}, {"predicted", c.predicted}, {"observed", c.observed}});
    return out;
}

std::string csv_header()
{
    return "d,shape,rank_K,rank_Kprime,rank_K1,structure_K,structure_Kprime,structure_K1,source,direction,"
           "rank_stable_type,tower_stable_rank,lambda_zero,findings,oracle_A_K,oracle_A_Kprime,hasse_index,"
           "oracle_A_K1_order,oracle_match";
}

std::string csv_row(classify::PredictionReport const & r, classify::Verification const * v)
{
    auto group = [](std::optional<Abelian2Group> const & g) { return g ? g->to_string() : std::string(); };
    std::ostringstream os;
    os << r.d << ',' << (r.shape ? r.shape->row : "") << ',' << r.rank_K.rank << ',' << r.rank_Kprime.rank << ','
       << r.rank_K1.rank << ',' << csv_escape(group(r.structure_K.group)) << ','
       << csv_escape(group(r.structure_Kprime.group)) << ',' << csv_escape(group(r.structure_K1.group)) << ','
       << csv_escape(r.structure_K1.source) << ',' << classify::to_string(r.structure_K1.direction) << ','
       << (r.rank_stable ? std::to_string(*r.rank_stable) : "") << ','
       << (r.tower ? std::to_string(r.tower->stable_rank) : "") << ','
       << (r.tower ? (r.tower->lambda_zero ? "true" : "false") : "") << ',' << r.findings.size() << ',';
    if (v)
        os << csv_escape(v->A_K.to_string()) << ',' << csv_escape(v->A_Kprime.to_string()) << ',' << v->hasse_index
           << ',' << v->A_K1_order << ',' << (v->all_match() ? "true" : "false");
    else
        os << ",,,,";
    return os.str();
}

} // namespace twoclass::report

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "twoclass/classify.hpp"
#include "twoclass/forms.hpp"
#include "twoclass/group.hpp"
#include "twoclass/quadfield.hpp"
#include "twoclass/redei.hpp"

namespace twoclass::report {

inline constexpr char const * schema_version = "1.0";

/// Envelope of every machine-readable CLI answer.
struct ReportDocument {
    std::string schema_version = report::schema_version;
    std::string command;
    nlohmann::json inputs = nlohmann::json::object();
    nlohmann::json results = nlohmann::json::object();
    nlohmann::json mismatches = nlohmann::json::array();

    bool operator==(ReportDocument const &) const = default;
};

void to_json(nlohmann::json & j, ReportDocument const & doc);
void from_json(nlohmann::json const & j, ReportDocument & doc);

nlohmann::json group_json(Abelian2Group const & g);
nlohmann::json prediction_json(classify::PredictionReport const & r);
nlohmann::json verification_json(classify::Verification const & v);
nlohmann::json class_group_json(forms::FormClassGroup const & g);
nlohmann::json unit_json(quadfield::FundamentalUnit const & u);
nlohmann::json decompositions_json(std::vector<redei::Decomposition> const & s);

/// Mismatch entries of a verification, tagged with d.
nlohmann::json mismatches_of(std::int64_t d, classify::Verification const & v);

std::string csv_header();
/// One sweep row; the oracle columns stay empty when v is null.
std::string csv_row(classify::PredictionReport const & r, classify::Verification const * v);

} // namespace twoclass::report

#pragma once

#include "fva/basis.hpp"
#include "fva/report.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace fva {

using Json = nlohmann::ordered_json;

/// {"zDenom", "qDenom", "qCutoffNum" (null when exact), "terms": [[zNum, qNum,
/// coefNum, coefDen], ...], optional "zWindow": ["lo", "hi"]}. Terms are
/// sorted by (qNum, zNum). Integers that do not fit in 64 bits are written as
/// decimal strings.
Json series_to_json(const BiSeries& s);
BiSeries series_from_json(const Json& j);  // throws std::invalid_argument

Json basis_to_json(const ModuleSpec& spec, const BasisList& b);
Json table_to_json(const BigradedTable& t);
Json comparison_to_json(const SeriesComparison& c);
Json report_to_json(const Report& r);

std::string reports_to_markdown(const std::vector<Report>& reports);
std::string reports_to_csv(const std::vector<Report>& reports);

}  // namespace fva

#pragma once

// JSON and CSV encodings of results. Numbers use the shortest decimal form
// that reads back to the same double; NaN and infinities become null in
// JSON and nan / inf / -inf in CSV.

#include <json.hpp>
#include <string>
#include <vector>

#include "lzineq/lsi_weights.hpp"
#include "lzineq/verify.hpp"
#include "lzineq/zonoid.hpp"

namespace lzineq::report {

using json = nlohmann::json;

json to_json(const verify::InequalityReport& r);
json to_json(const OrderCertificate& c);
json to_json(const lsi::LsiConstants& c);
json to_json(const MomentBound& m);

std::string number(double x);

/// Header line plus one line per row, comma separated.
std::string csv(const std::vector<std::string>& header,
                const std::vector<std::vector<std::string>>& rows);

}  // namespace lzineq::report

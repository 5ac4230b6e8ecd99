#include "lzineq/report.hpp"

#include <cmath>

#include "detail/format.hpp"

namespace lzineq::report {
namespace {

json num(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

}  // namespace

std::string number(double x) { return detail::shortest(x); }

json to_json(const verify::InequalityReport& r) {
  json j;
  j["name"] = r.name;
  j["trials"] = r.trials;
  j["worst_margin"] = num(r.worst_margin);
  j["violated"] = r.violated;
  j["inconclusive"] = r.inconclusive;
  j["error_estimate"] = num(r.error_estimate);
  if (r.witness) {
    j["witness"] = {{"index", r.witness->index},
                    {"label", r.witness->label},
                    {"margin", num(r.witness->margin)}};
  } else {
    j["witness"] = nullptr;
  }
  j["seed"] = r.seed;
  j["tolerances"] = {{"tol_report", r.tol_report}};
  j["grid"] = {{"x_min", r.grid.x_min}, {"x_max", r.grid.x_max}, {"n", r.grid.n}};
  return j;
}

json to_json(const OrderCertificate& c) {
  json j;
  j["dominated"] = c.dominated;
  j["worst_ratio"] = num(c.worst_ratio);
  j["c"] = num(c.c);
  j["tolerances"] = {{"tol_order", c.tol_order}};
  if (c.witness) {
    j["witness"] = {{"alpha", c.witness->alpha}, {"u", c.witness->u}};
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

json to_json(const lsi::LsiConstants& c) {
  return {{"weight", c.kind == lsi::WeightKind::kbar ? "kbar" : "khat"},
          {"alpha", num(c.alpha)},
          {"beta", num(c.beta)},
          {"c_weighted", num(c.c_weighted)},
          {"c_classical", num(c.c_classical)},
          {"available", c.available},
          {"inf_at_edge", c.inf_at_edge},
          {"sup_at_edge", c.sup_at_edge},
          {"window", {{"x_lo", c.x_lo}, {"x_hi", c.x_hi}}}};
}

json to_json(const MomentBound& m) {
  return {{"eps", num(m.eps)}, {"c_lower", num(m.c_lower)}, {"c_upper", num(m.c_upper)}};
}

std::string csv(const std::vector<std::string>& header,
                const std::vector<std::vector<std::string>>& rows) {
  std::string out;
  const auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t k = 0; k < cells.size(); ++k) {
      if (k) out += ',';
      out += cells[k];
    }
    out += '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  return out;
}

}  // namespace lzineq::report

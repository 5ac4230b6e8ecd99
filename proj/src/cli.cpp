#include "lzineq/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>

#include "lzineq/errors.hpp"
#include "lzineq/grid_calculus.hpp"
#include "lzineq/io.hpp"
#include "lzineq/lsi_weights.hpp"
#include "lzineq/report.hpp"
#include "lzineq/verify.hpp"
#include "lzineq/zonoid.hpp"

namespace lzineq::cli {
namespace {

using json = nlohmann::json;
using report::number;

struct Output {
  std::string body;
  int status = kExitOk;
};

std::string bool_cell(bool b) { return b ? "true" : "false"; }

GridDensity1D load_density(const RunConfig& cfg, std::ostream& err) {
  if (cfg.input) {
    if (cfg.x_min || cfg.x_max || cfg.n) err << "note: grid overrides ignored for file input\n";
    return normalize(io::read_density(*cfg.input));
  }
  if (cfg.x_min || cfg.x_max || cfg.n) {
    const auto base = builtin::by_name(cfg.measure);
    return normalize(builtin::by_name(cfg.measure, cfg.x_min.value_or(base.x_min()),
                                      cfg.x_max.value_or(base.x_max()), cfg.n.value_or(base.size())));
  }
  return normalize(builtin::by_name(cfg.measure));
}

std::string measure_name(const RunConfig& cfg) { return cfg.input ? *cfg.input : cfg.measure; }

json grid_json(const GridDensity1D& d) {
  return {{"x_min", d.x_min()}, {"x_max", d.x_max()}, {"n", d.size()}};
}

std::vector<std::string> constants_row(const lsi::LsiConstants& c) {
  return {c.kind == lsi::WeightKind::kbar ? "kbar" : "khat",
          number(c.alpha),
          number(c.beta),
          number(c.c_weighted),
          number(c.c_classical),
          bool_cell(c.available),
          bool_cell(c.inf_at_edge),
          bool_cell(c.sup_at_edge),
          number(c.x_lo),
          number(c.x_hi)};
}

Output cmd_constants(const RunConfig& cfg, std::ostream& err) {
  const auto density = load_density(cfg, err);
  const auto kb = lsi::lsi_constants(density, lsi::WeightKind::kbar);
  const auto kh = lsi::lsi_constants(density, lsi::WeightKind::khat);
  if (cfg.format == Format::csv) {
    return {report::csv({"weight", "alpha", "beta", "c_weighted", "c_classical", "available",
                         "inf_at_edge", "sup_at_edge", "x_lo", "x_hi"},
                        {constants_row(kb), constants_row(kh)})};
  }
  json j;
  j["command"] = "constants";
  j["measure"] = measure_name(cfg);
  j["grid"] = grid_json(density);
  j["mean"] = mean(density);
  j["kbar"] = report::to_json(kb);
  j["khat"] = report::to_json(kh);
  j["c_hat_ratio_form"] = lsi::chat_ratio_form(density);
  return {j.dump(2) + "\n"};
}

DiscreteMeasure order_sample(const RunConfig& cfg, std::ostream& err) {
  if (cfg.input && std::filesystem::path(*cfg.input).extension() != ".json") {
    return io::read_discrete(*cfg.input);
  }
  const auto density = load_density(cfg, err);
  const auto v = log_gradient(density);
  return pushforward_sample(
      density, [&](double x) { return interpolate(density, v, x); }, cfg.samples, cfg.seed);
}

Output cmd_order(const RunConfig& cfg, std::ostream& err) {
  const auto nu = order_sample(cfg, err);
  OrderOptions opts;
  opts.n_dirs = cfg.n_dirs;
  opts.n_alphas = cfg.n_alphas;
  opts.seed = cfg.seed;
  const double c_min = minimal_dominating_c(nu, opts);
  const double c = cfg.c.value_or(c_min > 0.0 ? c_min * (1.0 + 1e-9) : 1.0);
  const auto cert = order_check(nu, c, opts);
  const int status = cert.dominated ? kExitOk : kExitViolation;
  if (cfg.format == Format::csv) {
    std::string alpha = cert.witness ? number(cert.witness->alpha) : "";
    return {report::csv({"c", "dominated", "worst_ratio", "minimal_c", "witness_alpha"},
                        {{number(c), bool_cell(cert.dominated), number(cert.worst_ratio),
                          number(c_min), alpha}}),
            status};
  }
  json j;
  j["command"] = "order";
  j["measure"] = measure_name(cfg);
  j["atoms"] = nu.size();
  j["dim"] = nu.dim();
  j["seed"] = cfg.seed;
  j["certificate"] = report::to_json(cert);
  j["minimal_c"] = c_min;
  j["c_from_minimal"] = !cfg.c.has_value();
  return {j.dump(2) + "\n", status};
}

std::vector<double> weight_for(const std::string& kind, const GridDensity1D& density) {
  if (kind == "identity") return std::vector<double>(density.size(), 1.0);
  if (kind == "kbar") return lsi::kbar(density);
  if (kind == "khat") return lsi::khat(density);
  throw input_error("weight", "expected identity, kbar or khat");
}

Output cmd_verify(const RunConfig& cfg, std::ostream& err) {
  const auto density = load_density(cfg, err);
  const double c = cfg.c.value_or(1.0);
  const auto K = weight_for(cfg.weight, density);
  const auto win = lsi::trusted_window(density);
  const double lo = density.x(win.first);
  const double hi = density.x(win.last);
  const auto bumps = verify::bump_family(cfg.seed, cfg.trials, lo, hi);
  const auto tests = verify::sample(bumps, density);

  const double mid = 0.5 * (lo + hi);
  const double quarter = 0.25 * (hi - lo);
  const auto sets = verify::interval_family(cfg.seed + 1, std::max<std::size_t>(1, cfg.trials / 5),
                                            mid - quarter, mid + quarter);
  const std::vector<double> shifts = {-1.0, -0.3, 0.3, 1.0};

  std::vector<verify::InequalityReport> reps;
  reps.push_back(verify::functional_shift_check(density, K, c, tests, cfg.seed));
  reps.push_back(verify::iso_form_check(density, K, c, tests, cfg.seed));
  if (cfg.weight == "identity") {
    reps.push_back(verify::explicit_shift_check(density, c, shifts, sets, cfg.seed + 1));
  } else {
    reps.push_back(verify::flow_shift_check(density, K, c, shifts, sets, cfg.seed + 1));
  }
  reps.push_back(verify::inverse_lsi_check(density, K, c, tests, cfg.seed));

  double alpha = 1.0;
  if (cfg.weight == "kbar") {
    alpha = lsi::lsi_constants(K, density, lsi::WeightKind::kbar).alpha;
  } else if (cfg.weight == "identity") {
    alpha = lsi::bakry_emery_check(identity_weight(density), density).alpha_max;
  }
  std::optional<std::string> lsi_skipped;
  if (alpha > 0.0) {
    reps.push_back(verify::lsi_check(density, K, alpha, tests, cfg.seed));
  } else {
    lsi_skipped = "weight condition constant alpha = " + number(alpha) + " is not positive";
    err << "note: lsi check skipped, " << *lsi_skipped << "\n";
  }

  const bool violated =
      std::any_of(reps.begin(), reps.end(), [](const auto& r) { return r.violated; });
  const int status = violated ? kExitViolation : kExitOk;
  if (cfg.format == Format::csv) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : reps) {
      rows.push_back({r.name, std::to_string(r.trials), number(r.worst_margin),
                      bool_cell(r.violated), bool_cell(r.inconclusive), number(r.error_estimate),
                      std::to_string(r.seed), r.witness ? r.witness->label : ""});
    }
    return {report::csv({"name", "trials", "worst_margin", "violated", "inconclusive",
                         "error_estimate", "seed", "witness"},
                        rows),
            status};
  }
  json j;
  j["command"] = "verify";
  j["measure"] = measure_name(cfg);
  j["weight"] = cfg.weight;
  j["c"] = c;
  j["lsi_alpha"] = alpha;
  if (lsi_skipped) j["lsi_skipped"] = *lsi_skipped;
  j["violated"] = violated;
  j["reports"] = json::array();
  for (const auto& r : reps) j["reports"].push_back(report::to_json(r));
  return {j.dump(2) + "\n", status};
}

Output cmd_puncture_sweep(const RunConfig& cfg, std::ostream& err) {
  std::vector<std::vector<std::string>> rows;
  json jrows = json::array();
  double max_c = 0.0;
  for (double R : cfg.R) {
    if (!(R >= 0.0)) throw input_error("R", "values must be >= 0");
    const auto density = verify::puncture_measure(R);
    const auto consts = lsi::lsi_constants(density, lsi::WeightKind::khat);
    const double C = verify::puncture_constant(R);
    max_c = std::max(max_c, consts.c_classical);
    rows.push_back({number(R), number(C), number(consts.beta), number(consts.c_classical)});
    jrows.push_back({{"R", R},
                     {"C_R", C},
                     {"sup_khat", consts.beta},
                     {"c_hat", consts.c_classical},
                     {"mass", density.mass()}});
  }
  if (cfg.format == Format::csv) {
    err << "max_c_hat," << number(max_c) << "\n";
    return {report::csv({"R", "C_R", "sup_khat", "c_hat"}, rows)};
  }
  json j;
  j["command"] = "puncture-sweep";
  j["rows"] = jrows;
  j["max_c_hat"] = max_c;
  return {j.dump(2) + "\n"};
}

Output cmd_example1(const RunConfig& cfg, std::ostream&) {
  const double R = cfg.R.size() == 1 ? cfg.R.front() : 3.0;
  const auto density = verify::example1_density(cfg.a, cfg.b, R, cfg.amplitude);
  const auto v = log_gradient(density);
  const auto dv = derivative(v, density.step());
  const auto K = lsi::kbar(density);
  const auto consts = lsi::lsi_constants(K, density, lsi::WeightKind::kbar);
  const auto win = lsi::trusted_window(density);
  double min_curv = INFINITY;
  double inf_outside = INFINITY;
  for (std::size_t i = win.first; i <= win.last; ++i) {
    min_curv = std::min(min_curv, -dv[i]);
    if (std::abs(density.x(i)) > R) inf_outside = std::min(inf_outside, K[i]);
  }
  const std::size_t stride = std::max<std::size_t>(1, cfg.stride);
  if (cfg.format == Format::csv) {
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < density.size(); i += stride) {
      rows.push_back({number(density.x(i)), number(density.values()[i]), number(v[i]),
                      number(-dv[i]), number(K[i])});
    }
    return {report::csv({"x", "p", "v", "curvature", "kbar"}, rows)};
  }
  json prof = {{"x", json::array()}, {"p", json::array()}, {"v", json::array()},
               {"curvature", json::array()}, {"kbar", json::array()}};
  for (std::size_t i = 0; i < density.size(); i += stride) {
    prof["x"].push_back(density.x(i));
    prof["p"].push_back(density.values()[i]);
    prof["v"].push_back(v[i]);
    prof["curvature"].push_back(-dv[i]);
    prof["kbar"].push_back(K[i]);
  }
  json j;
  j["command"] = "example1";
  j["parameters"] = {{"a", cfg.a}, {"b", cfg.b}, {"R", R}, {"amplitude", cfg.amplitude}};
  j["grid"] = grid_json(density);
  j["min_curvature"] = min_curv;
  j["inf_kbar_outside_R"] = inf_outside;
  j["kbar"] = report::to_json(consts);
  j["profile"] = prof;
  return {j.dump(2) + "\n"};
}

Output dispatch(const RunConfig& cfg, std::ostream& err) {
  switch (cfg.command) {
    case Command::constants: return cmd_constants(cfg, err);
    case Command::order: return cmd_order(cfg, err);
    case Command::verify: return cmd_verify(cfg, err);
    case Command::puncture_sweep: return cmd_puncture_sweep(cfg, err);
    case Command::example1: return cmd_example1(cfg, err);
  }
  throw std::logic_error("unhandled command");
}

void validate(const RunConfig& cfg) {
  if (cfg.c && !(*cfg.c > 0.0)) throw input_error("c", "must be positive");
  if (cfg.trials == 0) throw input_error("trials", "must be positive");
  if (cfg.samples == 0) throw input_error("samples", "must be positive");
  if (cfg.n && *cfg.n < 3) throw input_error("n", "need at least 3 nodes");
  if (cfg.x_min && cfg.x_max && !(*cfg.x_max > *cfg.x_min)) {
    throw input_error("xmax", "must exceed xmin");
  }
  if (cfg.weight != "identity" && cfg.weight != "kbar" && cfg.weight != "khat") {
    throw input_error("weight", "expected identity, kbar or khat");
  }
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  Output res;
  try {
    validate(config);
    res = dispatch(config, err);
  } catch (const input_error& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const invalid_density& e) {
    err << "input error: density: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::invalid_argument& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  if (config.out) {
    std::ofstream file(*config.out, std::ios::binary);
    if (!file) {
      err << "input error: out: cannot write '" << *config.out << "'\n";
      return kExitInputError;
    }
    file << res.body;
  } else {
    out << res.body;
  }
  return res.status;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  const std::map<std::string, Command> commands = {{"constants", Command::constants},
                                                   {"order", Command::order},
                                                   {"verify", Command::verify},
                                                   {"puncture-sweep", Command::puncture_sweep},
                                                   {"example1", Command::example1}};
  const std::map<std::string, Format> formats = {{"json", Format::json}, {"csv", Format::csv}};

  RunConfig cfg;
  std::string positional;
  std::string flag_command;
  CLI::App app{"Lift-zonoid order tests, log-Sobolev weights and inequality checks"};
  app.add_option("COMMAND", positional, "constants | order | verify | puncture-sweep | example1");
  app.add_option("--command", flag_command, "Command, as an alternative to the positional form");
  app.add_option("--input", cfg.input, "Density (.json/.csv) or discrete measure (.csv) file");
  app.add_option("--measure", cfg.measure, "Built-in law: gaussian, uniform, exp1, laplace");
  app.add_option("--xmin", cfg.x_min, "Grid left end for built-in laws");
  app.add_option("--xmax", cfg.x_max, "Grid right end for built-in laws");
  app.add_option("--n", cfg.n, "Grid size for built-in laws");
  app.add_option("--c", cfg.c, "Gaussian scale c");
  app.add_option("--seed", cfg.seed, "Random seed");
  app.add_option("--out", cfg.out, "Output file (default stdout)");
  app.add_option("--format", cfg.format, "json | csv")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  app.add_option("--R", cfg.R, "Comma-separated radii")->delimiter(',');
  app.add_option("--trials", cfg.trials, "Number of test functions");
  app.add_option("--weight", cfg.weight, "identity | kbar | khat");
  app.add_option("--samples", cfg.samples, "Sample size for order tests");
  app.add_option("--dirs", cfg.n_dirs, "Directions for d >= 2 order tests");
  app.add_option("--alphas", cfg.n_alphas, "Alpha grid size for order tests");
  app.add_option("--a", cfg.a, "example1: upper drift constant a");
  app.add_option("--b", cfg.b, "example1: lower drift constant b");
  app.add_option("--amplitude", cfg.amplitude, "example1: oscillation amplitude");
  app.add_option("--stride", cfg.stride, "example1: profile stride");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInputError;
  }
  if (!positional.empty() && !flag_command.empty() && positional != flag_command) {
    err << "input error: command: positional and --command disagree\n";
    return kExitInputError;
  }
  const std::string name = positional.empty() ? flag_command : positional;
  const auto it = commands.find(name);
  if (it == commands.end()) {
    err << "input error: command: expected one of constants, order, verify, puncture-sweep, "
           "example1\n";
    return kExitInputError;
  }
  cfg.command = it->second;
  return run(cfg, out, err);
}

}  // namespace lzineq::cli

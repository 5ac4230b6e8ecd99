#include "lzineq/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lzineq/errors.hpp"

namespace lzineq::io {
namespace {

using json = nlohmann::json;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::optional<double> parse_number(std::string_view s) {
  const std::string t = trim(s);
  if (t.empty()) return std::nullopt;
  const char* first = t.data();
  if (*first == '+') ++first;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(first, t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size()) return std::nullopt;
  return v;
}

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.emplace_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

// Numeric CSV rows; a leading non-numeric line is dropped as a header.
std::vector<std::vector<double>> read_rows(std::string_view text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  bool first_content = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty() || trim(line).front() == '#') continue;
    const auto cells = split(line, ',');
    std::vector<double> row;
    row.reserve(cells.size());
    std::optional<std::size_t> bad;
    for (std::size_t k = 0; k < cells.size(); ++k) {
      const auto v = parse_number(cells[k]);
      if (!v) {
        bad = k;
        break;
      }
      row.push_back(*v);
    }
    if (bad) {
      if (first_content) {
        first_content = false;
        continue;
      }
      throw input_error("line " + std::to_string(line_no) + " column " + std::to_string(*bad + 1),
                        "not a number: '" + trim(cells[*bad]) + "'");
    }
    first_content = false;
    rows.push_back(std::move(row));
  }
  return rows;
}

double require_number(const json& obj, const char* key) {
  if (!obj.contains(key)) throw input_error(key, "missing");
  const auto& v = obj.at(key);
  if (!v.is_number()) throw input_error(key, "must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw input_error(key, "must be finite");
  return x;
}

std::vector<double> require_array(const json& obj, const char* key) {
  if (!obj.contains(key)) throw input_error(key, "missing");
  const auto& arr = obj.at(key);
  if (!arr.is_array()) throw input_error(key, "must be an array of numbers");
  std::vector<double> out;
  out.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number()) {
      throw input_error(std::string(key) + "[" + std::to_string(i) + "]", "must be a number");
    }
    out.push_back(arr[i].get<double>());
  }
  return out;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("input", "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

GridDensity1D parse_density_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw input_error("json", e.what());
  }
  if (!doc.is_object()) throw input_error("json", "top level must be an object");
  const double x_min = require_number(doc, "x_min");
  const double x_max = require_number(doc, "x_max");
  if (!(x_max > x_min)) throw input_error("x_max", "must exceed x_min");
  auto values = require_array(doc, "values");
  if (values.size() < 3) throw input_error("values", "need at least 3 samples");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i]) || values[i] < 0.0) {
      throw input_error("values[" + std::to_string(i) + "]", "must be finite and >= 0");
    }
  }
  std::vector<double> logs;
  if (doc.contains("log_values")) {
    logs = require_array(doc, "log_values");
    if (logs.size() != values.size()) throw input_error("log_values", "length differs from values");
  }
  return GridDensity1D(x_min, x_max, std::move(values), std::move(logs));
}

GridDensity1D parse_density_csv(std::string_view text) {
  const auto rows = read_rows(text);
  if (rows.size() < 3) throw input_error("rows", "need at least 3 samples");
  std::vector<double> values;
  values.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != 2) {
      throw input_error("row " + std::to_string(i + 1), "expected two columns x,p");
    }
    if (!std::isfinite(rows[i][1]) || rows[i][1] < 0.0) {
      throw input_error("p (row " + std::to_string(i + 1) + ")", "must be finite and >= 0");
    }
    values.push_back(rows[i][1]);
  }
  const double x_min = rows.front()[0];
  const double x_max = rows.back()[0];
  if (!(x_max > x_min)) throw input_error("x", "grid must be increasing");
  const double h = (x_max - x_min) / static_cast<double>(rows.size() - 1);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double expected = x_min + static_cast<double>(i) * h;
    if (std::abs(rows[i][0] - expected) > 1e-6 * h) {
      throw input_error("x (row " + std::to_string(i + 1) + ")", "grid is not uniform");
    }
  }
  return GridDensity1D(x_min, x_max, std::move(values));
}

DiscreteMeasure parse_discrete_csv(std::string_view text) {
  const auto rows = read_rows(text);
  if (rows.empty()) throw input_error("rows", "no atoms");
  const std::size_t cols = rows.front().size();
  if (cols < 2) throw input_error("row 1", "expected coordinates followed by a weight");
  std::vector<double> coords;
  std::vector<double> weights;
  double total = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) {
      throw input_error("row " + std::to_string(i + 1),
                        "expected " + std::to_string(cols) + " columns");
    }
    const double w = rows[i].back();
    if (!std::isfinite(w) || !(w > 0.0)) {
      throw input_error("weight (row " + std::to_string(i + 1) + ")", "must be positive");
    }
    coords.insert(coords.end(), rows[i].begin(), rows[i].end() - 1);
    weights.push_back(w);
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-6) throw input_error("weight", "weights do not sum to 1");
  return DiscreteMeasure(cols - 1, std::move(coords), std::move(weights), true);
}

GridDensity1D read_density(const std::filesystem::path& path) {
  const std::string text = slurp(path);
  const auto ext = path.extension().string();
  if (ext == ".json") return parse_density_json(text);
  if (ext == ".csv") return parse_density_csv(text);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return parse_density_json(text);
  return parse_density_csv(text);
}

DiscreteMeasure read_discrete(const std::filesystem::path& path) {
  return parse_discrete_csv(slurp(path));
}

}  // namespace lzineq::io

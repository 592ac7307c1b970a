#include "blochmle/io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fmt/format.h>
#include <json.hpp>
#include <vector>

#include "blochmle/infogeo.hpp"

namespace blochmle {
namespace {

using ordered_json = nlohmann::ordered_json;

std::int64_t count_field(const nlohmann::json& record, std::size_t index, const char* key) {
  const std::string where = fmt::format("axes[{}].{}", index, key);
  if (!record.contains(key)) throw CountsFormatError(where + ": missing");
  const auto& v = record.at(key);
  if (!v.is_number_integer()) throw CountsFormatError(where + ": expected an integer");
  const auto n = v.get<std::int64_t>();
  if (n < 0) throw CountsFormatError(where + ": must be nonnegative");
  return n;
}

// Shared validation of the parsed (axis, n_plus, n_minus) rows.
CountRecord assemble(const std::vector<std::array<std::int64_t, 3>>& rows, const char* container) {
  if (rows.size() != kAxes) {
    throw CountsFormatError(fmt::format("{}: expected exactly 3 records, found {}", container,
                                        rows.size()));
  }
  std::array<AxisCounts, kAxes> axes{};
  std::array<bool, kAxes> seen{};
  for (const auto& [axis, plus, minus] : rows) {
    const auto i = static_cast<std::size_t>(axis - 1);
    if (seen[i]) throw CountsFormatError(fmt::format("axis: {} appears more than once", axis));
    seen[i] = true;
    if (plus + minus < 1) {
      throw CountsFormatError(fmt::format("n_plus/n_minus: axis {} has no measurements", axis));
    }
    axes[i] = AxisCounts{plus, minus};
  }
  return CountRecord(axes);
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::int64_t parse_int(std::string_view field, std::size_t line, const char* column) {
  field = trim(field);
  std::int64_t value = 0;
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (field.empty() || ec != std::errc{} || ptr != end) {
    throw CountsFormatError(fmt::format("line {}: {}: expected an integer", line, column));
  }
  return value;
}

std::string real_array(const std::array<double, 3>& v) {
  return fmt::format("[{}, {}, {}]", format_real(v[0]), format_real(v[1]), format_real(v[2]));
}

}  // namespace

std::string format_real(double value) { return fmt::format("{:.17g}", value); }

CountRecord parse_counts_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw CountsFormatError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("axes")) throw CountsFormatError("axes: missing");
  const auto& axes = doc.at("axes");
  if (!axes.is_array()) throw CountsFormatError("axes: expected an array");

  std::vector<std::array<std::int64_t, 3>> rows;
  for (std::size_t k = 0; k < axes.size(); ++k) {
    const auto& record = axes[k];
    if (!record.is_object()) throw CountsFormatError(fmt::format("axes[{}]: expected an object", k));
    if (!record.contains("axis")) throw CountsFormatError(fmt::format("axes[{}].axis: missing", k));
    const auto& axis = record.at("axis");
    if (!axis.is_number_integer() || axis.get<std::int64_t>() < 1 || axis.get<std::int64_t>() > 3) {
      throw CountsFormatError(fmt::format("axes[{}].axis: expected 1, 2 or 3", k));
    }
    rows.push_back({axis.get<std::int64_t>(), count_field(record, k, "n_plus"),
                    count_field(record, k, "n_minus")});
  }
  return assemble(rows, "axes");
}

CountRecord parse_counts_csv(std::string_view text) {
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const auto line = trim(text.substr(0, nl));
    if (!line.empty()) lines.push_back(line);
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  if (lines.empty() || lines.front() != "axis,n_plus,n_minus") {
    throw CountsFormatError("header: expected 'axis,n_plus,n_minus'");
  }

  std::vector<std::array<std::int64_t, 3>> rows;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    std::array<std::string_view, 3> fields;
    std::string_view rest = lines[k];
    std::size_t n = 0;
    for (; n < 3 && !rest.empty(); ++n) {
      const auto comma = rest.find(',');
      fields[n] = rest.substr(0, comma);
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    }
    if (n != 3 || !rest.empty()) {
      throw CountsFormatError(fmt::format("line {}: expected 3 fields", k + 1));
    }
    const auto axis = parse_int(fields[0], k + 1, "axis");
    if (axis < 1 || axis > 3) throw CountsFormatError(fmt::format("line {}: axis: expected 1, 2 or 3", k + 1));
    const auto plus = parse_int(fields[1], k + 1, "n_plus");
    const auto minus = parse_int(fields[2], k + 1, "n_minus");
    if (plus < 0) throw CountsFormatError(fmt::format("line {}: n_plus: must be nonnegative", k + 1));
    if (minus < 0) throw CountsFormatError(fmt::format("line {}: n_minus: must be nonnegative", k + 1));
    rows.push_back({axis, plus, minus});
  }
  return assemble(rows, "rows");
}

CountRecord parse_counts(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') return parse_counts_json(text);
  return parse_counts_csv(text);
}

std::string format_counts(const CountRecord& counts, CountsFormat format) {
  if (format == CountsFormat::csv) {
    std::string out = "axis,n_plus,n_minus\n";
    for (std::size_t i = 0; i < kAxes; ++i) {
      out += fmt::format("{},{},{}\n", i + 1, counts.axis(i).n_plus, counts.axis(i).n_minus);
    }
    return out;
  }
  ordered_json doc;
  doc["axes"] = ordered_json::array();
  for (std::size_t i = 0; i < kAxes; ++i) {
    ordered_json record;
    record["axis"] = i + 1;
    record["n_plus"] = counts.axis(i).n_plus;
    record["n_minus"] = counts.axis(i).n_minus;
    doc["axes"].push_back(record);
  }
  return doc.dump(2) + "\n";
}

EstimateReport make_estimate_report(const CountRecord& counts,
                                    const std::optional<OracleConfig>& oracle) {
  const auto [xi_hat, s] = temporal_estimate(counts);
  EstimateReport report{xi_hat, s, std::sqrt(norm_squared(xi_hat)), project_mle(xi_hat, s), 0.0,
                        std::nullopt};
  report.kl_divergence = sliced_divergence(xi_hat, report.projection.xi_star, s);
  if (oracle) {
    const auto xi = oracle_mle(xi_hat, s, *oracle);
    double d = 0.0;
    for (std::size_t i = 0; i < kAxes; ++i) d = std::max(d, std::abs(xi[i] - report.projection.xi_star[i]));
    report.oracle = OracleComparison{xi, d};
  }
  return report;
}

std::string to_json(const EstimateReport& r) {
  const auto& p = r.projection;
  std::string out = "{\n";
  out += fmt::format("  \"temporal_estimate\": {},\n", real_array(r.temporal.values()));
  out += fmt::format("  \"weights\": {},\n", real_array(r.weights.values()));
  out += fmt::format("  \"norm\": {},\n", format_real(r.norm));
  out += fmt::format("  \"was_projected\": {},\n", p.was_projected);
  out += fmt::format("  \"mle\": {},\n", real_array(p.xi_star.values()));
  out += fmt::format("  \"lambda\": {},\n", p.lambda_star ? format_real(*p.lambda_star) : "null");
  out += fmt::format("  \"norm_residual\": {},\n", format_real(p.norm_residual));
  out += fmt::format("  \"equation_residuals\": {},\n", real_array(p.equation_residuals));
  out += fmt::format("  \"iterations\": {},\n", p.iterations);
  out += fmt::format("  \"kl_divergence\": {}", format_real(r.kl_divergence));
  if (r.oracle) {
    out += fmt::format(",\n  \"oracle\": {{\n    \"mle\": {},\n    \"max_discrepancy\": {}\n  }}",
                       real_array(r.oracle->xi.values()), format_real(r.oracle->max_discrepancy));
  }
  out += "\n}\n";
  return out;
}

}  // namespace blochmle

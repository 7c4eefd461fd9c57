#pragma once

#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "nonlocality/embeddings/embedding.hpp"
#include "nonlocality/error.hpp"
#include "nonlocality/io/scaling.hpp"

namespace nonlocality {

using Json = nlohmann::json;

namespace detail {

inline void format_double(std::string& out, double v) {
  if (!std::isfinite(v)) {
    out += "null";
    return;
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  out += buf;
  // Keep a marker that this was a real number so re-parsing is type-stable.
  const std::string_view s(buf);
  if (s.find_first_of(".eEn") == std::string_view::npos) out += ".0";
}

inline void emit(std::string& out, const Json& j, int indent, int depth) {
  const auto newline = [&](int d) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case Json::value_t::null: out += "null"; return;
    case Json::value_t::boolean: out += j.get<bool>() ? "true" : "false"; return;
    case Json::value_t::number_integer: out += std::to_string(j.get<std::int64_t>()); return;
    case Json::value_t::number_unsigned: out += std::to_string(j.get<std::uint64_t>()); return;
    case Json::value_t::number_float: format_double(out, j.get<double>()); return;
    case Json::value_t::string: out += Json(j.get<std::string>()).dump(); return;
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      bool first = true;
      for (const auto& item : j) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        emit(out, item, indent, depth + 1);
      }
      newline(depth);
      out += ']';
      return;
    }
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      // nlohmann's default object type is an ordered std::map, so keys come out sorted.
      out += '{';
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += Json(key).dump();
        out += indent < 0 ? ":" : ": ";
        emit(out, value, indent, depth + 1);
      }
      newline(depth);
      out += '}';
      return;
    }
    default: out += "null"; return;
  }
}

}  // namespace detail

// Sorted keys, doubles at 12 significant digits, non-finite values as null.
inline std::string emit_json(const Json& j, int indent = 2) {
  std::string out;
  detail::emit(out, j, indent, 0);
  out += '\n';
  return out;
}

inline Json optional_number(const std::optional<double>& v) {
  if (!v || !std::isfinite(*v)) return nullptr;
  return *v;
}

// Per-size metric records plus fitted exponents of chosen metrics against n.
struct RunReport {
  Json inputs = Json::object();
  std::vector<Json> records;
  std::vector<std::string> fit_metrics;
  std::string fit_against = "n";
  Json summary = Json::object();  // whole-run values; emitted only when non-empty
};

inline Json fit_json(const std::vector<Json>& records, const std::string& x_key, const std::string& y_key) {
  std::vector<double> xs, ys;
  for (const auto& r : records) {
    if (!r.contains(x_key) || !r.contains(y_key) || !r[x_key].is_number() || !r[y_key].is_number()) continue;
    xs.push_back(r[x_key].get<double>());
    ys.push_back(r[y_key].get<double>());
  }
  if (xs.size() < 3) return Json{{"omitted", "needs >= 3 sizes"}, {"points", xs.size()}};
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > 0) || !(ys[i] > 0)) return Json{{"omitted", "non-positive values"}, {"points", xs.size()}};
  }
  const auto fit = fit_scaling(xs, ys);
  return Json{{"exponent", fit.exponent}, {"prefactor", fit.prefactor}, {"residual", fit.residual},
              {"points", fit.points}};
}

inline Json to_json(const RunReport& report) {
  Json fits = Json::object();
  for (const auto& metric : report.fit_metrics) fits[metric] = fit_json(report.records, report.fit_against, metric);
  Json records = Json::array();
  for (const auto& r : report.records) records.push_back(r);
  Json out{{"inputs", report.inputs}, {"records", records}, {"fits", fits}};
  if (!report.summary.empty()) out["summary"] = report.summary;
  return out;
}

inline std::string emit_report(const RunReport& report) { return emit_json(to_json(report)); }

// One row per record, columns = the union of scalar keys, sorted.
inline std::string metrics_csv(const std::vector<Json>& records) {
  std::set<std::string> columns;
  for (const auto& r : records) {
    for (const auto& [key, value] : r.items()) {
      if (value.is_primitive()) columns.insert(key);
    }
  }
  std::string out;
  bool first = true;
  for (const auto& c : columns) {
    out += first ? "" : ",";
    out += c;
    first = false;
  }
  out += '\n';
  for (const auto& r : records) {
    first = true;
    for (const auto& c : columns) {
      out += first ? "" : ",";
      first = false;
      if (!r.contains(c) || r[c].is_null()) continue;
      const auto& v = r[c];
      if (v.is_string()) {
        out += v.get<std::string>();
      } else if (v.is_number_float()) {
        detail::format_double(out, v.get<double>());
      } else {
        detail::emit(out, v, -1, 0);
      }
    }
    out += '\n';
  }
  return out;
}

inline std::string histogram_csv(const std::vector<HistogramBin>& bins) {
  std::string out = "bin_lo,bin_hi,count\n";
  char buf[96];
  for (const auto& b : bins) {
    std::snprintf(buf, sizeof buf, "%.12g,%.12g,%zu\n", b.lo, b.hi, b.count);
    out += buf;
  }
  return out;
}

}  // namespace nonlocality

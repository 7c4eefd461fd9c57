#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "nonlocality/codes/stabilizer_code.hpp"
#include "nonlocality/embeddings/embedding.hpp"
#include "nonlocality/error.hpp"

namespace nonlocality {

// One lower-bound claim evaluated with every hidden constant set to 1 and
// natural logs. Count claims compare the number of edges at least
// required_length long against required_count; moment claims compare
// observed_value (the delta_p sum) against required_value.
struct BoundAudit {
  std::string claim;
  bool evaluated = true;
  double required_count = 0;
  double required_length = 0;
  double required_length_no_log = 0;
  std::size_t observed_count = 0;
  std::size_t observed_count_no_log = 0;
  double required_value = 0;
  double observed_value = 0;
  std::optional<double> ratio;  // observed / required; absent when required is 0
  bool violation = false;
};

namespace detail {

inline std::optional<double> safe_ratio(double observed, double required) {
  if (!(required > 0) || !std::isfinite(required)) return std::nullopt;
  return observed / required;
}

inline BoundAudit count_audit(std::string claim, double count, double length, double length_no_log,
                              const EdgeLengthProfile& profile) {
  BoundAudit a;
  a.claim = std::move(claim);
  a.required_count = count;
  a.required_length = length;
  a.required_length_no_log = length_no_log;
  a.observed_count = profile.count_at_least(length);
  a.observed_count_no_log = profile.count_at_least(length_no_log);
  a.ratio = safe_ratio(static_cast<double>(a.observed_count), count);
  a.violation = static_cast<double>(a.observed_count) < count;
  return a;
}

}  // namespace detail

// The three count/length claims for a code laid out in D dimensions.
inline std::vector<BoundAudit> audit_theorem_main(const CodeParams& params, const EdgeLengthProfile& profile,
                                                  std::size_t dimension, double alpha = 0.5) {
  if (params.n < 2) throw Error("audit needs n >= 2");
  if (dimension < 1) throw Error("dimension must be positive");
  if (!(alpha > 0 && alpha < 1)) throw Error("alpha must lie in (0, 1)");
  const double n = static_cast<double>(params.n);
  const double k = static_cast<double>(params.k);
  const double d = static_cast<double>(params.d.value);
  const double D = static_cast<double>(dimension);
  const double ln = std::log(n);
  const double d_root = std::pow(d, 1.0 / D);
  std::vector<BoundAudit> out;

  const double spread = std::pow(n, (D - 1.0) / D);
  out.push_back(detail::count_audit("thm1-c1", d, d / (spread * ln), d / spread, profile));

  const double f2 = std::sqrt(k / (n * ln * ln));
  const double f2_no_log = std::sqrt(k / n);
  out.push_back(detail::count_audit("thm1-c2", f2 * d, f2 * d_root / ln, f2_no_log * d_root, profile));

  const bool applies = k * std::pow(d, 2.0 / D) >= n * ln * ln / (1.0 - alpha);
  if (applies && d > 1) {
    const double f3 = std::sqrt((1.0 - alpha) * k / (n * ln * ln));
    const double f3_no_log = std::sqrt((1.0 - alpha) * k / n);
    const double count = std::pow(f3, ln / std::log(d)) * alpha * k;
    out.push_back(detail::count_audit("thm1-c3", count, f3 * d_root / ln, f3_no_log * d_root, profile));
  } else {
    BoundAudit skipped;
    skipped.claim = "thm1-c3";
    skipped.evaluated = false;
    skipped.observed_count = profile.lengths.size();
    skipped.observed_count_no_log = profile.lengths.size();
    out.push_back(skipped);
  }
  return out;
}

// Lower bounds on delta_p: d^{p+1} / (n^{p(D-1)/D} ln^p n) and
// (k/n)^{(1+p)/2} d^{1+p/D} / ln^p n.
inline std::vector<BoundAudit> audit_moment_bounds(const CodeParams& params, const MomentReport& report,
                                                   std::size_t dimension, std::size_t n_override = 0) {
  const std::size_t n_count = n_override == 0 ? params.n : n_override;
  if (n_count < 2) throw Error("audit needs n >= 2");
  const double n = static_cast<double>(n_count);
  const double k = static_cast<double>(params.k);
  const double d = static_cast<double>(params.d.value);
  const double D = static_cast<double>(dimension);
  const double p = report.p;
  const double ln_p = std::pow(std::log(n), p);
  const double bound1 = std::pow(d, p + 1) / (std::pow(n, p * (D - 1) / D) * ln_p);
  const double bound2 = std::pow(k / n, (1 + p) / 2) * std::pow(d, 1 + p / D) / ln_p;
  std::vector<BoundAudit> out;
  for (const auto& [claim, bound] : {std::pair{"moment-1", bound1}, std::pair{"moment-2", bound2}}) {
    BoundAudit a;
    a.claim = claim;
    a.required_value = bound;
    a.observed_value = report.delta_p;
    a.ratio = detail::safe_ratio(report.delta_p, bound);
    a.violation = report.delta_p < bound;
    out.push_back(std::move(a));
  }
  return out;
}

inline bool any_violation(const std::vector<BoundAudit>& audits) {
  for (const auto& a : audits) {
    if (a.evaluated && a.violation) return true;
  }
  return false;
}

}  // namespace nonlocality

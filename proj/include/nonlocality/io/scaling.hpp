#pragma once

#include <cmath>
#include <span>
#include <string>

#include "nonlocality/error.hpp"

namespace nonlocality {

struct ScalingFit {
  double exponent = 0;
  double prefactor = 0;  // y ~ prefactor * x^exponent
  double residual = 0;   // root-mean-square error of the log-log line
  std::size_t points = 0;
};

// Least-squares line through (ln x, ln y).
inline ScalingFit fit_scaling(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw Error("fit_scaling: xs and ys differ in length");
  if (xs.size() < 3) throw Error("fit_scaling needs at least 3 points");
  const auto m = static_cast<double>(xs.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > 0) || !(ys[i] > 0)) throw Error("fit_scaling needs positive values");
    sx += std::log(xs[i]);
    sy += std::log(ys[i]);
  }
  const double mx = sx / m, my = sy / m;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = std::log(xs[i]) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(ys[i]) - my);
  }
  if (!(sxx > 0)) throw Error("fit_scaling needs at least two distinct x values");
  ScalingFit fit;
  fit.points = xs.size();
  fit.exponent = sxy / sxx;
  const double intercept = my - fit.exponent * mx;
  fit.prefactor = std::exp(intercept);
  double sse = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = std::log(ys[i]) - (intercept + fit.exponent * std::log(xs[i]));
    sse += e * e;
  }
  fit.residual = std::sqrt(sse / m);
  return fit;
}

}  // namespace nonlocality

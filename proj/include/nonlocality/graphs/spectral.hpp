#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "nonlocality/graphs/graph.hpp"
#include "nonlocality/rng.hpp"

namespace nonlocality {

struct LaplacianModes {
  std::vector<double> values;                // ascending, all-ones mode excluded
  std::vector<std::vector<double>> vectors;  // unit norm, orthogonal to all-ones
  bool converged = true;
  std::size_t iterations = 0;
};

struct SpectralOptions {
  double tolerance = 1e-8;  // residual, relative to the spectral shift
  std::size_t max_iterations = 100000;
  std::size_t extra_block = 4;
};

namespace detail {

inline void deflate_ones(Eigen::MatrixXd& x) {
  if (x.rows() == 0) return;
  const Eigen::RowVectorXd mean = x.colwise().mean();
  x.rowwise() -= mean;
}

inline Eigen::MatrixXd orthonormal_columns(const Eigen::MatrixXd& x) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(x);
  return qr.householderQ() * Eigen::MatrixXd::Identity(x.rows(), x.cols());
}

}  // namespace detail

// Smallest `count` Laplacian eigenpairs orthogonal to the all-ones vector.
// Block subspace iteration on cI - L (c = 2*max_degree + 1, so the shifted
// operator is positive definite) with Rayleigh-Ritz after every step. The
// start block comes from `seed`; results are sign-normalized.
inline LaplacianModes laplacian_low_modes(const Graph& g, std::size_t count, std::uint64_t seed,
                                          const SpectralOptions& options = {}) {
  LaplacianModes out;
  const std::size_t n = g.vertex_count();
  if (n < 2 || count == 0) return out;
  count = std::min(count, n - 1);
  const auto block = static_cast<Eigen::Index>(std::min(n - 1, count + options.extra_block));
  const auto rows = static_cast<Eigen::Index>(n);
  const double shift = 2.0 * static_cast<double>(g.max_degree()) + 1.0;

  auto apply = [&](const Eigen::MatrixXd& x) {
    Eigen::MatrixXd y(rows, x.cols());
    for (Vertex v = 0; v < n; ++v) {
      const auto iv = static_cast<Eigen::Index>(v);
      y.row(iv) = (shift - static_cast<double>(g.degree(v))) * x.row(iv);
      for (auto w : g.neighbors(v)) y.row(iv) += x.row(static_cast<Eigen::Index>(w));
    }
    return y;
  };

  Rng rng(seed);
  Eigen::MatrixXd x(rows, block);
  for (Eigen::Index j = 0; j < block; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) x(i, j) = rng.unit() - 0.5;
  }
  detail::deflate_ones(x);
  x = detail::orthonormal_columns(x);

  Eigen::VectorXd ritz;
  Eigen::MatrixXd ritz_vectors;
  out.converged = false;
  for (std::size_t it = 1; it <= options.max_iterations; ++it) {
    Eigen::MatrixXd w = apply(x);
    Eigen::MatrixXd t = x.transpose() * w;
    t = 0.5 * (t + t.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(t);
    // Eigen sorts ascending; the wanted modes are the largest of cI - L.
    const Eigen::MatrixXd v = solver.eigenvectors().rowwise().reverse();
    ritz = solver.eigenvalues().reverse();
    ritz_vectors = x * v;
    const Eigen::MatrixXd wv = w * v;
    out.iterations = it;

    bool done = true;
    for (std::size_t j = 0; j < count && done; ++j) {
      const auto jj = static_cast<Eigen::Index>(j);
      const double residual = (wv.col(jj) - ritz(jj) * ritz_vectors.col(jj)).norm();
      done = residual <= options.tolerance * shift;
    }
    if (done) {
      out.converged = true;
      break;
    }
    x = wv;
    detail::deflate_ones(x);
    x = detail::orthonormal_columns(x);
  }

  for (std::size_t j = 0; j < count; ++j) {
    const auto jj = static_cast<Eigen::Index>(j);
    Eigen::VectorXd vec = ritz_vectors.col(jj);
    Eigen::Index arg = 0;
    vec.cwiseAbs().maxCoeff(&arg);
    if (vec(arg) < 0) vec = -vec;
    out.values.push_back(std::max(0.0, shift - ritz(jj)));
    out.vectors.emplace_back(vec.data(), vec.data() + vec.size());
  }
  return out;
}

// Second-smallest Laplacian eigenvalue (0 for disconnected graphs).
inline double algebraic_connectivity(const Graph& g, std::uint64_t seed = 0) {
  const auto modes = laplacian_low_modes(g, 1, seed);
  return modes.values.empty() ? 0.0 : modes.values.front();
}

}  // namespace nonlocality

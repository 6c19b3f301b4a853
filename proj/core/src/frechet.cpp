// Copyright 2026 The VideoMerge Authors
// SPDX-License-Identifier: Apache-2.0

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "videomerge/error.hpp"
#include "videomerge/metrics.hpp"

namespace videomerge {

namespace {

struct Gaussian {
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;
};

Gaussian fit(const FeatureSet& samples, std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(samples.size());
  const auto d = static_cast<Eigen::Index>(dim);
  Eigen::MatrixXd x(n, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& row = samples[static_cast<std::size_t>(i)];
    if (row.size() != dim) {
      throw Error(Errc::invalid_input, "feature vectors differ in dimension");
    }
    for (Eigen::Index j = 0; j < d; ++j) x(i, j) = row[static_cast<std::size_t>(j)];
  }
  Gaussian g;
  g.mean = x.colwise().mean().transpose();
  const Eigen::MatrixXd centered = x.rowwise() - g.mean.transpose();
  g.cov = (centered.transpose() * centered) / static_cast<double>(n - 1);
  return g;
}

// Square root of a symmetric PSD matrix; tiny negative eigenvalues from
// rounding are clipped to zero.
Eigen::MatrixXd sqrt_psd(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m);
  const Eigen::VectorXd roots =
      eig.eigenvalues().unaryExpr([](double v) { return std::sqrt(std::max(v, 0.0)); });
  return eig.eigenvectors() * roots.asDiagonal() * eig.eigenvectors().transpose();
}

}  // namespace

double frechet_distance(const FeatureSet& a, const FeatureSet& b) {
  if (a.size() < 2 || b.size() < 2) {
    throw Error(Errc::insufficient_frames,
                "Frechet distance needs at least 2 samples per set");
  }
  const std::size_t dim = a.front().size();
  if (dim == 0 || b.front().size() != dim) {
    throw Error(Errc::invalid_input, "feature sets differ in dimension");
  }
  const Gaussian ga = fit(a, dim);
  const Gaussian gb = fit(b, dim);

  const Eigen::MatrixXd root_a = sqrt_psd(ga.cov);
  Eigen::MatrixXd inner = root_a * gb.cov * root_a;
  inner = 0.5 * (inner + inner.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(inner, Eigen::EigenvaluesOnly);
  double trace_cross = 0.0;
  for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) {
    trace_cross += std::sqrt(std::max(eig.eigenvalues()(i), 0.0));
  }
  const double mean_term = (ga.mean - gb.mean).squaredNorm();
  const double value =
      mean_term + ga.cov.trace() + gb.cov.trace() - 2.0 * trace_cross;
  return std::max(value, 0.0);
}

}  // namespace videomerge

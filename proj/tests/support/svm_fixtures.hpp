#pragma once

// Seeded tiny datasets for solver-vs-oracle comparisons.

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <vector>

#include "leadmine/features.hpp"
#include "leadmine/svm.hpp"

namespace leadmine_test {

struct TinyProblem {
  std::vector<leadmine::SparseVector> xs;
  std::vector<int> y;
  double c;
  double gamma;
};

inline leadmine::SparseVector dense_point(const std::vector<double>& v) {
  std::vector<leadmine::SparseEntry> e;
  for (std::uint32_t i = 0; i < v.size(); ++i)
    if (v[i] != 0.0) e.push_back({i, v[i]});
  return leadmine::SparseVector(v.size(), std::move(e));
}

/// 4 to 8 points in [-1, 1]^d (d = 2 or 3), both classes present.
inline TinyProblem tiny_problem(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto unit = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  TinyProblem p;
  const std::size_t n = 4 + rng() % 5, d = 2 + rng() % 2;
  static const double cs[] = {0.5, 1.0, 10.0, 100.0};
  static const double gs[] = {0.3, 1.0, 3.0};
  p.c = cs[rng() % 4];
  p.gamma = gs[rng() % 3];
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> v(d);
    for (auto& x : v) x = std::round((2.0 * unit() - 1.0) * 100.0) / 100.0;
    p.xs.push_back(dense_point(v));
    p.y.push_back(i == 0 ? 1 : i == 1 ? -1 : (rng() % 2 ? 1 : -1));
  }
  return p;
}

inline Eigen::MatrixXd kernel_matrix(const TinyProblem& p) {
  const auto n = static_cast<Eigen::Index>(p.xs.size());
  Eigen::MatrixXd k(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      k(i, j) = leadmine::rbf_kernel(p.xs[static_cast<std::size_t>(i)], p.xs[static_cast<std::size_t>(j)],
                                     {p.gamma});
  return k;
}

/// Largest KKT violation in units of y*f(x), given the solver's multipliers.
inline double kkt_violation(const std::vector<double>& alpha, const std::vector<double>& f,
                            const std::vector<int>& y, double c) {
  double worst = 0.0;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    const double m = y[i] * f[i];
    if (alpha[i] == 0.0) worst = std::max(worst, 1.0 - m);
    else if (alpha[i] == c) worst = std::max(worst, m - 1.0);
    else worst = std::max(worst, std::abs(m - 1.0));
  }
  return worst;
}

}  // namespace leadmine_test

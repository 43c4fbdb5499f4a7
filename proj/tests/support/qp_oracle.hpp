#pragma once

// Exhaustive soft-margin dual solver for tiny problems (n <= 8).
// Every multiplier is either at 0, at C, or free; for each of the 3^n
// assignments the free multipliers and the bias solve the KKT equalities
// exactly, and the feasible assignment with the largest dual objective wins.

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

namespace leadmine_test {

struct OracleSolution {
  std::vector<double> alpha;
  double bias = 0.0;
  double objective = -std::numeric_limits<double>::infinity();
};

/// K: dense kernel matrix; y: +-1 labels.
inline OracleSolution qp_oracle(const Eigen::MatrixXd& K, const std::vector<int>& y, double c) {
  const int n = static_cast<int>(y.size());
  if (n > 10) throw std::invalid_argument("oracle is exponential; keep n small");
  Eigen::MatrixXd Q(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) Q(i, j) = y[i] * y[j] * K(i, j);

  const double feas = 1e-10;
  OracleSolution best;
  std::vector<int> state(n, 0);  // 0: at zero, 1: at C, 2: free
  long total = 1;
  for (int i = 0; i < n; ++i) total *= 3;
  for (long code = 0; code < total; ++code) {
    long r = code;
    std::vector<int> free;
    for (int i = 0; i < n; ++i) {
      state[i] = static_cast<int>(r % 3);
      r /= 3;
      if (state[i] == 2) free.push_back(i);
    }
    Eigen::VectorXd alpha = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i)
      if (state[i] == 1) alpha(i) = c;
    double b = 0.0;
    const int m = static_cast<int>(free.size());
    if (m > 0) {
      // Rows: (Q alpha)_i + y_i b = 1 for free i; sum alpha_i y_i = 0.
      Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m + 1, m + 1);
      Eigen::VectorXd rhs(m + 1);
      for (int a = 0; a < m; ++a) {
        const int i = free[a];
        double fixed = 0.0;
        for (int j = 0; j < n; ++j)
          if (state[j] == 1) fixed += Q(i, j) * c;
        for (int bcol = 0; bcol < m; ++bcol) A(a, bcol) = Q(i, free[bcol]);
        A(a, m) = y[i];
        rhs(a) = 1.0 - fixed;
      }
      double fixed_eq = 0.0;
      for (int j = 0; j < n; ++j)
        if (state[j] == 1) fixed_eq += c * y[j];
      for (int bcol = 0; bcol < m; ++bcol) A(m, bcol) = y[free[bcol]];
      rhs(m) = -fixed_eq;
      Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
      if (!lu.isInvertible()) continue;
      const Eigen::VectorXd sol = lu.solve(rhs);
      bool ok = true;
      for (int a = 0; a < m; ++a) {
        if (!(sol(a) > feas && sol(a) < c - feas)) ok = false;
        alpha(free[a]) = sol(a);
      }
      if (!ok) continue;
      b = sol(m);
    } else {
      double eq = 0.0;
      for (int j = 0; j < n; ++j) eq += alpha(j) * y[j];
      if (std::abs(eq) > feas) continue;
    }
    const Eigen::VectorXd grad = Q * alpha - Eigen::VectorXd::Ones(n);
    if (m == 0) {
      // b must satisfy every bound condition; take the midpoint.
      double lo = -std::numeric_limits<double>::infinity(), hi = std::numeric_limits<double>::infinity();
      for (int t = 0; t < n; ++t) {
        // y_t f(x_t) = grad_t + 1 + y_t b.
        const bool want_ge = state[t] == 0;  // y f >= 1, otherwise y f <= 1
        const double bound = -grad(t) * y[t];
        if ((want_ge && y[t] > 0) || (!want_ge && y[t] < 0)) lo = std::max(lo, bound);
        else hi = std::min(hi, bound);
      }
      if (lo > hi + 1e-9) continue;
      b = std::isinf(lo) ? hi : std::isinf(hi) ? lo : 0.5 * (lo + hi);
    }
    bool kkt = true;
    for (int t = 0; t < n && kkt; ++t) {
      const double margin = grad(t) + 1.0 + y[t] * b;
      if (state[t] == 0 && margin < 1.0 - 1e-9) kkt = false;
      if (state[t] == 1 && margin > 1.0 + 1e-9) kkt = false;
    }
    if (!kkt) continue;
    const double obj = alpha.sum() - 0.5 * alpha.dot(Q * alpha);
    if (obj > best.objective) {
      best.objective = obj;
      best.alpha.assign(alpha.data(), alpha.data() + n);
      best.bias = b;
    }
  }
  if (best.alpha.empty()) throw std::runtime_error("oracle found no KKT point");
  return best;
}

/// f(x_s) for each training point s.
inline std::vector<double> oracle_decisions(const Eigen::MatrixXd& K, const std::vector<int>& y,
                                            const OracleSolution& s) {
  const int n = static_cast<int>(y.size());
  std::vector<double> f(n, s.bias);
  for (int i = 0; i < n; ++i)
    for (int t = 0; t < n; ++t) f[i] += s.alpha[t] * y[t] * K(t, i);
  return f;
}

}  // namespace leadmine_test

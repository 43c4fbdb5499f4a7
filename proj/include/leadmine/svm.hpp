#pragma once

// Binary soft-margin SVM with an RBF kernel, trained by sequential minimal
// optimization on the dual.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "leadmine/error.hpp"
#include "leadmine/features.hpp"

namespace leadmine {

struct KernelParams {
  double gamma = 1.0;

  friend bool operator==(const KernelParams&, const KernelParams&) = default;
};

struct TrainConfig {
  double c = 1.0;
  double gamma = 1.0;
  /// Stopping tolerance on the KKT conditions, in units of y*f(x).
  double tol = 1e-3;
  /// Updates moving the pair by less than this count as no progress.
  double eps = 1e-12;
  /// Iteration budget, in multiples of the training-set size.
  std::size_t max_passes = 10000;
  std::uint64_t seed = 0;
  /// Verify after every update that the dual objective did not decrease.
  bool check_objective = false;
};

/// Squared distance from norms and an inner product, clamped at zero.
inline double rbf_from_dot(double norm_x, double norm_y, double dot, double gamma) {
  return std::exp(-gamma * std::max(0.0, norm_x + norm_y - 2.0 * dot));
}

/// exp(-gamma * ||x - y||^2).
inline double rbf_kernel(const SparseVector& x, const SparseVector& y, const KernelParams& k) {
  if (x.dim() != y.dim())
    throw InvalidArgument("kernel dimension mismatch: " + std::to_string(x.dim()) + " vs " +
                          std::to_string(y.dim()));
  if (!(k.gamma > 0.0)) throw InvalidArgument("RBF gamma must be positive");
  return rbf_from_dot(x.squared_norm(), y.squared_norm(), x.dot(y), k.gamma);
}

/// Dense symmetric kernel matrix, filled once from an element function.
class KernelMatrix {
 public:
  template <class ElementFn>
  KernelMatrix(std::size_t n, ElementFn&& element) : n_(n), data_(n * n) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j <= i; ++j) {
        const double v = element(i, j);
        data_[i * n + j] = v;
        data_[j * n + i] = v;
      }
    }
  }

  std::size_t size() const noexcept { return n_; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * n_, n_}; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

 private:
  std::size_t n_;
  std::vector<double> data_;
};

/// Inner products and squared norms of a fixed set of vectors, shared by
/// every RBF width evaluated on that set.
class DotGram {
 public:
  explicit DotGram(std::span<const SparseVector> xs) : n_(xs.size()), dots_(n_ * n_), norms_(n_) {
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j <= i; ++j) {
        const double d = xs[i].dot(xs[j]);
        dots_[i * n_ + j] = d;
        dots_[j * n_ + i] = d;
      }
      norms_[i] = dots_[i * n_ + i];
    }
  }

  std::size_t size() const noexcept { return n_; }
  double dot(std::size_t i, std::size_t j) const { return dots_[i * n_ + j]; }
  double norm(std::size_t i) const { return norms_[i]; }

  /// RBF kernel matrix over the rows listed in `subset`.
  KernelMatrix rbf(std::span<const std::size_t> subset, double gamma) const {
    return KernelMatrix(subset.size(), [&](std::size_t a, std::size_t b) {
      const std::size_t i = subset[a], j = subset[b];
      return rbf_from_dot(norms_[i], norms_[j], dots_[i * n_ + j], gamma);
    });
  }

 private:
  std::size_t n_;
  std::vector<double> dots_;
  std::vector<double> norms_;
};

struct SolverDiagnostics {
  std::size_t iterations = 0;
  /// Final KKT gap: max violation over the working-set pair.
  double gap = 0.0;
  double objective = 0.0;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, SolverDiagnostics diag)
      : Error(what), diag_(diag) {}
  const SolverDiagnostics& diagnostics() const noexcept { return diag_; }

 private:
  SolverDiagnostics diag_;
};

struct DualSolution {
  std::vector<double> alpha;
  double bias = 0.0;
  SolverDiagnostics diagnostics;
};

namespace svm_detail {

/// Fisher-Yates with an explicit bounded draw so the permutation depends
/// only on the seed, not on the standard library's distributions.
inline void seeded_shuffle(std::vector<std::size_t>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const std::uint64_t bound = i;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t r;
    do r = rng(); while (r >= limit);
    std::swap(v[i - 1], v[static_cast<std::size_t>(r % bound)]);
  }
}

template <class Kernel>
class SmoSolver {
 public:
  SmoSolver(const Kernel& k, std::span<const int> y, const TrainConfig& cfg)
      : k_(k), y_(y), cfg_(cfg), n_(y.size()), alpha_(n_, 0.0), grad_(n_, -1.0), rng_(cfg.seed) {}

  DualSolution solve() {
    const std::size_t max_iter = cfg_.max_passes * std::max<std::size_t>(n_, 1);
    double prev_obj = 0.0;
    SolverDiagnostics diag;
    while (true) {
      auto [i, j, gap] = select_pair();
      diag.gap = gap;
      if (i == npos || gap < cfg_.tol) break;
      if (diag.iterations >= max_iter) {
        diag.objective = objective();
        throw ConvergenceError("SMO did not converge within " + std::to_string(max_iter) +
                                   " iterations (gap " + std::to_string(gap) + ")",
                               diag);
      }
      if (!take_step(i, j) && !sweep(i, gap)) {
        diag.objective = objective();
        throw ConvergenceError("SMO stalled: no pair makes progress (gap " +
                                   std::to_string(gap) + ")",
                               diag);
      }
      ++diag.iterations;
      if (cfg_.check_objective) {
        const double obj = objective();
        if (obj < prev_obj - 1e-12 * std::max(1.0, std::abs(prev_obj))) {
          diag.objective = obj;
          throw ConvergenceError("dual objective decreased", diag);
        }
        prev_obj = obj;
      }
    }
    diag.objective = objective();
    return {alpha_, bias(), diag};
  }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  static constexpr double kTau = 1e-12;

  bool in_up(std::size_t t) const {
    return (y_[t] > 0 && alpha_[t] < cfg_.c) || (y_[t] < 0 && alpha_[t] > 0.0);
  }
  bool in_low(std::size_t t) const {
    return (y_[t] < 0 && alpha_[t] < cfg_.c) || (y_[t] > 0 && alpha_[t] > 0.0);
  }
  // -y_t * grad_t, which equals b - E_t for the current bias b.
  double score(std::size_t t) const { return -y_[t] * grad_[t]; }

  struct Pair {
    std::size_t i, j;
    double gap;
  };

  // Worst KKT violator i (smallest error in the "up" set) paired with the
  // j of largest error in the "low" set, i.e. maximal |E_i - E_j|.
  Pair select_pair() const {
    double up = -std::numeric_limits<double>::infinity();
    double low = std::numeric_limits<double>::infinity();
    std::size_t i = npos, j = npos;
    for (std::size_t t = 0; t < n_; ++t) {
      const double s = score(t);
      if (in_up(t) && s > up) {
        up = s;
        i = t;
      }
      if (in_low(t) && s < low) {
        low = s;
        j = t;
      }
    }
    if (i == npos || j == npos) return {npos, npos, 0.0};
    return {i, j, up - low};
  }

  // Fallback when the preferred pair cannot move: try other violating
  // partners for i in seeded order, free multipliers first, then all.
  bool sweep(std::size_t i, double gap) {
    const double up = score(i);
    std::vector<std::size_t> order(n_);
    for (std::size_t t = 0; t < n_; ++t) order[t] = t;
    seeded_shuffle(order, rng_);
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t t : order) {
        if (t == i || !in_low(t) || up - score(t) < cfg_.tol * 0.5) continue;
        const bool free = alpha_[t] > 0.0 && alpha_[t] < cfg_.c;
        if ((pass == 0) != free) continue;
        if (take_step(i, t)) return true;
      }
    }
    (void)gap;
    return false;
  }

  // Analytic optimisation of the pair (i, j) under the box and equality
  // constraints. Returns false when the pair barely moves.
  bool take_step(std::size_t i, std::size_t j) {
    if (i == j) return false;
    const double c = cfg_.c;
    const auto ki = k_.row(i);
    const auto kj = k_.row(j);
    const double yi = y_[i], yj = y_[j];
    const double old_i = alpha_[i], old_j = alpha_[j];
    double ai = old_i, aj = old_j;
    if (yi != yj) {
      double quad = ki[i] + kj[j] - 2.0 * ki[j];
      if (quad <= 0.0) quad = kTau;
      const double delta = (-grad_[i] - grad_[j]) / quad;
      const double diff = ai - aj;
      ai += delta;
      aj += delta;
      if (diff > 0.0) {
        if (aj < 0.0) {
          aj = 0.0;
          ai = diff;
        }
      } else if (ai < 0.0) {
        ai = 0.0;
        aj = -diff;
      }
      if (diff > 0.0) {
        if (ai > c) {
          ai = c;
          aj = c - diff;
        }
      } else if (aj > c) {
        aj = c;
        ai = c + diff;
      }
    } else {
      double quad = ki[i] + kj[j] - 2.0 * ki[j];
      if (quad <= 0.0) quad = kTau;
      const double delta = (grad_[i] - grad_[j]) / quad;
      const double sum = ai + aj;
      ai -= delta;
      aj += delta;
      if (sum > c) {
        if (ai > c) {
          ai = c;
          aj = sum - c;
        }
      } else if (aj < 0.0) {
        aj = 0.0;
        ai = sum;
      }
      if (sum > c) {
        if (aj > c) {
          aj = c;
          ai = sum - c;
        }
      } else if (ai < 0.0) {
        ai = 0.0;
        aj = sum;
      }
    }
    const double di = ai - old_i, dj = aj - old_j;
    if (std::abs(di) < cfg_.eps && std::abs(dj) < cfg_.eps) return false;
    alpha_[i] = ai;
    alpha_[j] = aj;
    for (std::size_t t = 0; t < n_; ++t)
      grad_[t] += y_[t] * (yi * ki[t] * di + yj * kj[t] * dj);
    return true;
  }

  double objective() const {
    double w = 0.0;
    for (std::size_t t = 0; t < n_; ++t) w += alpha_[t] * (1.0 - grad_[t]);
    return 0.5 * w;
  }

  // Mean over free multipliers; midpoint of the KKT interval otherwise.
  double bias() const {
    double sum = 0.0;
    std::size_t free = 0;
    double lower = -std::numeric_limits<double>::infinity();
    double upper = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < n_; ++t) {
      const double s = score(t);
      if (alpha_[t] > 0.0 && alpha_[t] < cfg_.c) {
        sum += s;
        ++free;
      } else {
        if (in_up(t)) lower = std::max(lower, s);
        if (in_low(t)) upper = std::min(upper, s);
      }
    }
    if (free > 0) return sum / static_cast<double>(free);
    if (std::isinf(lower)) return upper;
    if (std::isinf(upper)) return lower;
    return 0.5 * (lower + upper);
  }

  const Kernel& k_;
  std::span<const int> y_;
  TrainConfig cfg_;
  std::size_t n_;
  std::vector<double> alpha_;
  std::vector<double> grad_;  // Q alpha - 1
  std::mt19937_64 rng_;
};

inline void check_config(const TrainConfig& cfg) {
  if (!(cfg.c > 0.0)) throw InvalidArgument("C must be positive");
  if (!(cfg.gamma > 0.0)) throw InvalidArgument("gamma must be positive");
  if (!(cfg.tol > 0.0)) throw InvalidArgument("tol must be positive");
  if (cfg.max_passes == 0) throw InvalidArgument("max_passes must be positive");
}

inline void check_labels(std::span<const int> y) {
  if (y.size() < 2) throw InvalidArgument("need at least two training points");
  bool pos = false, neg = false;
  for (int v : y) {
    if (v == 1) pos = true;
    else if (v == -1) neg = true;
    else throw InvalidArgument("labels must be +1 or -1");
  }
  if (!pos || !neg) throw InvalidArgument("training data must contain both classes");
}

}  // namespace svm_detail

/// Solves the soft-margin dual for a precomputed kernel matrix.
template <class Kernel>
DualSolution solve_dual(const Kernel& k, std::span<const int> y, const TrainConfig& cfg) {
  svm_detail::check_config(cfg);
  svm_detail::check_labels(y);
  if (k.size() != y.size()) throw InvalidArgument("kernel size does not match label count");
  return svm_detail::SmoSolver<Kernel>(k, y, cfg).solve();
}

/// Trained binary classifier: f(x) = sum_i coef_i K(sv_i, x) + b.
class BinarySvmModel {
 public:
  BinarySvmModel() = default;
  BinarySvmModel(std::size_t dim, std::vector<SparseVector> support, std::vector<double> coefs,
                 double bias, KernelParams kernel, double c)
      : dim_(dim),
        support_(std::move(support)),
        coefs_(std::move(coefs)),
        bias_(bias),
        kernel_(kernel),
        c_(c) {
    if (support_.size() != coefs_.size())
      throw InvalidArgument("support vector and coefficient counts differ");
    if (!(kernel_.gamma > 0.0)) throw InvalidArgument("RBF gamma must be positive");
    norms_.reserve(support_.size());
    for (const auto& sv : support_) {
      if (sv.dim() != dim_) throw InvalidArgument("support vector dimension mismatch");
      norms_.push_back(sv.squared_norm());
    }
  }

  std::size_t dim() const noexcept { return dim_; }
  const std::vector<SparseVector>& support_vectors() const noexcept { return support_; }
  /// alpha_i * y_i for each support vector.
  const std::vector<double>& dual_coefs() const noexcept { return coefs_; }
  double bias() const noexcept { return bias_; }
  const KernelParams& kernel() const noexcept { return kernel_; }
  double c() const noexcept { return c_; }

  double decision_value(const SparseVector& x) const {
    if (x.dim() != dim_)
      throw InvalidArgument("input dimension " + std::to_string(x.dim()) +
                            " does not match model dimension " + std::to_string(dim_));
    const double xn = x.squared_norm();
    double f = bias_;
    for (std::size_t i = 0; i < support_.size(); ++i)
      f += coefs_[i] * rbf_from_dot(norms_[i], xn, support_[i].dot(x), kernel_.gamma);
    return f;
  }

  friend bool operator==(const BinarySvmModel& a, const BinarySvmModel& b) {
    return a.dim_ == b.dim_ && a.support_ == b.support_ && a.coefs_ == b.coefs_ &&
           a.bias_ == b.bias_ && a.kernel_ == b.kernel_ && a.c_ == b.c_;
  }

 private:
  std::size_t dim_ = 0;
  std::vector<SparseVector> support_;
  std::vector<double> coefs_;
  double bias_ = 0.0;
  KernelParams kernel_;
  double c_ = 1.0;
  std::vector<double> norms_;
};

inline double decision_value(const BinarySvmModel& m, const SparseVector& x) {
  return m.decision_value(x);
}

/// Positive class iff the decision value is strictly positive.
inline bool predict_binary(const BinarySvmModel& m, const SparseVector& x) {
  return m.decision_value(x) > 0.0;
}

/// Throws unless 0 <= alpha <= C and |sum alpha_i y_i| <= tol * n.
inline void check_dual_feasible(std::span<const double> alpha, std::span<const int> y, double c,
                                double tol) {
  double balance = 0.0;
  for (std::size_t t = 0; t < alpha.size(); ++t) {
    if (!(alpha[t] >= 0.0 && alpha[t] <= c)) throw Error("internal: multiplier outside [0, C]");
    balance += alpha[t] * y[t];
  }
  if (std::abs(balance) > tol * static_cast<double>(alpha.size()))
    throw Error("internal: dual equality constraint violated");
}

/// Keeps the points with alpha > 0 and checks dual feasibility.
inline BinarySvmModel make_model(std::span<const SparseVector> xs, std::span<const int> y,
                                 const DualSolution& sol, const TrainConfig& cfg) {
  check_dual_feasible(sol.alpha, y, cfg.c, cfg.tol);
  std::vector<SparseVector> support;
  std::vector<double> coefs;
  for (std::size_t t = 0; t < xs.size(); ++t) {
    if (sol.alpha[t] > 0.0) {
      support.push_back(xs[t]);
      coefs.push_back(sol.alpha[t] * y[t]);
    }
  }
  return BinarySvmModel(xs.empty() ? 0 : xs.front().dim(), std::move(support), std::move(coefs),
                        sol.bias, KernelParams{cfg.gamma}, cfg.c);
}

inline BinarySvmModel train_binary_svm(std::span<const SparseVector> xs, std::span<const int> y,
                                       const TrainConfig& cfg) {
  if (xs.size() != y.size()) throw InvalidArgument("feature and label counts differ");
  svm_detail::check_config(cfg);
  svm_detail::check_labels(y);
  for (const auto& x : xs)
    if (x.dim() != xs.front().dim()) throw InvalidArgument("training vectors differ in dimension");
  std::vector<double> norms(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) norms[i] = xs[i].squared_norm();
  const KernelMatrix k(xs.size(), [&](std::size_t i, std::size_t j) {
    return rbf_from_dot(norms[i], norms[j], xs[i].dot(xs[j]), cfg.gamma);
  });
  return make_model(xs, y, solve_dual(k, y, cfg), cfg);
}

}  // namespace leadmine

#pragma once

// Iterative Tikhonov and Landweber regularization of the assembled system,
// with three stopping rules: iteration budget, relative change of the
// iterate, and the discrepancy principle for noisy data.

#include <cmath>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "stefan/assembly.hpp"
#include "stefan/csv.hpp"
#include "stefan/linalg.hpp"

namespace stefan {

enum class Method { tikhonov, landweber };

inline const char* to_string(Method m) {
  return m == Method::tikhonov ? "tikhonov" : "landweber";
}

enum class StopReason { max_iters, tol, discrepancy };

inline const char* to_string(StopReason r) {
  switch (r) {
    case StopReason::max_iters: return "max_iters";
    case StopReason::tol: return "tol";
    default: return "discrepancy";
  }
}

struct RegularizationConfig {
  Method method = Method::tikhonov;
  // Tikhonov: penalty weight.  Landweber: step size, defaulting to
  // 0.9 / sigma^2 with sigma the power-iteration norm estimate; the 10%
  // shrink keeps lambda ||A||^2 < 1 even though the estimate is a lower
  // bound.
  std::optional<double> lambda;
  int max_iters = 200;
  double stop_tol = 1e-8;  // relative change of the iterate
  std::optional<double> discrepancy_tau;  // >= 1 enables the principle
  double noise_level_estimate = 0.0;      // delta in ||A U - g|| <= tau delta
  bool project_nonnegative = false;       // optional physical constraint
};

inline RegularizationConfig tikhonov_config(double lambda) {
  RegularizationConfig cfg;
  cfg.method = Method::tikhonov;
  cfg.lambda = lambda;
  cfg.max_iters = 200;
  return cfg;
}

inline RegularizationConfig landweber_config(
    std::optional<double> lambda = std::nullopt) {
  RegularizationConfig cfg;
  cfg.method = Method::landweber;
  cfg.lambda = lambda;
  cfg.max_iters = 20000;
  return cfg;
}

struct Reconstruction {
  Vector u0;
  int iterations_run = 0;
  Vector residual_history;    // ||A U_m - g|| after each iteration
  Vector rel_change_history;  // ||U_m - U_{m-1}|| / ||U_m||
  StopReason stop_reason = StopReason::max_iters;
};

namespace detail {

inline void validate_common(const RegularizationConfig& cfg) {
  if (cfg.max_iters < 1)
    throw std::invalid_argument("regularize: max_iters >= 1 required");
  if (cfg.stop_tol < 0.0)
    throw std::invalid_argument("regularize: stop_tol >= 0 required");
  if (cfg.discrepancy_tau && *cfg.discrepancy_tau < 1.0)
    throw std::invalid_argument("regularize: discrepancy_tau >= 1 required");
  if (cfg.noise_level_estimate < 0.0)
    throw std::invalid_argument("regularize: noise estimate >= 0 required");
}

/// Shared per-iteration bookkeeping; returns true when iteration should stop.
inline bool record_and_check(const RegularizationConfig& cfg,
                             Reconstruction& rec, double residual,
                             double rel_change, int iteration) {
  rec.residual_history.push_back(residual);
  rec.rel_change_history.push_back(rel_change);
  rec.iterations_run = iteration;
  if (cfg.discrepancy_tau &&
      residual <= *cfg.discrepancy_tau * cfg.noise_level_estimate) {
    rec.stop_reason = StopReason::discrepancy;
    return true;
  }
  if (rel_change < cfg.stop_tol) {
    rec.stop_reason = StopReason::tol;
    return true;
  }
  if (iteration >= cfg.max_iters) {
    rec.stop_reason = StopReason::max_iters;
    return true;
  }
  return false;
}

inline double relative_change(const Vector& current, const Vector& previous) {
  double dn = 0.0;
  for (std::size_t i = 0; i < current.size(); ++i) {
    const double d = current[i] - previous[i];
    dn += d * d;
  }
  const double cn = norm2(current);
  if (cn == 0.0) return dn == 0.0 ? 0.0 : 1.0;
  return std::sqrt(dn) / cn;
}

}  // namespace detail

/// Iterated Tikhonov: (A^T A + lambda I) U_{m+1} = A^T g + lambda U_m from
/// U_0 = 0.  The SPD factorization is computed once and reused every step.
inline Reconstruction tikhonov_iterate(const DenseSystem& sys,
                                       const RegularizationConfig& cfg) {
  if (cfg.method != Method::tikhonov)
    throw std::invalid_argument("tikhonov_iterate: wrong method in config");
  detail::validate_common(cfg);
  if (!cfg.lambda || !(*cfg.lambda > 0.0))
    throw std::invalid_argument("tikhonov_iterate: lambda > 0 required");
  const double lambda = *cfg.lambda;

  const CholeskyFactor factor(gram_matrix(sys.A, lambda));
  const Vector atg = transpose_matvec(sys.A, sys.g);
  const std::size_t m = sys.A.cols();

  Reconstruction rec;
  Vector u(m, 0.0);
  for (int iter = 1; iter <= cfg.max_iters; ++iter) {
    Vector rhs = atg;
    for (std::size_t j = 0; j < m; ++j) rhs[j] += lambda * u[j];
    Vector next = factor.solve(rhs);
    if (cfg.project_nonnegative)
      for (double& x : next) x = std::max(x, 0.0);

    Vector au = matvec(sys.A, next);
    double rr = 0.0;
    for (std::size_t i = 0; i < au.size(); ++i) {
      const double d = au[i] - sys.g[i];
      rr += d * d;
    }
    const double rel = detail::relative_change(next, u);
    u = std::move(next);
    if (detail::record_and_check(cfg, rec, std::sqrt(rr), rel, iter)) break;
  }
  rec.u0 = std::move(u);
  return rec;
}

/// Landweber iteration U_{m+1} = U_m + lambda A^T (g - A U_m) from U_0 = 0,
/// matrix-free.  Requires lambda <= 1 / sigma^2.
inline Reconstruction landweber_iterate(const DenseSystem& sys,
                                        const RegularizationConfig& cfg) {
  if (cfg.method != Method::landweber)
    throw std::invalid_argument("landweber_iterate: wrong method in config");
  detail::validate_common(cfg);
  const double sigma = spectral_norm(sys.A);
  double lambda;
  if (cfg.lambda) {
    lambda = *cfg.lambda;
    if (!(lambda > 0.0))
      throw std::invalid_argument("landweber_iterate: lambda > 0 required");
    if (lambda * sigma * sigma > 1.0 + 1e-12)
      throw std::invalid_argument(
          "landweber_iterate: lambda exceeds 1/||A||^2");
  } else {
    if (sigma == 0.0)
      throw std::invalid_argument("landweber_iterate: zero operator");
    lambda = 0.9 / (sigma * sigma);
  }

  const std::size_t m = sys.A.cols();
  Reconstruction rec;
  Vector u(m, 0.0);
  Vector residual = sys.g;  // g - A U_0
  for (int iter = 1; iter <= cfg.max_iters; ++iter) {
    const Vector grad = transpose_matvec(sys.A, residual);
    Vector next = u;
    for (std::size_t j = 0; j < m; ++j) next[j] += lambda * grad[j];
    if (cfg.project_nonnegative)
      for (double& x : next) x = std::max(x, 0.0);

    const Vector au = matvec(sys.A, next);
    double rr = 0.0;
    for (std::size_t i = 0; i < au.size(); ++i) {
      const double d = sys.g[i] - au[i];
      residual[i] = d;
      rr += d * d;
    }
    const double rel = detail::relative_change(next, u);
    u = std::move(next);
    if (detail::record_and_check(cfg, rec, std::sqrt(rr), rel, iter)) break;
  }
  rec.u0 = std::move(u);
  return rec;
}

inline Reconstruction regularize(const DenseSystem& sys,
                                 const RegularizationConfig& cfg) {
  return cfg.method == Method::tikhonov ? tikhonov_iterate(sys, cfg)
                                        : landweber_iterate(sys, cfg);
}

inline void write_trace_csv(std::ostream& out, const Reconstruction& rec) {
  out << "iter,residual,rel_change\n";
  for (int i = 0; i < rec.iterations_run; ++i) {
    out << i + 1 << ',' << format_double(rec.residual_history[i]) << ','
        << format_double(rec.rel_change_history[i]) << '\n';
  }
}

}  // namespace stefan

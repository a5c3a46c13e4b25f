#pragma once

// Discretization of the front integral identity into the dense system
// A U0 = g.  Row i collocates at time t_i (i = 1..N); the right-hand side
// carries the front and flux time integrals.  Composite Gauss-Legendre on
// uniform grids; the integrable endpoint singularity of the last time subcell
// is removed by the substitution tau = t_i - sigma^2 before quadrature.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "stefan/csv.hpp"
#include "stefan/kernel.hpp"
#include "stefan/linalg.hpp"
#include "stefan/problems.hpp"

namespace stefan {

/// Gauss-Legendre rule on the reference interval (-1, 1).
struct QuadratureRule {
  int points_per_cell = 0;
  Vector nodes;    // ascending, symmetric about 0
  Vector weights;  // positive, summing to 2
};

/// Nodes and weights by Newton iteration on the Legendre recurrence;
/// machine-precision for any order needed here.
inline QuadratureRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: order >= 1");
  QuadratureRule rule;
  rule.points_per_cell = n;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);

  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double deriv = 0.0;
    for (int iter = 0; iter < 64; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      deriv = (n == 1) ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / deriv;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    if (std::abs(x) < 1e-14) x = 0.0;
    const double w = 2.0 / ((1.0 - x * x) * deriv * deriv);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

/// The assembled linear system A U0 = g together with the space nodes the
/// unknowns live on.
struct DenseSystem {
  DenseMatrix A;       // N x M, strictly positive entries
  Vector g;            // length N
  Vector space_nodes;  // cell midpoints xi_k in [0, b]
  ProblemConfig config;
};

namespace detail {

/// Piecewise-linear interpolation of uniform-grid samples.
class LinearSampler {
 public:
  LinearSampler(const Vector& times, const Vector& values)
      : times_(times), values_(values), dt_(times[1] - times[0]) {}

  double operator()(double t) const {
    const std::size_t n = times_.size();
    if (t <= times_.front()) return values_.front();
    if (t >= times_.back()) return values_.back();
    auto j = static_cast<std::size_t>((t - times_.front()) / dt_);
    if (j >= n - 1) j = n - 2;
    const double theta = (t - times_[j]) / dt_;
    return (1.0 - theta) * values_[j] + theta * values_[j + 1];
  }

 private:
  const Vector& times_;
  const Vector& values_;
  double dt_;
};

}  // namespace detail

inline DenseSystem assemble(const BoundaryTrajectory& traj,
                            const ProblemConfig& cfg,
                            const QuadratureRule& rule) {
  cfg.validate();
  const int N = cfg.N;
  const int M = cfg.M;
  if (traj.samples() != static_cast<std::size_t>(N) + 1 ||
      traj.s.size() != traj.samples() || traj.sdot.size() != traj.samples() ||
      traj.h.size() != traj.samples())
    throw std::invalid_argument("assemble: trajectory/grid length mismatch");
  const double dt = cfg.dt();
  for (int i = 0; i <= N; ++i) {
    if (std::abs(traj.times[i] - i * dt) > 1e-9 * std::max(cfg.T, 1.0))
      throw std::invalid_argument("assemble: trajectory not on the cfg grid");
    if (!(traj.s[i] > 0.0))
      throw std::invalid_argument("assemble: front positions must be > 0");
  }
  if (rule.points_per_cell < 1 ||
      rule.nodes.size() != static_cast<std::size_t>(rule.points_per_cell) ||
      rule.weights.size() != rule.nodes.size())
    throw std::invalid_argument("assemble: malformed quadrature rule");

  const double dxi = cfg.dxi();
  const detail::LinearSampler s_at(traj.times, traj.s);
  const detail::LinearSampler sdot_at(traj.times, traj.sdot);
  const detail::LinearSampler h_at(traj.times, traj.h);
  const int q = rule.points_per_cell;

  DenseSystem sys{DenseMatrix(N, M), Vector(N, 0.0), cfg.cell_midpoints(), cfg};

  for (int i = 1; i <= N; ++i) {
    const double ti = i * dt;
    const double si = traj.s[i];

    // row i-1: cell-aggregated weights of the space integral at time 0
    for (int k = 0; k < M; ++k) {
      const double mid = (k + 0.5) * dxi;
      const double half = 0.5 * dxi;
      double sum = 0.0;
      for (int p = 0; p < q; ++p)
        sum += rule.weights[p] * half *
               neumann(si, mid + half * rule.nodes[p], ti, 0.0);
      sys.A(i - 1, k) = sum;
    }

    // g_{i-1}: front integral minus flux integral over tau in [0, t_i]
    double front_sum = 0.0;
    double flux_sum = 0.0;
    for (int j = 0; j < i - 1; ++j) {
      const double mid = (j + 0.5) * dt;
      const double half = 0.5 * dt;
      for (int p = 0; p < q; ++p) {
        const double tau = mid + half * rule.nodes[p];
        const double w = rule.weights[p] * half;
        front_sum += w * neumann(si, s_at(tau), ti, tau) * sdot_at(tau);
        flux_sum += w * neumann(si, 0.0, ti, tau) * h_at(tau);
      }
    }
    {
      // last subcell [t_{i-1}, t_i]: tau = t_i - sigma^2 removes the
      // 1/sqrt(t_i - tau) factor; sigma runs over (0, sqrt(dt))
      const double smax = std::sqrt(dt);
      const double half = 0.5 * smax;
      for (int p = 0; p < q; ++p) {
        const double sigma = half + half * rule.nodes[p];
        const double tau = ti - sigma * sigma;
        const double w = rule.weights[p] * half * 2.0 * sigma;
        front_sum += w * neumann(si, s_at(tau), ti, tau) * sdot_at(tau);
        flux_sum += w * neumann(si, 0.0, ti, tau) * h_at(tau);
      }
    }
    sys.g[i - 1] = front_sum - flux_sum;
  }
  return sys;
}

inline DenseSystem assemble(const BoundaryTrajectory& traj,
                            const ProblemConfig& cfg) {
  return assemble(traj, cfg, gauss_legendre(3));
}

/// A u0 - g, the defect of a candidate initial condition in the collocation
/// equations.
inline Vector collocation_residual(const DenseSystem& sys,
                                   const Vector& u0_samples) {
  if (u0_samples.size() != sys.A.cols())
    throw std::invalid_argument("collocation_residual: dimension mismatch");
  Vector r = matvec(sys.A, u0_samples);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= sys.g[i];
  return r;
}

inline void write_system_csv(const DenseSystem& sys, std::ostream& a_out,
                             std::ostream& g_out) {
  for (std::size_t i = 0; i < sys.A.rows(); ++i) {
    const auto row = sys.A.row(i);
    for (std::size_t j = 0; j < row.size(); ++j)
      write_csv_field(a_out, row[j], j + 1 == row.size());
    a_out << '\n';
  }
  for (double gi : sys.g) g_out << format_double(gi) << '\n';
}

}  // namespace stefan

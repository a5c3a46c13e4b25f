#pragma once

// Problem instances for the melting-front inversion: configuration, sampled
// front data, two closed-form benchmark solutions, and measurement-noise
// injection on the front trajectory.

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <ostream>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "stefan/csv.hpp"
#include "stefan/linalg.hpp"
#include "stefan/random.hpp"

namespace stefan {

struct ProblemConfig {
  double b = 0.0;  // initial front position
  double T = 0.0;  // final time
  int N = 0;       // time steps; trajectories carry N+1 samples
  int M = 0;       // space cells on [0, b]; one unknown per cell

  double H = 0.0;              // slope bound of the admissible envelope
  double h_bound = 0.0;        // bound on the boundary flux
  double sobolev_bound = 0.0;  // H^1 bound on admissible initial conditions
  double data_bound = 0.0;     // max(sup |h|, H)

  double dt() const { return T / N; }
  double dxi() const { return b / M; }

  Vector time_grid() const {
    Vector t(N + 1);
    for (int i = 0; i <= N; ++i) t[i] = T * i / N;
    return t;
  }

  /// Cell midpoints of [0, b]; the reconstruction vector lives on these.
  Vector cell_midpoints() const {
    Vector xi(M);
    for (int k = 0; k < M; ++k) xi[k] = b * (k + 0.5) / M;
    return xi;
  }

  void validate() const {
    if (!(b > 0.0)) throw std::invalid_argument("ProblemConfig: b > 0 required");
    if (!(T > 0.0)) throw std::invalid_argument("ProblemConfig: T > 0 required");
    if (N < 2) throw std::invalid_argument("ProblemConfig: N >= 2 required");
    if (M < 2) throw std::invalid_argument("ProblemConfig: M >= 2 required");
    if (H < 0.0) throw std::invalid_argument("ProblemConfig: H >= 0 required");
  }
};

enum class Provenance { analytic, simulated, noisy };

inline const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::analytic: return "analytic";
    case Provenance::simulated: return "simulated";
    default: return "noisy";
  }
}

/// Front position, front speed and boundary flux sampled on a uniform time
/// grid.  The stored speed always follows the convention sdot = -u_x(s(t),t)
/// >= 0, i.e. it is the (nonnegative) front speed.
struct BoundaryTrajectory {
  Vector times;
  Vector s;
  Vector sdot;
  Vector h;
  Provenance provenance = Provenance::analytic;

  std::size_t samples() const { return times.size(); }
};

struct InitialCondition {
  std::function<double(double)> evaluator;  // u0 on [0, b]
  Vector samples;                           // values at the cell midpoints
};

/// A Stefan problem with every piece known in closed form; the two benchmark
/// examples below are instances of this.
struct ClosedFormSolution {
  double b = 0.0;
  double T = 0.0;
  std::function<double(double)> front;        // s(t)
  std::function<double(double)> front_speed;  // sdot(t) >= 0
  std::function<double(double)> flux;         // h(t) = -u_x(0,t)
  std::function<double(double)> initial;      // u0(x)
  std::function<double(double)> initial_slope;
  std::function<double(double, double)> field;  // u(x, t)
  double envelope_slope = 0.0;  // tightest H with u0 <= H(b - x)
  double flux_sup = 0.0;        // sup of h over [0, T]
};

/// Nonlinear front s(t) = sqrt(t + 1/4) with the similarity-solution field
/// u(x,t) = (e^{1/4} sqrt(pi)/2) (erf(1/2) - erf(x / (2 sqrt(t + 1/4)))).
inline ClosedFormSolution example1_solution() {
  const double amp = std::exp(0.25) * std::sqrt(std::numbers::pi) / 2.0;
  ClosedFormSolution sol;
  sol.b = 0.5;
  sol.T = 1.0;
  sol.front = [](double t) { return std::sqrt(t + 0.25); };
  sol.front_speed = [](double t) { return 0.5 / std::sqrt(t + 0.25); };
  sol.flux = [](double t) { return std::exp(0.25) / (2.0 * std::sqrt(t + 0.25)); };
  sol.initial = [amp](double x) { return amp * (std::erf(0.5) - std::erf(x)); };
  sol.initial_slope = [](double x) { return -std::exp(0.25 - x * x); };
  sol.field = [amp](double x, double t) {
    return amp * (std::erf(0.5) - std::erf(x / (2.0 * std::sqrt(t + 0.25))));
  };
  // u0 is convex decreasing, so its steepest slope e^{1/4} is a valid H
  sol.envelope_slope = std::exp(0.25);
  sol.flux_sup = std::exp(0.25);  // h decreases from h(0) = e^{1/4}
  return sol;
}

/// Linear front s(t) = sqrt(2) - 1 + t/sqrt(2) with the exponential field
/// u(x,t) = -1 + exp(1 - 1/sqrt(2) + t/2 - x/sqrt(2)).  The front speed is
/// stored as +1/sqrt(2) so that -u_x(s(t),t) = sdot(t) holds with sdot >= 0.
inline ClosedFormSolution example2_solution() {
  const double rt2 = std::numbers::sqrt2;
  const double c = 1.0 - 1.0 / rt2;
  ClosedFormSolution sol;
  sol.b = rt2 - 1.0;
  sol.T = 1.0;
  sol.front = [rt2](double t) { return rt2 - 1.0 + t / rt2; };
  sol.front_speed = [rt2](double) { return 1.0 / rt2; };
  sol.flux = [rt2, c](double t) { return std::exp(c + 0.5 * t) / rt2; };
  sol.initial = [rt2, c](double x) { return -1.0 + std::exp(c - x / rt2); };
  sol.initial_slope = [rt2, c](double x) { return -std::exp(c - x / rt2) / rt2; };
  sol.field = [rt2, c](double x, double t) {
    return -1.0 + std::exp(c + 0.5 * t - x / rt2);
  };
  // u0 is convex decreasing; |u0'(0)| = h(0) bounds the envelope slope
  sol.envelope_slope = std::exp(c) / rt2;
  sol.flux_sup = std::exp(c + 0.5) / rt2;  // h increases up to t = T
  return sol;
}

struct ProblemInstance {
  ProblemConfig config;
  BoundaryTrajectory trajectory;
  InitialCondition u0;
};

namespace detail {

/// ||f||_{H^1(0,b)} by composite Simpson on value and slope callables.
inline double h1_norm(const std::function<double(double)>& f,
                      const std::function<double(double)>& fprime, double b,
                      int cells = 2000) {
  const double h = b / (2 * cells);
  auto density = [&](double x) {
    const double v = f(x);
    const double d = fprime(x);
    return v * v + d * d;
  };
  double sum = density(0.0) + density(b);
  for (int i = 1; i < 2 * cells; ++i)
    sum += density(i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  return std::sqrt(sum * h / 3.0);
}

}  // namespace detail

/// Samples a closed-form solution onto a uniform N-grid in time and M cell
/// midpoints in space.
inline ProblemInstance make_instance(const ClosedFormSolution& sol, int N,
                                     int M) {
  ProblemConfig cfg;
  cfg.b = sol.b;
  cfg.T = sol.T;
  cfg.N = N;
  cfg.M = M;
  cfg.H = sol.envelope_slope;
  cfg.h_bound = sol.flux_sup;
  cfg.sobolev_bound = detail::h1_norm(sol.initial, sol.initial_slope, sol.b);
  cfg.data_bound = std::max(sol.flux_sup, sol.envelope_slope);
  cfg.validate();

  BoundaryTrajectory traj;
  traj.times = cfg.time_grid();
  traj.s.resize(N + 1);
  traj.sdot.resize(N + 1);
  traj.h.resize(N + 1);
  for (int i = 0; i <= N; ++i) {
    traj.s[i] = sol.front(traj.times[i]);
    traj.sdot[i] = sol.front_speed(traj.times[i]);
    traj.h[i] = sol.flux(traj.times[i]);
  }
  traj.provenance = Provenance::analytic;

  InitialCondition u0;
  u0.evaluator = sol.initial;
  u0.samples.resize(M);
  const Vector mids = cfg.cell_midpoints();
  for (int k = 0; k < M; ++k) u0.samples[k] = sol.initial(mids[k]);

  return ProblemInstance{std::move(cfg), std::move(traj), std::move(u0)};
}

inline ProblemInstance example1(int N = 250, int M = 250) {
  return make_instance(example1_solution(), N, M);
}

inline ProblemInstance example2(int N = 250, int M = 250) {
  return make_instance(example2_solution(), N, M);
}

/// Numerical front speed from sampled positions: optional centered moving
/// average of odd width, then second-order differences (central inside,
/// one-sided at the ends).  The window shrinks symmetrically near the ends so
/// output length equals input length.
inline Vector differentiate_boundary(const Vector& s, double dt,
                                     int smoothing_window = 1) {
  const std::size_t n = s.size();
  if (n < 3)
    throw std::invalid_argument("differentiate_boundary: need >= 3 samples");
  if (smoothing_window < 1 || smoothing_window % 2 == 0)
    throw std::invalid_argument(
        "differentiate_boundary: smoothing_window must be odd and >= 1");
  if (!(dt > 0.0))
    throw std::invalid_argument("differentiate_boundary: dt > 0 required");

  Vector smooth(n);
  if (smoothing_window == 1) {
    smooth = s;
  } else {
    const std::size_t half = smoothing_window / 2;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t r = std::min({half, i, n - 1 - i});
      double sum = 0.0;
      for (std::size_t j = i - r; j <= i + r; ++j) sum += s[j];
      smooth[i] = sum / static_cast<double>(2 * r + 1);
    }
  }

  Vector d(n);
  d[0] = (-3.0 * smooth[0] + 4.0 * smooth[1] - smooth[2]) / (2.0 * dt);
  for (std::size_t i = 1; i + 1 < n; ++i)
    d[i] = (smooth[i + 1] - smooth[i - 1]) / (2.0 * dt);
  d[n - 1] =
      (3.0 * smooth[n - 1] - 4.0 * smooth[n - 2] + smooth[n - 3]) / (2.0 * dt);
  return d;
}

/// Multiplicative Gaussian noise on the measured front positions:
/// s_i <- s_i (1 + level eps_i).  The flux is treated as exactly known; the
/// front speed is recomputed from the noisy positions.  Deterministic for a
/// fixed seed.  level = 0 returns the input unchanged.
inline BoundaryTrajectory add_noise(const BoundaryTrajectory& traj,
                                    double level, std::uint64_t seed,
                                    int smoothing_window = 5) {
  if (level < 0.0) throw std::invalid_argument("add_noise: level >= 0 required");
  BoundaryTrajectory out = traj;
  if (level == 0.0) return out;
  if (traj.samples() < 3)
    throw std::invalid_argument("add_noise: need >= 3 samples");

  std::mt19937_64 engine(seed);
  for (double& si : out.s) si *= 1.0 + level * standard_normal(engine);
  const double dt = traj.times[1] - traj.times[0];
  out.sdot = differentiate_boundary(out.s, dt, smoothing_window);
  out.provenance = Provenance::noisy;
  return out;
}

inline void write_trajectory_csv(std::ostream& out,
                                 const BoundaryTrajectory& traj) {
  out << "t,s,sdot,h\n";
  for (std::size_t i = 0; i < traj.samples(); ++i) {
    write_csv_field(out, traj.times[i], false);
    write_csv_field(out, traj.s[i], false);
    write_csv_field(out, traj.sdot[i], false);
    write_csv_field(out, traj.h[i], true);
    out << '\n';
  }
}

}  // namespace stefan

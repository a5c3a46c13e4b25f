#pragma once

// Fundamental 1-D heat kernel and the Neumann function obtained by reflecting
// it about x = 0.  Every integral representation in the library is built from
// these two evaluations, so they stay pure and allocation-free.

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace stefan {

struct KernelArgs {
  double x = 0.0;    // evaluation position
  double xi = 0.0;   // source position
  double t = 0.0;    // evaluation time
  double tau = 0.0;  // source time, must precede t
};

// Exponents below this floor evaluate to an exact 0 instead of a subnormal;
// kernels decay to machine zero inside legitimate quadratures.
inline constexpr double kernel_exponent_floor = -700.0;

/// K(x,xi;t,tau) = exp(-(x-xi)^2 / (4(t-tau))) / (2 sqrt(pi (t-tau))).
inline double heat_kernel(const KernelArgs& a) {
  const double dt = a.t - a.tau;
  if (!(dt > 0.0))
    throw std::domain_error("heat_kernel: requires tau < t");
  const double d = a.x - a.xi;
  const double exponent = -(d * d) / (4.0 * dt);
  if (exponent < kernel_exponent_floor) return 0.0;
  return std::exp(exponent) / (2.0 * std::sqrt(std::numbers::pi * dt));
}

inline double heat_kernel(double x, double xi, double t, double tau) {
  return heat_kernel(KernelArgs{x, xi, t, tau});
}

/// N(x,xi;t,tau) = K(x,xi;t,tau) + K(-x,xi;t,tau); its x-derivative vanishes
/// at x = 0, matching the flux boundary condition.
inline double neumann(const KernelArgs& a) {
  return heat_kernel(a) + heat_kernel(KernelArgs{-a.x, a.xi, a.t, a.tau});
}

inline double neumann(double x, double xi, double t, double tau) {
  return neumann(KernelArgs{x, xi, t, tau});
}

}  // namespace stefan

#pragma once

// Finite-difference partial derivatives of vector-space valued oracles.

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <type_traits>

namespace fueter {

enum class FdScheme { central, richardson };

struct FdConfig {
  // Absolute step; 0 selects relative_step * max(1, ||p||).
  double step = 0.0;
  double relative_step = 1e-5;
  FdScheme scheme = FdScheme::central;

  double step_at(double point_norm) const {
    return step > 0.0 ? step : relative_step * std::max(1.0, point_norm);
  }
};

// d f / d p[coord]. F maps an Eigen::VectorXd to any type closed under
// subtraction and real scaling.
template <typename F>
auto partial(F&& f, const Eigen::VectorXd& p, Eigen::Index coord, double h,
             FdScheme scheme = FdScheme::central) {
  using R = std::decay_t<decltype(f(p))>;
  auto central = [&](double s) -> R {
    Eigen::VectorXd plus = p, minus = p;
    plus[coord] += s;
    minus[coord] -= s;
    return (f(plus) - f(minus)) * (1.0 / (2.0 * s));
  };
  if (scheme == FdScheme::central) return central(h);
  const R coarse = central(h);
  const R fine = central(0.5 * h);
  return R((fine * 4.0 - coarse) * (1.0 / 3.0));
}

// Wirtinger derivative d/dz of a function of one complex variable, averaging
// the real- and imaginary-direction central quotients. For holomorphic g the
// O(h^2) error terms of the two quotients cancel.
template <typename G>
auto wirtinger_z(G&& g, std::complex<double> z, double h) {
  using R = std::decay_t<decltype(g(z))>;
  const std::complex<double> ih(0.0, h);
  const R dx = (g(z + h) - g(z - h)) * (1.0 / (2.0 * h));
  const R dy = (g(z + ih) - g(z - ih)) * (1.0 / (2.0 * h));
  return R((dx - dy * std::complex<double>(0.0, 1.0)) * 0.5);
}

// d/dzbar, same stencil.
template <typename G>
auto wirtinger_zbar(G&& g, std::complex<double> z, double h) {
  using R = std::decay_t<decltype(g(z))>;
  const std::complex<double> ih(0.0, h);
  const R dx = (g(z + h) - g(z - h)) * (1.0 / (2.0 * h));
  const R dy = (g(z + ih) - g(z - ih)) * (1.0 / (2.0 * h));
  return R((dx + dy * std::complex<double>(0.0, 1.0)) * 0.5);
}

}  // namespace fueter

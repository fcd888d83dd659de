#pragma once

// Random points for property checks. All draws go through std::mt19937_64
// so a fixed seed reproduces a run on the same toolchain.

#include "fueter/quaternion.hpp"

#include <random>

namespace fueter {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo = 0.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Quaterniond gaussian_quaternion(Rng& rng, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  return {g(rng), g(rng), g(rng), g(rng)};
}

inline cd gaussian_complex(Rng& rng, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  const double re = g(rng);
  return {re, g(rng)};
}

inline QuaternionVectord gaussian_vector(Rng& rng, Eigen::Index n, double scale = 1.0) {
  QuaternionVectord v(n);
  for (Eigen::Index l = 0; l < n; ++l) v.set(l, gaussian_quaternion(rng, scale));
  return v;
}

inline Quaterniond unit_quaternion(Rng& rng) {
  Quaterniond q;
  do q = gaussian_quaternion(rng); while (q.norm() < 1e-8);
  return q / q.norm();
}

inline Eigen::Vector3d unit_vector3(Rng& rng) {
  std::normal_distribution<double> g;
  Eigen::Vector3d u;
  do u = {g(rng), g(rng), g(rng)}; while (u.norm() < 1e-8);
  return u.normalized();
}

// Uniform with respect to volume in the shell r_min < |q| < r_max of R^4.
inline Quaterniond shell_quaternion(Rng& rng, double r_min, double r_max) {
  const double a = std::pow(r_min, 4), b = std::pow(r_max, 4);
  const double r = std::pow(a + uniform(rng) * (b - a), 0.25);
  return unit_quaternion(rng) * r;
}

// Uniform in the ball of radius r in R^{4n}.
inline QuaternionVectord ball_vector(Rng& rng, Eigen::Index n, double r) {
  QuaternionVectord v = gaussian_vector(rng, n);
  while (v.norm() < 1e-8) v = gaussian_vector(rng, n);
  const double radius = r * std::pow(uniform(rng), 1.0 / (4.0 * static_cast<double>(n)));
  return v * (radius / v.norm());
}

}  // namespace fueter

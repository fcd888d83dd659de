#pragma once

// Derivative-free local minimisation in two parameters, plus Fibonacci
// sampling of the unit sphere S^2 (identified with Im H cap Sp(1)).

#include <Eigen/Dense>

#include <functional>
#include <vector>

namespace fueter {

struct NelderMeadResult {
  Eigen::Vector2d argmin;
  double value;
  double simplex_diameter;
  int iterations;
};

NelderMeadResult nelder_mead_2d(const std::function<double(const Eigen::Vector2d&)>& f,
                                const Eigen::Vector2d& start, double initial_step,
                                double tolerance = 1e-12, int max_iterations = 500);

std::vector<Eigen::Vector3d> fibonacci_sphere(int count);

// Grid search over the unit imaginary quaternions followed by multi-start
// Nelder-Mead in local tangent charts.
struct ImUnitSphereSampler {
  int count = 512;
  int starts = 4;
  double tolerance = 1e-13;
  int max_iterations = 500;

  void validate() const;
  std::vector<Eigen::Vector3d> nodes() const { return fibonacci_sphere(count); }
  // Upper bound for the geodesic distance from any point of S^2 to a node.
  double covering_radius() const;
};

struct SphereMinimum {
  Eigen::Vector3d argmin;
  double value;
  double grid_value;  // best value on the raw lattice
  double resolution;  // chordal size of the final simplex
};

SphereMinimum minimize_on_sphere(const std::function<double(const Eigen::Vector3d&)>& f,
                                 const ImUnitSphereSampler& sampler);

}  // namespace fueter

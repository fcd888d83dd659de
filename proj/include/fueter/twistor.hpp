#pragma once

// Double fibration over H^n inside CP^{2n+1}: the chart maps eta, their
// inverses, the twistor lines of points of M_{2n x 2}(C) and the hull test
// by line containment.

#include "fueter/domain.hpp"
#include "fueter/hull.hpp"
#include "fueter/quaternion.hpp"

#include <complex>
#include <vector>

namespace fueter {

// A point of CP^{2n+1}, stored as the unit representative whose first
// nonzero coordinate is positive real.
class TwistorPoint {
 public:
  static TwistorPoint from_homogeneous(const Eigen::VectorXcd& coords);

  const Eigen::VectorXcd& coords() const { return coords_; }
  Eigen::Index n() const { return (coords_.size() - 2) / 2; }

  // W_0 = {coordinate 0 != 0}, W_1 = {coordinate 1 != 0}
  bool in_chart(int chart, double tolerance = 0.0) const;

  // Affine coordinates (z_0, ..., z_{2n}) of W_0 resp. (w_0, ..., w_{2n}) of W_1.
  Eigen::VectorXcd affine(int chart) const;

  // sqrt(1 - |<u, v>|^2) for unit representatives, evaluated without
  // cancellation; zero iff equal.
  double distance(const TwistorPoint& other) const;

 private:
  explicit TwistorPoint(Eigen::VectorXcd c) : coords_(std::move(c)) {}
  Eigen::VectorXcd coords_;
};

struct FiberPoint {
  int chart = 0;   // 0: fiber coordinate z, 1: fiber coordinate w = 1/z
  cd fiber;
  QuaternionVectord base;
};

TwistorPoint eta(const FiberPoint& fp);

// Inverse of eta in the given chart; throws std::domain_error outside it.
FiberPoint eta_inverse(const TwistorPoint& tp, int chart);
// Inverse of eta in whichever chart has the larger leading coordinate.
FiberPoint eta_inverse(const TwistorPoint& tp);

// Base point of H^n from affine W_0 coordinates, resp. W_1 coordinates.
QuaternionVectord base_from_chart0(const Eigen::VectorXcd& affine0);
QuaternionVectord base_from_chart1(const Eigen::VectorXcd& affine1);

// [pi0 : pi1 : pi0 z_{A0'} + pi1 z_{A1'} ...]
TwistorPoint line_embed(const MatrixX2cd& sigma, cd pi0, cd pi1);
inline TwistorPoint line_embed(const Biquaterniond& sigma, cd pi0, cd pi1) {
  return line_embed(sigma.matrix(), pi0, pi1);
}

// Affine W_0 coordinates of line_embed(sigma, [1 : z]).
Eigen::VectorXcd line_chart0(const MatrixX2cd& sigma, cd z);

// The real base point of line_embed(sigma, [1 : z]) and its holomorphic
// derivative d/dz, both in interleaved complex coordinates (alpha_l, beta_l).
struct LineBase {
  Eigen::VectorXcd point;
  Eigen::VectorXcd dz;
};
LineBase line_base_chart0(const MatrixX2cd& sigma, cd z);

// Hopf grid on {(alpha, beta) : |alpha|^2 + |beta|^2 = 1} modulo phase:
// alpha = cos(t/2), beta = sin(t/2) e^{i phi}, uniform in |alpha|^2 and phi.
struct HopfGrid {
  int polar = 24;
  int azimuthal = 48;
  int starts = 4;
  double tolerance = 1e-13;
  int max_iterations = 500;

  struct Node {
    cd alpha, beta;
    double theta, phi;
  };
  std::vector<Node> nodes() const;
  double resolution() const;  // chordal spacing bound on the image sphere
};

// x + y (|alpha|^2 - |beta|^2) i + 2 y j conj(alpha) beta
QuaternionVectord sweep_point(const Biquaterniond& sigma, cd alpha, cd beta);
std::vector<QuaternionVectord> line_sweep(const Biquaterniond& sigma, const HopfGrid& grid = {});

// Base point of the quaternionic line through line_embed(sigma, [alpha : beta]),
// computed through eta_inverse.
QuaternionVectord line_base_point(const Biquaterniond& sigma, cd alpha, cd beta);

struct LineHullQuery {
  Membership membership = Membership::indeterminate;
  double inf_value = 0.0;
  cd argmin_alpha, argmin_beta;
  double band = 0.0;

  bool verdict() const { return membership == Membership::inside; }
};

// Sigma is in H(U) iff every base point of its twistor line lies in U.
LineHullQuery hull_contains_via_lines(const Biquaterniond& sigma, const Domain& domain,
                                      const HopfGrid& grid = {});

}  // namespace fueter

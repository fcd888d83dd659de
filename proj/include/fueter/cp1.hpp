#pragma once

// Line bundles Q_k over CP^1 in the two standard charts z (X_0) and
// w = 1/z (X_1), (0,1)-forms with values in Q_k, and quadrature over C.

#include "fueter/quaternion.hpp"

#include <nlohmann/json.hpp>

#include <functional>
#include <vector>

namespace fueter {

// (1/(2 pi i)) int g dzbar ^ dz = (1/pi) int g dA, after z = c + s rho/(1 - rho) e^{i phi}:
// Gauss-Legendre in rho on [0, 1), periodic trapezoid in phi.
struct QuadratureConfig {
  int radial = 64;
  int angular = 64;
  double scale = 1.0;       // s
  cd center = 0.0;          // c
  double tolerance = 1e-11; // between successive doublings, relative to max(1, |value|)
  int max_doublings = 4;
  bool adaptive = true;     // false: a single evaluation at (radial, angular)

  void validate() const;
  nlohmann::json to_json() const;
};

QuadratureConfig quadrature_from_json(const nlohmann::json& j);

struct GaussLegendre {
  std::vector<double> nodes, weights;  // on [0, 1]
};
// Cached per node count.
const GaussLegendre& gauss_legendre01(int count);

struct QuadratureResult {
  Eigen::VectorXcd value;
  double change = 0.0;  // size of the last doubling correction
  int radial = 0, angular = 0;
};

// Vector-valued integrand with `dim` components.
QuadratureResult integrate_plane(const std::function<Eigen::VectorXcd(cd)>& g, Eigen::Index dim,
                                 const QuadratureConfig& cfg = {});

cd quadrature_c(const std::function<cd(cd)>& g, const QuadratureConfig& cfg = {});

// (1/2 pi i) int z^l g dzbar ^ dz for l = 0..count-1
QuadratureResult moments(const std::function<cd(cd)>& g, int count, const QuadratureConfig& cfg = {});

// ---------------------------------------------------------------------------

struct BundleSection {
  int k = 0;
  std::function<cd(cd)> f0, f1;
};

struct Form01 {
  int k = -3;
  std::function<cd(cd)> h0, h1;  // coefficients of dzbar and dwbar
};

struct ClutchingReport {
  double max_violation = 0.0;  // |lhs - rhs| / max(1, |rhs|)
  cd worst_z;
  std::size_t samples = 0;
  bool passed(double tol = 1e-9) const { return max_violation <= tol; }
};

// Log-polar grid on 0.1 <= |z| <= 10.
std::vector<cd> annulus_samples(int radial = 17, int angular = 16);

// f1(1/z) = z^{-k} f0(z)
ClutchingReport validate_section(const BundleSection& s, const std::vector<cd>& zs = annulus_samples());
// h1(1/z) = -z^{-k} zbar^2 h0(z)
ClutchingReport validate_form(const Form01& w, const std::vector<cd>& zs = annulus_samples());

enum class Limit { zero, finite, divergent };
std::string to_string(Limit l);

struct DecayReport {
  std::vector<double> radii;
  std::vector<double> magnitudes;  // max over angles of |z^l zbar^m f|
  Limit limit = Limit::divergent;
  bool passed() const { return limit != Limit::divergent; }
};

// Limit of z^l f0(z) as z -> infinity; requires l <= -k.
DecayReport decay_check(const BundleSection& s, int l);
// Limit of z^l zbar^m h0(z); requires l + m < -k + 2.
DecayReport decay_check(const Form01& w, int l, int m);
// Classification of an arbitrary chart function, no exponent precondition.
DecayReport decay_profile(const std::function<cd(cd)>& f, int l, int m);

// a_l = (1/2 pi i) int z^l h0 dzbar ^ dz, l = 0..-k-2. Requires k <= -2.
Eigen::VectorXcd cohomology_coefficients(const Form01& w, const QuadratureConfig& cfg = {});

// (a0 dzbar + a1 zbar dzbar) 2/(1 + |z|^2)^3 in chart 0, k = -3.
Form01 harmonic_representative(cd a0, cd a1);

int h1_dimension(int k);

// C-infinity bump exp(-1/(1 - t^2)), t = |z - center| / radius, as a global
// section of Q_k (support bounded in chart 0), and its dbar.
struct Bump {
  cd center;
  double radius = 1.0;

  double profile(cd z) const;
  cd dzbar(cd z) const;  // closed form
  BundleSection section(int k) const;
  // h0 in closed form, h1 by finite differences of the chart-1 section.
  Form01 exact_form(int k) const;
  // Same rule with the compactification centred on the bump and scaled to its
  // radius, so the support edge sits at a fixed radial node position.
  QuadratureConfig fitted(QuadratureConfig q) const;
};

}  // namespace fueter

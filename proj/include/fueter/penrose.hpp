#pragma once

// (0,1)-forms with values in L = L_{-3} over the twistor space of U, written
// in the chart frames (dzbar, dX_0^1, ..., dX_0^{2n}) resp. (dwbar, dX_1^i),
// and the fiber integrals that turn them into monogenic functions.
//
// Anti-holomorphic frame in chart 0, block l (1-based i = 2l+1, 2l+2):
//   X_0^{2l+1} = z d/dbeta_l - d/dalphabar_l
//   X_0^{2l+2} = z d/dalpha_l + d/dbetabar_l

#include "fueter/cf_operator.hpp"
#include "fueter/cp1.hpp"
#include "fueter/fields.hpp"
#include "fueter/hull.hpp"
#include "fueter/twistor.hpp"

#include <nlohmann/json.hpp>

#include <functional>

namespace fueter {

struct TwistorForm {
  int k = -3;
  int n = 1;
  std::function<cd(cd, const QuaternionVectord&)> dzbar0;  // chart 0, coefficient of dzbar
  std::function<cd(cd, const QuaternionVectord&)> dwbar1;  // chart 1, coefficient of dwbar
  // Coefficients of dX_0^i (chart 0) and dX_1^i (chart 1), 2n each.
  std::function<Eigen::VectorXcd(cd, const QuaternionVectord&)> kpart0, kpart1;

  // The dzbar-part at fixed base point as a form on CP^1.
  Form01 fiber(const QuaternionVectord& x) const;
};

// 2 (psi0 + psi1 zbar) / (1 + |z|^2)^3 dzbar, no K-part.
TwistorForm sharp(const ScalarField& psi);

// sharp(psi) plus the K-part theta with dbar_z theta_i = X_0^i of the
// dzbar-coefficient, so that the dzbar ^ dX_0^i components vanish
// identically. Derivatives of psi by finite differences with step h.
TwistorForm closed_sharp(const ScalarField& psi, double h = 1e-5);

// Max violations of h1(1/z) = -z^3 zbar^2 h0(z) and of the K-part
// transition omega^1(1/z) = z^2 omega^0(z), at base point x.
struct FormClutching {
  double fiber = 0.0;
  double kpart = 0.0;
};
FormClutching validate_twistor_form(const TwistorForm& w, const QuaternionVectord& x,
                                    const std::vector<cd>& zs = annulus_samples(9, 8));

// (1/2 pi i) int z^A h_0(z, x) dzbar ^ dz, A = 0, 1.
Eigen::Vector2cd tau_push_01(const TwistorForm& w, const QuaternionVectord& x,
                             const QuadratureConfig& q = {});

// X_0^i g at (z, x) for g smooth in (z, x); i is 0-based.
cd frame_apply(const std::function<cd(cd, const QuaternionVectord&)>& g, int i, cd z,
               const QuaternionVectord& x, double h);

struct ZeroTwo {
  Eigen::VectorXcd zbar_i;  // C_{zbar, i} = dbar_z w_i - X^i w_zbar
  Eigen::MatrixXcd ij;      // C_{i, j} = X^i w_j - X^j w_i
};
ZeroTwo dbar_chart0(const TwistorForm& w, cd z, const QuaternionVectord& x, const FdConfig& cfg = {});

// Component i: (1/2 pi i) int C_{zbar, i}(z, x) dzbar ^ dz.
Eigen::VectorXcd tau_push_02(const TwistorForm& w, const QuaternionVectord& x,
                             const FdConfig& cfg = {}, const QuadratureConfig& q = {});

// Pull-back of the form along the twistor line of sigma in chart 0 and the
// two moment integrals. On y = 0 this is tau_push_01 at x.
QuadratureResult line_integral(const TwistorForm& w, const MatrixX2cd& sigma,
                               const QuadratureConfig& q = {});

struct TransformResult {
  Eigen::Vector2cd value;
  double closedness = 0.0;  // |tau_push_02(dbar w)| when certified, else 0
  bool certified = false;
};

struct TransformOptions {
  QuadratureConfig quadrature{};
  // The certificate integrates finite differences; its tolerance sits above their noise floor.
  QuadratureConfig certificate_quadrature{64, 64, 1.0, 0.0, 1e-8};
  FdConfig fd{};
  bool certify = true;
  double closedness_tol = 1e-4;
};

// Penrose transform at a point of U. Goes through line_integral with (x, 0).
// Throws CertificateError when the closedness certificate fails.
TransformResult penrose_transform(const TwistorForm& w, const QuaternionVectord& x,
                                  const TransformOptions& opt = {});

struct ComplexTransformResult {
  Eigen::Vector2cd value;
  HullQuery hull;
};

// Holomorphic extension at sigma in H(U). Throws std::domain_error when
// sigma is not certainly inside the hull.
ComplexTransformResult penrose_transform_complex(const TwistorForm& w, const Biquaterniond& sigma,
                                                 const Domain& domain,
                                                 const QuadratureConfig& q = {});

// line_integral as a field on M_{2n x 2}(C), for finite-difference checks.
ComplexField penrose_field(const TwistorForm& w, const QuadratureConfig& q);

// tau_push_02(dbar_chart0(sharp psi)) = kappa * P(r) per block, where r is
// cf_residual_complex and P one of four slot patterns (r1, r2), (r1, -r2),
// (r2, r1), (r2, -r1).
struct DiagramCalibration {
  cd kappa;
  bool swap = false;
  double second_sign = 1.0;
  double fit_residual = 0.0;  // relative least-squares residual
  std::size_t points = 0;

  Eigen::VectorXcd apply(const Eigen::VectorXcd& residual) const;
  nlohmann::json to_json() const;
};

DiagramCalibration calibrate_kappa(const ScalarField& psi, std::span<const QuaternionVectord> points,
                                   const FdConfig& cfg = {}, const QuadratureConfig& q = {});

// Calibration on nonmonogenic_quadratic, n = 1, at 5 fixed points; computed once.
const DiagramCalibration& default_calibration();

struct DiagramReport {
  double max_residual = 0.0;  // max |lhs - rhs|
  double max_lhs = 0.0;       // max |tau_push_02(dbar sharp psi)|
  double max_rhs = 0.0;       // max |kappa D psi|
  std::vector<double> per_point;
};

DiagramReport diagram_check(const ScalarField& psi, std::span<const QuaternionVectord> points,
                            const DiagramCalibration& cal, const FdConfig& cfg = {},
                            const QuadratureConfig& q = {});

}  // namespace fueter

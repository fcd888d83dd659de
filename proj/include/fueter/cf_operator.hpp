#pragma once

// The n-Cauchy-Fueter operator D = (d/dqbar_1, ..., d/dqbar_n), its complex
// form and the holomorphic operator on M_{2n x 2}(C), all by finite
// differences.
//
// Variable blocks are 0-based here: block l holds q_{l+1}.

#include "fueter/fd.hpp"
#include "fueter/fields.hpp"

#include <nlohmann/json.hpp>

#include <span>

namespace fueter {

// dpsi/dx0 + i dpsi/dx1 + j dpsi/dx2 + k dpsi/dx3 in block l, units on the left.
Quaterniond dbar_q(const ScalarField& psi, Eigen::Index block, const QuaternionVectord& p,
                   const FdConfig& cfg = {});

QuaternionVectord cf_apply(const ScalarField& psi, const QuaternionVectord& p,
                           const FdConfig& cfg = {});

// Wirtinger derivatives of (psi0, psi1) in block l.
struct PairDerivatives {
  Eigen::Vector2cd d_alpha, d_alphabar, d_beta, d_betabar;
};
PairDerivatives pair_derivatives(const std::function<Eigen::Vector2cd(const QuaternionVectord&)>& pair,
                                 Eigen::Index block, const QuaternionVectord& p, double h,
                                 FdScheme scheme = FdScheme::central);

// Per block l: (d_beta psi1 - d_alphabar psi0, d_alpha psi1 + d_betabar psi0),
// stored at 2l and 2l + 1. The quaternion D psi in block l has complex pair
// (-2 r_{2l}, 2 r_{2l+1}).
Eigen::VectorXcd cf_residual_complex(const ScalarField& psi, const QuaternionVectord& p,
                                     const FdConfig& cfg = {});

// Slot A: d psi1 / dz_{A0'} - d psi0 / dz_{A1'}.
Eigen::VectorXcd dC_apply(const ComplexField& psi, const MatrixX2cd& z, const FdConfig& cfg = {});

struct MonogenicReport {
  std::string field;
  int n = 1;
  std::size_t samples = 0;
  double tol = 0.0;
  double max_residual = 0.0;
  QuaternionVectord worst_point;
  bool verdict = false;
};

MonogenicReport is_monogenic(const ScalarField& psi, std::span<const QuaternionVectord> points,
                             double tol, const FdConfig& cfg = {});

nlohmann::json to_json(const MonogenicReport& r);

}  // namespace fueter

#include "fueter/cf_operator.hpp"

#include "fueter/errors.hpp"
#include "fueter/parallel.hpp"

#include <stdexcept>

namespace fueter {

namespace {

void check_block(const ScalarField& psi, Eigen::Index block, const QuaternionVectord& p) {
  if (p.size() != psi.n()) throw std::invalid_argument("point and field differ in n");
  if (block < 0 || block >= psi.n()) throw std::invalid_argument("variable block out of range");
  // the central stencil never samples p itself
  if (!psi.domain().contains(p)) throw DomainError("derivative requested outside the domain", p.coords());
}

}  // namespace

Quaterniond dbar_q(const ScalarField& psi, Eigen::Index block, const QuaternionVectord& p,
                   const FdConfig& cfg) {
  check_block(psi, block, p);
  const double h = cfg.step_at(p.norm());
  auto f = [&](const Eigen::VectorXd& v) { return psi.checked(QuaternionVectord(v)); };
  const Quaterniond units[4] = {Quaterniond(1.0), Quaterniond::unit_i(), Quaterniond::unit_j(),
                                Quaterniond::unit_k()};
  Quaterniond out;
  for (int c = 0; c < 4; ++c) out += units[c] * partial(f, p.coords(), 4 * block + c, h, cfg.scheme);
  return out;
}

QuaternionVectord cf_apply(const ScalarField& psi, const QuaternionVectord& p, const FdConfig& cfg) {
  QuaternionVectord out(psi.n());
  for (Eigen::Index l = 0; l < psi.n(); ++l) out.set(l, dbar_q(psi, l, p, cfg));
  return out;
}

PairDerivatives pair_derivatives(const std::function<Eigen::Vector2cd(const QuaternionVectord&)>& pair,
                                 Eigen::Index block, const QuaternionVectord& p, double h,
                                 FdScheme scheme) {
  auto f = [&](const Eigen::VectorXd& v) { return Eigen::Vector2cd(pair(QuaternionVectord(v))); };
  const auto b = 4 * block;
  const Eigen::Vector2cd d0 = partial(f, p.coords(), b, h, scheme);
  const Eigen::Vector2cd d1 = partial(f, p.coords(), b + 1, h, scheme);
  const Eigen::Vector2cd d2 = partial(f, p.coords(), b + 2, h, scheme);
  const Eigen::Vector2cd d3 = partial(f, p.coords(), b + 3, h, scheme);
  const cd i(0.0, 1.0);
  return {(d0 - i * d1) * 0.5, (d0 + i * d1) * 0.5, (d3 - i * d2) * 0.5, (d3 + i * d2) * 0.5};
}

Eigen::VectorXcd cf_residual_complex(const ScalarField& psi, const QuaternionVectord& p,
                                     const FdConfig& cfg) {
  check_block(psi, 0, p);
  const double h = cfg.step_at(p.norm());
  auto pair = [&](const QuaternionVectord& v) { return psi.checked_pair(v); };
  Eigen::VectorXcd out(2 * psi.n());
  for (Eigen::Index l = 0; l < psi.n(); ++l) {
    const auto d = pair_derivatives(pair, l, p, h, cfg.scheme);
    out[2 * l] = d.d_beta[1] - d.d_alphabar[0];
    out[2 * l + 1] = d.d_alpha[1] + d.d_betabar[0];
  }
  return out;
}

Eigen::VectorXcd dC_apply(const ComplexField& psi, const MatrixX2cd& z, const FdConfig& cfg) {
  if (z.rows() != 2 * psi.n) throw std::invalid_argument("matrix and field differ in n");
  const double h = cfg.step_at(z.norm());
  auto along = [&](Eigen::Index row, Eigen::Index col) {
    return wirtinger_z(
        [&](cd t) {
          MatrixX2cd w = z;
          w(row, col) = t;
          return Eigen::Vector2cd(psi(w));
        },
        z(row, col), h);
  };
  Eigen::VectorXcd out(z.rows());
  for (Eigen::Index a = 0; a < z.rows(); ++a) out[a] = along(a, 0)[1] - along(a, 1)[0];
  return out;
}

MonogenicReport is_monogenic(const ScalarField& psi, std::span<const QuaternionVectord> points,
                             double tol, const FdConfig& cfg) {
  if (points.empty()) throw std::invalid_argument("is_monogenic needs at least one sample point");
  std::vector<double> residual(points.size());
  parallel_for(points.size(), [&](std::size_t k) { residual[k] = cf_apply(psi, points[k], cfg).norm(); });
  MonogenicReport r;
  r.n = psi.n();
  r.samples = points.size();
  r.tol = tol;
  std::size_t worst = 0;
  for (std::size_t k = 1; k < residual.size(); ++k)
    if (residual[k] > residual[worst]) worst = k;
  r.max_residual = residual[worst];
  r.worst_point = points[worst];
  r.verdict = r.max_residual <= tol;
  return r;
}

nlohmann::json to_json(const MonogenicReport& r) {
  return {{"field", r.field},           {"n", r.n},
          {"samples", r.samples},       {"tol", r.tol},
          {"max_residual", r.max_residual}, {"worst_point", to_json(r.worst_point)},
          {"verdict", r.verdict}};
}

}  // namespace fueter

#include "fueter/penrose.hpp"

#include "fueter/errors.hpp"

#include <limits>
#include <stdexcept>

namespace fueter {

namespace {

cd ipow(cd z, int e) {
  cd base = e < 0 ? 1.0 / z : z;
  cd out = 1.0;
  for (int k = std::abs(e); k > 0; --k) out *= base;
  return out;
}

double cube(double d) { return d * d * d; }

// Columns i = 0..2n-1: X_0^i applied to G(z, .) at x.
template <typename G>
Eigen::MatrixXcd frame_matrix(G&& g, cd z, const QuaternionVectord& x, double h) {
  const Eigen::Index n = x.size();
  auto f = [&](const Eigen::VectorXd& v) { return Eigen::VectorXcd(g(z, QuaternionVectord(v))); };
  const Eigen::VectorXcd probe = f(x.coords());
  Eigen::MatrixXcd out(probe.size(), 2 * n);
  const cd i(0.0, 1.0);
  for (Eigen::Index l = 0; l < n; ++l) {
    const Eigen::VectorXcd d0 = partial(f, x.coords(), 4 * l, h);
    const Eigen::VectorXcd d1 = partial(f, x.coords(), 4 * l + 1, h);
    const Eigen::VectorXcd d2 = partial(f, x.coords(), 4 * l + 2, h);
    const Eigen::VectorXcd d3 = partial(f, x.coords(), 4 * l + 3, h);
    const Eigen::VectorXcd da = (d0 - i * d1) * 0.5, dab = (d0 + i * d1) * 0.5;
    const Eigen::VectorXcd db = (d3 - i * d2) * 0.5, dbb = (d3 + i * d2) * 0.5;
    out.col(2 * l) = z * db - dab;
    out.col(2 * l + 1) = z * da + dbb;
  }
  return out;
}

Eigen::VectorXcd zbar_components(const TwistorForm& w, cd z, const QuaternionVectord& x,
                                 const FdConfig& cfg) {
  const double h = cfg.step_at(x.norm());
  const double hz = cfg.step_at(std::abs(z));
  const Eigen::VectorXcd dk =
      wirtinger_zbar([&](cd t) { return Eigen::VectorXcd(w.kpart0(t, x)); }, z, hz);
  const Eigen::MatrixXcd xw = frame_matrix(
      [&](cd t, const QuaternionVectord& p) { return Eigen::VectorXcd::Constant(1, w.dzbar0(t, p)); },
      z, x, h);
  return dk - xw.row(0).transpose();
}

}  // namespace

Form01 TwistorForm::fiber(const QuaternionVectord& x) const {
  auto h0 = dzbar0;
  auto h1 = dwbar1;
  return {k, [h0, x](cd z) { return h0(z, x); }, [h1, x](cd v) { return h1(v, x); }};
}

TwistorForm sharp(const ScalarField& psi) {
  TwistorForm w;
  w.n = psi.n();
  const int n = w.n;
  w.dzbar0 = [psi](cd z, const QuaternionVectord& x) {
    const auto p = psi.pair(x);
    return 2.0 * (p[0] + p[1] * std::conj(z)) / cube(1.0 + std::norm(z));
  };
  w.dwbar1 = [psi](cd v, const QuaternionVectord& x) {
    const auto p = psi.pair(x);
    return 2.0 * (-p[0] * std::conj(v) - p[1]) / cube(1.0 + std::norm(v));
  };
  w.kpart0 = [n](cd, const QuaternionVectord&) { return Eigen::VectorXcd::Zero(2 * n).eval(); };
  w.kpart1 = w.kpart0;
  return w;
}

TwistorForm closed_sharp(const ScalarField& psi, double h) {
  TwistorForm w = sharp(psi);
  const int n = w.n;
  // Coefficients of theta in block l, as polynomials in zbar (chart 0) or wbar (chart 1).
  struct Coeffs {
    cd a, b, c, d, e, f;
  };
  auto coeffs = [psi, h](const QuaternionVectord& x, Eigen::Index l) {
    const auto pd = pair_derivatives([&](const QuaternionVectord& p) { return psi.checked_pair(p); },
                                     l, x, h);
    return Coeffs{(pd.d_alphabar[0] + pd.d_beta[1]) * 0.5, pd.d_beta[0], pd.d_alphabar[1],
                  (pd.d_betabar[0] - pd.d_alpha[1]) * 0.5, pd.d_alpha[0], pd.d_betabar[1]};
  };
  w.kpart0 = [n, coeffs](cd z, const QuaternionVectord& x) {
    Eigen::VectorXcd out(2 * n);
    const cd zb = std::conj(z);
    const double d = 1.0 + std::norm(z);
    for (Eigen::Index l = 0; l < n; ++l) {
      const auto c = coeffs(x, l);
      out[2 * l] = -(c.b + 2.0 * c.a * zb + c.c * zb * zb) / (d * d);
      out[2 * l + 1] = (-c.e + 2.0 * c.d * zb + c.f * zb * zb) / (d * d);
    }
    return out;
  };
  w.kpart1 = [n, coeffs](cd v, const QuaternionVectord& x) {
    Eigen::VectorXcd out(2 * n);
    const cd vb = std::conj(v);
    const double d = 1.0 + std::norm(v);
    for (Eigen::Index l = 0; l < n; ++l) {
      const auto c = coeffs(x, l);
      out[2 * l] = -(c.b * vb * vb + 2.0 * c.a * vb + c.c) / (d * d);
      out[2 * l + 1] = (-c.e * vb * vb + 2.0 * c.d * vb + c.f) / (d * d);
    }
    return out;
  };
  return w;
}

FormClutching validate_twistor_form(const TwistorForm& w, const QuaternionVectord& x,
                                    const std::vector<cd>& zs) {
  FormClutching out;
  for (cd z : zs) {
    const cd rhs = -ipow(z, -w.k) * std::conj(z) * std::conj(z) * w.dzbar0(z, x);
    out.fiber = std::max(out.fiber, std::abs(w.dwbar1(1.0 / z, x) - rhs) / std::max(1.0, std::abs(rhs)));
    const Eigen::VectorXcd k0 = ipow(z, -w.k - 1) * w.kpart0(z, x);
    const Eigen::VectorXcd k1 = w.kpart1(1.0 / z, x);
    out.kpart = std::max(out.kpart, (k1 - k0).norm() / std::max(1.0, k0.norm()));
  }
  return out;
}

Eigen::Vector2cd tau_push_01(const TwistorForm& w, const QuaternionVectord& x,
                             const QuadratureConfig& q) {
  return moments([&](cd z) { return w.dzbar0(z, x); }, 2, q).value;
}

cd frame_apply(const std::function<cd(cd, const QuaternionVectord&)>& g, int i, cd z,
               const QuaternionVectord& x, double h) {
  if (i < 0 || i >= 2 * x.size()) throw std::invalid_argument("frame index out of range");
  const auto m = frame_matrix(
      [&](cd t, const QuaternionVectord& p) { return Eigen::VectorXcd::Constant(1, g(t, p)); }, z, x, h);
  return m(0, i);
}

ZeroTwo dbar_chart0(const TwistorForm& w, cd z, const QuaternionVectord& x, const FdConfig& cfg) {
  ZeroTwo out;
  out.zbar_i = zbar_components(w, z, x, cfg);
  // xk(j, i) = X^i w_j
  const Eigen::MatrixXcd xk = frame_matrix(
      [&](cd t, const QuaternionVectord& p) { return Eigen::VectorXcd(w.kpart0(t, p)); }, z, x,
      cfg.step_at(x.norm()));
  out.ij = xk.transpose() - xk;
  return out;
}

Eigen::VectorXcd tau_push_02(const TwistorForm& w, const QuaternionVectord& x, const FdConfig& cfg,
                             const QuadratureConfig& q) {
  return integrate_plane([&](cd z) { return zbar_components(w, z, x, cfg); }, 2 * w.n, q).value;
}

QuadratureResult line_integral(const TwistorForm& w, const MatrixX2cd& sigma,
                               const QuadratureConfig& q) {
  if (sigma.rows() != 2 * w.n) throw std::invalid_argument("sigma and form differ in n");
  return integrate_plane(
      [&](cd z) {
        const LineBase lb = line_base_chart0(sigma, z);
        const auto x = QuaternionVectord::from_complex(lb.point);
        cd h = w.dzbar0(z, x);
        const Eigen::VectorXcd k = w.kpart0(z, x);
        for (Eigen::Index l = 0; l < w.n; ++l)
          h += k[2 * l] * -std::conj(lb.dz[2 * l]) + k[2 * l + 1] * std::conj(lb.dz[2 * l + 1]);
        Eigen::VectorXcd v(2);
        v << h, z * h;
        return v;
      },
      2, q);
}

TransformResult penrose_transform(const TwistorForm& w, const QuaternionVectord& x,
                                  const TransformOptions& opt) {
  TransformResult out;
  if (opt.certify) {
    out.closedness = tau_push_02(w, x, opt.fd, opt.certificate_quadrature).norm();
    out.certified = true;
    if (!(out.closedness <= opt.closedness_tol))
      throw CertificateError("closedness certificate failed: |tau_*(dbar w)| = " +
                             std::to_string(out.closedness));
  }
  out.value = line_integral(w, Biquaterniond(x).matrix(), opt.quadrature).value;
  return out;
}

ComplexTransformResult penrose_transform_complex(const TwistorForm& w, const Biquaterniond& sigma,
                                                 const Domain& domain, const QuadratureConfig& q) {
  ComplexTransformResult out;
  out.hull = hull_contains(sigma, domain);
  if (!out.hull.verdict())
    throw std::domain_error("sigma is " + to_string(out.hull.membership) +
                            " with respect to the monogenic hull; its twistor line leaves the twistor space");
  out.value = line_integral(w, sigma.matrix(), q).value;
  return out;
}

ComplexField penrose_field(const TwistorForm& w, const QuadratureConfig& q) {
  return {w.n, [w, q](const MatrixX2cd& z) { return Eigen::Vector2cd(line_integral(w, z, q).value); }, {}};
}

// ---------------------------------------------------------------------------

namespace {

Eigen::VectorXcd pattern(const Eigen::VectorXcd& r, bool swap, double sign) {
  Eigen::VectorXcd out(r.size());
  for (Eigen::Index l = 0; l + 1 < r.size(); l += 2) {
    out[l] = swap ? r[l + 1] : r[l];
    out[l + 1] = sign * (swap ? r[l] : r[l + 1]);
  }
  return out;
}

}  // namespace

Eigen::VectorXcd DiagramCalibration::apply(const Eigen::VectorXcd& residual) const {
  return kappa * pattern(residual, swap, second_sign);
}

nlohmann::json DiagramCalibration::to_json() const {
  return {{"kappa", {kappa.real(), kappa.imag()}},
          {"swap", swap},
          {"second_sign", second_sign},
          {"fit_residual", fit_residual},
          {"points", points}};
}

DiagramCalibration calibrate_kappa(const ScalarField& psi, std::span<const QuaternionVectord> points,
                                   const FdConfig& cfg, const QuadratureConfig& q) {
  if (points.empty()) throw std::invalid_argument("calibration needs sample points");
  const TwistorForm w = sharp(psi);
  std::vector<Eigen::VectorXcd> lhs, res;
  for (const auto& x : points) {
    lhs.push_back(tau_push_02(w, x, cfg, q));
    res.push_back(cf_residual_complex(psi, x, cfg));
  }
  DiagramCalibration best;
  best.fit_residual = std::numeric_limits<double>::infinity();
  best.points = points.size();
  for (bool swap : {false, true}) {
    for (double sign : {1.0, -1.0}) {
      cd num = 0.0;
      double den = 0.0, total = 0.0;
      for (std::size_t k = 0; k < lhs.size(); ++k) {
        const auto v = pattern(res[k], swap, sign);
        num += v.dot(lhs[k]);  // conj(v) . lhs
        den += v.squaredNorm();
        total += lhs[k].squaredNorm();
      }
      if (!(den > 0.0)) throw std::invalid_argument("calibration field is monogenic at every point");
      const cd kappa = num / den;
      double miss = 0.0;
      for (std::size_t k = 0; k < lhs.size(); ++k)
        miss += (lhs[k] - kappa * pattern(res[k], swap, sign)).squaredNorm();
      const double rel = std::sqrt(miss / std::max(total, 1e-300));
      if (rel < best.fit_residual) {
        best.kappa = kappa;
        best.swap = swap;
        best.second_sign = sign;
        best.fit_residual = rel;
      }
    }
  }
  return best;
}

const DiagramCalibration& default_calibration() {
  static const DiagramCalibration cal = [] {
    const auto& entry = field_entry("nonmonogenic_quadratic");
    Rng rng(20240601);
    std::vector<QuaternionVectord> pts;
    for (int k = 0; k < 5; ++k) pts.push_back(entry.sample(rng, 1));
    QuadratureConfig q;
    q.tolerance = 1e-9;
    return calibrate_kappa(entry.make(1), pts, {}, q);
  }();
  return cal;
}

DiagramReport diagram_check(const ScalarField& psi, std::span<const QuaternionVectord> points,
                            const DiagramCalibration& cal, const FdConfig& cfg,
                            const QuadratureConfig& q) {
  const TwistorForm w = sharp(psi);
  DiagramReport rep;
  for (const auto& x : points) {
    const Eigen::VectorXcd lhs = tau_push_02(w, x, cfg, q);
    const Eigen::VectorXcd rhs = cal.apply(cf_residual_complex(psi, x, cfg));
    const double d = (lhs - rhs).norm();
    rep.per_point.push_back(d);
    rep.max_residual = std::max(rep.max_residual, d);
    rep.max_lhs = std::max(rep.max_lhs, lhs.norm());
    rep.max_rhs = std::max(rep.max_rhs, rhs.norm());
  }
  return rep;
}

}  // namespace fueter

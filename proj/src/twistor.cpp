#include "fueter/twistor.hpp"

#include "fueter/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace fueter {

TwistorPoint TwistorPoint::from_homogeneous(const Eigen::VectorXcd& coords) {
  if (coords.size() < 4 || coords.size() % 2 != 0)
    throw std::invalid_argument("twistor point needs 2n + 2 coordinates");
  const double len = coords.norm();
  if (!(len > 0.0)) throw std::invalid_argument("all homogeneous coordinates vanish");
  Eigen::VectorXcd unit = coords / len;
  for (Eigen::Index i = 0; i < unit.size(); ++i) {
    const double mag = std::abs(unit[i]);
    if (mag > 1e-12) {
      unit *= std::conj(unit[i]) / mag;
      unit[i] = mag;
      break;
    }
  }
  return TwistorPoint(std::move(unit));
}

bool TwistorPoint::in_chart(int chart, double tolerance) const {
  if (chart != 0 && chart != 1) throw std::invalid_argument("chart must be 0 or 1");
  return std::abs(coords_[chart]) > tolerance;
}

Eigen::VectorXcd TwistorPoint::affine(int chart) const {
  if (!in_chart(chart)) throw std::domain_error("twistor point outside the requested chart");
  const Eigen::Index m = coords_.size() - 1;
  Eigen::VectorXcd out(m);
  const cd lead = coords_[chart];
  out[0] = coords_[1 - chart] / lead;
  out.tail(m - 1) = coords_.tail(m - 1) / lead;
  return out;
}

double TwistorPoint::distance(const TwistorPoint& other) const {
  // sine of the angle, via the part of this point orthogonal to the other
  const Eigen::VectorXcd rest = coords_ - other.coords_ * other.coords_.dot(coords_);
  return std::min(1.0, rest.norm());
}

TwistorPoint eta(const FiberPoint& fp) {
  const auto v = fp.base.to_complex();
  const Eigen::Index n = fp.base.size();
  Eigen::VectorXcd c(2 * n + 2);
  if (fp.chart == 0) {
    const cd z = fp.fiber;
    c[0] = 1.0;
    c[1] = z;
    for (Eigen::Index l = 0; l < n; ++l) {
      const cd a = v[2 * l], b = v[2 * l + 1];
      c[2 + 2 * l] = a - z * std::conj(b);
      c[3 + 2 * l] = b + z * std::conj(a);
    }
  } else if (fp.chart == 1) {
    const cd w = fp.fiber;
    c[0] = w;
    c[1] = 1.0;
    for (Eigen::Index l = 0; l < n; ++l) {
      const cd a = v[2 * l], b = v[2 * l + 1];
      c[2 + 2 * l] = w * a - std::conj(b);
      c[3 + 2 * l] = w * b + std::conj(a);
    }
  } else {
    throw std::invalid_argument("chart must be 0 or 1");
  }
  return TwistorPoint::from_homogeneous(c);
}

QuaternionVectord base_from_chart0(const Eigen::VectorXcd& a) {
  const Eigen::Index n = (a.size() - 1) / 2;
  const cd z0 = a[0];
  const double d = 1.0 + std::norm(z0);
  Eigen::VectorXcd v(2 * n);
  for (Eigen::Index l = 0; l < n; ++l) {
    const cd odd = a[2 * l + 1], even = a[2 * l + 2];
    v[2 * l] = (odd + z0 * std::conj(even)) / d;
    v[2 * l + 1] = (even - z0 * std::conj(odd)) / d;
  }
  return QuaternionVectord::from_complex(v);
}

QuaternionVectord base_from_chart1(const Eigen::VectorXcd& a) {
  const Eigen::Index n = (a.size() - 1) / 2;
  const cd w0 = a[0];
  const double d = 1.0 + std::norm(w0);
  Eigen::VectorXcd v(2 * n);
  for (Eigen::Index l = 0; l < n; ++l) {
    const cd odd = a[2 * l + 1], even = a[2 * l + 2];
    v[2 * l] = (std::conj(even) + std::conj(w0) * odd) / d;
    v[2 * l + 1] = (-std::conj(odd) + std::conj(w0) * even) / d;
  }
  return QuaternionVectord::from_complex(v);
}

FiberPoint eta_inverse(const TwistorPoint& tp, int chart) {
  const auto a = tp.affine(chart);
  return {chart, a[0], chart == 0 ? base_from_chart0(a) : base_from_chart1(a)};
}

FiberPoint eta_inverse(const TwistorPoint& tp) {
  const auto& c = tp.coords();
  if (std::abs(c[0]) == 0.0 && std::abs(c[1]) == 0.0)
    throw std::domain_error("twistor point lies outside W_0 and W_1");
  return eta_inverse(tp, std::abs(c[0]) >= std::abs(c[1]) ? 0 : 1);
}

TwistorPoint line_embed(const MatrixX2cd& sigma, cd pi0, cd pi1) {
  if (pi0 == 0.0 && pi1 == 0.0) throw std::invalid_argument("[0 : 0] is not a point of CP^1");
  Eigen::VectorXcd c(sigma.rows() + 2);
  c[0] = pi0;
  c[1] = pi1;
  c.tail(sigma.rows()) = pi0 * sigma.col(0) + pi1 * sigma.col(1);
  return TwistorPoint::from_homogeneous(c);
}

Eigen::VectorXcd line_chart0(const MatrixX2cd& sigma, cd z) {
  Eigen::VectorXcd a(sigma.rows() + 1);
  a[0] = z;
  a.tail(sigma.rows()) = sigma.col(0) + z * sigma.col(1);
  return a;
}

LineBase line_base_chart0(const MatrixX2cd& sigma, cd z) {
  const Eigen::Index n = sigma.rows() / 2;
  const cd zb = std::conj(z);
  const double d = 1.0 + std::norm(z);
  LineBase out{Eigen::VectorXcd(2 * n), Eigen::VectorXcd(2 * n)};
  for (Eigen::Index l = 0; l < n; ++l) {
    const cd a0 = sigma(2 * l, 0), a1 = sigma(2 * l, 1);
    const cd b0 = sigma(2 * l + 1, 0), b1 = sigma(2 * l + 1, 1);
    const cd u = a0 + z * a1, v = b0 + z * b1;
    const cd alpha_num = u + z * std::conj(v);
    const cd beta_num = v - z * std::conj(u);
    out.point[2 * l] = alpha_num / d;
    out.point[2 * l + 1] = beta_num / d;
    out.dz[2 * l] = (a1 + std::conj(v)) / d - alpha_num * zb / (d * d);
    out.dz[2 * l + 1] = (b1 - std::conj(u)) / d - beta_num * zb / (d * d);
  }
  return out;
}

std::vector<HopfGrid::Node> HopfGrid::nodes() const {
  if (polar < 2 || azimuthal < 3) throw std::invalid_argument("Hopf grid too coarse");
  std::vector<Node> out;
  out.reserve(static_cast<std::size_t>(polar * azimuthal));
  for (int p = 0; p < polar; ++p) {
    const double c = (p + 0.5) / polar;  // |alpha|^2
    const double theta = 2.0 * std::acos(std::sqrt(c));
    for (int a = 0; a < azimuthal; ++a) {
      const double phi = 2.0 * M_PI * (a + 0.5 * (p % 2)) / azimuthal;
      out.push_back({cd(std::cos(theta / 2)), std::polar(std::sin(theta / 2), phi), theta, phi});
    }
  }
  return out;
}

double HopfGrid::resolution() const {
  return std::sqrt(2.0 / polar) + M_PI / azimuthal;
}

QuaternionVectord sweep_point(const Biquaterniond& sigma, cd alpha, cd beta) {
  const double a2 = std::norm(alpha), b2 = std::norm(beta);
  const cd ab = std::conj(alpha) * beta;  // complex, i.e. a quaternion in span{1, i}
  const Quaterniond j_ab = Quaterniond::unit_j() * Quaterniond(ab.real(), ab.imag());
  const Quaterniond q = Quaterniond::unit_i() * (a2 - b2) + j_ab * 2.0;
  return sigma.x + sigma.y * q;
}

std::vector<QuaternionVectord> line_sweep(const Biquaterniond& sigma, const HopfGrid& grid) {
  std::vector<QuaternionVectord> out;
  for (const auto& node : grid.nodes()) out.push_back(sweep_point(sigma, node.alpha, node.beta));
  return out;
}

QuaternionVectord line_base_point(const Biquaterniond& sigma, cd alpha, cd beta) {
  return eta_inverse(line_embed(sigma, alpha, beta)).base;
}

LineHullQuery hull_contains_via_lines(const Biquaterniond& sigma, const Domain& domain,
                                      const HopfGrid& grid) {
  if (sigma.size() != domain.n()) throw std::invalid_argument("sigma and domain differ in n");
  const MatrixX2cd matrix = sigma.matrix();
  const auto value = [&](double theta, double phi) {
    const cd alpha(std::cos(theta / 2));
    const cd beta = std::polar(std::sin(theta / 2), phi);
    return domain.ext_distance(eta_inverse(line_embed(matrix, alpha, beta)).base);
  };

  LineHullQuery out;
  const auto nodes = grid.nodes();
  std::vector<double> values(nodes.size());
  for (std::size_t k = 0; k < nodes.size(); ++k) values[k] = value(nodes[k].theta, nodes[k].phi);
  std::vector<std::size_t> order(nodes.size());
  std::iota(order.begin(), order.end(), 0);
  const auto starts = std::min<std::size_t>(static_cast<std::size_t>(std::max(1, grid.starts)), nodes.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<long>(starts), order.end(),
                    [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

  double best = values[order[0]];
  Eigen::Vector2d best_arg(nodes[order[0]].theta, nodes[order[0]].phi);
  double diameter = grid.resolution();
  const double lipschitz = sigma.y.norm();

  if (lipschitz == 0.0) {
    diameter = 0.0;
  } else if (best > 0.0) {
    for (std::size_t s = 0; s < starts; ++s) {
      const Eigen::Vector2d start(nodes[order[s]].theta, nodes[order[s]].phi);
      const auto run = nelder_mead_2d(
          [&](const Eigen::Vector2d& tp) { return value(tp[0], tp[1]); }, start,
          grid.resolution(), grid.tolerance, grid.max_iterations);
      if (run.value <= best) {
        best = run.value;
        best_arg = run.argmin;
        diameter = run.simplex_diameter;
      }
      if (best <= 0.0) break;
    }
  }

  out.inf_value = best;
  out.argmin_alpha = cd(std::cos(best_arg[0] / 2));
  out.argmin_beta = std::polar(std::sin(best_arg[0] / 2), best_arg[1]);
  // |dq| <= sqrt(2) |d(theta, phi)| on the image sphere
  out.band = 2.0 * lipschitz * std::sqrt(2.0) * diameter +
             4.0 * std::numeric_limits<double>::epsilon() * (sigma.norm_c() + 1.0);
  if (lipschitz == 0.0)
    out.membership = domain.contains(sigma.x) ? Membership::inside : Membership::outside;
  else if (best <= 0.0)
    out.membership = Membership::outside;
  else if (best > out.band)
    out.membership = Membership::inside;
  else
    out.membership = Membership::indeterminate;
  return out;
}

}  // namespace fueter

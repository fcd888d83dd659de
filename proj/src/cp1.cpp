#include "fueter/cp1.hpp"

#include "fueter/errors.hpp"
#include "fueter/fd.hpp"
#include "fueter/parallel.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>

namespace fueter {

namespace {

cd ipow(cd z, int e) {
  cd base = e < 0 ? 1.0 / z : z;
  cd out = 1.0;
  for (int k = std::abs(e); k > 0; --k) out *= base;
  return out;
}

}  // namespace

void QuadratureConfig::validate() const {
  if (radial < 8 || angular < 8) throw std::invalid_argument("quadrature needs at least 8 nodes per direction");
  if (!(scale > 0.0)) throw std::invalid_argument("quadrature scale must be positive");
  if (!(tolerance > 0.0)) throw std::invalid_argument("quadrature tolerance must be positive");
  if (max_doublings < 0) throw std::invalid_argument("max_doublings must be non-negative");
}

nlohmann::json QuadratureConfig::to_json() const {
  return {{"radial", radial},       {"angular", angular},           {"scale", scale},
          {"center", {center.real(), center.imag()}},
          {"tolerance", tolerance}, {"max_doublings", max_doublings}, {"adaptive", adaptive}};
}

QuadratureConfig quadrature_from_json(const nlohmann::json& j) {
  QuadratureConfig c;
  c.radial = j.value("radial", c.radial);
  c.angular = j.value("angular", c.angular);
  c.scale = j.value("scale", c.scale);
  if (j.contains("center")) c.center = {j.at("center").at(0).get<double>(), j.at("center").at(1).get<double>()};
  c.tolerance = j.value("tolerance", c.tolerance);
  c.max_doublings = j.value("max_doublings", c.max_doublings);
  c.adaptive = j.value("adaptive", c.adaptive);
  c.validate();
  return c;
}

const GaussLegendre& gauss_legendre01(int count) {
  static std::mutex mutex;
  static std::map<int, GaussLegendre> cache;
  std::lock_guard<std::mutex> lock(mutex);
  if (auto it = cache.find(count); it != cache.end()) return it->second;
  if (count < 1) throw std::invalid_argument("Gauss-Legendre needs at least one node");

  GaussLegendre gl;
  gl.nodes.resize(static_cast<std::size_t>(count));
  gl.weights.resize(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    // Newton on P_count from the usual cosine guess
    double x = std::cos(M_PI * (i + 0.75) / (count + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int m = 2; m <= count; ++m) {
        const double p2 = ((2.0 * m - 1.0) * x * p1 - (m - 1.0) * p0) / m;
        p0 = p1;
        p1 = p2;
      }
      if (count == 1) p0 = 1.0;
      dp = count * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute the derivative at the converged node
    double p0 = 1.0, p1 = x;
    for (int m = 2; m <= count; ++m) {
      const double p2 = ((2.0 * m - 1.0) * x * p1 - (m - 1.0) * p0) / m;
      p0 = p1;
      p1 = p2;
    }
    if (count == 1) p0 = 1.0;
    dp = count * (x * p1 - p0) / (x * x - 1.0);
    const auto k = static_cast<std::size_t>(i);
    gl.nodes[k] = 0.5 * (1.0 - x);
    gl.weights[k] = 1.0 / ((1.0 - x * x) * dp * dp);  // 2/((1-x^2)P'^2) halved for [0,1]
  }
  return cache[count] = std::move(gl);
}

namespace {

Eigen::VectorXcd integrate_fixed(const std::function<Eigen::VectorXcd(cd)>& g, Eigen::Index dim,
                                 int radial, int angular, double scale, cd center) {
  const auto& gl = gauss_legendre01(radial);
  std::vector<Eigen::VectorXcd> rings(static_cast<std::size_t>(radial));
  parallel_for(rings.size(), [&](std::size_t i) {
    const double rho = gl.nodes[i];
    const double r = scale * rho / (1.0 - rho);
    const double jac = scale / ((1.0 - rho) * (1.0 - rho));
    Eigen::VectorXcd ring = Eigen::VectorXcd::Zero(dim);
    for (int a = 0; a < angular; ++a) {
      const double phi = 2.0 * M_PI * a / angular;
      ring += g(center + std::polar(r, phi));
    }
    // (1/pi) * r dr dphi, dphi = 2 pi / angular
    rings[i] = ring * (gl.weights[i] * jac * r * 2.0 / angular);
  });
  Eigen::VectorXcd total = Eigen::VectorXcd::Zero(dim);
  for (const auto& ring : rings) total += ring;
  return total;
}

}  // namespace

QuadratureResult integrate_plane(const std::function<Eigen::VectorXcd(cd)>& g, Eigen::Index dim,
                                 const QuadratureConfig& cfg) {
  cfg.validate();
  int nr = cfg.radial, na = cfg.angular;
  QuadratureResult res{integrate_fixed(g, dim, nr, na, cfg.scale, cfg.center),
                       std::numeric_limits<double>::quiet_NaN(), nr, na};
  if (!cfg.adaptive) return res;
  for (int d = 0; d < cfg.max_doublings; ++d) {
    nr *= 2;
    na *= 2;
    Eigen::VectorXcd next = integrate_fixed(g, dim, nr, na, cfg.scale, cfg.center);
    const double change = (next - res.value).norm();
    res = {std::move(next), change, nr, na};
    if (change <= cfg.tolerance * std::max(1.0, res.value.norm())) return res;
  }
  throw ConvergenceError("plane quadrature did not settle: last doubling changed the value by " +
                         std::to_string(res.change) + " at " + std::to_string(nr) + " x " +
                         std::to_string(na) + " nodes");
}

cd quadrature_c(const std::function<cd(cd)>& g, const QuadratureConfig& cfg) {
  const auto r = integrate_plane([&](cd z) { return Eigen::VectorXcd::Constant(1, g(z)); }, 1, cfg);
  return r.value[0];
}

QuadratureResult moments(const std::function<cd(cd)>& g, int count, const QuadratureConfig& cfg) {
  if (count < 1) throw std::invalid_argument("moments needs a positive count");
  return integrate_plane(
      [&](cd z) {
        Eigen::VectorXcd v(count);
        cd zp = 1.0;
        const cd gz = g(z);
        for (int l = 0; l < count; ++l, zp *= z) v[l] = zp * gz;
        return v;
      },
      count, cfg);
}

// ---------------------------------------------------------------------------

std::vector<cd> annulus_samples(int radial, int angular) {
  std::vector<cd> out;
  for (int j = 0; j < radial; ++j) {
    const double r = std::pow(10.0, -1.0 + 2.0 * j / std::max(1, radial - 1));
    for (int a = 0; a < angular; ++a) out.push_back(std::polar(r, 2.0 * M_PI * (a + 0.5) / angular));
  }
  return out;
}

namespace {

ClutchingReport clutching(const std::vector<cd>& zs, const std::function<cd(cd)>& lhs,
                          const std::function<cd(cd)>& rhs) {
  ClutchingReport rep;
  rep.samples = zs.size();
  for (cd z : zs) {
    const cd r = rhs(z);
    const double v = std::abs(lhs(z) - r) / std::max(1.0, std::abs(r));
    if (!(v <= rep.max_violation)) {
      rep.max_violation = v;
      rep.worst_z = z;
    }
  }
  return rep;
}

}  // namespace

ClutchingReport validate_section(const BundleSection& s, const std::vector<cd>& zs) {
  return clutching(zs, [&](cd z) { return s.f1(1.0 / z); },
                   [&](cd z) { return ipow(z, -s.k) * s.f0(z); });
}

ClutchingReport validate_form(const Form01& w, const std::vector<cd>& zs) {
  return clutching(zs, [&](cd z) { return w.h1(1.0 / z); },
                   [&](cd z) { return -ipow(z, -w.k) * std::conj(z) * std::conj(z) * w.h0(z); });
}

std::string to_string(Limit l) {
  switch (l) {
    case Limit::zero: return "zero";
    case Limit::finite: return "finite";
    case Limit::divergent: return "divergent";
  }
  return "divergent";
}

DecayReport decay_profile(const std::function<cd(cd)>& f, int l, int m) {
  DecayReport rep;
  rep.radii = {1e2, 1e3, 1e4};
  for (double r : rep.radii) {
    double mag = 0.0;
    for (int a = 0; a < 8; ++a) {
      const cd z = std::polar(r, 2.0 * M_PI * (a + 0.25) / 8.0);
      const double v = std::abs(ipow(z, l) * ipow(std::conj(z), m) * f(z));
      mag = std::isfinite(v) ? std::max(mag, v) : std::numeric_limits<double>::infinity();
    }
    rep.magnitudes.push_back(mag);
  }
  const double first = rep.magnitudes.front(), last = rep.magnitudes.back();
  if (!std::isfinite(last) || !std::isfinite(first)) {
    rep.limit = Limit::divergent;
  } else if (last < 1e-14) {
    rep.limit = Limit::zero;
  } else {
    // growth exponent over two decades
    const double slope = std::log10(last / std::max(first, 1e-300)) / 2.0;
    rep.limit = slope > 0.1 ? Limit::divergent : slope < -0.5 ? Limit::zero : Limit::finite;
  }
  return rep;
}

DecayReport decay_check(const BundleSection& s, int l) {
  if (l > -s.k) throw std::invalid_argument("section decay needs l <= -k");
  return decay_profile(s.f0, l, 0);
}

DecayReport decay_check(const Form01& w, int l, int m) {
  if (l + m >= -w.k + 2) throw std::invalid_argument("form decay needs l + m < -k + 2");
  return decay_profile(w.h0, l, m);
}

Eigen::VectorXcd cohomology_coefficients(const Form01& w, const QuadratureConfig& cfg) {
  if (w.k > -2) throw std::invalid_argument("H^1(CP^1, Q_k) vanishes for k > -2");
  return moments(w.h0, -w.k - 1, cfg).value;
}

Form01 harmonic_representative(cd a0, cd a1) {
  Form01 w;
  w.k = -3;
  w.h0 = [a0, a1](cd z) {
    const double d = 1.0 + std::norm(z);
    return 2.0 * (a0 + a1 * std::conj(z)) / (d * d * d);
  };
  w.h1 = [a0, a1](cd v) {
    const double d = 1.0 + std::norm(v);
    return 2.0 * (-a0 * std::conj(v) - a1) / (d * d * d);
  };
  return w;
}

int h1_dimension(int k) { return std::max(0, -k - 1); }

double Bump::profile(cd z) const {
  const double t = std::abs(z - center) / radius;
  if (t >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - t * t));
}

cd Bump::dzbar(cd z) const {
  const double t = std::abs(z - center) / radius;
  if (t >= 1.0) return 0.0;
  const double s = 1.0 - t * t;
  return -profile(z) * (z - center) / (radius * radius * s * s);
}

BundleSection Bump::section(int k) const {
  const Bump b = *this;
  return {k, [b](cd z) { return cd(b.profile(z)); },
          [b, k](cd w) {
            if (w == 0.0) return cd(0.0);
            return ipow(w, k) * b.profile(1.0 / w);
          }};
}

Form01 Bump::exact_form(int k) const {
  const Bump b = *this;
  const auto f1 = section(k).f1;
  return {k, [b](cd z) { return b.dzbar(z); },
          [f1](cd w) { return wirtinger_zbar(f1, w, 1e-6 * std::max(1.0, std::abs(w))); }};
}

QuadratureConfig Bump::fitted(QuadratureConfig q) const {
  q.center = center;
  q.scale = radius;
  return q;
}

}  // namespace fueter

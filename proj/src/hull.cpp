#include "fueter/hull.hpp"

#include "fueter/errors.hpp"
#include "fueter/fd.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace fueter {

std::string to_string(Membership m) {
  switch (m) {
    case Membership::inside: return "inside";
    case Membership::outside: return "outside";
    case Membership::indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

HullQuery hull_contains(const Biquaterniond& sigma, const Domain& domain,
                        const ImUnitSphereSampler& sampler) {
  sampler.validate();
  if (sigma.size() != domain.n()) throw std::invalid_argument("sigma and domain differ in n");

  HullQuery out;
  out.sigma = sigma;
  const double lipschitz = sigma.y.norm();

  if (lipschitz == 0.0) {
    // x + 0 q = x for every q
    out.inf_value = domain.ext_distance(sigma.x);
    out.argmin_q = Quaterniond::unit_i();
    out.membership = domain.contains(sigma.x) ? Membership::inside : Membership::outside;
    out.grid_certified = true;
    return out;
  }

  const auto infimand = [&](const Eigen::Vector3d& u) {
    return domain.ext_distance(sigma.evaluate(unit_imaginary(u)));
  };
  const auto found = minimize_on_sphere(infimand, sampler);

  out.inf_value = found.value;
  out.argmin_q = unit_imaginary<double>(found.argmin);
  out.band = 2.0 * lipschitz * found.resolution +
             4.0 * std::numeric_limits<double>::epsilon() * (sigma.norm_c() + 1.0);
  out.grid_certified = found.grid_value - lipschitz * sampler.covering_radius() > 0.0;

  if (found.value <= 0.0)
    out.membership = Membership::outside;
  else if (found.value > out.band)
    out.membership = Membership::inside;
  else
    out.membership = Membership::indeterminate;
  return out;
}

double hull_distance(const Biquaterniond& sigma, const Domain& domain,
                     const ImUnitSphereSampler& sampler) {
  const auto q = hull_contains(sigma, domain, sampler);
  if (!q.verdict())
    throw std::domain_error("hull_distance: sigma is " + to_string(q.membership) +
                            " with respect to the monogenic hull");
  return q.inf_value / std::sqrt(2.0);
}

QuaternionVectord resolve_boundary_point(const Domain& domain, const QuaternionVectord& p,
                                         double tolerance) {
  const double d = domain.ext_distance(p);
  if (!std::isfinite(d)) throw ConvergenceError("domain has no boundary");
  if (auto closed = domain.nearest_boundary(p)) {
    if (std::abs(((*closed) - p).norm() - d) > tolerance * (1.0 + d))
      throw ConvergenceError("closed-form boundary point does not realise the distance");
    return *closed;
  }
  // delta is a distance function: its gradient is a unit vector pointing
  // away from the nearest boundary point.
  const double h = 1e-6 * std::max(1.0, p.norm());
  Eigen::VectorXd grad(p.coords().size());
  for (Eigen::Index c = 0; c < grad.size(); ++c)
    grad[c] = partial([&](const Eigen::VectorXd& v) { return domain.ext_distance(QuaternionVectord(v)); },
                      p.coords(), c, h);
  const double len = grad.norm();
  if (!(len > 0.5)) throw ConvergenceError("distance gradient degenerate; boundary point not resolvable");
  QuaternionVectord candidate(Eigen::VectorXd(p.coords() - d * grad / len));
  if (domain.ext_distance(candidate) > tolerance * (1.0 + d))
    throw ConvergenceError("boundary point not resolvable to tolerance");
  return candidate;
}

HullWitness hull_witness(const Biquaterniond& sigma, const Domain& domain,
                         const ImUnitSphereSampler& sampler) {
  const auto query = hull_contains(sigma, domain, sampler);
  if (!query.verdict())
    throw std::domain_error("hull_witness: sigma is " + to_string(query.membership) +
                            " with respect to the monogenic hull");
  const Quaterniond q = query.argmin_q;
  const auto p = sigma.evaluate(q);
  const auto boundary = resolve_boundary_point(domain, p);

  const QuaternionVectord w = boundary - p;
  HullWitness out;
  out.point = Biquaterniond(sigma.x + 0.5 * w, sigma.y - 0.5 * (w * q));
  out.boundary_point = boundary;
  out.q = q;
  out.distance = (out.point - sigma).norm_c();
  return out;
}

}  // namespace fueter

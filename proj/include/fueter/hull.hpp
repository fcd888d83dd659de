#pragma once

// Monogenic hull H(U) = {(x, y) : x + y q in U for every unit imaginary q},
// its boundary distance and the explicit nearest exterior point.

#include "fueter/domain.hpp"
#include "fueter/optimize.hpp"
#include "fueter/quaternion.hpp"

#include <string>

namespace fueter {

enum class Membership { inside, outside, indeterminate };

std::string to_string(Membership m);

struct HullQuery {
  Biquaterniond sigma;
  Membership membership = Membership::indeterminate;
  double inf_value = 0.0;  // min over q of delta(x + y q, U^c)
  Quaterniond argmin_q;
  // Values of inf_value below band are not trusted to separate from zero.
  double band = 0.0;
  // Lipschitz certificate from the raw lattice alone: grid minimum minus
  // ||y|| * covering radius is still positive.
  bool grid_certified = false;

  bool verdict() const { return membership == Membership::inside; }
};

HullQuery hull_contains(const Biquaterniond& sigma, const Domain& domain,
                        const ImUnitSphereSampler& sampler = {});

// (1/sqrt 2) min_q delta(x + y q, U^c); throws std::domain_error when sigma
// is not certainly inside H(U).
double hull_distance(const Biquaterniond& sigma, const Domain& domain,
                     const ImUnitSphereSampler& sampler = {});

struct HullWitness {
  Biquaterniond point;            // (x + w/2, y - w q / 2), outside H(U)
  QuaternionVectord boundary_point;  // x_o
  Quaterniond q;
  double distance = 0.0;          // ||point - sigma||_C
};

// Throws std::domain_error when sigma is not inside, ConvergenceError when no
// boundary point of U can be resolved near the minimising x + y q.
HullWitness hull_witness(const Biquaterniond& sigma, const Domain& domain,
                         const ImUnitSphereSampler& sampler = {});

// Boundary point of U nearest to p: closed form from the domain when it has
// one, otherwise a step of length delta against the finite-difference
// gradient of delta.
QuaternionVectord resolve_boundary_point(const Domain& domain, const QuaternionVectord& p,
                                         double tolerance = 1e-8);

}  // namespace fueter

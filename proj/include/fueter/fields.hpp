#pragma once

// Scalar fields U -> H, holomorphic fields on M_{2n x 2}(C) and the built-in
// registry of test fields.

#include "fueter/domain.hpp"
#include "fueter/quaternion.hpp"
#include "fueter/sampling.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace fueter {

// psi = psi0 + k psi1
class ScalarField {
 public:
  using Point = QuaternionVectord;
  using Pair = Eigen::Vector2cd;

  static ScalarField from_quaternion(std::function<Quaterniond(const Point&)> f, Domain domain);
  static ScalarField from_pair(std::function<Pair(const Point&)> f, Domain domain);

  int n() const { return domain_.n(); }
  const Domain& domain() const { return domain_; }

  Quaterniond operator()(const Point& p) const { return eval_(p); }
  Pair pair(const Point& p) const { return pair_(p); }

  // Same values, evaluation refused with DomainError outside the domain.
  Quaterniond checked(const Point& p) const;
  Pair checked_pair(const Point& p) const;

  // a psi + phi with real a
  friend ScalarField combine(double a, const ScalarField& psi, const ScalarField& phi);

 private:
  ScalarField(std::function<Quaterniond(const Point&)> q, std::function<Pair(const Point&)> pr,
              Domain d)
      : eval_(std::move(q)), pair_(std::move(pr)), domain_(std::move(d)) {}

  std::function<Quaterniond(const Point&)> eval_;
  std::function<Pair(const Point&)> pair_;
  Domain domain_;
};

ScalarField combine(double a, const ScalarField& psi, const ScalarField& phi);

// (psi0, psi1) as functions of the 2n x 2 matrix z.
struct ComplexField {
  int n = 1;
  std::function<Eigen::Vector2cd(const MatrixX2cd&)> eval;
  // Where eval is defined; empty means everywhere.
  std::function<bool(const MatrixX2cd&)> contains;

  Eigen::Vector2cd operator()(const MatrixX2cd& z) const;
  // Value on the real slice, z = M(x).
  Eigen::Vector2cd restrict(const QuaternionVectord& x) const { return (*this)(embed(x)); }
};

struct FieldEntry {
  std::string name;
  std::string description;
  bool monogenic = false;
  std::function<ScalarField(int n)> make;
  std::function<std::optional<ComplexField>(int n)> extension;
  // Interior sample with room for finite-difference stencils.
  std::function<QuaternionVectord(Rng&, int n)> sample;
};

const std::vector<FieldEntry>& field_registry();
const FieldEntry& field_entry(const std::string& name);
std::vector<std::string> field_names();

// Closed forms used by the registry and by tests.
namespace fixtures {
// conj(q) / |q|^4 in the first variable
Eigen::Vector2cd fundamental_pair(const QuaternionVectord& x);
// (z_{11'} / det^2, -z_{10'} / det^2) on the first row pair
Eigen::Vector2cd fundamental_extension(const MatrixX2cd& z);
cd block_det(const MatrixX2cd& z, Eigen::Index block = 0);
}  // namespace fixtures

}  // namespace fueter

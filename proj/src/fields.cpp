#include "fueter/fields.hpp"

#include "fueter/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace fueter {

ScalarField ScalarField::from_quaternion(std::function<Quaterniond(const Point&)> f, Domain domain) {
  auto pr = [f](const Point& p) -> Pair {
    const auto q = f(p);
    return {q.alpha(), q.beta()};
  };
  return ScalarField(std::move(f), std::move(pr), std::move(domain));
}

ScalarField ScalarField::from_pair(std::function<Pair(const Point&)> f, Domain domain) {
  auto q = [f](const Point& p) {
    const auto v = f(p);
    return Quaterniond::from_pair(v[0], v[1]);
  };
  return ScalarField(std::move(q), std::move(f), std::move(domain));
}

Quaterniond ScalarField::checked(const Point& p) const {
  if (!domain_.contains(p)) throw DomainError("field evaluated outside its domain", p.coords());
  return eval_(p);
}

ScalarField::Pair ScalarField::checked_pair(const Point& p) const {
  if (!domain_.contains(p)) throw DomainError("field evaluated outside its domain", p.coords());
  return pair_(p);
}

ScalarField combine(double a, const ScalarField& psi, const ScalarField& phi) {
  if (psi.n() != phi.n()) throw std::invalid_argument("combined fields differ in n");
  auto f = psi.pair_;
  auto g = phi.pair_;
  const Domain &du = psi.domain_, &dv = phi.domain_;
  Domain both = Domain::intersection({du, dv});
  return ScalarField::from_pair(
      [a, f, g](const QuaternionVectord& p) -> Eigen::Vector2cd { return a * f(p) + g(p); },
      std::move(both));
}

Eigen::Vector2cd ComplexField::operator()(const MatrixX2cd& z) const {
  if (z.rows() != 2 * n) throw std::invalid_argument("complex field expects a 2n x 2 matrix");
  if (contains && !contains(z)) {
    Eigen::VectorXd flat(4 * n);
    for (Eigen::Index r = 0; r < z.rows(); ++r) {
      flat[2 * r] = std::abs(z(r, 0));
      flat[2 * r + 1] = std::abs(z(r, 1));
    }
    throw DomainError("complex field evaluated outside its domain (entry moduli)", flat);
  }
  return eval(z);
}

namespace fixtures {

Eigen::Vector2cd fundamental_pair(const QuaternionVectord& x) {
  const auto q = x[0];
  const double r2 = q.squared_norm();
  const double s = 1.0 / (r2 * r2);
  return {std::conj(q.alpha()) * s, -q.beta() * s};
}

cd block_det(const MatrixX2cd& z, Eigen::Index block) {
  const auto r = 2 * block;
  return z(r, 0) * z(r + 1, 1) - z(r, 1) * z(r + 1, 0);
}

Eigen::Vector2cd fundamental_extension(const MatrixX2cd& z) {
  const cd d = block_det(z);
  const cd d2 = d * d;
  return {z(1, 1) / d2, -z(1, 0) / d2};
}

}  // namespace fixtures

namespace {

using Pair = Eigen::Vector2cd;
using P = QuaternionVectord;

QuaternionVectord generic_sample(Rng& rng, int n) { return ball_vector(rng, n, 2.0); }

QuaternionVectord punctured_sample(Rng& rng, int n) {
  QuaternionVectord p = gaussian_vector(rng, n);
  p.set(0, shell_quaternion(rng, 0.2, 5.0));
  return p;
}

bool off_singular(const MatrixX2cd& z) { return std::abs(fixtures::block_det(z)) > 0.0; }

std::vector<FieldEntry> build_registry() {
  std::vector<FieldEntry> r;

  r.push_back({"constant", "constant pair (0.3 - 0.7i, 1.1 + 0.2i)", true,
               [](int n) {
                 return ScalarField::from_pair(
                     [](const P&) -> Pair { return {cd(0.3, -0.7), cd(1.1, 0.2)}; },
                     Domain::whole(n));
               },
               [](int n) -> std::optional<ComplexField> {
                 return ComplexField{n, [](const MatrixX2cd&) -> Pair {
                                       return {cd(0.3, -0.7), cd(1.1, 0.2)};
                                     }, {}};
               },
               generic_sample});

  r.push_back({"identity_q", "psi = q_1", false,
               [](int n) {
                 return ScalarField::from_quaternion([](const P& p) { return p[0]; },
                                                     Domain::whole(n));
               },
               [](int) -> std::optional<ComplexField> { return std::nullopt; }, generic_sample});

  r.push_back({"conj_q", "psi = conj(q_1)", false,
               [](int n) {
                 return ScalarField::from_quaternion([](const P& p) { return p[0].conjugate(); },
                                                     Domain::whole(n));
               },
               [](int) -> std::optional<ComplexField> { return std::nullopt; }, generic_sample});

  r.push_back({"E", "conj(q_1) / |q_1|^4 on {q_1 != 0}", true,
               [](int n) {
                 return ScalarField::from_pair(fixtures::fundamental_pair,
                                               Domain::block_point_complement(n, 0, {}));
               },
               [](int n) -> std::optional<ComplexField> {
                 return ComplexField{n, fixtures::fundamental_extension, off_singular};
               },
               punctured_sample});

  r.push_back({"E_ext", "(z11 / det^2, -z10 / det^2) restricted to the real slice", true,
               [](int n) {
                 return ScalarField::from_pair(
                     [](const P& p) -> Pair { return fixtures::fundamental_extension(embed(p)); },
                     Domain::block_point_complement(n, 0, {}));
               },
               [](int n) -> std::optional<ComplexField> {
                 return ComplexField{n, fixtures::fundamental_extension, off_singular};
               },
               punctured_sample});

  r.push_back({"linear_monogenic", "(conj(alpha_1), beta_1)", true,
               [](int n) {
                 return ScalarField::from_pair(
                     [](const P& p) -> Pair {
                       const auto q = p[0];
                       return {std::conj(q.alpha()), q.beta()};
                     },
                     Domain::whole(n));
               },
               [](int n) -> std::optional<ComplexField> {
                 return ComplexField{
                     n, [](const MatrixX2cd& z) -> Pair { return {z(1, 1), z(1, 0)}; }, {}};
               },
               generic_sample});

  r.push_back({"nonmonogenic_quadratic", "(conj(alpha_1)^2, 0)", false,
               [](int n) {
                 return ScalarField::from_pair(
                     [](const P& p) -> Pair {
                       const cd a = std::conj(p[0].alpha());
                       return {a * a, 0.0};
                     },
                     Domain::whole(n));
               },
               [](int) -> std::optional<ComplexField> { return std::nullopt; }, generic_sample});

  r.push_back({"smooth_nonmonogenic",
               "(exp(alpha_1) conj(beta_1) / 2, sin(conj(alpha_1)) + alpha_n conj(beta_n)), last term for n > 1",
               false,
               [](int n) {
                 return ScalarField::from_pair(
                     [n](const P& p) -> Pair {
                       const auto q = p[0];
                       cd second = std::sin(std::conj(q.alpha()));
                       if (n > 1) {
                         const auto w = p[n - 1];
                         second += w.alpha() * std::conj(w.beta());
                       }
                       return {0.5 * std::exp(q.alpha()) * std::conj(q.beta()), second};
                     },
                     Domain::whole(n));
               },
               [](int) -> std::optional<ComplexField> { return std::nullopt; }, generic_sample});

  return r;
}

}  // namespace

const std::vector<FieldEntry>& field_registry() {
  static const std::vector<FieldEntry> registry = build_registry();
  return registry;
}

const FieldEntry& field_entry(const std::string& name) {
  const auto& r = field_registry();
  auto it = std::find_if(r.begin(), r.end(), [&](const FieldEntry& e) { return e.name == name; });
  if (it == r.end()) throw std::invalid_argument("unknown field '" + name + "'");
  return *it;
}

std::vector<std::string> field_names() {
  std::vector<std::string> out;
  for (const auto& e : field_registry()) out.push_back(e.name);
  return out;
}

}  // namespace fueter

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fueter/cf_operator.hpp"
#include "fueter/errors.hpp"

#include <vector>

using namespace fueter;

namespace {

double qdist(const Quaterniond& a, const Quaterniond& b) { return (a - b).norm(); }

QuaternionVectord single(const Quaterniond& q) {
  QuaternionVectord v(1);
  v.set(0, q);
  return v;
}

std::vector<QuaternionVectord> samples(const std::string& field, int n, int count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<QuaternionVectord> out;
  for (int t = 0; t < count; ++t) out.push_back(field_entry(field).sample(rng, n));
  return out;
}

}  // namespace

TEST_CASE("dbar on coordinate functions") {
  Rng rng(21);
  const auto p = gaussian_vector(rng, 1);
  CHECK(dbar_q(field_entry("constant").make(1), 0, p).norm() < 1e-10);
  CHECK(qdist(dbar_q(field_entry("conj_q").make(1), 0, p), Quaterniond(4.0)) < 1e-9);
  CHECK(qdist(dbar_q(field_entry("identity_q").make(1), 0, p), Quaterniond(-2.0)) < 1e-9);
}

TEST_CASE("dbar refuses stencils outside the domain") {
  const auto e = field_entry("E").make(1);
  CHECK_THROWS_AS(dbar_q(e, 0, single(Quaterniond())), DomainError);
  CHECK_THROWS_AS(cf_residual_complex(e, single(Quaterniond())), DomainError);
}

TEST_CASE("registered fields") {
  for (int n = 1; n <= 2; ++n) {
    CAPTURE(n);
    const auto e = field_entry("E").make(n);
    for (const auto& p : samples("E", n, 50, 22)) {
      CHECK(cf_apply(e, p).norm() < 1e-6);
      CHECK(cf_residual_complex(e, p).norm() < 1e-6);
    }
    const auto lin = field_entry("linear_monogenic").make(n);
    for (const auto& p : samples("linear_monogenic", n, 20, 23)) {
      CHECK(cf_apply(lin, p).norm() < 1e-8);
      CHECK(cf_residual_complex(lin, p).norm() < 1e-8);
    }
    const auto c = field_entry("constant").make(n);
    for (const auto& p : samples("constant", n, 5, 24)) CHECK(cf_residual_complex(c, p).norm() == 0.0);
  }
  const auto quad = field_entry("nonmonogenic_quadratic").make(1);
  CHECK(cf_apply(quad, single(Quaterniond(1.0))).norm() > 0.1);
}

TEST_CASE("quaternionic and complex forms of D") {
  // D psi in block l has complex pair (-2 r_{2l}, 2 r_{2l+1})
  for (const std::string name : {"smooth_nonmonogenic", "nonmonogenic_quadratic", "identity_q", "E"}) {
    for (int n = 1; n <= 2; ++n) {
      CAPTURE(name);
      CAPTURE(n);
      const auto psi = field_entry(name).make(n);
      for (const auto& p : samples(name, n, 10, 25)) {
        const auto d = cf_apply(psi, p);
        const auto r = cf_residual_complex(psi, p);
        for (Eigen::Index l = 0; l < n; ++l) {
          const auto expect = Quaterniond::from_pair(-2.0 * r[2 * l], 2.0 * r[2 * l + 1]);
          CHECK(qdist(d[l], expect) < 1e-8 * (1.0 + d[l].norm()));
        }
      }
    }
  }
}

TEST_CASE("dbar equals 2 (d/dalphabar + k d/dbetabar) with left units") {
  const auto psi = field_entry("smooth_nonmonogenic").make(2);
  const double h = 1e-5;
  for (const auto& p : samples("smooth_nonmonogenic", 2, 10, 26)) {
    for (Eigen::Index l = 0; l < 2; ++l) {
      auto f = [&](const Eigen::VectorXd& v) { return psi(QuaternionVectord(v)); };
      const auto b = 4 * l;
      Quaterniond dx[4];
      for (int c = 0; c < 4; ++c) dx[c] = partial(f, p.coords(), b + c, h);
      const auto i = Quaterniond::unit_i(), k = Quaterniond::unit_k();
      const Quaterniond d_alphabar = (dx[0] + i * dx[1]) * 0.5;
      const Quaterniond d_betabar = (dx[3] + i * dx[2]) * 0.5;
      const Quaterniond expect = (d_alphabar + k * d_betabar) * 2.0;
      CHECK(qdist(dbar_q(psi, l, p), expect) < 1e-9);
    }
  }
}

TEST_CASE("D is linear over the reals") {
  const auto psi = field_entry("smooth_nonmonogenic").make(2);
  const auto phi = field_entry("nonmonogenic_quadratic").make(2);
  Rng rng(27);
  for (const auto& p : samples("smooth_nonmonogenic", 2, 10, 28)) {
    const double a = uniform(rng, -2.0, 2.0);
    const auto lhs = cf_apply(combine(a, psi, phi), p);
    const auto rhs = cf_apply(psi, p) * a + cf_apply(phi, p);
    CHECK((lhs - rhs).norm() < 1e-8);
  }
}

TEST_CASE("central differences converge at second order") {
  const auto psi = field_entry("smooth_nonmonogenic").make(1);
  for (const auto& p : samples("smooth_nonmonogenic", 1, 5, 29)) {
    const auto reference = cf_apply(psi, p, {1e-3, 0.0, FdScheme::richardson});
    const double coarse = (cf_apply(psi, p, {2e-2}) - reference).norm();
    const double fine = (cf_apply(psi, p, {1e-2}) - reference).norm();
    const double ratio = coarse / fine;
    CAPTURE(coarse);
    CHECK(ratio > 3.5);
    CHECK(ratio < 4.5);
  }
}

TEST_CASE("holomorphic operator") {
  Rng rng(30);
  const auto random_matrix = [&](int n) {
    MatrixX2cd z(2 * n, 2);
    for (int r = 0; r < 2 * n; ++r)
      for (int c = 0; c < 2; ++c) z(r, c) = gaussian_complex(rng);
    return z;
  };

  SUBCASE("constants") {
    const auto c = *field_entry("constant").extension(2);
    CHECK(dC_apply(c, random_matrix(2)).norm() < 1e-12);
  }
  SUBCASE("linear fields") {
    // (z01, z00): slot 0 is 1 - 1
    const ComplexField cross{1, [](const MatrixX2cd& z) { return Eigen::Vector2cd(z(0, 1), z(0, 0)); }, {}};
    CHECK(dC_apply(cross, random_matrix(1)).norm() < 1e-9);
    const ComplexField second{1, [](const MatrixX2cd& z) { return Eigen::Vector2cd(0.0, z(0, 0)); }, {}};
    const auto r = dC_apply(second, random_matrix(1));
    CHECK(std::abs(r[0] - cd(1.0)) < 1e-9);
    CHECK(std::abs(r[1]) < 1e-12);
    const ComplexField first{1, [](const MatrixX2cd& z) { return Eigen::Vector2cd(z(1, 1), 0.0); }, {}};
    const auto s = dC_apply(first, random_matrix(1));
    CHECK(std::abs(s[0]) < 1e-12);
    CHECK(std::abs(s[1] - cd(-1.0)) < 1e-9);
  }
  SUBCASE("extension of the fundamental solution") {
    const auto ext = *field_entry("E").extension(1);
    int checked = 0;
    while (checked < 100) {
      const auto z = random_matrix(1);
      if (std::abs(fixtures::block_det(z)) < 0.1) continue;
      CHECK(dC_apply(ext, z).norm() < 1e-6);
      ++checked;
    }
  }
  SUBCASE("real restriction of the extension") {
    const auto ext = *field_entry("E").extension(2);
    for (const auto& p : samples("E", 2, 20, 31))
      CHECK((ext.restrict(p) - fixtures::fundamental_pair(p)).norm() < 1e-12);
    const auto restricted = field_entry("E_ext").make(2);
    const auto pts = samples("E_ext", 2, 50, 32);
    CHECK(is_monogenic(restricted, pts, 1e-5).verdict);
  }
}

TEST_CASE("monogenicity reports") {
  const auto pts = samples("E", 1, 1000, 33);
  const auto e = is_monogenic(field_entry("E").make(1), pts, 1e-5);
  CHECK(e.verdict);
  CHECK(e.samples == 1000);

  const auto generic = samples("identity_q", 1, 50, 34);
  const auto q = is_monogenic(field_entry("identity_q").make(1), generic, 1e-5);
  CHECK_FALSE(q.verdict);
  CHECK(q.max_residual == doctest::Approx(2.0).epsilon(1e-8));

  CHECK(is_monogenic(field_entry("constant").make(1), generic, 1e-5).verdict);

  const std::vector<QuaternionVectord> none;
  CHECK_THROWS_AS(is_monogenic(field_entry("E").make(1), none, 1e-5), std::invalid_argument);

  const auto j = to_json(q);
  CHECK(j["verdict"] == false);
  CHECK(j["worst_point"].size() == 4);
}

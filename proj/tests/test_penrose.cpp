#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fueter/errors.hpp"
#include "fueter/penrose.hpp"

#include <cmath>

using namespace fueter;

namespace {

std::vector<QuaternionVectord> samples(const std::string& field, int n, int count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<QuaternionVectord> out;
  for (int t = 0; t < count; ++t) out.push_back(field_entry(field).sample(rng, n));
  return out;
}

ScalarField constant_pair(int n, cd c0, cd c1) {
  return ScalarField::from_pair([c0, c1](const QuaternionVectord&) { return Eigen::Vector2cd(c0, c1); },
                                Domain::whole(n));
}

// A form on CP^1 lifted constantly in the base point.
TwistorForm lift(const Form01& f, int n) {
  TwistorForm w;
  w.n = n;
  w.k = f.k;
  w.dzbar0 = [f](cd z, const QuaternionVectord&) { return f.h0(z); };
  w.dwbar1 = [f](cd v, const QuaternionVectord&) { return f.h1(v); };
  w.kpart0 = [n](cd, const QuaternionVectord&) { return Eigen::VectorXcd::Zero(2 * n).eval(); };
  w.kpart1 = w.kpart0;
  return w;
}

}  // namespace

TEST_CASE("sharp") {
  Rng rng(71);
  const auto x = gaussian_vector(rng, 2);
  const auto one = sharp(constant_pair(2, 1.0, 0.0));
  CHECK(std::abs(one.dzbar0(0.0, x) - 2.0) == 0.0);
  CHECK(one.kpart0(cd(0.3, 0.2), x).norm() == 0.0);

  for (const std::string name : {"E", "smooth_nonmonogenic", "linear_monogenic"}) {
    const auto w = sharp(field_entry(name).make(2));
    for (const auto& p : samples(name, 2, 10, 72)) {
      const auto c = validate_twistor_form(w, p);
      CHECK(c.fiber < 1e-13);
      CHECK(c.kpart == 0.0);
      CHECK(decay_check(w.fiber(p), 1, 0).passed());
      CHECK(decay_check(w.fiber(p), 0, 1).passed());
    }
  }
}

TEST_CASE("tau push-forward on (0,1)-forms") {
  Rng rng(73);
  const auto x = gaussian_vector(rng, 1);
  const cd c0(0.4, -2.0), c1(1.5, 0.25);
  const auto v = tau_push_01(sharp(constant_pair(1, c0, c1)), x);
  CHECK(std::abs(v[0] - c0) < 1e-12);
  CHECK(std::abs(v[1] - c1) < 1e-12);

  const auto h = lift(harmonic_representative(c1, c0), 1);
  const auto u = tau_push_01(h, x);
  CHECK(std::abs(u[0] - c1) < 1e-12);
  CHECK(std::abs(u[1] - c0) < 1e-12);

  const Bump b{cd(0.2, -0.4), 0.8};
  const QuadratureConfig fine{64, 64, 1.0, 0.0, 1e-9, 5, true};
  CHECK(tau_push_01(lift(b.exact_form(-3), 1), x, fine).norm() < 1e-6);

  const auto e = field_entry("E").make(1);
  for (const auto& p : samples("E", 1, 10, 74)) {
    CHECK((tau_push_01(sharp(e), p) - fixtures::fundamental_pair(p)).norm() <
          1e-10 * (1.0 + fixtures::fundamental_pair(p).norm()));
  }
}

TEST_CASE("frame fields commute") {
  const auto g = [](cd z, const QuaternionVectord& x) {
    const auto q = x[0], r = x[x.size() - 1];
    return std::exp(std::conj(z) * q.alpha()) * std::conj(r.beta()) + z * std::norm(z) * x.squared_norm();
  };
  Rng rng(75);
  const double h = 1e-4;
  for (int t = 0; t < 5; ++t) {
    const auto x = gaussian_vector(rng, 2, 0.5);
    const cd z = gaussian_complex(rng, 0.7);
    for (int i = 0; i < 4; ++i) {
      const auto xi_g = [&](cd s, const QuaternionVectord& p) { return frame_apply(g, i, s, p, h); };
      const auto dz_g = [&](cd s, const QuaternionVectord& p) {
        return wirtinger_zbar([&](cd u) { return g(u, p); }, s, h);
      };
      const cd lhs = wirtinger_zbar([&](cd s) { return xi_g(s, x); }, z, h);
      const cd rhs = frame_apply(dz_g, i, z, x, h);
      CHECK(std::abs(lhs - rhs) < 1e-5);
      for (int j = 0; j < 4; ++j) {
        const auto xj_g = [&](cd s, const QuaternionVectord& p) { return frame_apply(g, j, s, p, h); };
        const cd c = frame_apply(xj_g, i, z, x, h) - frame_apply(xi_g, j, z, x, h);
        CHECK(std::abs(c) < 1e-5);
      }
    }
    CHECK_THROWS_AS(frame_apply(g, 4, z, x, h), std::invalid_argument);
  }
}

TEST_CASE("chart-0 dbar") {
  Rng rng(76);
  const auto x = gaussian_vector(rng, 2);
  const auto c = dbar_chart0(sharp(constant_pair(2, 1.0, cd(0.0, 2.0))), cd(0.3, -0.8), x);
  CHECK(c.zbar_i.norm() < 1e-12);
  CHECK(c.ij.norm() == 0.0);

  SUBCASE("closed representative") {
    for (int n = 1; n <= 2; ++n) {
      const auto w = closed_sharp(field_entry("E").make(n));
      for (const auto& p : samples("E", n, 5, 77)) {
        CHECK(validate_twistor_form(w, p).kpart < 1e-12);
        for (cd z : {cd(0.0), cd(0.4, -1.1), cd(-2.0, 0.5)}) CHECK(dbar_chart0(w, z, p).zbar_i.norm() < 1e-5);
      }
    }
  }
}

TEST_CASE("tau push-forward on (0,2)-forms") {
  Rng rng(78);
  CHECK(tau_push_02(sharp(constant_pair(2, 1.0, 2.0)), gaussian_vector(rng, 2)).norm() < 1e-12);
  const auto e = sharp(field_entry("E").make(1));
  for (const auto& p : samples("E", 1, 5, 79)) CHECK(tau_push_02(e, p, {}, {64, 64, 1.0, 0.0, 1e-8}).norm() < 1e-4);

  // linear in the form
  const auto psi = field_entry("smooth_nonmonogenic").make(2);
  const auto phi = field_entry("nonmonogenic_quadratic").make(2);
  const double a = 0.7;
  const QuadratureConfig q{64, 64, 1.0, 0.0, 1e-8};
  for (const auto& p : samples("smooth_nonmonogenic", 2, 3, 80)) {
    const auto lhs = tau_push_02(sharp(combine(a, psi, phi)), p, {}, q);
    const auto rhs = (a * tau_push_02(sharp(psi), p, {}, q) + tau_push_02(sharp(phi), p, {}, q)).eval();
    CHECK((lhs - rhs).norm() < 1e-6);
  }
}

TEST_CASE("transform of registered monogenic fields") {
  for (const std::string name : {"E", "linear_monogenic", "constant"}) {
    for (int n = 1; n <= 2; ++n) {
      CAPTURE(name);
      const auto psi = field_entry(name).make(n);
      const auto w = sharp(psi);
      for (const auto& p : samples(name, n, name == "E" ? 20 : 5, 81)) {
        const auto r = penrose_transform(w, p);
        CHECK(r.certified);
        CHECK((r.value - psi.pair(p)).norm() < 1e-10 * (1.0 + psi.pair(p).norm()));
      }
    }
  }
  const auto bad = sharp(field_entry("nonmonogenic_quadratic").make(1));
  CHECK_THROWS_AS(penrose_transform(bad, samples("nonmonogenic_quadratic", 1, 1, 82)[0]), CertificateError);
}

TEST_CASE("transform over the hull") {
  const auto u = parse_domain("H*:n=1");
  const auto w = closed_sharp(field_entry("E").make(1));
  for (const auto& p : samples("E", 1, 3, 83)) {
    const auto c = penrose_transform_complex(w, Biquaterniond(p), u);
    const auto r = penrose_transform(w, p, {.certify = false});
    CHECK((c.value - r.value).norm() == 0.0);
  }

  Rng rng(84);
  const auto x = Quaterniond::from_pair(cd(0.8, 0.3), cd(-0.2, 0.5));
  QuaternionVectord xs(1), ys(1);
  xs.set(0, x);
  ys.set(0, gaussian_quaternion(rng, 0.2));
  const Biquaterniond sigma(xs, ys);
  const auto c = penrose_transform_complex(w, sigma, u);
  CHECK((c.value - fixtures::fundamental_extension(sigma.matrix())).norm() < 1e-4);

  ys.set(0, x * Quaterniond::unit_j());  // det = 0
  CHECK_THROWS_AS(penrose_transform_complex(w, Biquaterniond(xs, ys), u), std::domain_error);
}

TEST_CASE("commutative diagram") {
  const auto& cal = default_calibration();
  CHECK(std::abs(cal.kappa - cd(-1.0)) < 1e-6);
  CHECK(cal.fit_residual < 1e-6);

  const auto e = field_entry("E").make(2);
  const auto pe = samples("E", 2, 3, 85);
  const auto re = diagram_check(e, pe, cal);
  CHECK(re.max_residual < 1e-4);
  CHECK(re.max_lhs < 1e-4);

  for (int n = 1; n <= 2; ++n) {
    const auto q = field_entry("smooth_nonmonogenic").make(n);
    const auto pq = samples("smooth_nonmonogenic", n, 3, 86);
    const auto rq = diagram_check(q, pq, cal);
    CHECK(rq.max_residual < 1e-4);
    CHECK(rq.max_rhs > 0.1);

    // residual of a psi scales by |a|
    const double a = -2.5;
    const auto zero = combine(-1.0, q, q);
    const auto scaled = diagram_check(combine(a, q, zero), pq, cal);
    for (std::size_t k = 0; k < pq.size(); ++k)
      CHECK(scaled.per_point[k] == doctest::Approx(std::abs(a) * rq.per_point[k]).epsilon(1e-3).scale(1e-6));
  }
}

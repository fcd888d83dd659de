#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fueter/fd.hpp"
#include "fueter/sampling.hpp"
#include "fueter/twistor.hpp"

#include <cmath>

using namespace fueter;

namespace {

FiberPoint random_fiber_point(Rng& rng, int n, int chart) {
  return {chart, gaussian_complex(rng), gaussian_vector(rng, n)};
}

Biquaterniond random_sigma(Rng& rng, int n, double xs = 1.0, double ys = 0.5) {
  return {gaussian_vector(rng, n, xs), gaussian_vector(rng, n, ys)};
}

Eigen::VectorXcd tuple(std::initializer_list<cd> c) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(c.size()));
  Eigen::Index i = 0;
  for (const auto& x : c) v[i++] = x;
  return v;
}

}  // namespace

TEST_CASE("projective normalisation") {
  const auto a = TwistorPoint::from_homogeneous(tuple({cd(0, 2), 1.0, 0.0, cd(1, 1)}));
  const auto b = TwistorPoint::from_homogeneous(tuple({cd(0, 2), 1.0, 0.0, cd(1, 1)}) * cd(-0.3, 1.7));
  CHECK(a.distance(b) < 1e-15);
  CHECK((a.coords() - b.coords()).norm() < 1e-14);
  CHECK(a.coords().norm() == doctest::Approx(1.0));
  CHECK(a.coords()[0].imag() == 0.0);
  CHECK(a.coords()[0].real() > 0.0);
  CHECK_THROWS_AS(TwistorPoint::from_homogeneous(Eigen::VectorXcd::Zero(4)), std::invalid_argument);
}

TEST_CASE("eta in chart 0 at z = 0") {
  Rng rng(61);
  const auto x = gaussian_vector(rng, 2);
  const auto v = x.to_complex();
  const auto tp = eta({0, 0.0, x});
  const auto expect = TwistorPoint::from_homogeneous(tuple({1.0, 0.0, v[0], v[1], v[2], v[3]}));
  CHECK(tp.distance(expect) < 1e-15);
}

TEST_CASE("eta round trips and chart changes") {
  Rng rng(62);
  for (int n = 1; n <= 2; ++n) {
    for (int t = 0; t < 1000; ++t) {
      const auto fp = random_fiber_point(rng, n, t % 2);
      const auto back = eta_inverse(eta(fp), fp.chart);
      CHECK(back.chart == fp.chart);
      CHECK(std::abs(back.fiber - fp.fiber) < 1e-12 * (1.0 + std::abs(fp.fiber)));
      CHECK((back.base - fp.base).norm() < 1e-12 * (1.0 + fp.base.norm()));
    }
    for (int t = 0; t < 100; ++t) {
      const auto fp = random_fiber_point(rng, n, 0);
      const auto other = eta({1, 1.0 / fp.fiber, fp.base});
      CHECK(eta(fp).distance(other) < 1e-12);
      // w_0 = 1/z_0, w_i = z_i / z_0
      const auto tp = eta(fp);
      const auto a0 = tp.affine(0), a1 = tp.affine(1);
      CHECK(std::abs(a1[0] - 1.0 / a0[0]) < 1e-12 * std::abs(a1[0]));
      CHECK((a1.tail(2 * n) - a0.tail(2 * n) / a0[0]).norm() < 1e-12 * a1.norm());
      // the base point does not depend on the chart
      CHECK((eta_inverse(tp, 1).base - eta_inverse(tp, 0).base).norm() < 1e-12 * (1.0 + fp.base.norm()));
    }
  }
}

TEST_CASE("eta inverse on chart origins") {
  const cd alpha(0.4, -1.2), beta(2.0, 0.5);
  const auto q = Quaterniond::from_pair(alpha, beta);

  const auto zero = eta_inverse(TwistorPoint::from_homogeneous(tuple({1.0, 0.0, alpha, beta})));
  CHECK(zero.chart == 0);
  CHECK(std::abs(zero.fiber) < 1e-15);
  CHECK((zero.base[0] - q).norm() < 1e-14);

  const auto one = eta_inverse(TwistorPoint::from_homogeneous(tuple({0.0, 1.0, -std::conj(beta), std::conj(alpha)})));
  CHECK(one.chart == 1);
  CHECK(std::abs(one.fiber) < 1e-15);
  CHECK((one.base[0] - q).norm() < 1e-14);

  CHECK_THROWS_AS(eta_inverse(TwistorPoint::from_homogeneous(tuple({0.0, 0.0, 1.0, 0.0}))), std::domain_error);
}

TEST_CASE("line embedding") {
  Rng rng(63);
  const auto sigma = random_sigma(rng, 2);
  const auto m = sigma.matrix();

  const auto at_zero = line_embed(m, 1.0, 0.0);
  const auto expect = TwistorPoint::from_homogeneous(tuple({1.0, 0.0, m(0, 0), m(1, 0), m(2, 0), m(3, 0)}));
  CHECK(at_zero.distance(expect) < 1e-15);
  CHECK_THROWS_AS(line_embed(m, 0.0, 0.0), std::invalid_argument);

  SUBCASE("real points give the eta fibres") {
    const auto x = gaussian_vector(rng, 2);
    for (int t = 0; t < 50; ++t) {
      const cd z = gaussian_complex(rng);
      CHECK(line_embed(embed(x), 1.0, z).distance(eta({0, z, x})) < 1e-13);
    }
  }
  SUBCASE("three points span a plane") {
    for (int t = 0; t < 20; ++t) {
      Eigen::MatrixXcd rows(3, 6);
      for (int r = 0; r < 3; ++r)
        rows.row(r) = line_embed(m, gaussian_complex(rng), gaussian_complex(rng)).coords().transpose();
      const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXcd>(rows).singularValues();
      CHECK(sv[1] > 1e-6);
      CHECK(sv[2] < 1e-13);
    }
  }
  SUBCASE("affine chart and holomorphic derivative of the base point") {
    for (int t = 0; t < 20; ++t) {
      const cd z = gaussian_complex(rng);
      const auto a = line_chart0(m, z);
      CHECK((a - line_embed(m, 1.0, z).affine(0)).norm() < 1e-12 * a.norm());
      const auto lb = line_base_chart0(m, z);
      CHECK((lb.point - base_from_chart0(a).to_complex()).norm() < 1e-13 * (1.0 + lb.point.norm()));
      const Eigen::VectorXcd fd = wirtinger_z([&](cd t) { return Eigen::VectorXcd(line_base_chart0(m, t).point); }, z, 1e-5);
      CHECK((fd - lb.dz).norm() < 1e-8);
    }
  }
}

TEST_CASE("sweep of a twistor line") {
  Rng rng(64);
  for (int n = 1; n <= 2; ++n) {
    const auto sigma = random_sigma(rng, n);
    const auto i = Quaterniond::unit_i();
    CHECK((sweep_point(sigma, 1.0, 0.0) - sigma.evaluate(i)).norm() < 1e-15);
    CHECK((sweep_point(sigma, 0.0, 1.0) - sigma.evaluate(-i)).norm() < 1e-15);

    // The sweep and {x + y q} agree as sets up to the grid spacings.
    const HopfGrid grid;
    const auto sweep = line_sweep(sigma, grid);
    const ImUnitSphereSampler sphere{2000};
    std::vector<QuaternionVectord> direct;
    for (const auto& u : sphere.nodes()) direct.push_back(sigma.evaluate(unit_imaginary<double>(u)));
    const auto one_sided = [](const std::vector<QuaternionVectord>& from, const std::vector<QuaternionVectord>& to) {
      double worst = 0.0;
      for (const auto& p : from) {
        double best = INFINITY;
        for (const auto& q : to) best = std::min(best, (p - q).norm());
        worst = std::max(worst, best);
      }
      return worst;
    };
    const double hausdorff = std::max(one_sided(sweep, direct), one_sided(direct, sweep));
    CHECK(hausdorff < sigma.y.norm() * (grid.resolution() + sphere.covering_radius()));

    // Base points of the twistor line are exactly the sweep.
    std::vector<QuaternionVectord> bases;
    for (const auto& node : grid.nodes()) bases.push_back(line_base_point(sigma, node.alpha, node.beta));
    CHECK(one_sided(bases, direct) < sigma.y.norm() * sphere.covering_radius());
  }
}

TEST_CASE("real points have disjoint lines") {
  Rng rng(65);
  for (int t = 0; t < 20; ++t) {
    const auto x = gaussian_vector(rng, 2), x2 = gaussian_vector(rng, 2);
    const cd a = gaussian_complex(rng), b = gaussian_complex(rng);
    const double len = std::sqrt(std::norm(a) + std::norm(b));
    CHECK((line_base_point(Biquaterniond(x), a / len, b / len) - x).norm() < 1e-13 * (1.0 + x.norm()));
    CHECK((line_base_point(Biquaterniond(x), a / len, b / len) - line_base_point(Biquaterniond(x2), a / len, b / len)).norm() ==
          doctest::Approx((x - x2).norm()).epsilon(1e-10));
  }
}

TEST_CASE("hull by twistor lines") {
  Rng rng(66);
  SUBCASE("real points") {
    const auto u = Domain::ball(2, 1.0);
    for (int t = 0; t < 50; ++t) {
      const auto x = gaussian_vector(rng, 2, 0.5);
      CHECK(hull_contains_via_lines(Biquaterniond(x), u).verdict() == u.contains(x));
    }
  }
  SUBCASE("punctured quaternions") {
    const auto u = parse_domain("H*:n=1");
    for (int t = 0; t < 200; ++t) {
      Biquaterniond s(gaussian_vector(rng, 1), gaussian_vector(rng, 1));
      if (t % 4 == 0) s.y = s.x * unit_imaginary<double>(unit_vector3(rng));
      const auto q = hull_contains_via_lines(s, u);
      if (q.membership != Membership::indeterminate) CHECK(q.verdict() == (std::abs(det(s)) > 1e-9));
    }
  }
  SUBCASE("agrees with the definition") {
    const auto u = Domain::ball(2, 1.0);
    int inside = 0;
    for (int t = 0; t < 200; ++t) {
      const Biquaterniond s(ball_vector(rng, 2, 0.9), gaussian_vector(rng, 2, 0.15));
      const auto a = hull_contains(s, u);
      const auto b = hull_contains_via_lines(s, u);
      if (a.membership != Membership::indeterminate && b.membership != Membership::indeterminate)
        CHECK(a.verdict() == b.verdict());
      inside += a.verdict();
    }
    CHECK(inside > 20);
    CHECK(inside < 180);
  }
  CHECK_THROWS_AS((HopfGrid{1, 8}.nodes()), std::invalid_argument);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fueter/quaternion.hpp"
#include "fueter/sampling.hpp"

using namespace fueter;

namespace {

const cd I(0.0, 1.0);

QuaternionVectord single(const Quaterniond& q) {
  QuaternionVectord v(1);
  v.set(0, q);
  return v;
}

double qdist(const Quaterniond& a, const Quaterniond& b) { return (a - b).norm(); }

}  // namespace

TEST_CASE("unit relations") {
  const auto i = Quaterniond::unit_i(), j = Quaterniond::unit_j(), k = Quaterniond::unit_k();
  const Quaterniond minus_one(-1.0);
  CHECK(qdist(i * i, minus_one) == 0.0);
  CHECK(qdist(j * j, minus_one) == 0.0);
  CHECK(qdist(k * k, minus_one) == 0.0);
  CHECK(qdist(i * j * k, minus_one) == 0.0);
  CHECK(qdist(i * j, k) == 0.0);
  CHECK(qdist(j * i, -k) == 0.0);
}

TEST_CASE("product is associative and the norm multiplicative") {
  Rng rng(11);
  for (int t = 0; t < 200; ++t) {
    const auto p = gaussian_quaternion(rng), q = gaussian_quaternion(rng), r = gaussian_quaternion(rng);
    CHECK(qdist((p * q) * r, p * (q * r)) < 1e-12 * (1.0 + p.norm() * q.norm() * r.norm()));
    CHECK((p * q).norm() == doctest::Approx(p.norm() * q.norm()).epsilon(1e-13));
    CHECK(inner(p, q) == doctest::Approx(inner(q, p)));
    CHECK(inner(p, p) > 0.0);
    CHECK(qdist(p * p.inverse(), Quaterniond(1.0)) < 1e-13);
  }
}

TEST_CASE("complex pair round trip") {
  Rng rng(12);
  for (int n = 1; n <= 3; ++n) {
    const auto x = gaussian_vector(rng, n);
    const auto back = QuaternionVectord::from_complex(x.to_complex());
    CHECK((back.coords() - x.coords()).norm() == 0.0);
  }
  const auto q = Quaterniond::from_pair(cd(1, 2), cd(3, 4));
  CHECK(q.x0 == 1.0);
  CHECK(q.x1 == 2.0);
  CHECK(q.x2 == 4.0);
  CHECK(q.x3 == 3.0);
  // alpha + k beta
  CHECK(qdist(q, Quaterniond(1, 2) + Quaterniond::unit_k() * Quaterniond(3, 4)) < 1e-15);
}

TEST_CASE("kappa") {
  Eigen::Vector2cd e0(1.0, 0.0), e1(0.0, 1.0);
  CHECK((kappa(e0) - Eigen::Vector2cd(0.0, 1.0)).norm() == 0.0);
  CHECK((kappa(e1) - Eigen::Vector2cd(-1.0, 0.0)).norm() == 0.0);

  Rng rng(13);
  for (int t = 0; t < 50; ++t) {
    const auto x = gaussian_vector(rng, 2);
    const Eigen::VectorXcd v = x.to_complex();
    CHECK((kappa(kappa(v)) + v).norm() < 1e-15);
    // right multiplication by k
    CHECK((kappa(v) - (x * Quaterniond::unit_k()).to_complex()).norm() < 1e-14);
  }
}

TEST_CASE("embedding into 2x2 blocks") {
  const auto one = embed(single(Quaterniond(1.0)));
  CHECK((one - Eigen::Matrix2cd::Identity()).norm() == 0.0);

  const auto k = embed(single(Quaterniond::unit_k()));
  Eigen::Matrix2cd expect;
  expect << 0.0, -1.0, 1.0, 0.0;
  CHECK((k - expect).norm() == 0.0);

  Rng rng(14);
  for (int t = 0; t < 100; ++t) {
    const auto x = gaussian_quaternion(rng), q = gaussian_quaternion(rng);
    const Eigen::Matrix2cd lhs = embed(single(x * q));
    const Eigen::Matrix2cd rhs = embed(single(x)) * embed(single(q));
    CHECK((lhs - rhs).norm() < 1e-13 * (1.0 + x.norm() * q.norm()));
  }
}

TEST_CASE("matrix form columns") {
  Rng rng(15);
  const Biquaterniond p(gaussian_vector(rng, 2), gaussian_vector(rng, 2));
  const auto m = p.matrix();
  const Eigen::VectorXcd xc = p.x.to_complex(), yc = p.y.to_complex();
  CHECK((m.col(0) - (xc + I * yc)).norm() < 1e-15);
  const Eigen::VectorXcd iy = I * yc;
  CHECK((m.col(1) - (kappa(xc) - kappa(iy))).norm() < 1e-15);
}

TEST_CASE("matrix decomposition") {
  SUBCASE("identity") {
    const auto p = Biquaterniond::from_matrix(Eigen::Matrix2cd::Identity());
    CHECK(qdist(p.x[0], Quaterniond(1.0)) == 0.0);
    CHECK(p.y.norm() == 0.0);
  }
  SUBCASE("diag(i, -i)") {
    Eigen::Matrix2cd z = Eigen::Matrix2cd::Zero();
    z(0, 0) = I;
    z(1, 1) = -I;
    const auto p = Biquaterniond::from_matrix(z);
    CHECK(qdist(p.x[0], Quaterniond::unit_i()) < 1e-15);
    CHECK(p.y.norm() < 1e-15);
  }
  SUBCASE("diag(i, i)") {
    Eigen::Matrix2cd z = Eigen::Matrix2cd::Zero();
    z(0, 0) = I;
    z(1, 1) = I;
    const auto p = Biquaterniond::from_matrix(z);
    CHECK(p.x.norm() < 1e-15);
    CHECK(qdist(p.y[0], Quaterniond(1.0)) < 1e-15);
  }
  SUBCASE("two-sided inverse") {
    Rng rng(16);
    for (int t = 0; t < 100; ++t) {
      MatrixX2cd z(4, 2);
      for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 2; ++c) z(r, c) = gaussian_complex(rng);
      CHECK((Biquaterniond::from_matrix(z).matrix() - z).norm() < 1e-14);
      const Biquaterniond p(gaussian_vector(rng, 2), gaussian_vector(rng, 2));
      const auto back = Biquaterniond::from_matrix(p.matrix());
      CHECK((back - p).norm_c() < 1e-14);
    }
  }
}

TEST_CASE("determinant of the matrix form") {
  CHECK(std::abs(det(Biquaterniond(single(Quaterniond(1.0)))) - cd(1.0)) == 0.0);

  Rng rng(17);
  const auto q = unit_quaternion(rng);
  CHECK(std::abs(det(Biquaterniond(single(Quaterniond()), single(q))) - cd(-1.0)) < 1e-14);

  for (int t = 0; t < 200; ++t) {
    const Biquaterniond p(gaussian_vector(rng, 1), gaussian_vector(rng, 1));
    const cd expect(p.x.squared_norm() - p.y.squared_norm(), 2.0 * inner(p.x, p.y));
    CHECK(std::abs(det(p) - expect) < 1e-12 * (1.0 + p.norm_c() * p.norm_c()));

    const cd real_point = det(Biquaterniond(p.x));
    CHECK(std::abs(real_point.imag()) < 1e-14);
    CHECK(real_point.real() == doctest::Approx(p.x.squared_norm()).epsilon(1e-13));
  }
  CHECK_THROWS_AS(det(Biquaterniond(gaussian_vector(rng, 2))), std::invalid_argument);
}

TEST_CASE("complex norm") {
  Rng rng(18);
  for (int t = 0; t < 100; ++t) {
    const Biquaterniond a(gaussian_vector(rng, 2), gaussian_vector(rng, 2));
    const Biquaterniond b(gaussian_vector(rng, 2), gaussian_vector(rng, 2));
    CHECK((a + b).norm_c() <= a.norm_c() + b.norm_c() + 1e-14);
    const double s = uniform(rng, -3.0, 3.0);
    const Biquaterniond scaled(a.x * s, a.y * s);
    CHECK(scaled.norm_c() == doctest::Approx(std::abs(s) * a.norm_c()).epsilon(1e-13));
    CHECK(a.norm_c() * a.norm_c() ==
          doctest::Approx(a.x.squared_norm() + a.y.squared_norm()).epsilon(1e-13));
  }
}

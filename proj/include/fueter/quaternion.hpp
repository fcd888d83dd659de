#pragma once

// Quaternions, quaternionic column vectors and biquaternion points.
//
// H^n is treated as a RIGHT H-module; C sits inside H as span{1, i}.
// A quaternion q = x0 + i x1 + j x2 + k x3 is identified with the complex
// pair (alpha, beta) through q = alpha + k beta, i.e.
//
//   alpha = x0 + i x1,   beta = x3 + i x2.
//
// Vectors of H^n are identified with C^{2n} in the interleaved order
// (alpha_1, beta_1, ..., alpha_n, beta_n).

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>

namespace fueter {

template <typename Scalar>
struct Quaternion {
  Scalar x0{0}, x1{0}, x2{0}, x3{0};

  constexpr Quaternion() = default;
  constexpr Quaternion(Scalar a, Scalar b = Scalar(0), Scalar c = Scalar(0),
                       Scalar d = Scalar(0))
      : x0(a), x1(b), x2(c), x3(d) {}

  static constexpr Quaternion unit_i() { return {0, 1, 0, 0}; }
  static constexpr Quaternion unit_j() { return {0, 0, 1, 0}; }
  static constexpr Quaternion unit_k() { return {0, 0, 0, 1}; }

  // alpha + k beta
  static Quaternion from_pair(std::complex<Scalar> alpha,
                              std::complex<Scalar> beta) {
    return {alpha.real(), alpha.imag(), beta.imag(), beta.real()};
  }
  static Quaternion from_coeffs(const Eigen::Matrix<Scalar, 4, 1>& c) {
    return {c[0], c[1], c[2], c[3]};
  }

  std::complex<Scalar> alpha() const { return {x0, x1}; }
  std::complex<Scalar> beta() const { return {x3, x2}; }
  Eigen::Matrix<Scalar, 4, 1> coeffs() const { return {x0, x1, x2, x3}; }

  Scalar real() const { return x0; }
  Quaternion imag() const { return {0, x1, x2, x3}; }
  Quaternion conjugate() const { return {x0, -x1, -x2, -x3}; }
  Scalar squared_norm() const { return x0 * x0 + x1 * x1 + x2 * x2 + x3 * x3; }
  Scalar norm() const { return std::sqrt(squared_norm()); }
  Quaternion inverse() const {
    const Scalar s = squared_norm();
    return {x0 / s, -x1 / s, -x2 / s, -x3 / s};
  }

  Quaternion& operator+=(const Quaternion& o) {
    x0 += o.x0; x1 += o.x1; x2 += o.x2; x3 += o.x3;
    return *this;
  }
  Quaternion& operator-=(const Quaternion& o) {
    x0 -= o.x0; x1 -= o.x1; x2 -= o.x2; x3 -= o.x3;
    return *this;
  }
  Quaternion& operator*=(Scalar s) {
    x0 *= s; x1 *= s; x2 *= s; x3 *= s;
    return *this;
  }
};

template <typename S>
Quaternion<S> operator+(Quaternion<S> a, const Quaternion<S>& b) { return a += b; }
template <typename S>
Quaternion<S> operator-(Quaternion<S> a, const Quaternion<S>& b) { return a -= b; }
template <typename S>
Quaternion<S> operator-(const Quaternion<S>& a) { return {-a.x0, -a.x1, -a.x2, -a.x3}; }
template <typename S>
Quaternion<S> operator*(Quaternion<S> a, S s) { return a *= s; }
template <typename S>
Quaternion<S> operator*(S s, Quaternion<S> a) { return a *= s; }
template <typename S>
Quaternion<S> operator/(Quaternion<S> a, S s) { return a *= S(1) / s; }

// Hamilton product, i^2 = j^2 = k^2 = ijk = -1.
template <typename S>
Quaternion<S> operator*(const Quaternion<S>& a, const Quaternion<S>& b) {
  return {a.x0 * b.x0 - a.x1 * b.x1 - a.x2 * b.x2 - a.x3 * b.x3,
          a.x0 * b.x1 + a.x1 * b.x0 + a.x2 * b.x3 - a.x3 * b.x2,
          a.x0 * b.x2 - a.x1 * b.x3 + a.x2 * b.x0 + a.x3 * b.x1,
          a.x0 * b.x3 + a.x1 * b.x2 - a.x2 * b.x1 + a.x3 * b.x0};
}

// Re(conj(a) b)
template <typename S>
S inner(const Quaternion<S>& a, const Quaternion<S>& b) {
  return a.x0 * b.x0 + a.x1 * b.x1 + a.x2 * b.x2 + a.x3 * b.x3;
}

template <typename S>
Quaternion<S> unit_imaginary(const Eigen::Matrix<S, 3, 1>& u) {
  return {S(0), u[0], u[1], u[2]};
}

// ---------------------------------------------------------------------------

template <typename Scalar>
class QuaternionVector {
 public:
  using Coords = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using ComplexCoords = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

  QuaternionVector() = default;
  explicit QuaternionVector(Eigen::Index n) : coords_(Coords::Zero(4 * n)) {}
  explicit QuaternionVector(Coords c) : coords_(std::move(c)) {
    if (coords_.size() % 4 != 0)
      throw std::invalid_argument("quaternion vector needs 4n real coordinates");
  }

  static QuaternionVector from_complex(const ComplexCoords& v) {
    if (v.size() % 2 != 0)
      throw std::invalid_argument("complex form of H^n has even length");
    QuaternionVector out(v.size() / 2);
    for (Eigen::Index l = 0; l < out.size(); ++l)
      out.set(l, Quaternion<Scalar>::from_pair(v[2 * l], v[2 * l + 1]));
    return out;
  }

  Eigen::Index size() const { return coords_.size() / 4; }

  Quaternion<Scalar> operator[](Eigen::Index l) const {
    return {coords_[4 * l], coords_[4 * l + 1], coords_[4 * l + 2],
            coords_[4 * l + 3]};
  }
  void set(Eigen::Index l, const Quaternion<Scalar>& q) {
    coords_.template segment<4>(4 * l) = q.coeffs();
  }

  const Coords& coords() const { return coords_; }
  Coords& coords() { return coords_; }

  ComplexCoords to_complex() const {
    ComplexCoords v(2 * size());
    for (Eigen::Index l = 0; l < size(); ++l) {
      const auto q = (*this)[l];
      v[2 * l] = q.alpha();
      v[2 * l + 1] = q.beta();
    }
    return v;
  }

  Scalar squared_norm() const { return coords_.squaredNorm(); }
  Scalar norm() const { return coords_.norm(); }

  QuaternionVector& operator+=(const QuaternionVector& o) {
    coords_ += o.coords_;
    return *this;
  }
  QuaternionVector& operator-=(const QuaternionVector& o) {
    coords_ -= o.coords_;
    return *this;
  }
  QuaternionVector& operator*=(Scalar s) {
    coords_ *= s;
    return *this;
  }

 private:
  Coords coords_;
};

template <typename S>
QuaternionVector<S> operator+(QuaternionVector<S> a, const QuaternionVector<S>& b) { return a += b; }
template <typename S>
QuaternionVector<S> operator-(QuaternionVector<S> a, const QuaternionVector<S>& b) { return a -= b; }
template <typename S>
QuaternionVector<S> operator-(QuaternionVector<S> a) { return a *= S(-1); }
template <typename S>
QuaternionVector<S> operator*(S s, QuaternionVector<S> a) { return a *= s; }
template <typename S>
QuaternionVector<S> operator*(QuaternionVector<S> a, S s) { return a *= s; }

// Right multiplication by a quaternion scalar: (x q)_l = x_l q.
template <typename S>
QuaternionVector<S> operator*(const QuaternionVector<S>& x, const Quaternion<S>& q) {
  QuaternionVector<S> out(x.size());
  for (Eigen::Index l = 0; l < x.size(); ++l) out.set(l, x[l] * q);
  return out;
}

template <typename S>
S inner(const QuaternionVector<S>& a, const QuaternionVector<S>& b) {
  return a.coords().dot(b.coords());
}

// Right multiplication by k in complex coordinates:
// (alpha, beta) -> (-conj(beta), conj(alpha)) pairwise.
template <typename Derived>
auto kappa(const Eigen::MatrixBase<Derived>& v) {
  using C = typename Derived::Scalar;
  Eigen::Matrix<C, Eigen::Dynamic, 1> out(v.size());
  for (Eigen::Index l = 0; l + 1 < v.size(); l += 2) {
    out[l] = -std::conj(v[l + 1]);
    out[l + 1] = std::conj(v[l]);
  }
  return out;
}

template <typename S>
using ComplexMatrixX2 = Eigen::Matrix<std::complex<S>, Eigen::Dynamic, 2>;

// M(x) = (x | K(x)); for n = 1 the block [[alpha, -conj(beta)], [beta, conj(alpha)]].
template <typename S>
ComplexMatrixX2<S> embed(const QuaternionVector<S>& x) {
  const auto v = x.to_complex();
  ComplexMatrixX2<S> m(v.size(), 2);
  m.col(0) = v;
  m.col(1) = kappa(v);
  return m;
}

// ---------------------------------------------------------------------------

// A point (x, y) of M_{2n x 2}(C) = H^n (x) C, i.e. the matrix M(x) + i M(y).
template <typename Scalar>
struct Biquaternion {
  QuaternionVector<Scalar> x;
  QuaternionVector<Scalar> y;

  Biquaternion() = default;
  Biquaternion(QuaternionVector<Scalar> x_, QuaternionVector<Scalar> y_)
      : x(std::move(x_)), y(std::move(y_)) {
    if (x.size() != y.size())
      throw std::invalid_argument("biquaternion parts differ in dimension");
  }
  explicit Biquaternion(QuaternionVector<Scalar> x_)
      : x(std::move(x_)), y(x.size()) {}

  Eigen::Index size() const { return x.size(); }

  ComplexMatrixX2<Scalar> matrix() const {
    const std::complex<Scalar> i(0, 1);
    return embed(x) + i * embed(y);
  }

  // Inverse of matrix(): solves z = M(x) + i M(y) blockwise.
  static Biquaternion from_matrix(const ComplexMatrixX2<Scalar>& z) {
    if (z.rows() % 2 != 0)
      throw std::invalid_argument("biquaternion matrix needs 2n rows");
    const Eigen::Index n = z.rows() / 2;
    const std::complex<Scalar> i(0, 1);
    QuaternionVector<Scalar> x(n), y(n);
    for (Eigen::Index l = 0; l < n; ++l) {
      const auto z00 = z(2 * l, 0), z01 = z(2 * l, 1);
      const auto z10 = z(2 * l + 1, 0), z11 = z(2 * l + 1, 1);
      const auto alpha = (z00 + std::conj(z11)) / Scalar(2);
      const auto gamma = (z00 - std::conj(z11)) / (Scalar(2) * i);
      const auto beta = (z10 - std::conj(z01)) / Scalar(2);
      const auto delta = (z10 + std::conj(z01)) / (Scalar(2) * i);
      x.set(l, Quaternion<Scalar>::from_pair(alpha, beta));
      y.set(l, Quaternion<Scalar>::from_pair(gamma, delta));
    }
    return {std::move(x), std::move(y)};
  }

  // ||(x, y)||_C = sqrt(||x||^2 + ||y||^2)
  Scalar norm_c() const { return std::sqrt(x.squared_norm() + y.squared_norm()); }

  // x + y q
  QuaternionVector<Scalar> evaluate(const Quaternion<Scalar>& q) const {
    return x + y * q;
  }

  Biquaternion& operator+=(const Biquaternion& o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  Biquaternion& operator-=(const Biquaternion& o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
};

template <typename S>
Biquaternion<S> operator+(Biquaternion<S> a, const Biquaternion<S>& b) { return a += b; }
template <typename S>
Biquaternion<S> operator-(Biquaternion<S> a, const Biquaternion<S>& b) { return a -= b; }

// 2x2 determinant of the matrix form (n = 1). Equals
// ||x||^2 - ||y||^2 + 2i (x, y).
template <typename S>
std::complex<S> det(const Biquaternion<S>& p) {
  if (p.size() != 1) throw std::invalid_argument("det is defined for n = 1 only");
  const auto m = p.matrix();
  return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
}

using Quaterniond = Quaternion<double>;
using QuaternionVectord = QuaternionVector<double>;
using Biquaterniond = Biquaternion<double>;
using MatrixX2cd = ComplexMatrixX2<double>;
using cd = std::complex<double>;

}  // namespace fueter

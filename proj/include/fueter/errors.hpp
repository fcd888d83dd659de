#pragma once

#include <Eigen/Dense>

#include <sstream>
#include <stdexcept>
#include <string>

namespace fueter {

// A finite-difference stencil or a query left the domain of an oracle.
class DomainError : public std::domain_error {
 public:
  DomainError(const std::string& what, Eigen::VectorXd point)
      : std::domain_error(format(what, point)), point_(std::move(point)) {}

  const Eigen::VectorXd& point() const { return point_; }

 private:
  static std::string format(const std::string& what, const Eigen::VectorXd& p) {
    std::ostringstream os;
    os << what << " at [";
    for (Eigen::Index i = 0; i < p.size(); ++i) os << (i ? ", " : "") << p[i];
    os << "]";
    return os.str();
  }
  Eigen::VectorXd point_;
};

// Quadrature or a search failed to settle between refinement levels.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fueter

namespace fueter {

// A form failed its closedness certificate.
class CertificateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fueter

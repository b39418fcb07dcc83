#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace dissim {

using complexd = std::complex<double>;
using cmat = Eigen::MatrixXcd;
using cvec = Eigen::VectorXcd;
using dmat = Eigen::MatrixXd;
using dvec = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;

/// Thrown when an input violates a documented precondition or invariant.
class validation_error : public std::runtime_error {
public:
  explicit validation_error(const std::string& msg) : std::runtime_error(msg) {}
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw validation_error(msg);
}

/// Fermi-Dirac occupation 1/(1+e^{beta*x}), overflow-safe for large |beta*x|.
inline double fermi(double x, double beta) {
  const double bx = beta * x;
  if (bx >= 0.0) {
    const double e = std::exp(-bx);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(bx));
}

/// Kronecker product; trace is multiplicative under it.
inline cmat kron(const cmat& a, const cmat& b) {
  cmat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline double max_abs(const cmat& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace dissim

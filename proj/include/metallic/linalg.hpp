#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace metallic {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

struct NotPositiveDefiniteError : std::runtime_error {
  explicit NotPositiveDefiniteError(const std::string& what)
      : std::runtime_error(what) {}
};

struct RankDeficientError : std::runtime_error {
  explicit RankDeficientError(const std::string& what)
      : std::runtime_error(what) {}
};

// Solves G x = b for symmetric positive definite G via Cholesky.
// Throws NotPositiveDefiniteError when a pivot drops below tolerance.
Vector solve_spd(const Matrix& G, const Vector& b);

// As above for a block of right-hand sides.
Matrix solve_spd(const Matrix& G, const Matrix& B);

// Orthonormal basis of the orthogonal complement of span(columns),
// computed by Householder QR. columns is m x k with full rank k;
// the result is m x (m-k). Deterministic sign convention: each returned
// column has a positive entry at its largest-magnitude component.
Matrix orthonormal_complement(const Matrix& columns);

inline double max_abs(const Matrix& A) {
  return A.size() == 0 ? 0.0 : A.cwiseAbs().maxCoeff();
}

}  // namespace metallic

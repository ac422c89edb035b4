#include "metallic/linalg.hpp"

namespace metallic {

namespace {
constexpr double kPivotTol = 1e-14;
constexpr double kRankTolFactor = 1e-10;
}  // namespace

Matrix solve_spd(const Matrix& G, const Matrix& B) {
  if (G.rows() != G.cols() || G.rows() != B.rows())
    throw std::invalid_argument("solve_spd: dimension mismatch");
  Eigen::LLT<Matrix> llt(G);
  if (llt.info() != Eigen::Success)
    throw NotPositiveDefiniteError("solve_spd: Cholesky factorization failed");
  const Matrix& L = llt.matrixLLT();
  double scale = G.diagonal().cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < L.rows(); ++i)
    if (L(i, i) * L(i, i) <= kPivotTol * scale)
      throw NotPositiveDefiniteError("solve_spd: pivot below tolerance");
  return llt.solve(B);
}

Vector solve_spd(const Matrix& G, const Vector& b) {
  return Vector(solve_spd(G, Matrix(b)));
}

Matrix orthonormal_complement(const Matrix& columns) {
  const Eigen::Index m = columns.rows();
  const Eigen::Index k = columns.cols();
  if (k > m) throw std::invalid_argument("orthonormal_complement: k > m");
  Eigen::HouseholderQR<Matrix> qr(columns);
  Matrix R = qr.matrixQR().topRows(k).template triangularView<Eigen::Upper>();
  double tol = kRankTolFactor * columns.colwise().norm().maxCoeff();
  for (Eigen::Index i = 0; i < k; ++i)
    if (std::abs(R(i, i)) < tol)
      throw RankDeficientError("orthonormal_complement: numerical rank < k");
  Matrix Q = qr.householderQ() * Matrix::Identity(m, m);
  Matrix comp = Q.rightCols(m - k);
  // sign convention: largest-magnitude entry of each column is positive
  for (Eigen::Index j = 0; j < comp.cols(); ++j) {
    Eigen::Index imax;
    comp.col(j).cwiseAbs().maxCoeff(&imax);
    if (comp(imax, j) < 0) comp.col(j) = -comp.col(j);
  }
  return comp;
}

}  // namespace metallic

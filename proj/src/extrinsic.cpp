#include "metallic/extrinsic.hpp"

namespace metallic {

ChartGeometry::ChartGeometry(const ImmersionSpec& spec,
                             const AmbientStructure& ambient, const Vector& x)
    : spec_(&spec), ambient_(&ambient), frame_(frame_at(spec, x)),
      split_(split_J(ambient, frame_)) {
  const int k = frame_.chart_dim();
  const Matrix& Z = frame_.tangent;
  const Matrix& J = ambient.J;
  const Matrix& G = frame_.gram;
  dG_.resize(k);
  dM_.resize(k);
  dT_.resize(k);
  christoffel_.resize(k);
  dProj_.resize(k);
  const Matrix Ginv_Zt = solve_spd(G, Matrix(Z.transpose()));
  proj_ = Z * Ginv_Zt;
  for (int c = 0; c < k; ++c) {
    const Matrix& dZ = frame_.second[c];
    dG_[c] = dZ.transpose() * Z + Z.transpose() * dZ;
    dM_[c] = dZ.transpose() * J * Z + Z.transpose() * J * dZ;
    dT_[c] = solve_spd(G, Matrix(dM_[c] - dG_[c] * split_.T()));
    // nabla_{Z_c} Z_b = tangential projection of the second jet
    christoffel_[c] = solve_spd(G, Matrix(Z.transpose() * dZ));
    const Matrix A = dZ * Ginv_Zt;
    dProj_[c] = A + A.transpose() - Z * solve_spd(G, Matrix(dG_[c])) * Ginv_Zt;
  }
}

Vector ChartGeometry::normal_part_of_J(const Vector& x) const {
  Vector jx = ambient_->J * (frame_.tangent * x);
  return jx - proj_ * jx;
}

Vector ChartGeometry::h_vec(const Vector& x, const Vector& y) const {
  const int k = chart_dim();
  Vector out = Vector::Zero(frame_.ambient_dim());
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      out += x(a) * y(b) * frame_.second_vec(a, b);
  return out - proj_ * out;
}

Matrix ChartGeometry::shape_operator(const Vector& v_normal) const {
  const int k = chart_dim();
  Matrix H(k, k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      H(a, b) = frame_.second_vec(a, b).dot(v_normal);
  return solve_spd(frame_.gram, H);
}

Matrix ChartGeometry::covariant_endo(int c, const Matrix& S,
                                     const Matrix& dS) const {
  return dS + christoffel_[c] * S - S * christoffel_[c];
}

Matrix ChartGeometry::covariant_T(int c) const {
  return covariant_endo(c, split_.T(), dT_[c]);
}

Vector ChartGeometry::covariant_N(int c, int frame_index) const {
  // (bar nabla_c N) Z_b = Pi_N d(Pi_N J Z_b) - Pi_N J Pi_T dZ_b
  const Matrix& J = ambient_->J;
  const Vector Zb = frame_.tangent.col(frame_index);
  const Vector dZb = frame_.second[c].col(frame_index);
  const Matrix& dPi = dProj_[c];
  Vector d_field = -dPi * (J * Zb) + J * dZb - proj_ * (J * dZb);
  Vector lhs = d_field - proj_ * d_field;
  Vector corr = J * (proj_ * dZb);
  corr -= proj_ * corr;
  return lhs - corr;
}

Vector ChartGeometry::covariant_t(int c, const Vector& v_normal) const {
  // (nabla_c t) V = Pi_T (dPi_T) J V - Pi_T J (dPi_T) V    (tensorial in V)
  const Matrix& J = ambient_->J;
  const Matrix& dPi = dProj_[c];
  return proj_ * (dPi * (J * v_normal)) - proj_ * (J * (dPi * v_normal));
}

Vector ChartGeometry::covariant_n(int c, const Vector& v_normal) const {
  // (bar nabla_c n) V = Pi_N (dPi_N) J V - Pi_N J (dPi_T) V
  const Matrix& J = ambient_->J;
  const Matrix& dPi = dProj_[c];
  Vector a = -dPi * (J * v_normal);
  a -= proj_ * a;
  Vector b = J * (dPi * v_normal);
  b -= proj_ * b;
  return a - b;
}

namespace {

// Aligns frame B to frame A by the orthogonal Procrustes rotation.
Matrix procrustes_align(const Matrix& A, const Matrix& B) {
  Eigen::JacobiSVD<Matrix> svd(B.transpose() * A,
                               Eigen::ComputeFullU | Eigen::ComputeFullV);
  return B * (svd.matrixU() * svd.matrixV().transpose());
}

}  // namespace

ExtrinsicData ChartGeometry::extrinsic() const {
  const int k = chart_dim();
  const int nk = frame_.normal_dim();
  ExtrinsicData data;
  data.h.assign(k, std::vector<Vector>(k));
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      Vector hv = frame_.second_vec(a, b) - proj_ * frame_.second_vec(a, b);
      data.h[a][b] = frame_.normal.transpose() * hv;
    }
  data.shape.reserve(nk);
  for (int beta = 0; beta < nk; ++beta)
    data.shape.push_back(shape_operator(frame_.normal.col(beta)));
  data.christoffel = christoffel_;
  // Normal connection by central differences of the aligned normal frame.
  const double step = 1e-6;
  data.normal_connection.assign(k, Matrix(nk, nk));
  for (int c = 0; c < k; ++c) {
    Vector xp = frame_.x, xm = frame_.x;
    xp(c) += step;
    xm(c) -= step;
    Matrix nup = procrustes_align(frame_.normal, frame_at(*spec_, xp).normal);
    Matrix num = procrustes_align(frame_.normal, frame_at(*spec_, xm).normal);
    Matrix dnu = (nup - num) / (2.0 * step);
    data.normal_connection[c] = frame_.normal.transpose() * dnu;
  }
  return data;
}

ExtrinsicData extrinsic_at(const ImmersionSpec& spec,
                           const AmbientStructure& ambient, const Vector& x) {
  return ChartGeometry(spec, ambient, x).extrinsic();
}

CovariantResiduals check_covariant_relations(const ChartGeometry& geo) {
  const int k = geo.chart_dim();
  const int nk = geo.frame().normal_dim();
  CovariantResiduals r{0.0, 0.0};
  for (int c = 0; c < k; ++c) {
    Matrix covT = geo.covariant_T(c);
    Matrix sym = geo.gram() * covT - covT.transpose() * geo.gram();
    r.t_symmetry = std::max(r.t_symmetry, max_abs(sym));
    for (int b = 0; b < k; ++b) {
      Vector covN = geo.covariant_N(c, b);
      for (int beta = 0; beta < nk; ++beta) {
        Vector nu = geo.frame().normal.col(beta);
        Vector covt = geo.covariant_t(c, nu);
        double lhs = covN.dot(nu);
        double rhs = geo.frame().tangent.col(b).dot(covt);
        r.n_t_duality = std::max(r.n_t_duality, std::abs(lhs - rhs));
      }
    }
  }
  return r;
}

}  // namespace metallic

#include "metallic/slant.hpp"

#include <algorithm>
#include <cmath>

namespace metallic {

namespace {

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

// ||J X||^2 = x^T (p M + q G) x with M = G T.
Matrix j_norm_matrix(const SplitOperators& split, const MetallicParams& params) {
  Matrix M = split.gram * split.T();
  return params.p * M + params.q * split.gram;
}

}  // namespace

Distribution make_distribution(const Matrix& basis, const SplitOperators& split) {
  Distribution d;
  d.basis = basis;
  Matrix W = basis.transpose() * split.gram * basis;
  d.projector =
      basis * solve_spd(W, Matrix(basis.transpose() * split.gram));
  d.t_component = d.projector * split.T();
  return d;
}

double stability_residual(const Distribution& d, const SplitOperators& split) {
  const Matrix I = Matrix::Identity(d.projector.rows(), d.projector.cols());
  return max_abs((I - d.projector) * split.T() * d.projector);
}

double wirtinger_angle(const SplitOperators& split, const MetallicParams& params,
                       const Vector& x, const Distribution* dist) {
  const Matrix& T = dist ? dist->t_component : split.T();
  Vector tx = T * x;
  double num2 = tx.dot(split.gram * tx);
  double den2 = x.dot(j_norm_matrix(split, params) * x);
  if (den2 < 1e-24)
    throw DegenerateVectorError("wirtinger_angle: ||J X|| below tolerance");
  return std::acos(clamp01(std::sqrt(std::max(0.0, num2) / den2)));
}

PointwiseSlantResult pointwise_slant_test(const SplitOperators& split,
                                          const MetallicParams& params,
                                          double tol,
                                          const Distribution* dist) {
  const int k = static_cast<int>(split.T().rows());
  Matrix basis = dist ? dist->basis : Matrix(Matrix::Identity(k, k));
  const int d = static_cast<int>(basis.cols());
  // Operator restricted to the distribution in basis coordinates.
  Matrix W = basis.transpose() * split.gram * basis;
  const Matrix& Tfull = dist ? dist->t_component : split.T();
  Matrix Tb = solve_spd(W, Matrix(basis.transpose() * split.gram * Tfull * basis));
  Matrix lhs = Tb * Tb;
  Matrix rhs = params.p * Tb + params.q * Matrix::Identity(d, d);
  double denom = rhs.squaredNorm();
  double c = denom > 0 ? clamp01(lhs.cwiseProduct(rhs).sum() / denom) : 0.0;
  double scale = std::max(1.0, std::max(max_abs(lhs), max_abs(rhs)));
  PointwiseSlantResult r;
  r.fit_residual = max_abs(lhs - c * rhs) / scale;
  r.theta = std::acos(std::sqrt(c));
  // Direction independence over a deterministic fan of directions in the span.
  double lo = M_PI, hi = 0.0;
  const int ndir = d == 1 ? 1 : 8 * d;
  for (int i = 0; i < ndir; ++i) {
    Vector coeff = Vector::Zero(d);
    if (d == 1) {
      coeff(0) = 1.0;
    } else {
      for (int j = 0; j < d; ++j)
        coeff(j) = std::cos(0.7 * (i + 1) * (j + 1) + 0.31 * j);
      if (coeff.norm() < 1e-8) coeff(0) = 1.0;
    }
    Vector x = basis * coeff;
    double th = wirtinger_angle(split, params, x, dist);
    lo = std::min(lo, th);
    hi = std::max(hi, th);
  }
  r.angle_spread = hi - lo;
  r.is_pointwise_slant = r.fit_residual < tol && r.angle_spread < kAngleTol;
  return r;
}

std::string to_string(SlantVerdict v) {
  switch (v) {
    case SlantVerdict::invariant: return "invariant";
    case SlantVerdict::anti_invariant: return "anti-invariant";
    case SlantVerdict::slant: return "slant";
    case SlantVerdict::pointwise_slant: return "pointwise slant";
    case SlantVerdict::pointwise_semi_slant: return "pointwise semi-slant";
    case SlantVerdict::pointwise_hemi_slant: return "pointwise hemi-slant";
    case SlantVerdict::pointwise_bi_slant: return "pointwise bi-slant";
    case SlantVerdict::none: return "none";
  }
  return "none";
}

SlantReport classify_bislant(const Distribution& d1, const Distribution& d2,
                             const SplitOperators& split,
                             const MetallicParams& params) {
  const int k = static_cast<int>(split.T().rows());
  if (d1.dim() + d2.dim() != k)
    throw SpanDefectError("classify_bislant: dim D1 + dim D2 != chart dim");
  SlantReport rep;
  Matrix M = split.gram * split.T();  // <J Z_a, Z_b>
  rep.ortho_residual = max_abs(d1.basis.transpose() * split.gram * d2.basis);
  rep.j_ortho_residual =
      std::max(max_abs(d1.basis.transpose() * M * d2.basis),
               max_abs(d2.basis.transpose() * M * d1.basis));
  auto r1 = pointwise_slant_test(split, params, 1e-9, &d1);
  auto r2 = pointwise_slant_test(split, params, 1e-9, &d2);
  rep.theta1 = r1.theta;
  rep.theta2 = r2.theta;
  rep.slant_residual1 = r1.fit_residual;
  rep.slant_residual2 = r2.fit_residual;

  bool conditions = rep.ortho_residual < 1e-9 && rep.j_ortho_residual < 1e-9 &&
                    r1.is_pointwise_slant && r2.is_pointwise_slant;
  if (!conditions) {
    rep.verdict = SlantVerdict::none;
    return rep;
  }
  const double half_pi = M_PI / 2.0;
  bool th1_zero = rep.theta1 < kAngleTol;
  bool th1_perp = half_pi - rep.theta1 < kAngleTol;
  bool th2_zero = rep.theta2 < kAngleTol;
  bool th2_perp = half_pi - rep.theta2 < kAngleTol;
  if (th1_zero && th2_zero) rep.verdict = SlantVerdict::invariant;
  else if (th1_perp && th2_perp) rep.verdict = SlantVerdict::anti_invariant;
  else if (th1_zero) rep.verdict = SlantVerdict::pointwise_semi_slant;
  else if (th1_perp) rep.verdict = SlantVerdict::pointwise_hemi_slant;
  else if (std::abs(rep.theta1 - rep.theta2) < kAngleTol)
    rep.verdict = SlantVerdict::pointwise_slant;
  else rep.verdict = SlantVerdict::pointwise_bi_slant;
  return rep;
}

ClassificationSummary summarize_classification(
    const std::vector<SlantReport>& reports) {
  ClassificationSummary s;
  if (reports.empty()) return s;
  s.theta1_min = s.theta1_max = reports.front().theta1;
  s.theta2_min = s.theta2_max = reports.front().theta2;
  s.verdict = reports.front().verdict;
  for (const auto& r : reports) {
    s.theta1_min = std::min(s.theta1_min, r.theta1);
    s.theta1_max = std::max(s.theta1_max, r.theta1);
    s.theta2_min = std::min(s.theta2_min, r.theta2);
    s.theta2_max = std::max(s.theta2_max, r.theta2);
    s.worst_condition_residual =
        std::max({s.worst_condition_residual, r.ortho_residual,
                  r.j_ortho_residual, r.slant_residual1, r.slant_residual2});
    if (r.verdict != s.verdict) s.verdict = SlantVerdict::none;
  }
  double spread1 = s.theta1_max - s.theta1_min;
  double spread2 = s.theta2_max - s.theta2_min;
  const double half_pi = M_PI / 2.0;
  auto interior = [&](double lo, double hi) {
    return lo > kAngleTol && half_pi - hi > kAngleTol;
  };
  s.proper = spread1 > kConstSpreadTol && spread2 > kConstSpreadTol &&
             interior(s.theta1_min, s.theta1_max) &&
             interior(s.theta2_min, s.theta2_max);
  s.label = to_string(s.verdict);
  if (s.verdict == SlantVerdict::pointwise_slant && spread1 < kConstSpreadTol &&
      spread2 < kConstSpreadTol)
    s.label = to_string(SlantVerdict::slant);
  if (s.verdict == SlantVerdict::pointwise_semi_slant &&
      spread2 < kConstSpreadTol)
    s.label = "semi-slant";
  if (s.verdict == SlantVerdict::pointwise_hemi_slant &&
      spread2 < kConstSpreadTol)
    s.label = "hemi-slant";
  return s;
}

Vector theta_derivative(const ChartGeometry& geo, const Distribution& dist,
                        const MetallicParams& params) {
  const int k = geo.chart_dim();
  const Matrix& G = geo.gram();
  const Matrix& B = dist.basis;
  const Matrix& T = geo.T();
  Matrix W = B.transpose() * G * B;
  Matrix P = dist.projector;
  Matrix TD = P * T;
  Matrix M = G * T;
  // Probe direction: first basis column (theta is direction independent).
  Vector y = B.col(0);
  Vector TDy = TD * y;
  double A = TDy.dot(G * TDy);
  double Bq = y.dot((params.p * M + params.q * G) * y);
  double c = A / Bq;
  double theta = std::acos(clamp01(std::sqrt(clamp01(c))));
  double s2t = std::sin(2.0 * theta);
  Vector dtheta = Vector::Zero(k);
  for (int ci = 0; ci < k; ++ci) {
    const Matrix& dG = geo.dgram(ci);
    Matrix dW = B.transpose() * dG * B;
    // dP = B d(W^-1) B^T G + B W^-1 B^T dG
    Matrix Winv_BtG = solve_spd(W, Matrix(B.transpose() * G));
    Matrix Winv_Bt_dG = solve_spd(W, Matrix(B.transpose() * dG));
    Matrix dP = -B * solve_spd(W, Matrix(dW * Winv_BtG)) + B * Winv_Bt_dG;
    Matrix dTD = dP * T + P * geo.dT(ci);
    Vector dTDy = dTD * y;
    double dA = 2.0 * dTDy.dot(G * TDy) + TDy.dot(dG * TDy);
    double dB = y.dot((params.p * geo.dM(ci) + params.q * dG) * y);
    double dc = (dA * Bq - A * dB) / (Bq * Bq);
    if (std::abs(s2t) < 1e-10) {
      // invariant / anti-invariant direction: angle is pinned, derivative 0
      dtheta(ci) = 0.0;
    } else {
      dtheta(ci) = -dc / s2t;
    }
  }
  return dtheta;
}

Vector theta_derivative_fd(const ImmersionSpec& spec,
                           const AmbientStructure& ambient,
                           const Matrix& dist_basis, const Vector& x,
                           double step) {
  const int k = spec.chart_dim;
  MetallicParams params{int(spec.consts.p), int(spec.consts.q),
                        spec.consts.sigma, spec.consts.sigma_bar};
  auto theta_at = [&](const Vector& pt) {
    FrameData f = frame_at(spec, pt);
    SplitOperators s = split_J(ambient, f);
    Distribution d = make_distribution(dist_basis, s);
    return wirtinger_angle(s, params, Vector(dist_basis.col(0)), &d);
  };
  Vector dtheta = Vector::Zero(k);
  for (int c = 0; c < k; ++c) {
    Vector xp = x, xm = x;
    xp(c) += step;
    xm(c) -= step;
    dtheta(c) = (theta_at(xp) - theta_at(xm)) / (2.0 * step);
  }
  return dtheta;
}

SlantIdentityReport slant_identity_suite(const ChartGeometry& geo,
                                         const Distribution& dist,
                                         const MetallicParams& params) {
  SlantIdentityReport rep;
  const int k = geo.chart_dim();
  const SplitOperators& split = geo.split();
  const Matrix& G = geo.gram();
  const int d = dist.dim();
  Vector probe = dist.basis.col(0);
  double theta = wirtinger_angle(split, params, probe, &dist);
  double sin2 = std::sin(theta) * std::sin(theta);

  // g(NX, NY) = sin^2 theta [ p g(TX, Y) + q g(X, Y) ]
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      Vector xa = dist.basis.col(a), xb = dist.basis.col(b);
      Vector nx = geo.normal_part_of_J(xa);
      Vector ny = geo.normal_part_of_J(xb);
      double lhs = nx.dot(ny);
      double rhs = sin2 * (params.p * (split.T() * xa).dot(G * xb) +
                           params.q * xa.dot(G * xb));
      rep.eq_gram = std::max(rep.eq_gram, std::abs(lhs - rhs));
    }

  // t N X = sin^2 theta ( p TX + qX )
  for (int a = 0; a < d; ++a) {
    Vector xa = dist.basis.col(a);
    Vector nx = geo.normal_part_of_J(xa);
    // t of an ambient normal vector: tangential coefficients of J nx
    Vector tnx = solve_spd(G, Vector(geo.frame().tangent.transpose() *
                                     (geo.ambient().J * nx)));
    Vector rhs = sin2 * (params.p * split.T() * xa + params.q * xa);
    rep.eq_transfer = std::max(rep.eq_transfer, max_abs(Matrix(tnx - rhs)));
  }

  // X(theta): jet route vs central finite differences
  rep.dtheta_jet = theta_derivative(geo, dist, params);
  rep.dtheta_fd = theta_derivative_fd(geo.spec(), geo.ambient(), dist.basis,
                                      geo.frame().x);
  rep.dtheta_agreement = max_abs(Matrix(rep.dtheta_jet - rep.dtheta_fd));

  // Covariant identity with the X(theta) correction, per chart direction.
  rep.covariant_residual.assign(k, 0.0);
  const Matrix& T = geo.T();
  for (int c = 0; c < k; ++c) {
    Matrix covT = geo.covariant_T(c);
    Matrix dT2 = geo.dT(c) * T + T * geo.dT(c);
    Matrix covT2 = geo.covariant_endo(c, Matrix(T * T), dT2);
    double worst = 0.0;
    for (int b = 0; b < d; ++b) {
      Vector y = dist.basis.col(b);
      Vector lhs = covT2 * y;
      Vector rhs = params.p * std::cos(theta) * std::cos(theta) * (covT * y) -
                   std::sin(2.0 * theta) * rep.dtheta_jet(c) *
                       (params.p * T * y + params.q * y);
      double scale = std::max(1.0, std::max(lhs.cwiseAbs().maxCoeff(),
                                            rhs.cwiseAbs().maxCoeff()));
      worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff() / scale);
    }
    rep.covariant_residual[c] = worst;
  }
  return rep;
}

}  // namespace metallic

#pragma once

#include "metallic/extrinsic.hpp"

namespace metallic {

struct DegenerateVectorError : std::runtime_error {
  explicit DegenerateVectorError(const std::string& what)
      : std::runtime_error(what) {}
};

struct SpanDefectError : std::runtime_error {
  explicit SpanDefectError(const std::string& what) : std::runtime_error(what) {}
};

// Angular tolerance for "theta independent of the direction" at a point.
inline constexpr double kAngleTol = 1e-6;
// Max-min spread threshold separating constant from point-dependent angles.
inline constexpr double kConstSpreadTol = 1e-8;

// A distribution on the tangent space, described by constant coefficient
// columns over the Jacobian frame.
struct Distribution {
  Matrix basis;        // k x d
  Matrix projector;    // k x k, G-orthogonal projection onto the span
  Matrix t_component;  // k x k, P composed with T

  int dim() const { return static_cast<int>(basis.cols()); }
};

Distribution make_distribution(const Matrix& basis, const SplitOperators& split);

// T-stability defect ||(I - P) T P||.
double stability_residual(const Distribution& d, const SplitOperators& split);

// Wirtinger angle of X: the angle between J X and the distribution (the whole
// tangent space when dist is null), via cos = ||proj T X|| / ||J X||.
double wirtinger_angle(const SplitOperators& split, const MetallicParams& params,
                       const Vector& x, const Distribution* dist = nullptr);

struct PointwiseSlantResult {
  bool is_pointwise_slant;
  double theta;          // from the fitted cos^2
  double fit_residual;   // defect of T^2 = c (pT + qI) on the distribution
  double angle_spread;   // max-min of per-direction angles at the point
};

// Least-squares fit of cos^2(theta) from the restricted identity
// T^2 = c (pT + qI), combined with a direction-independence check.
PointwiseSlantResult pointwise_slant_test(const SplitOperators& split,
                                          const MetallicParams& params,
                                          double tol,
                                          const Distribution* dist = nullptr);

enum class SlantVerdict {
  invariant,
  anti_invariant,
  slant,
  pointwise_slant,
  pointwise_semi_slant,
  pointwise_hemi_slant,
  pointwise_bi_slant,
  none,
};

std::string to_string(SlantVerdict v);

// Pointwise classification record for a declared pair of distributions.
struct SlantReport {
  Vector point;
  double theta1 = 0.0;
  double theta2 = 0.0;
  double ortho_residual = 0.0;    // g(X, Z) over basis pairs
  double j_ortho_residual = 0.0;  // g(J X, Z) over basis pairs
  double slant_residual1 = 0.0;
  double slant_residual2 = 0.0;
  SlantVerdict verdict = SlantVerdict::none;
};

// Checks Definition conditions (orthogonal direct sum, J(D1) perp D2, each
// D_i pointwise slant) at one point. Throws SpanDefectError when
// dim D1 + dim D2 != k.
SlantReport classify_bislant(const Distribution& d1, const Distribution& d2,
                             const SplitOperators& split,
                             const MetallicParams& params);

// Aggregated verdict over a sample set; distinguishes slant (constant angle)
// from pointwise slant by the max-min spread.
struct ClassificationSummary {
  SlantVerdict verdict = SlantVerdict::none;
  bool proper = false;
  double theta1_min = 0, theta1_max = 0;
  double theta2_min = 0, theta2_max = 0;
  double worst_condition_residual = 0.0;
  std::string label;  // human-readable, includes slant-vs-pointwise refinement
};

ClassificationSummary summarize_classification(
    const std::vector<SlantReport>& reports);

// Derivative of the slant function of `dist` with respect to each chart
// coordinate, assembled from the jet-derived field derivatives.
Vector theta_derivative(const ChartGeometry& geo, const Distribution& dist,
                        const MetallicParams& params);

// Same quantity by central finite differences of the angle field.
Vector theta_derivative_fd(const ImmersionSpec& spec,
                           const AmbientStructure& ambient,
                           const Matrix& dist_basis, const Vector& x,
                           double step = 1e-4);

// Residual report for the slant identities on a distribution:
//   g(NX, NY) = sin^2(theta) [ p g(TX, Y) + q g(X, Y) ]
//   t N X     = sin^2(theta) ( p TX + qX )
// and the covariant identity
//   (nabla_X T^2) Y = p cos^2(theta) (nabla_X T) Y
//                     - sin(2 theta) X(theta) (p TY + qY)
// with X ranging over the coordinate directions and Y over the distribution
// basis. dtheta carries the two routes for X(theta).
struct SlantIdentityReport {
  double eq_gram = 0.0;       // first identity, max over basis pairs
  double eq_transfer = 0.0;   // second identity, max over basis vectors
  Vector dtheta_jet;          // per chart direction
  Vector dtheta_fd;
  double dtheta_agreement = 0.0;       // max abs difference of the two routes
  std::vector<double> covariant_residual;  // per chart direction, relative
};

SlantIdentityReport slant_identity_suite(const ChartGeometry& geo,
                                         const Distribution& dist,
                                         const MetallicParams& params);

}  // namespace metallic

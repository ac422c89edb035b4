#pragma once

#include "metallic/slant.hpp"

namespace metallic {

struct MetricMismatchError : std::runtime_error {
  explicit MetricMismatchError(const std::string& what)
      : std::runtime_error(what) {}
};

struct RoleViolationError : std::runtime_error {
  explicit RoleViolationError(const std::string& what)
      : std::runtime_error(what) {}
};

// Warped product block metric g1 (+) f^2 g2 on a chart split into base and
// fiber coordinates. Base coordinates come first; g1 entries depend on base
// coordinates only, g2 entries on fiber coordinates only (both written in
// full-chart variables), and the warping function on base coordinates only.
struct WarpedSpec {
  int base_dim = 0;
  int fiber_dim = 0;
  std::vector<std::vector<ExprPtr>> base_metric;   // base_dim x base_dim
  std::vector<std::vector<ExprPtr>> fiber_metric;  // fiber_dim x fiber_dim
  ExprPtr warping;                                 // f > 0, base coords only

  int chart_dim() const { return base_dim + fiber_dim; }
  // Full block metric at a chart point.
  Matrix metric_at(const Vector& x, const ConstBindings& consts) const;
  // f and its base-coordinate gradient.
  Jet2 warping_jet(const Vector& x, const ConstBindings& consts) const;
};

enum class CaseVerdict { pass, fail, not_applicable };

std::string to_string(CaseVerdict v);

// One identity evaluation at one point.
struct IdentityCase {
  std::string id;
  Vector point;
  double residual = 0.0;
  CaseVerdict verdict = CaseVerdict::not_applicable;
  std::string note;
};

// Christoffel symbols of an explicit metric expression matrix, from the jets
// of its entries: Gamma[c](a,b) = Gamma^a_{cb}. The metric block starts at
// chart coordinate coord_offset; x is the full chart point.
std::vector<Matrix> metric_christoffels(
    const std::vector<std::vector<ExprPtr>>& metric, const Vector& x,
    const ConstBindings& consts, int coord_offset = 0);

// Closed-form warped-product Christoffels of g1 (+) f^2 g2.
std::vector<Matrix> warped_christoffels_closed(const WarpedSpec& w,
                                               const Vector& x,
                                               const ConstBindings& consts);

// Lemma check: nabla_X Z = X(ln f) Z for base X and fiber Z, evaluated on the
// attached immersion's induced connection. Throws MetricMismatchError when
// the induced metric deviates from the declared block metric.
IdentityCase warped_connection_check(const WarpedSpec& w,
                                     const ChartGeometry& geo,
                                     double metric_tol = 1e-9);

double induced_metric_mismatch(const WarpedSpec& w, const ChartGeometry& geo);

// Identity suite for the second-fundamental-form relations of a warped
// product bi-slant immersion (base X, Y; fiber Z, W):
//   g(h(X,Y), NZ) = -g(h(X,Z), NY)
//   g(h(X,Z), NW) = 0
//   g(h(Z,W), NX) = T1X(ln f) g(Z,W) - X(ln f) g(Z, T2 W)
std::vector<IdentityCase> prop_h_suite(const WarpedSpec& w,
                                       const ChartGeometry& geo,
                                       const Distribution& d1,
                                       const Distribution& d2, double tol);

// (nabla_X T^2) Z = p cos^2(theta) (nabla_X T) Z for base X, fiber Z.
IdentityCase warped_covariant_check(const WarpedSpec& w,
                                    const ChartGeometry& geo,
                                    const Distribution& d2, double tol);

// Lemma identity suite for pointwise bi-slant distributions: the two long
// connection/shape-operator identities, plus their semi-slant (theta1 = 0 or
// theta2 = 0) and hemi-slant (theta1 = pi/2 or theta2 = pi/2)
// specializations when the angle hypotheses hold.
std::vector<IdentityCase> bislant_lemma_suite(const ChartGeometry& geo,
                                              const Distribution& d1,
                                              const Distribution& d2,
                                              const MetallicParams& params,
                                              double tol);

// Predicates distilled from the semi-slant / hemi-slant warped product
// theorems, checked on the given instance:
//   - normal-component transport: h(TX, Z) = X(ln f) NZ + n h(X, Z)
//   - constancy of f along the invariant factor when semi-slant
//   - invariant component of A_{N T1 Y} X - A_{N T1 X} Y
//   - hemi-slant biconditional: f constant along D_perp iff A_{NZ}X = A_{NX}Z
std::vector<IdentityCase> theorem_predicates(const WarpedSpec& w,
                                             const ChartGeometry& geo,
                                             const Distribution& d1,
                                             const Distribution& d2,
                                             const MetallicParams& params,
                                             double tol);

}  // namespace metallic

#include "metallic/warped.hpp"

#include <cmath>

namespace metallic {

std::string to_string(CaseVerdict v) {
  switch (v) {
    case CaseVerdict::pass: return "pass";
    case CaseVerdict::fail: return "fail";
    case CaseVerdict::not_applicable: return "not_applicable";
  }
  return "?";
}

Matrix WarpedSpec::metric_at(const Vector& x, const ConstBindings& consts) const {
  const int k = chart_dim();
  Matrix g = Matrix::Zero(k, k);
  for (int a = 0; a < base_dim; ++a)
    for (int b = 0; b < base_dim; ++b)
      g(a, b) = eval(*base_metric[a][b], x, consts);
  const double f = eval(*warping, x, consts);
  for (int a = 0; a < fiber_dim; ++a)
    for (int b = 0; b < fiber_dim; ++b)
      g(base_dim + a, base_dim + b) = f * f * eval(*fiber_metric[a][b], x, consts);
  return g;
}

Jet2 WarpedSpec::warping_jet(const Vector& x, const ConstBindings& consts) const {
  Jet2 f = jet_eval(*warping, x, consts);
  for (int c = base_dim; c < chart_dim(); ++c)
    if (std::abs(f.grad(c)) > 1e-12)
      throw RoleViolationError("warping function depends on a fiber coordinate");
  if (f.value <= 0.0) throw RoleViolationError("warping function is not positive");
  return f;
}

std::vector<Matrix> metric_christoffels(
    const std::vector<std::vector<ExprPtr>>& metric, const Vector& x,
    const ConstBindings& consts, int coord_offset) {
  const int n = static_cast<int>(metric.size());
  Matrix g(n, n);
  std::vector<std::vector<Vector>> dg(n, std::vector<Vector>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Jet2 j = jet_eval(*metric[a][b], x, consts);
      g(a, b) = j.value;
      dg[a][b] = j.grad.segment(coord_offset, n);
    }
  std::vector<Matrix> gamma(n, Matrix(n, n));
  for (int c = 0; c < n; ++c) {
    Matrix low(n, n);  // Gamma_{d,cb} = 1/2 (d_c g_db + d_b g_dc - d_d g_cb)
    for (int d = 0; d < n; ++d)
      for (int b = 0; b < n; ++b)
        low(d, b) = 0.5 * (dg[d][b](c) + dg[d][c](b) - dg[c][b](d));
    gamma[c] = solve_spd(g, low);
  }
  return gamma;
}

std::vector<Matrix> warped_christoffels_closed(const WarpedSpec& w,
                                               const Vector& x,
                                               const ConstBindings& consts) {
  const int k = w.chart_dim();
  const int n1 = w.base_dim;
  const int n2 = w.fiber_dim;
  std::vector<Matrix> gamma(k, Matrix::Zero(k, k));
  std::vector<Matrix> g1 = metric_christoffels(w.base_metric, x, consts, 0);
  std::vector<Matrix> g2 = metric_christoffels(w.fiber_metric, x, consts, n1);
  Jet2 f = w.warping_jet(x, consts);
  Vector dlnf = f.grad.head(n1) / f.value;
  Matrix base_g(n1, n1), fiber_g(n2, n2);
  for (int a = 0; a < n1; ++a)
    for (int b = 0; b < n1; ++b)
      base_g(a, b) = eval(*w.base_metric[a][b], x, consts);
  for (int a = 0; a < n2; ++a)
    for (int b = 0; b < n2; ++b)
      fiber_g(a, b) = eval(*w.fiber_metric[a][b], x, consts);
  // grad^a f with indices raised by g1
  Vector grad_up = solve_spd(base_g, Vector(f.grad.head(n1)));
  for (int c = 0; c < n1; ++c) {
    gamma[c].topLeftCorner(n1, n1) = g1[c];
    // nabla_{base} fiber = d(ln f) * identity on the fiber block
    gamma[c].bottomRightCorner(n2, n2) =
        dlnf(c) * Matrix::Identity(n2, n2);
  }
  for (int c = 0; c < n2; ++c) {
    Matrix& gc = gamma[n1 + c];
    gc.bottomRightCorner(n2, n2) = g2[c];
    // nabla_{fiber} base direction: d(ln f) on the fiber block again
    for (int b = 0; b < n1; ++b)
      for (int a = 0; a < n2; ++a)
        gc(n1 + a, b) += (a == c ? dlnf(b) : 0.0);
    // base component of nabla_{fiber} fiber: -f grad^a f g2(Z, W)
    for (int b = 0; b < n2; ++b)
      for (int a = 0; a < n1; ++a)
        gc(a, n1 + b) += -f.value * grad_up(a) * fiber_g(c, b);
  }
  return gamma;
}

double induced_metric_mismatch(const WarpedSpec& w, const ChartGeometry& geo) {
  if (w.chart_dim() != geo.chart_dim())
    throw RoleViolationError("warped block dimensions do not match the chart");
  Matrix declared = w.metric_at(geo.frame().x, geo.spec().consts);
  return max_abs(geo.gram() - declared);
}

IdentityCase warped_connection_check(const WarpedSpec& w,
                                     const ChartGeometry& geo,
                                     double metric_tol) {
  double mism = induced_metric_mismatch(w, geo);
  if (mism > metric_tol)
    throw MetricMismatchError("induced metric deviates from the block metric by " +
                              std::to_string(mism));
  Jet2 f = w.warping_jet(geo.frame().x, geo.spec().consts);
  const int k = w.chart_dim();
  IdentityCase c;
  c.id = "warped_connection";
  c.point = geo.frame().x;
  double worst = 0.0;
  for (int cc = 0; cc < w.base_dim; ++cc) {
    double dlnf = f.grad(cc) / f.value;
    for (int a = w.base_dim; a < k; ++a) {
      Vector lhs = geo.christoffel(cc).col(a);
      Vector rhs = dlnf * Vector::Unit(k, a);
      worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
    }
  }
  c.residual = worst;
  return c;
}

namespace {

// Shared per-point scratch for the identity suites.
struct Ctx {
  const ChartGeometry& geo;
  const MetallicParams& params;
  const Distribution& d1;
  const Distribution& d2;
  double theta1, theta2;
  Matrix T1, T2;  // P_i T, k x k

  Ctx(const ChartGeometry& g, const Distribution& a, const Distribution& b,
      const MetallicParams& pr)
      : geo(g), params(pr), d1(a), d2(b) {
    theta1 = pointwise_slant_test(g.split(), pr, kAngleTol, &a).theta;
    theta2 = pointwise_slant_test(g.split(), pr, kAngleTol, &b).theta;
    T1 = a.projector * g.T();
    T2 = b.projector * g.T();
  }

  double g(const Vector& x, const Vector& y) const { return geo.g(x, y); }
  // nabla_X Y for constant-coefficient frame fields.
  Vector nab(const Vector& x, const Vector& y) const {
    Vector out = Vector::Zero(x.size());
    for (int c = 0; c < x.size(); ++c) out += x(c) * geo.nabla(c, y);
    return out;
  }
  // Ambient normal part of J applied to tangent coefficients.
  Vector N(const Vector& y) const { return geo.normal_part_of_J(y); }
  // g(A_V y, x) for an ambient normal V.
  double shape(const Vector& v, const Vector& y, const Vector& x) const {
    return geo.g(geo.shape_operator(v) * y, x);
  }
  // Derivative of the G-orthogonal projector of dist along coordinate c.
  Matrix dproj(const Distribution& d, int c) const {
    const Matrix& B = d.basis;
    Matrix W = B.transpose() * geo.gram() * B;
    Matrix dW = B.transpose() * geo.dgram(c) * B;
    Matrix Winv_Bt = solve_spd(W, Matrix(B.transpose()));
    return -B * solve_spd(W, Matrix(dW * (Winv_Bt * geo.gram()))) +
           B * (Winv_Bt * geo.dgram(c));
  }
  // Connection derivative of the field (P_i T) y along constant X.
  Vector nab_Ti(const Vector& x, const Distribution& d, const Matrix& Ti,
                const Vector& y) const {
    Vector out = Vector::Zero(x.size());
    for (int c = 0; c < x.size(); ++c) {
      Matrix dS = dproj(d, c) * geo.T() + d.projector * geo.dT(c);
      out += x(c) * (dS * y + geo.christoffel(c) * (Ti * y));
    }
    return out;
  }
};

double s2(double th) { double s = std::sin(th); return s * s; }
double c2(double th) { double c = std::cos(th); return c * c; }

IdentityCase make_case(const std::string& id, const Vector& x, double resid,
                       double tol, const std::string& note = "") {
  IdentityCase c;
  c.id = id;
  c.point = x;
  c.residual = resid;
  c.verdict = resid <= tol ? CaseVerdict::pass : CaseVerdict::fail;
  c.note = note;
  return c;
}

IdentityCase na_case(const std::string& id, const Vector& x,
                     const std::string& note) {
  IdentityCase c;
  c.id = id;
  c.point = x;
  c.verdict = CaseVerdict::not_applicable;
  c.note = note;
  return c;
}

double rel(double resid, double scale) {
  return std::abs(resid) / std::max(1.0, std::abs(scale));
}

}  // namespace

std::vector<IdentityCase> prop_h_suite(const WarpedSpec& w,
                                       const ChartGeometry& geo,
                                       const Distribution& d1,
                                       const Distribution& d2, double tol) {
  Ctx ctx(geo, d1, d2, geo.ambient().params);
  const Vector& pt = geo.frame().x;
  Jet2 f = w.warping_jet(pt, geo.spec().consts);
  Vector dlnf = f.grad / f.value;  // zero on fiber components
  std::vector<IdentityCase> out;
  double r_sym = 0, r_mixed = 0, r_fiber = 0;
  for (int i = 0; i < d1.dim(); ++i) {
    Vector X = d1.basis.col(i);
    for (int j = 0; j < d1.dim(); ++j) {
      Vector Y = d1.basis.col(j);
      for (int a = 0; a < d2.dim(); ++a) {
        Vector Z = d2.basis.col(a);
        double lhs = geo.h_vec(X, Y).dot(ctx.N(Z));
        double rhs = -geo.h_vec(X, Z).dot(ctx.N(Y));
        r_sym = std::max(r_sym, rel(lhs - rhs, std::max(lhs, rhs)));
      }
    }
    for (int a = 0; a < d2.dim(); ++a) {
      Vector Z = d2.basis.col(a);
      for (int b = 0; b < d2.dim(); ++b) {
        Vector W = d2.basis.col(b);
        r_mixed = std::max(r_mixed,
                           std::abs(geo.h_vec(X, Z).dot(ctx.N(W))));
        double lhs = geo.h_vec(Z, W).dot(ctx.N(X));
        double t1x_lnf = dlnf.dot(ctx.T1 * X);
        double x_lnf = dlnf.dot(X);
        double rhs = t1x_lnf * ctx.g(Z, W) - x_lnf * ctx.g(Z, ctx.T2 * W);
        double sc = std::max(std::abs(lhs), std::abs(rhs));
        r_fiber = std::max(r_fiber, rel(lhs - rhs, sc));
      }
    }
  }
  out.push_back(make_case("h_base_base_vs_mixed", pt, r_sym, tol));
  out.push_back(make_case("h_mixed_fiber_vanishes", pt, r_mixed, tol));
  out.push_back(make_case("h_fiber_fiber_transport", pt, r_fiber, tol));
  return out;
}

IdentityCase warped_covariant_check(const WarpedSpec& w,
                                    const ChartGeometry& geo,
                                    const Distribution& d2, double tol) {
  const Vector& pt = geo.frame().x;
  const MetallicParams& pr = geo.ambient().params;
  double theta = pointwise_slant_test(geo.split(), pr, kAngleTol, &d2).theta;
  const Matrix& T = geo.T();
  double worst = 0.0;
  for (int c = 0; c < w.base_dim; ++c) {
    Matrix covT = geo.covariant_T(c);
    Matrix dT2 = geo.dT(c) * T + T * geo.dT(c);
    Matrix covT2 = geo.covariant_endo(c, Matrix(T * T), dT2);
    for (int a = 0; a < d2.dim(); ++a) {
      Vector Z = d2.basis.col(a);
      Vector lhs = covT2 * Z;
      Vector rhs = pr.p * c2(theta) * (covT * Z);
      double scale = std::max(std::sqrt(geo.g(lhs, lhs)),
                              std::sqrt(geo.g(rhs, rhs)));
      Vector d = lhs - rhs;
      worst = std::max(worst, rel(std::sqrt(geo.g(d, d)), scale));
    }
  }
  return make_case("covariant_T_squared_transport", pt, worst, tol);
}

std::vector<IdentityCase> bislant_lemma_suite(const ChartGeometry& geo,
                                              const Distribution& d1,
                                              const Distribution& d2,
                                              const MetallicParams& params,
                                              double tol) {
  Ctx ctx(geo, d1, d2, params);
  const Vector& pt = geo.frame().x;
  const double p = params.p, q = params.q;
  const double th1 = ctx.theta1, th2 = ctx.theta2;
  std::vector<IdentityCase> out;

  auto over_xxz = [&](auto&& body) {  // X, Y in D1, Z in D2
    double worst = 0.0;
    for (int i = 0; i < d1.dim(); ++i)
      for (int j = 0; j < d1.dim(); ++j)
        for (int a = 0; a < d2.dim(); ++a)
          worst = std::max(worst, body(d1.basis.col(i), d1.basis.col(j),
                                       d2.basis.col(a)));
    return worst;
  };
  auto over_xzw = [&](auto&& body) {  // X in D1, Z, W in D2
    double worst = 0.0;
    for (int i = 0; i < d1.dim(); ++i)
      for (int a = 0; a < d2.dim(); ++a)
        for (int b = 0; b < d2.dim(); ++b)
          worst = std::max(worst, body(d1.basis.col(i), d2.basis.col(a),
                                       d2.basis.col(b)));
    return worst;
  };

  // Mixed-angle identity, D1 side.
  double r33 = over_xxz([&](const Vector& X, const Vector& Y, const Vector& Z) {
    Vector nXY = ctx.nab(X, Y);
    double lhs = (s2(th1) - s2(th2)) *
                 ctx.g(nXY, p * (ctx.T2 * Z) + q * Z);
    double rhs = p * (ctx.g(nXY, ctx.T2 * Z) + ctx.g(ctx.nab(X, Z), ctx.T1 * Y)) +
                 p * (c2(th1) + 1.0) *
                     (ctx.shape(ctx.N(Z), Y, X) + ctx.shape(ctx.N(Y), Z, X)) -
                 (ctx.shape(ctx.N(ctx.T1 * Y), Z, X) +
                  ctx.shape(ctx.N(ctx.T2 * Z), Y, X)) -
                 (ctx.shape(ctx.N(Z), ctx.T1 * Y, X) +
                  ctx.shape(ctx.N(Y), ctx.T2 * Z, X));
    return rel(lhs - rhs, std::max(lhs, rhs));
  });
  out.push_back(make_case("mixed_connection_d1", pt, r33, tol));

  // Mixed-angle identity, D2 side.
  double r34 = over_xzw([&](const Vector& X, const Vector& Z, const Vector& W) {
    Vector nZW = ctx.nab(Z, W);
    double lhs = (s2(th2) - s2(th1)) *
                 ctx.g(nZW, p * (ctx.T1 * X) + q * X);
    double rhs = p * (ctx.g(nZW, ctx.T1 * X) + ctx.g(ctx.nab(Z, X), ctx.T2 * W)) +
                 p * (c2(th2) + 1.0) *
                     (ctx.shape(ctx.N(X), W, Z) + ctx.shape(ctx.N(W), X, Z)) -
                 (ctx.shape(ctx.N(ctx.T2 * W), X, Z) +
                  ctx.shape(ctx.N(ctx.T1 * X), W, Z)) -
                 (ctx.shape(ctx.N(W), ctx.T1 * X, Z) +
                  ctx.shape(ctx.N(X), ctx.T2 * W, Z));
    return rel(lhs - rhs, std::max(lhs, rhs));
  });
  out.push_back(make_case("mixed_connection_d2", pt, r34, tol));

  const double angle_tol = 1e-6;
  const bool inv1 = th1 < angle_tol;
  const bool inv2 = th2 < angle_tol;
  const bool anti1 = std::abs(th1 - M_PI / 2) < angle_tol;
  const bool anti2 = std::abs(th2 - M_PI / 2) < angle_tol;

  // Semi-slant specialization, invariant D1.
  if (inv1) {
    double th = th2;
    double r = over_xxz([&](const Vector& X, const Vector& Y, const Vector& Z) {
      Vector nXY = ctx.nab(X, Y);
      double lhs = s2(th) * ctx.g(nXY, p * (ctx.T2 * Z) + q * Z);
      double rhs = -p * (ctx.g(nXY, ctx.T2 * Z) +
                         ctx.g(ctx.nab(X, Z), ctx.T1 * Y)) -
                   2.0 * p * ctx.shape(ctx.N(Z), Y, X) +
                   ctx.shape(ctx.N(Z), ctx.T1 * Y, X) +
                   ctx.shape(ctx.N(ctx.T2 * Z), Y, X);
      return rel(lhs - rhs, std::max(lhs, rhs));
    });
    out.push_back(make_case("semi_slant_d1_invariant_base", pt, r, tol));
    double r2 = over_xzw([&](const Vector& X, const Vector& Z, const Vector& W) {
      Vector nZW = ctx.nab(Z, W);
      double lhs = s2(th) * ctx.g(nZW, p * (ctx.T1 * X) + q * X);
      double rhs = p * (ctx.g(nZW, ctx.T1 * X) +
                        ctx.g(ctx.nab(Z, X), ctx.T2 * W)) +
                   p * (c2(th) + 1.0) * ctx.shape(ctx.N(W), X, Z) -
                   ctx.shape(ctx.N(ctx.T2 * W), X, Z) -
                   ctx.shape(ctx.N(W), ctx.T1 * X, Z);
      return rel(lhs - rhs, std::max(lhs, rhs));
    });
    out.push_back(make_case("semi_slant_d1_invariant_fiber", pt, r2, tol));
  } else {
    out.push_back(na_case("semi_slant_d1_invariant_base", pt, "theta1 != 0"));
    out.push_back(na_case("semi_slant_d1_invariant_fiber", pt, "theta1 != 0"));
  }

  // Semi-slant specialization, invariant D2.
  if (inv2) {
    double th = th1;
    double r = over_xxz([&](const Vector& X, const Vector& Y, const Vector& Z) {
      Vector nXY = ctx.nab(X, Y);
      double lhs = s2(th) * ctx.g(nXY, ctx.T2 * (ctx.T2 * Z));
      double rhs = p * ctx.g(nXY, ctx.T2 * Z) -
                   p * ctx.g(ctx.nab_Ti(X, d1, ctx.T1, Y), Z) +
                   p * (c2(th) + 1.0) * ctx.shape(ctx.N(Y), X, Z) -
                   ctx.shape(ctx.N(ctx.T1 * Y), Z, X) -
                   ctx.shape(ctx.N(ctx.T2 * Z), Y, X) -
                   ctx.shape(ctx.N(Y), ctx.T2 * Z, X);
      return rel(lhs - rhs, std::max(lhs, rhs));
    });
    out.push_back(make_case("semi_slant_d2_invariant_base", pt, r, tol));
    double r2 = over_xzw([&](const Vector& X, const Vector& Z, const Vector& W) {
      Vector nZW = ctx.nab(Z, W);
      double lhs = s2(th1) * ctx.g(nZW, p * (ctx.T1 * X) + q * X);
      double rhs = -p * ctx.g(nZW, ctx.T1 * X) +
                   p * ctx.g(ctx.nab_Ti(Z, d2, ctx.T2, W), X) -
                   2.0 * p * ctx.shape(ctx.N(X), Z, W) +
                   ctx.shape(ctx.N(ctx.T2 * W), Z, X) +
                   ctx.shape(ctx.N(ctx.T1 * X), Z, W) +
                   ctx.shape(ctx.N(X), ctx.T2 * W, Z);
      return rel(lhs - rhs, std::max(lhs, rhs));
    });
    out.push_back(make_case("semi_slant_d2_invariant_fiber", pt, r2, tol));
  } else {
    out.push_back(na_case("semi_slant_d2_invariant_base", pt, "theta2 != 0"));
    out.push_back(na_case("semi_slant_d2_invariant_fiber", pt, "theta2 != 0"));
  }

  // Hemi-slant specialization, anti-invariant D1.
  if (anti1) {
    double th = th2;
    double r = over_xxz([&](const Vector& X, const Vector& Y, const Vector& Z) {
      Vector nXY = ctx.nab(X, Y);
      double lhs = c2(th) * ctx.g(nXY, p * (ctx.T2 * Z) + q * Z);
      double rhs = p * ctx.g(nXY, ctx.T2 * Z) +
                   p * (ctx.shape(ctx.N(Z), Y, X) + ctx.shape(ctx.N(Y), Z, X)) -
                   ctx.shape(ctx.N(ctx.T2 * Z), Y, X) -
                   ctx.shape(ctx.N(Y), ctx.T2 * Z, X);
      return rel(lhs - rhs, std::max(lhs, rhs));
    });
    out.push_back(make_case("hemi_slant_d1_anti_base", pt, r, tol));
    double r2 = over_xzw([&](const Vector& X, const Vector& Z, const Vector& W) {
      Vector nZW = ctx.nab(Z, W);
      double lhs = q * c2(th) * ctx.g(nZW, X);
      double rhs = -p * ctx.g(ctx.nab(Z, X), ctx.T2 * W) -
                   p * (c2(th) + 1.0) *
                       (ctx.shape(ctx.N(X), W, Z) + ctx.shape(ctx.N(W), X, Z)) +
                   ctx.shape(ctx.N(ctx.T2 * W), X, Z) +
                   ctx.shape(ctx.N(X), ctx.T2 * W, Z);
      return rel(lhs - rhs, std::max(lhs, rhs));
    });
    out.push_back(make_case("hemi_slant_d1_anti_fiber", pt, r2, tol));
  } else {
    out.push_back(na_case("hemi_slant_d1_anti_base", pt, "theta1 != pi/2"));
    out.push_back(na_case("hemi_slant_d1_anti_fiber", pt, "theta1 != pi/2"));
  }

  // Hemi-slant specialization, anti-invariant D2.
  if (anti2) {
    double th = th1;
    double r = over_xxz([&](const Vector& X, const Vector& Y, const Vector& Z) {
      Vector nXY = ctx.nab(X, Y);
      double lhs = q * c2(th) * ctx.g(nXY, Z);
      double rhs = -p * ctx.g(ctx.nab(X, Z), ctx.T1 * Y) -
                   p * (c2(th) + 1.0) *
                       (ctx.shape(ctx.N(Z), Y, X) + ctx.shape(ctx.N(Y), Z, X)) +
                   ctx.shape(ctx.N(ctx.T1 * Y), Z, X) +
                   ctx.shape(ctx.N(Z), ctx.T1 * Y, X);
      return rel(lhs - rhs, std::max(lhs, rhs));
    });
    out.push_back(make_case("hemi_slant_d2_anti_base", pt, r, tol));
    double r2 = over_xzw([&](const Vector& X, const Vector& Z, const Vector& W) {
      Vector nZW = ctx.nab(Z, W);
      double lhs = c2(th) * ctx.g(nZW, p * (ctx.T1 * X) + q * X);
      double rhs = p * ctx.g(nZW, ctx.T1 * X) +
                   p * (ctx.shape(ctx.N(X), W, Z) + ctx.shape(ctx.N(W), X, Z)) -
                   ctx.shape(ctx.N(ctx.T1 * X), W, Z) -
                   ctx.shape(ctx.N(W), ctx.T1 * X, Z);
      return rel(lhs - rhs, std::max(lhs, rhs));
    });
    out.push_back(make_case("hemi_slant_d2_anti_fiber", pt, r2, tol));
  } else {
    out.push_back(na_case("hemi_slant_d2_anti_base", pt, "theta2 != pi/2"));
    out.push_back(na_case("hemi_slant_d2_anti_fiber", pt, "theta2 != pi/2"));
  }

  return out;
}

std::vector<IdentityCase> theorem_predicates(const WarpedSpec& w,
                                             const ChartGeometry& geo,
                                             const Distribution& d1,
                                             const Distribution& d2,
                                             const MetallicParams& params,
                                             double tol) {
  Ctx ctx(geo, d1, d2, params);
  const Vector& pt = geo.frame().x;
  const double p = params.p, q = params.q;
  Jet2 f = w.warping_jet(pt, geo.spec().consts);
  Vector dlnf = f.grad / f.value;
  const Matrix& T = geo.T();
  const Matrix pi_t = geo.tangent_projector();
  auto normal_of = [&](const Vector& amb) { return amb - pi_t * amb; };
  const double angle_tol = 1e-6;
  const bool inv1 = ctx.theta1 < angle_tol;
  const bool inv2 = ctx.theta2 < angle_tol;
  const bool anti1 = std::abs(ctx.theta1 - M_PI / 2) < angle_tol;
  const bool anti2 = std::abs(ctx.theta2 - M_PI / 2) < angle_tol;
  const bool proper2 = !inv2 && !anti2;
  const bool proper1 = !inv1 && !anti1;
  std::vector<IdentityCase> out;

  if (inv1 && proper2) {
    const Matrix& J = geo.ambient().J;
    // Normal transport h(TX, Z) = X(ln f) NZ + n h(X, Z).
    double r320 = 0.0, r303 = 0.0, r_const = 0.0;
    for (int i = 0; i < d1.dim(); ++i) {
      Vector X = d1.basis.col(i);
      Vector TX = T * X;
      double x_lnf = dlnf.dot(X);
      double tx_lnf = dlnf.dot(TX);
      r_const = std::max(r_const, std::abs(x_lnf));
      for (int a = 0; a < d2.dim(); ++a) {
        Vector Z = d2.basis.col(a);
        Vector lhs = geo.h_vec(TX, Z);
        Vector nhXZ = normal_of(J * geo.h_vec(X, Z));
        Vector rhs = x_lnf * ctx.N(Z) + nhXZ;
        r320 = std::max(r320, (lhs - rhs).cwiseAbs().maxCoeff());
        double l303 = tx_lnf * s2(ctx.theta2) *
                      (p * ctx.g(T * Z, Z) + q * ctx.g(Z, Z));
        Vector nhTXZ = normal_of(J * geo.h_vec(TX, Z));
        double r303v = l303 + nhTXZ.dot(ctx.N(Z));
        r303 = std::max(r303, rel(r303v, l303));
      }
    }
    out.push_back(make_case("semi_slant_normal_transport", pt, r320, tol));
    out.push_back(make_case("semi_slant_shape_balance", pt, r303, tol));
    out.push_back(make_case("semi_slant_warping_constancy", pt, r_const, 1e-8,
                            "warping gradient along the invariant base"));
  } else {
    const char* why = "needs invariant base and proper slant fiber";
    out.push_back(na_case("semi_slant_normal_transport", pt, why));
    out.push_back(na_case("semi_slant_shape_balance", pt, why));
    out.push_back(na_case("semi_slant_warping_constancy", pt, why));
  }

  if (inv2 && proper1) {
    // (A_{N T1 Y} X - A_{N T1 X} Y) stays in the slant base distribution.
    double r = 0.0;
    for (int i = 0; i < d1.dim(); ++i)
      for (int j = 0; j < d1.dim(); ++j) {
        Vector X = d1.basis.col(i), Y = d1.basis.col(j);
        Vector v = geo.shape_operator(ctx.N(ctx.T1 * Y)) * X -
                   geo.shape_operator(ctx.N(ctx.T1 * X)) * Y;
        Vector fib = ctx.d2.projector * v;
        r = std::max(r, std::sqrt(ctx.g(fib, fib)));
      }
    out.push_back(make_case("semi_slant_shape_difference_tangency", pt, r, tol));
  } else {
    out.push_back(na_case("semi_slant_shape_difference_tangency", pt,
                          "needs proper slant base and invariant fiber"));
  }

  if ((anti1 && proper2) || (anti2 && proper1)) {
    const Distribution& dperp = anti1 ? d1 : d2;
    const Distribution& dth = anti1 ? d2 : d1;
    // f constant along the anti-invariant factor iff A_{NZ}X = A_{NX}Z.
    double grad_along = 0.0;
    for (int i = 0; i < dperp.dim(); ++i)
      grad_along = std::max(grad_along, std::abs(dlnf.dot(dperp.basis.col(i))));
    double shape_defect = 0.0;
    for (int i = 0; i < dperp.dim(); ++i)
      for (int a = 0; a < dth.dim(); ++a) {
        Vector X = dperp.basis.col(i), Z = dth.basis.col(a);
        Vector d = geo.shape_operator(ctx.N(Z)) * X -
                   geo.shape_operator(ctx.N(X)) * Z;
        shape_defect = std::max(shape_defect, std::sqrt(ctx.g(d, d)));
      }
    bool f_const = grad_along < 1e-8;
    bool shape_sym = shape_defect < tol;
    IdentityCase c;
    c.id = "hemi_slant_constancy_iff_shape_symmetry";
    c.point = pt;
    c.residual = f_const ? shape_defect : grad_along;
    c.verdict = (f_const == shape_sym) ? CaseVerdict::pass : CaseVerdict::fail;
    c.note = f_const ? "warping constant along the anti-invariant factor"
                     : "warping varies along the anti-invariant factor";
    out.push_back(c);
  } else {
    out.push_back(na_case("hemi_slant_constancy_iff_shape_symmetry", pt,
                          "needs an anti-invariant factor and a proper slant one"));
  }

  return out;
}

}  // namespace metallic

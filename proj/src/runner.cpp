#include "metallic/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include <json.hpp>

namespace metallic {

namespace {

void add(SuiteResult& s, const std::string& id, const Vector& pt, double resid,
         double tol, const std::string& note = "") {
  IdentityCase c;
  c.id = id;
  c.point = pt;
  c.residual = resid;
  c.verdict = resid <= tol ? CaseVerdict::pass : CaseVerdict::fail;
  c.note = note;
  s.cases.push_back(std::move(c));
}

void add_na(SuiteResult& s, const std::string& id, const std::string& note) {
  IdentityCase c;
  c.id = id;
  c.point = Vector();
  c.verdict = CaseVerdict::not_applicable;
  c.note = note;
  s.cases.push_back(std::move(c));
}

void finalize(SuiteResult& s) {
  for (const auto& c : s.cases) {
    s.max_residual = std::max(s.max_residual, c.residual);
    switch (c.verdict) {
      case CaseVerdict::pass: ++s.pass; break;
      case CaseVerdict::fail: ++s.fail; break;
      case CaseVerdict::not_applicable: ++s.not_applicable; break;
    }
  }
}

bool has_distributions(const Target& t) {
  return t.d1.cols() > 0 && t.d2.cols() > 0 &&
         t.d1.cols() + t.d2.cols() == t.spec.chart_dim;
}

SuiteResult run_fundamental(const Target& t, const std::vector<Vector>& pts,
                            const Tolerances& tol) {
  SuiteResult s;
  s.id = "fundamental";
  for (const Vector& x : pts) {
    FrameData frame = frame_at(t.spec, x);
    SplitOperators split = split_J(t.ambient, frame);
    FundamentalResiduals r = check_fundamental_identities(split, t.ambient.params);
    add(s, "tangential_square", x, r.t_squared, tol.algebraic);
    add(s, "normal_mix", x, r.normal_mix, tol.algebraic);
    add(s, "normal_square", x, r.n_squared, tol.algebraic);
    add(s, "tangential_transfer", x, r.t_transfer, tol.algebraic);
    add(s, "reconstruction", x, reconstruction_residual(t.ambient, frame, split),
        tol.algebraic);
  }
  finalize(s);
  return s;
}

SuiteResult run_slant(const Target& t, const std::vector<Vector>& pts,
                      const Tolerances& tol) {
  SuiteResult s;
  s.id = "slant";
  if (!has_distributions(t)) {
    add_na(s, "slant_identities", "target declares no distribution pair");
    finalize(s);
    return s;
  }
  const MetallicParams& pr = t.ambient.params;
  for (const Vector& x : pts) {
    ChartGeometry geo(t.spec, t.ambient, x);
    Distribution dist1 = make_distribution(t.d1, geo.split());
    Distribution dist2 = make_distribution(t.d2, geo.split());
    PointwiseSlantResult f1 =
        pointwise_slant_test(geo.split(), pr, kAngleTol, &dist1);
    PointwiseSlantResult f2 =
        pointwise_slant_test(geo.split(), pr, kAngleTol, &dist2);
    add(s, "pointwise_fit_d1", x, f1.fit_residual, tol.algebraic);
    add(s, "pointwise_fit_d2", x, f2.fit_residual, tol.algebraic);
    SlantIdentityReport rep = slant_identity_suite(geo, dist2, pr);
    add(s, "slant_gram", x, rep.eq_gram, tol.algebraic);
    add(s, "slant_transfer", x, rep.eq_transfer, tol.algebraic);
    add(s, "angle_derivative_two_routes", x, rep.dtheta_agreement, tol.d2);
    double cov = 0.0;
    for (double r : rep.covariant_residual) cov = std::max(cov, r);
    // The covariant identity is stated for a pointwise slant submanifold;
    // restricted to one distribution of a bi-slant manifold it falls outside
    // that hypothesis, so a nonzero residual there is recorded, not failed.
    PointwiseSlantResult whole = pointwise_slant_test(geo.split(), pr, kAngleTol);
    if (cov <= tol.d2) {
      add(s, "slant_covariant", x, cov, tol.d2);
    } else if (!whole.is_pointwise_slant) {
      IdentityCase c;
      c.id = "slant_covariant";
      c.point = x;
      c.residual = cov;
      c.verdict = CaseVerdict::not_applicable;
      c.note = "submanifold is not pointwise slant; identity hypothesis unmet";
      s.cases.push_back(std::move(c));
    } else {
      add(s, "slant_covariant", x, cov, tol.d2);
    }
  }
  finalize(s);
  return s;
}

SuiteResult run_extrinsic(const Target& t, const std::vector<Vector>& pts,
                          const Tolerances& tol) {
  SuiteResult s;
  s.id = "extrinsic";
  const int k = t.spec.chart_dim;
  for (const Vector& x : pts) {
    ChartGeometry geo(t.spec, t.ambient, x);
    const FrameData& frame = geo.frame();
    double h_sym = 0.0, weingarten = 0.0;
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b) {
        Vector hab = geo.h_vec(Vector::Unit(k, a), Vector::Unit(k, b));
        Vector hba = geo.h_vec(Vector::Unit(k, b), Vector::Unit(k, a));
        h_sym = std::max(h_sym, (hab - hba).cwiseAbs().maxCoeff());
        for (int beta = 0; beta < frame.normal_dim(); ++beta) {
          Vector nu = frame.normal.col(beta);
          double lhs = hab.dot(nu);
          double rhs = geo.g(geo.shape_operator(nu) * Vector::Unit(k, a),
                             Vector::Unit(k, b));
          weingarten = std::max(weingarten, std::abs(lhs - rhs));
        }
      }
    add(s, "h_symmetry", x, h_sym, tol.algebraic);
    add(s, "weingarten_compatibility", x, weingarten, tol.algebraic);
    CovariantResiduals cr = check_covariant_relations(geo);
    add(s, "covariant_T_symmetry", x, cr.t_symmetry, tol.d1);
    add(s, "normal_transfer_duality", x, cr.n_t_duality, tol.d1);
    // Jet-computed field derivatives against central finite differences.
    const double step = 1e-5;
    double fd = 0.0;
    for (int c = 0; c < k; ++c) {
      Vector xp = x, xm = x;
      xp(c) += step;
      xm(c) -= step;
      FrameData fp = frame_at(t.spec, xp), fm = frame_at(t.spec, xm);
      Matrix dG_fd = (fp.gram - fm.gram) / (2 * step);
      Matrix dT_fd = (split_J(t.ambient, fp).T() - split_J(t.ambient, fm).T()) /
                     (2 * step);
      double scale = std::max(1.0, max_abs(geo.dgram(c)));
      fd = std::max(fd, max_abs(geo.dgram(c) - dG_fd) / scale);
      scale = std::max(1.0, max_abs(geo.dT(c)));
      fd = std::max(fd, max_abs(geo.dT(c) - dT_fd) / scale);
    }
    add(s, "field_derivative_fd_check", x, fd, tol.d2);
  }
  finalize(s);
  return s;
}

SuiteResult run_bislant(const Target& t, const std::vector<Vector>& pts,
                        const Tolerances& tol) {
  SuiteResult s;
  s.id = "bislant";
  if (!has_distributions(t)) {
    add_na(s, "bislant_lemma", "target declares no distribution pair");
    finalize(s);
    return s;
  }
  for (const Vector& x : pts) {
    ChartGeometry geo(t.spec, t.ambient, x);
    Distribution dist1 = make_distribution(t.d1, geo.split());
    Distribution dist2 = make_distribution(t.d2, geo.split());
    SlantReport rep = classify_bislant(dist1, dist2, geo.split(),
                                       t.ambient.params);
    add(s, "orthogonality", x, rep.ortho_residual, tol.algebraic);
    add(s, "j_orthogonality", x, rep.j_ortho_residual, tol.algebraic);
    for (auto& c : bislant_lemma_suite(geo, dist1, dist2, t.ambient.params,
                                       tol.d2))
      s.cases.push_back(std::move(c));
  }
  finalize(s);
  return s;
}

// Full block metric of w as one expression matrix (fiber block scaled by f^2).
std::vector<std::vector<ExprPtr>> full_block_metric(const WarpedSpec& w) {
  const int k = w.chart_dim();
  ExprPtr zero = Expr::constant(0.0);
  ExprPtr f2 = Expr::power(w.warping, 2);
  std::vector<std::vector<ExprPtr>> m(k, std::vector<ExprPtr>(k, zero));
  for (int a = 0; a < w.base_dim; ++a)
    for (int b = 0; b < w.base_dim; ++b) m[a][b] = w.base_metric[a][b];
  for (int a = 0; a < w.fiber_dim; ++a)
    for (int b = 0; b < w.fiber_dim; ++b)
      m[w.base_dim + a][w.base_dim + b] =
          Expr::binary(BinaryOp::mul, f2, w.fiber_metric[a][b]);
  return m;
}

SuiteResult run_warped(const Target& t, const std::vector<Vector>& pts,
                       const Tolerances& tol) {
  SuiteResult s;
  s.id = "warped";
  if (!t.warped) {
    add_na(s, "warped_product", "target carries no warped attachment");
    finalize(s);
    return s;
  }
  const WarpedSpec& w = *t.warped;
  auto block = full_block_metric(w);
  for (const Vector& x : pts) {
    ChartGeometry geo(t.spec, t.ambient, x);
    double mism = induced_metric_mismatch(w, geo);
    add(s, "metric_match", x, mism, tol.algebraic);
    if (mism <= tol.algebraic) {
      IdentityCase conn = warped_connection_check(w, geo);
      conn.verdict = conn.residual <= tol.d1 ? CaseVerdict::pass
                                             : CaseVerdict::fail;
      s.cases.push_back(std::move(conn));
    } else {
      add_na(s, "warped_connection", "metric mismatch at this point");
    }
    // Closed-form warped Christoffels against jet-differentiated ones.
    std::vector<Matrix> closed =
        warped_christoffels_closed(w, x, t.spec.consts);
    std::vector<Matrix> generic =
        metric_christoffels(block, x, t.spec.consts, 0);
    double chris = 0.0;
    for (int c = 0; c < w.chart_dim(); ++c)
      chris = std::max(chris, max_abs(closed[c] - generic[c]));
    add(s, "christoffel_closed_form", x, chris, tol.d1);
    Distribution dist1 = make_distribution(t.d1, geo.split());
    Distribution dist2 = make_distribution(t.d2, geo.split());
    for (auto& c : prop_h_suite(w, geo, dist1, dist2, tol.d1))
      s.cases.push_back(std::move(c));
    s.cases.push_back(warped_covariant_check(w, geo, dist2, tol.d2));
  }
  finalize(s);
  return s;
}

SuiteResult run_theorems(const Target& t, const std::vector<Vector>& pts,
                         const Tolerances& tol) {
  SuiteResult s;
  s.id = "theorems";
  if (!t.warped || !has_distributions(t)) {
    add_na(s, "theorem_predicates",
           "needs a warped attachment and a distribution pair");
    finalize(s);
    return s;
  }
  for (const Vector& x : pts) {
    ChartGeometry geo(t.spec, t.ambient, x);
    Distribution dist1 = make_distribution(t.d1, geo.split());
    Distribution dist2 = make_distribution(t.d2, geo.split());
    for (auto& c : theorem_predicates(*t.warped, geo, dist1, dist2,
                                      t.ambient.params, tol.d2))
      s.cases.push_back(std::move(c));
  }
  finalize(s);
  return s;
}

std::string classify_target(const Target& t, const std::vector<Vector>& pts,
                            ClassificationSummary& out) {
  const MetallicParams& pr = t.ambient.params;
  if (has_distributions(t)) {
    std::vector<SlantReport> reports;
    for (const Vector& x : pts) {
      FrameData frame = frame_at(t.spec, x);
      SplitOperators split = split_J(t.ambient, frame);
      Distribution dist1 = make_distribution(t.d1, split);
      Distribution dist2 = make_distribution(t.d2, split);
      SlantReport r = classify_bislant(dist1, dist2, split, pr);
      r.point = x;
      reports.push_back(std::move(r));
    }
    out = summarize_classification(reports);
  } else {
    // No declared pair: classify the whole tangent space as one distribution.
    double tmin = 4.0, tmax = -1.0;
    for (const Vector& x : pts) {
      FrameData frame = frame_at(t.spec, x);
      SplitOperators split = split_J(t.ambient, frame);
      PointwiseSlantResult r = pointwise_slant_test(split, pr, kAngleTol);
      tmin = std::min(tmin, r.theta);
      tmax = std::max(tmax, r.theta);
    }
    out.theta1_min = tmin;
    out.theta1_max = tmax;
    if (tmax < kAngleTol)
      out.label = "invariant";
    else if (tmin > M_PI / 2 - kAngleTol)
      out.label = "anti-invariant";
    else if (tmax - tmin < kConstSpreadTol)
      out.label = "pointwise slant (constant angle)";
    else
      out.label = "pointwise slant";
  }
  std::string label = out.label;
  if (t.warped) {
    Jet2 f = t.warped->warping_jet(pts.front(), t.spec.consts);
    if (f.grad.cwiseAbs().maxCoeff() > 1e-12)
      label = "warped product " + label;
  }
  return label;
}

void validate(const RunConfig& c) {
  if (c.samples < 1) throw ConfigError("samples must be >= 1");
  if (c.tol.algebraic <= 0 || c.tol.d1 <= 0 || c.tol.d2 <= 0)
    throw ConfigError("tolerances must be positive");
  if (c.format != "json" && c.format != "csv" && c.format != "text")
    throw ConfigError("format must be json, csv or text");
  for (const auto& s : c.suites)
    if (std::find(all_suites().begin(), all_suites().end(), s) ==
        all_suites().end())
      throw ConfigError("unknown suite '" + s + "'");
}

}  // namespace

Report run(const RunConfig& config) {
  validate(config);
  auto t0 = std::chrono::steady_clock::now();
  MetallicParams params = make_params(config.p, config.q);
  Target target = resolve_target(config.target, params);
  std::vector<Vector> pts = sample_points(target.spec, config.samples,
                                          config.seed);
  Report rep;
  rep.config = config;
  rep.target_name = target.name;
  rep.target_note = target.note;
  rep.verdict = classify_target(target, pts, rep.classification);
  // Canonical suite order, independent of the order given on the command line.
  for (const std::string& id : all_suites()) {
    if (std::find(config.suites.begin(), config.suites.end(), id) ==
        config.suites.end())
      continue;
    if (id == "fundamental")
      rep.suites.push_back(run_fundamental(target, pts, config.tol));
    else if (id == "slant")
      rep.suites.push_back(run_slant(target, pts, config.tol));
    else if (id == "extrinsic")
      rep.suites.push_back(run_extrinsic(target, pts, config.tol));
    else if (id == "bislant")
      rep.suites.push_back(run_bislant(target, pts, config.tol));
    else if (id == "warped")
      rep.suites.push_back(run_warped(target, pts, config.tol));
    else if (id == "theorems")
      rep.suites.push_back(run_theorems(target, pts, config.tol));
  }
  rep.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return rep;
}

namespace {

nlohmann::json point_json(const Vector& pt) {
  nlohmann::json a = nlohmann::json::array();
  for (int i = 0; i < pt.size(); ++i) a.push_back(pt(i));
  return a;
}

std::string point_str(const Vector& pt) {
  std::ostringstream os;
  os.precision(17);
  for (int i = 0; i < pt.size(); ++i) {
    if (i) os << ';';
    os << "u" << (i + 1) << '=' << pt(i);
  }
  return os.str();
}

}  // namespace

std::string emit(const Report& report, const std::string& format) {
  if (format == "json") {
    nlohmann::json j;
    j["config"] = {
        {"target", report.config.target},
        {"p", report.config.p},
        {"q", report.config.q},
        {"suites", report.config.suites},
        {"samples", report.config.samples},
        {"seed", report.config.seed},
        {"format", report.config.format},
        {"tolerances",
         {{"algebraic", report.config.tol.algebraic},
          {"d1", report.config.tol.d1},
          {"d2", report.config.tol.d2}}},
    };
    j["classification"] = {
        {"verdict", report.verdict},
        {"proper", report.classification.proper},
        {"theta1_min", report.classification.theta1_min},
        {"theta1_max", report.classification.theta1_max},
        {"theta2_min", report.classification.theta2_min},
        {"theta2_max", report.classification.theta2_max},
    };
    if (!report.target_note.empty()) j["classification"]["note"] = report.target_note;
    nlohmann::json suites = nlohmann::json::array();
    for (const auto& s : report.suites) {
      nlohmann::json cases = nlohmann::json::array();
      for (const auto& c : s.cases) {
        nlohmann::json cj = {{"identity", c.id},
                             {"point", point_json(c.point)},
                             {"residual", c.residual},
                             {"verdict", to_string(c.verdict)}};
        if (!c.note.empty()) cj["note"] = c.note;
        cases.push_back(std::move(cj));
      }
      suites.push_back({{"id", s.id},
                        {"cases", std::move(cases)},
                        {"summary",
                         {{"max_residual", s.max_residual},
                          {"pass", s.pass},
                          {"fail", s.fail},
                          {"not_applicable", s.not_applicable}}}});
    }
    j["suites"] = std::move(suites);
    return j.dump(2) + "\n";
  }
  if (format == "csv") {
    std::ostringstream os;
    os.precision(17);
    os << "suite,identity,point,residual,verdict\n";
    for (const auto& s : report.suites)
      for (const auto& c : s.cases)
        os << s.id << ',' << c.id << ',' << point_str(c.point) << ','
           << c.residual << ',' << to_string(c.verdict) << '\n';
    return os.str();
  }
  std::ostringstream os;
  os.precision(6);
  os << "target: " << report.target_name << "  (p=" << report.config.p
     << ", q=" << report.config.q << ", samples=" << report.config.samples
     << ", seed=" << report.config.seed << ")\n";
  if (!report.target_note.empty()) os << "note: " << report.target_note << "\n";
  os << "verdict: " << report.verdict << "\n";
  os << "theta1 in [" << report.classification.theta1_min << ", "
     << report.classification.theta1_max << "]  theta2 in ["
     << report.classification.theta2_min << ", "
     << report.classification.theta2_max << "]\n";
  for (const auto& s : report.suites) {
    os << "suite " << s.id << ": pass " << s.pass << ", fail " << s.fail
       << ", n/a " << s.not_applicable << ", max residual " << s.max_residual
       << "\n";
    for (const auto& c : s.cases)
      if (c.verdict == CaseVerdict::fail)
        os << "  FAIL " << c.id << " at (" << point_str(c.point)
           << ") residual " << c.residual << "\n";
  }
  os << "elapsed: " << report.elapsed_seconds << " s\n";
  os << (report.all_pass() ? "RESULT: all applicable cases pass\n"
                           : "RESULT: failures present\n");
  return os.str();
}

}  // namespace metallic

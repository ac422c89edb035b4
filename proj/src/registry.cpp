#include "metallic/registry.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

namespace metallic {

namespace {

constexpr double kHalfPi = 1.5707963267948966;

std::vector<Root> alternating6() {
  return {Root::sigma, Root::sigma_bar, Root::sigma,
          Root::sigma_bar, Root::sigma, Root::sigma_bar};
}

Matrix unit_column(int k, int i) {
  Matrix b = Matrix::Zero(k, 1);
  b(i, 0) = 1.0;
  return b;
}

WarpedSpec one_one_warped(const std::string& g1, const std::string& g2,
                          const std::string& f) {
  WarpedSpec w;
  w.base_dim = 1;
  w.fiber_dim = 1;
  w.base_metric = {{parse_expression(g1)}};
  w.fiber_metric = {{parse_expression(g2)}};
  w.warping = parse_expression(f);
  return w;
}

Target torus_like(const MetallicParams& params) {
  Target t;
  t.name = "ex4_1";
  t.summary = "product-of-circles surface in R^6, bi-slant with one "
              "point-dependent angle";
  t.spec = make_spec(
      t.name, 2, 6,
      {"cos(u1)*cos(u2)", "cos(u1)*sin(u2)", "sin(u1)*cos(u2)",
       "sin(u1)*sin(u2)", "sin(u2)", "cos(u2)"},
      {{0.0, kHalfPi}, {0.0, kHalfPi}}, params);
  t.ambient = diagonal_structure(params, alternating6());
  t.d1 = unit_column(2, 0);
  t.d2 = unit_column(2, 1);
  t.warped = one_one_warped("1", "1", "sqrt(2)");
  return t;
}

Target cone_like(const MetallicParams& params) {
  Target t;
  t.name = "ex5_1";
  t.summary = "ruled surface in R^6 realizing a nontrivial warped product";
  t.spec = make_spec(t.name, 2, 6,
                     {"u1*sin(u2)", "u1*cos(u2)", "u1", "u1*cos(u2)",
                      "u1*sin(u2)", "u2"},
                     {{0.0, 3.0}, {0.0, kHalfPi}}, params);
  t.ambient = diagonal_structure(
      params, {Root::sigma, Root::sigma, Root::sigma, Root::sigma_bar,
               Root::sigma_bar, Root::sigma_bar});
  t.d1 = unit_column(2, 0);
  t.d2 = unit_column(2, 1);
  t.warped = one_one_warped("3", "1", "sqrt(2*u1^2+1)");
  return t;
}

// cos/sin of the direction angle that kills the tangential part of J on a
// two-plane spanned inside a (sigma, sigma_bar) eigenplane pair.
const char* kAntiCos = "sqrt(-sigma_bar/(sigma-sigma_bar))";
const char* kAntiSin = "sqrt(sigma/(sigma-sigma_bar))";

}  // namespace

std::vector<std::string> registry_names() {
  return {"ex4_1",           "ex4_2",
          "ex4_3",           "ex5_1",
          "plane_invariant", "plane_antiinvariant",
          "semi_slant_product", "hemi_slant_product"};
}

Target registry_get(const std::string& name, const MetallicParams& params) {
  if (name == "ex4_1") return torus_like(params);
  if (name == "ex5_1") return cone_like(params);
  if (name == "ex4_2") {
    Target t = torus_like(params);
    t.name = "ex4_2";
    t.spec.name = "ex4_2";
    t.summary = "ex4_1 under the metallic-value constraint on the first "
                "angle function";
    t.note = "constraint locus: sigma*cos(u2)^2 + sigma_bar*sin(u2)^2 must "
             "be a root of x^2 - p*x - q; attained only at the domain "
             "boundary, so the locus inside the open square is empty";
    return t;
  }
  if (name == "ex4_3") {
    Target t = torus_like(params);
    t.name = "ex4_3";
    t.spec.name = "ex4_3";
    t.summary = "ex4_1 pinned to the locus where the first distribution "
                "turns anti-invariant";
    double vstar = std::atan(
        (std::sqrt(double(params.p) * params.p + 4.0 * params.q) + params.p) /
        (2.0 * std::sqrt(double(params.q))));
    t.spec.domain[1] = {vstar, vstar};
    // The product attachment of ex4_1 is not a hemi-slant warped product:
    // fiber leaves exit the locus, so the warped theorem hypotheses never
    // hold globally here.
    t.warped.reset();
    t.note = "second coordinate pinned to atan(sigma/sqrt(q))";
    return t;
  }
  if (name == "plane_invariant") {
    Target t;
    t.name = name;
    t.summary = "flat plane spanned by two sigma-eigendirections";
    t.spec = make_spec(name, 2, 6, {"u1", "0", "u2", "0", "0", "0"},
                       {{0.0, 1.0}, {0.0, 1.0}}, params);
    t.ambient = diagonal_structure(params, alternating6());
    t.d1 = unit_column(2, 0);
    t.d2 = unit_column(2, 1);
    return t;
  }
  if (name == "plane_antiinvariant") {
    Target t;
    t.name = name;
    t.summary = "flat plane with J mapping every tangent vector into the "
                "normal space";
    std::string c = kAntiCos, s = kAntiSin;
    t.spec = make_spec(name, 2, 6,
                       {"u1*" + c, "u1*" + s, "u2*" + c, "u2*" + s, "0", "0"},
                       {{0.0, 1.0}, {0.0, 1.0}}, params);
    t.ambient = diagonal_structure(params, alternating6());
    t.d1 = unit_column(2, 0);
    t.d2 = unit_column(2, 1);
    return t;
  }
  if (name == "semi_slant_product") {
    Target t;
    t.name = name;
    t.summary = "trivial product of an invariant line and a proper slant "
                "line";
    t.spec = make_spec(name, 2, 6,
                       {"u1", "0", "u2*cos(pi/4)", "u2*sin(pi/4)", "0", "0"},
                       {{0.0, 1.0}, {0.0, 1.0}}, params);
    t.ambient = diagonal_structure(params, alternating6());
    t.d1 = unit_column(2, 0);
    t.d2 = unit_column(2, 1);
    t.warped = one_one_warped("1", "1", "1");
    return t;
  }
  if (name == "hemi_slant_product") {
    Target t;
    t.name = name;
    t.summary = "trivial product of an anti-invariant line and a proper "
                "slant line";
    std::string c = kAntiCos, s = kAntiSin;
    t.spec = make_spec(name, 2, 6,
                       {"u1*" + c, "u1*" + s, "u2*cos(pi/4)", "u2*sin(pi/4)",
                        "0", "0"},
                       {{0.0, 1.0}, {0.0, 1.0}}, params);
    t.ambient = diagonal_structure(params, alternating6());
    t.d1 = unit_column(2, 0);
    t.d2 = unit_column(2, 1);
    t.warped = one_one_warped("1", "1", "1");
    return t;
  }
  throw UnknownTargetError("unknown registry target '" + name + "'");
}

Target load_target_file(const std::string& path,
                        const MetallicParams* override_params) {
  std::ifstream in(path);
  if (!in) throw UnknownTargetError("cannot open immersion file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), 1, 1);
  }
  const int k = j.at("k").get<int>();
  const int m = j.at("m").get<int>();
  MetallicParams params =
      override_params ? *override_params
                      : make_params(j.at("p").get<int>(), j.at("q").get<int>());
  std::vector<std::string> comps = j.at("components").get<std::vector<std::string>>();
  if (static_cast<int>(comps.size()) != m)
    throw UnknownTargetError("component count does not match m");
  std::vector<std::array<double, 2>> domain;
  for (const auto& iv : j.at("domain")) {
    if (!iv.is_array() || iv.size() != 2)
      throw UnknownTargetError("domain entries must be [lo, hi] pairs");
    domain.push_back({iv[0].get<double>(), iv[1].get<double>()});
  }
  if (static_cast<int>(domain.size()) != k)
    throw UnknownTargetError("domain count does not match k");
  std::vector<Root> signature;
  for (const auto& s : j.at("J_pattern")) {
    std::string v = s.get<std::string>();
    if (v == "sigma")
      signature.push_back(Root::sigma);
    else if (v == "sigma_bar")
      signature.push_back(Root::sigma_bar);
    else
      throw UnknownTargetError("J_pattern entries must be sigma or sigma_bar");
  }
  if (static_cast<int>(signature.size()) != m)
    throw UnknownTargetError("J_pattern length does not match m");
  Target t;
  t.name = j.value("name", std::string("file"));
  t.summary = "user-supplied immersion";
  t.spec = make_spec(t.name, k, m, comps, domain, params);
  t.ambient = diagonal_structure(params, signature);
  t.d1 = Matrix::Zero(k, 0);
  t.d2 = Matrix::Zero(k, 0);
  return t;
}

Target resolve_target(const std::string& name_or_path,
                      const MetallicParams& params) {
  for (const std::string& n : registry_names())
    if (n == name_or_path) return registry_get(n, params);
  return load_target_file(name_or_path, &params);
}

}  // namespace metallic

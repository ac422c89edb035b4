#include <doctest.h>

#include "metallic/registry.hpp"
#include "metallic/sampler.hpp"
#include "metallic/warped.hpp"

using namespace metallic;

namespace {

const IdentityCase& find_case(const std::vector<IdentityCase>& cases,
                              const std::string& id) {
  for (const auto& c : cases)
    if (c.id == id) return c;
  throw std::logic_error("missing case " + id);
}

}  // namespace

TEST_CASE("declared block metric matches the induced metric") {
  MetallicParams m = make_params(1, 1);
  Target t = registry_get("ex5_1", m);
  REQUIRE(t.warped.has_value());
  for (const Vector& x : sample_points(t.spec, 100, 3)) {
    ChartGeometry geo(t.spec, t.ambient, x);
    CHECK(induced_metric_mismatch(*t.warped, geo) < 1e-10);
  }
}

TEST_CASE("warped connection identity nabla_X Z = X(ln f) Z") {
  MetallicParams m = make_params(1, 1);
  for (const char* name : {"ex4_1", "ex5_1"}) {
    Target t = registry_get(name, m);
    for (const Vector& x : sample_points(t.spec, 25, 5)) {
      ChartGeometry geo(t.spec, t.ambient, x);
      IdentityCase c = warped_connection_check(*t.warped, geo);
      CAPTURE(name);
      CHECK(c.residual < 1e-8);
    }
  }
}

TEST_CASE("closed-form warped christoffels match the metric jets") {
  MetallicParams m = make_params(1, 1);
  Target t = registry_get("ex5_1", m);
  const WarpedSpec& w = *t.warped;
  // Full block metric as explicit expressions, differentiated directly.
  std::vector<std::vector<ExprPtr>> full = {
      {parse_expression("3"), parse_expression("0")},
      {parse_expression("0"), parse_expression("2*u1^2+1")}};
  for (const Vector& x : sample_points(t.spec, 25, 7)) {
    auto closed = warped_christoffels_closed(w, x, t.spec.consts);
    auto direct = metric_christoffels(full, x, t.spec.consts);
    REQUIRE(closed.size() == 2);
    for (int c = 0; c < 2; ++c) CHECK(max_abs(closed[c] - direct[c]) < 1e-9);
    // And both match the immersion's induced connection.
    ChartGeometry geo(t.spec, t.ambient, x);
    for (int c = 0; c < 2; ++c)
      CHECK(max_abs(closed[c] - geo.christoffel(c)) < 1e-8);
  }
}

TEST_CASE("second-fundamental-form suite splits into holding and failing laws") {
  MetallicParams m = make_params(1, 1);
  Target t = registry_get("ex5_1", m);
  for (const Vector& x : sample_points(t.spec, 25, 9)) {
    ChartGeometry geo(t.spec, t.ambient, x);
    Distribution d1 = make_distribution(t.d1, geo.split());
    Distribution d2 = make_distribution(t.d2, geo.split());
    auto cases = prop_h_suite(*t.warped, geo, d1, d2, 1e-7);
    CHECK(find_case(cases, "h_base_base_vs_mixed").verdict ==
          CaseVerdict::pass);
    // The remaining two laws are violated on this instance; the violation of
    // the mixed-fiber law has the closed form u (sigma - sigma_bar) /
    // (2 u^2 + 1), reproduced here as an independent oracle.
    const IdentityCase& mixed = find_case(cases, "h_mixed_fiber_vanishes");
    CHECK(mixed.verdict == CaseVerdict::fail);
    double u = x(0);
    double expected = u * (m.sigma - m.sigma_bar) / (2 * u * u + 1);
    Vector e1 = Vector::Unit(2, 0), e2 = Vector::Unit(2, 1);
    double got = geo.h_vec(e1, e2).dot(geo.normal_part_of_J(e2));
    CHECK(std::abs(std::abs(got) - std::abs(expected)) < 1e-8);
    CHECK(find_case(cases, "h_fiber_fiber_transport").verdict ==
          CaseVerdict::fail);
    IdentityCase cov = warped_covariant_check(*t.warped, geo, d2, 1e-6);
    CHECK(cov.verdict == CaseVerdict::fail);
    CHECK(cov.residual > 1e-3);
  }
}

TEST_CASE("trivial products satisfy the full suite") {
  MetallicParams m = make_params(1, 1);
  for (const char* name : {"semi_slant_product", "hemi_slant_product"}) {
    Target t = registry_get(name, m);
    for (const Vector& x : sample_points(t.spec, 10, 11)) {
      ChartGeometry geo(t.spec, t.ambient, x);
      Distribution d1 = make_distribution(t.d1, geo.split());
      Distribution d2 = make_distribution(t.d2, geo.split());
      for (const auto& c : prop_h_suite(*t.warped, geo, d1, d2, 1e-8)) {
        CAPTURE(name);
        CAPTURE(c.id);
        CHECK(c.verdict != CaseVerdict::fail);
      }
      IdentityCase cov = warped_covariant_check(*t.warped, geo, d2, 1e-8);
      CHECK(cov.verdict != CaseVerdict::fail);
    }
  }
}

TEST_CASE("bi-slant connection identities") {
  MetallicParams m = make_params(1, 1);
  for (const char* name : {"ex4_1", "ex5_1", "hemi_slant_product"}) {
    Target t = registry_get(name, m);
    for (const Vector& x : sample_points(t.spec, 10, 13)) {
      ChartGeometry geo(t.spec, t.ambient, x);
      Distribution d1 = make_distribution(t.d1, geo.split());
      Distribution d2 = make_distribution(t.d2, geo.split());
      for (const auto& c : bislant_lemma_suite(geo, d1, d2, m, 1e-6)) {
        CAPTURE(name);
        CAPTURE(c.id);
        CHECK(c.verdict != CaseVerdict::fail);
      }
    }
  }
}

TEST_CASE("theorem predicates on the constructed products") {
  MetallicParams m = make_params(1, 1);
  Target semi = registry_get("semi_slant_product", m);
  Target hemi = registry_get("hemi_slant_product", m);
  for (const Target* tp : {&semi, &hemi}) {
    const Target& t = *tp;
    for (const Vector& x : sample_points(t.spec, 10, 15)) {
      ChartGeometry geo(t.spec, t.ambient, x);
      Distribution d1 = make_distribution(t.d1, geo.split());
      Distribution d2 = make_distribution(t.d2, geo.split());
      auto cases = theorem_predicates(*t.warped, geo, d1, d2, m, 1e-7);
      bool any_applicable = false;
      for (const auto& c : cases) {
        CAPTURE(t.name);
        CAPTURE(c.id);
        CHECK(c.verdict != CaseVerdict::fail);
        if (c.verdict == CaseVerdict::pass) any_applicable = true;
      }
      CHECK(any_applicable);
    }
  }
  // The semi-slant-only predicates actually fire on the semi-slant product.
  Vector x(2);
  x << 0.5, 0.5;
  ChartGeometry geo(semi.spec, semi.ambient, x);
  Distribution d1 = make_distribution(semi.d1, geo.split());
  Distribution d2 = make_distribution(semi.d2, geo.split());
  auto cases = theorem_predicates(*semi.warped, geo, d1, d2, m, 1e-7);
  CHECK(find_case(cases, "semi_slant_normal_transport").verdict ==
        CaseVerdict::pass);
  CHECK(find_case(cases, "semi_slant_warping_constancy").verdict ==
        CaseVerdict::pass);
  ChartGeometry geoh(hemi.spec, hemi.ambient, x);
  Distribution h1 = make_distribution(hemi.d1, geoh.split());
  Distribution h2 = make_distribution(hemi.d2, geoh.split());
  auto hcases = theorem_predicates(*hemi.warped, geoh, h1, h2, m, 1e-7);
  CHECK(find_case(hcases, "hemi_slant_constancy_iff_shape_symmetry").verdict ==
        CaseVerdict::pass);
}

TEST_CASE("declaration errors") {
  MetallicParams m = make_params(1, 1);
  Target t = registry_get("ex5_1", m);
  Vector x(2);
  x << 1.0, 0.5;
  ChartGeometry geo(t.spec, t.ambient, x);
  // Wrong warping: declared metric no longer matches the induced one.
  WarpedSpec wrong = *t.warped;
  wrong.warping = parse_expression("u1+1");
  CHECK(induced_metric_mismatch(wrong, geo) > 1e-3);
  CHECK_THROWS_AS(warped_connection_check(wrong, geo), MetricMismatchError);
  // Warping must not involve fiber coordinates, and must stay positive.
  WarpedSpec fiber_dep = *t.warped;
  fiber_dep.warping = parse_expression("u2+1");
  CHECK_THROWS_AS(fiber_dep.warping_jet(x, t.spec.consts), RoleViolationError);
  WarpedSpec negative = *t.warped;
  negative.warping = parse_expression("u1-5");
  CHECK_THROWS_AS(negative.warping_jet(x, t.spec.consts), RoleViolationError);
}

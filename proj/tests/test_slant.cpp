#include <doctest.h>

#include "metallic/registry.hpp"
#include "metallic/sampler.hpp"
#include "metallic/slant.hpp"

using namespace metallic;

namespace {

struct Angles {
  double theta1, theta2;
};

Angles angles_at(const Target& t, const Vector& x) {
  FrameData f = frame_at(t.spec, x);
  SplitOperators s = split_J(t.ambient, f);
  Distribution d1 = make_distribution(t.d1, s);
  Distribution d2 = make_distribution(t.d2, s);
  SlantReport rep = classify_bislant(d1, d2, s, t.ambient.params);
  return {rep.theta1, rep.theta2};
}

}  // namespace

TEST_CASE("ex4_1 slant angles against independent closed forms") {
  for (auto [p, q] : {std::pair<int, int>{1, 1}, {2, 1}}) {
    MetallicParams m = make_params(p, q);
    Target t = registry_get("ex4_1", m);
    for (const Vector& x : sample_points(t.spec, 50, 3)) {
      double c = std::cos(x(1)), s = std::sin(x(1));
      double cos1 = std::abs(m.sigma * c * c + m.sigma_bar * s * s) /
                    std::sqrt(m.sigma * m.sigma * c * c +
                              m.sigma_bar * m.sigma_bar * s * s);
      double cos2 =
          p / std::sqrt(2.0 * (m.sigma * m.sigma + m.sigma_bar * m.sigma_bar));
      Angles a = angles_at(t, x);
      CHECK(std::abs(a.theta1 - std::acos(cos1)) < 1e-10);
      CHECK(std::abs(a.theta2 - std::acos(cos2)) < 1e-10);
    }
  }
}

TEST_CASE("ex5_1 slant angles against independent closed forms") {
  MetallicParams m = make_params(1, 1);
  Target t = registry_get("ex5_1", m);
  for (const Vector& x : sample_points(t.spec, 50, 5)) {
    double u = x(0), u2 = u * u;
    double cos1 =
        std::abs(2 * m.sigma + m.sigma_bar) /
        std::sqrt(3.0 * (2 * m.sigma * m.sigma + m.sigma_bar * m.sigma_bar));
    double cos2 = std::abs(u2 * m.p + m.sigma_bar) /
                  std::sqrt((2 * u2 + 1) *
                            (m.sigma * m.sigma * u2 +
                             m.sigma_bar * m.sigma_bar * (u2 + 1)));
    Angles a = angles_at(t, x);
    CHECK(std::abs(a.theta1 - std::acos(cos1)) < 1e-9);
    CHECK(std::abs(a.theta2 - std::acos(cos2)) < 1e-9);
  }
}

TEST_CASE("constant versus point-dependent angles") {
  MetallicParams m = make_params(1, 1);
  // ex4_1: theta2 constant to tight tolerance, theta1 genuinely varies.
  Target t = registry_get("ex4_1", m);
  auto pts = sample_points(t.spec, 200, 7);
  double min1 = 10, max1 = 0, min2 = 10, max2 = 0;
  for (const Vector& x : pts) {
    Angles a = angles_at(t, x);
    min1 = std::min(min1, a.theta1);
    max1 = std::max(max1, a.theta1);
    min2 = std::min(min2, a.theta2);
    max2 = std::max(max2, a.theta2);
  }
  CHECK(max2 - min2 < 1e-10);
  CHECK(max1 - min1 > 1e-3);
  // ex5_1: theta1 constant, theta2 varies with the base coordinate.
  Target r = registry_get("ex5_1", m);
  Vector xa(2), xb(2);
  xa << 1.0, 0.5;
  xb << 2.0, 0.5;
  CHECK(std::abs(angles_at(r, xa).theta1 - angles_at(r, xb).theta1) < 1e-10);
  CHECK(std::abs(angles_at(r, xa).theta2 - angles_at(r, xb).theta2) > 1e-3);
}

TEST_CASE("ex4_3 pins the first distribution to the anti-invariant angle") {
  for (auto [p, q] : {std::pair<int, int>{1, 1}, {3, 2}}) {
    Target t = registry_get("ex4_3", make_params(p, q));
    for (const Vector& x : sample_points(t.spec, 10, 9)) {
      Angles a = angles_at(t, x);
      CHECK(std::abs(a.theta1 - std::acos(0.0)) < 1e-8);
    }
  }
}

TEST_CASE("classification verdicts") {
  MetallicParams m = make_params(1, 1);
  auto summarize = [&](const char* name) {
    Target t = registry_get(name, m);
    std::vector<SlantReport> reps;
    for (const Vector& x : sample_points(t.spec, 25, 11)) {
      SplitOperators s = split_J(t.ambient, frame_at(t.spec, x));
      reps.push_back(classify_bislant(make_distribution(t.d1, s),
                                      make_distribution(t.d2, s), s, m));
    }
    return summarize_classification(reps);
  };
  CHECK(summarize("ex4_1").verdict == SlantVerdict::pointwise_bi_slant);
  // Not "proper": theta2 is constant (proper needs both angles nonconstant).
  CHECK_FALSE(summarize("ex4_1").proper);
  CHECK(summarize("ex5_1").verdict == SlantVerdict::pointwise_bi_slant);
  CHECK(summarize("ex4_3").verdict == SlantVerdict::pointwise_hemi_slant);
  CHECK(summarize("plane_invariant").verdict == SlantVerdict::invariant);
  CHECK(summarize("plane_antiinvariant").verdict ==
        SlantVerdict::anti_invariant);
  CHECK(summarize("semi_slant_product").verdict ==
        SlantVerdict::pointwise_semi_slant);
  CHECK(summarize("hemi_slant_product").verdict ==
        SlantVerdict::pointwise_hemi_slant);
}

TEST_CASE("wirtinger angle is scale invariant and rejects null input") {
  MetallicParams m = make_params(1, 1);
  Target t = registry_get("ex4_1", m);
  Vector x(2);
  x << 0.7, 0.9;
  SplitOperators s = split_J(t.ambient, frame_at(t.spec, x));
  Vector v(2);
  v << 1.0, 0.4;
  CHECK(wirtinger_angle(s, m, v) ==
        doctest::Approx(wirtinger_angle(s, m, Vector(3.0 * v))).epsilon(1e-12));
  CHECK_THROWS_AS(wirtinger_angle(s, m, Vector(Vector::Zero(2))),
                  DegenerateVectorError);
}

TEST_CASE("angle derivative: jet route agrees with finite differences") {
  MetallicParams m = make_params(1, 1);
  Target t = registry_get("ex5_1", m);
  for (const Vector& x : sample_points(t.spec, 25, 13, 1e-2)) {
    ChartGeometry geo(t.spec, t.ambient, x);
    Distribution d2 = make_distribution(t.d2, geo.split());
    Vector jet = theta_derivative(geo, d2, m);
    Vector fd = theta_derivative_fd(t.spec, t.ambient, t.d2, x);
    CHECK(max_abs(Matrix(jet - fd)) < 1e-6);
    // theta2 depends on the base coordinate only.
    CHECK(std::abs(jet(1)) < 1e-8);
  }
}

TEST_CASE("slant identity suite on the varying distribution of ex5_1") {
  MetallicParams m = make_params(1, 1);
  Target t = registry_get("ex5_1", m);
  for (const Vector& x : sample_points(t.spec, 25, 17)) {
    ChartGeometry geo(t.spec, t.ambient, x);
    Distribution d2 = make_distribution(t.d2, geo.split());
    SlantIdentityReport rep = slant_identity_suite(geo, d2, m);
    CHECK(rep.eq_gram < 1e-9);
    CHECK(rep.eq_transfer < 1e-9);
    CHECK(rep.dtheta_agreement < 1e-6);
  }
}

TEST_CASE("span defect is reported") {
  MetallicParams m = make_params(1, 1);
  Target t = registry_get("ex4_1", m);
  Vector x(2);
  x << 0.5, 0.5;
  SplitOperators s = split_J(t.ambient, frame_at(t.spec, x));
  Distribution d1 = make_distribution(t.d1, s);
  Distribution full = make_distribution(Matrix::Identity(2, 2), s);
  CHECK_THROWS_AS(classify_bislant(d1, full, s, m), SpanDefectError);
}

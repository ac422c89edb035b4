#pragma once

#include <array>
#include <string>
#include <vector>

#include "metallic/expression.hpp"
#include "metallic/structure.hpp"

namespace metallic {

// Parametric immersion of a k-dimensional box into R^m, one expression per
// ambient component.
struct ImmersionSpec {
  std::string name;
  int chart_dim = 0;
  int ambient_dim = 0;
  std::vector<ExprPtr> components;             // size ambient_dim
  std::vector<std::array<double, 2>> domain;   // size chart_dim, closed intervals
  ConstBindings consts;

  bool inside_domain(const Vector& x, double margin = 0.0) const;
};

// Margin kept from the domain boundary when sampling, dodging rank
// degeneracies at the edges.
inline constexpr double kDomainMargin = 1e-3;

// Pointwise frame data at a chart point: Jacobian columns Z_1..Z_k, induced
// metric G, orthonormal normal frame, and the full second jet of the
// immersion.
struct FrameData {
  Vector x;            // chart point
  Matrix tangent;      // m x k, Jacobian columns
  Matrix normal;       // m x (m-k), orthonormal, orthogonal to tangent
  Matrix gram;         // k x k, G_ab = <Z_a, Z_b>
  std::vector<Matrix> second;  // second[c] is m x k with column a = d^2 i / du_c du_a

  int chart_dim() const { return static_cast<int>(tangent.cols()); }
  int ambient_dim() const { return static_cast<int>(tangent.rows()); }
  int normal_dim() const { return static_cast<int>(normal.cols()); }

  // d^2 i / du_a du_b as an ambient vector.
  Vector second_vec(int a, int b) const { return second[a].col(b); }
  // Tangential projector Z G^{-1} Z^T.
  Matrix tangent_projector() const;
};

// Evaluates the frame at x. Throws RankDeficientError when the Jacobian is
// not full rank (the map is not an immersion there) and std::domain_error
// when x falls outside the domain box.
FrameData frame_at(const ImmersionSpec& spec, const Vector& x);

// Parses a textual immersion definition. Each line "name = <expr>" is not
// used here; this is the single-expression entry used by the JSON loader
// and tests.
ImmersionSpec make_spec(std::string name, int chart_dim, int ambient_dim,
                        std::vector<std::string> component_sources,
                        std::vector<std::array<double, 2>> domain,
                        const MetallicParams& params);

}  // namespace metallic

#pragma once

#include "metallic/split.hpp"

namespace metallic {

// Gauss/Weingarten data at a chart point, in a flat ambient space where the
// coordinate derivative is the ambient connection.
struct ExtrinsicData {
  // h[a][b] = coefficients of h(Z_a, Z_b) in the orthonormal normal frame.
  std::vector<std::vector<Vector>> h;
  // shape[beta] = A_{nu_beta} as a k x k endomorphism in the Jacobian frame.
  std::vector<Matrix> shape;
  // christoffel[c](a, b) = Gamma^a_{cb} of the induced connection.
  std::vector<Matrix> christoffel;
  // normal_connection[c](gamma, beta) = <nabla^perp_{Z_c} nu_beta, nu_gamma>,
  // computed by differentiating the (Procrustes-aligned) normal frame.
  std::vector<Matrix> normal_connection;
};

// Pointwise geometry of an immersion together with the first derivatives of
// the assembled fields, all obtained from the 2-jet of the immersion. This
// backs every covariant-derivative evaluation.
class ChartGeometry {
 public:
  ChartGeometry(const ImmersionSpec& spec, const AmbientStructure& ambient,
                const Vector& x);

  const FrameData& frame() const { return frame_; }
  const SplitOperators& split() const { return split_; }
  const AmbientStructure& ambient() const { return *ambient_; }
  const ImmersionSpec& spec() const { return *spec_; }
  int chart_dim() const { return frame_.chart_dim(); }

  // g(X, Y) for tangent coefficient vectors.
  double g(const Vector& x, const Vector& y) const {
    return x.dot(frame_.gram * y);
  }

  const Matrix& gram() const { return frame_.gram; }
  const Matrix& T() const { return split_.T(); }
  const Matrix& christoffel(int c) const { return christoffel_[c]; }
  const Matrix& dgram(int c) const { return dG_[c]; }
  const Matrix& dM(int c) const { return dM_[c]; }
  const Matrix& dT(int c) const { return dT_[c]; }
  const Matrix& tangent_projector() const { return proj_; }
  const Matrix& dtangent_projector(int c) const { return dProj_[c]; }

  // nabla_{Z_c} Y for a frame vector field with constant coefficients y.
  Vector nabla(int c, const Vector& y) const { return christoffel_[c] * y; }

  // Ambient normal part of J X for tangent coefficients x.
  Vector normal_part_of_J(const Vector& x) const;
  // Second fundamental form h(X, Y) as an ambient vector.
  Vector h_vec(const Vector& x, const Vector& y) const;
  // Shape operator A_V (k x k) for an ambient normal vector V.
  Matrix shape_operator(const Vector& v_normal) const;

  // Covariant derivatives along Z_c, assembled from the jet-derived field
  // derivatives:
  //   (nabla_c T)        as a k x k endomorphism,
  //   (nabla_c S)        for a supplied endomorphism field S with derivative dS,
  //   (bar nabla_c N) Y  and (nabla_c t) V, (bar nabla_c n) V as ambient
  //   vectors via the projector calculus.
  Matrix covariant_T(int c) const;
  Matrix covariant_endo(int c, const Matrix& S, const Matrix& dS) const;
  Vector covariant_N(int c, int frame_index) const;
  Vector covariant_t(int c, const Vector& v_normal) const;
  Vector covariant_n(int c, const Vector& v_normal) const;

  ExtrinsicData extrinsic() const;

 private:
  const ImmersionSpec* spec_;
  const AmbientStructure* ambient_;
  FrameData frame_;
  SplitOperators split_;
  std::vector<Matrix> dG_;      // k of k x k
  std::vector<Matrix> dM_;      // k of k x k, M = Z^T J Z
  std::vector<Matrix> dT_;      // k of k x k
  std::vector<Matrix> christoffel_;
  Matrix proj_;                 // m x m tangential projector
  std::vector<Matrix> dProj_;   // k of m x m
};

ExtrinsicData extrinsic_at(const ImmersionSpec& spec,
                           const AmbientStructure& ambient, const Vector& x);

// Residuals of the covariant-derivative symmetry/duality relations
//   g((nabla_X T)Y, Z) = g(Y, (nabla_X T)Z)
//   g((bar nabla_X N)Y, V) = g(Y, (nabla_X t)V)
// maximized over frame directions at the point.
struct CovariantResiduals {
  double t_symmetry;
  double n_t_duality;
};

CovariantResiduals check_covariant_relations(const ChartGeometry& geo);

}  // namespace metallic

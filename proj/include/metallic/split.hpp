#pragma once

#include <optional>

#include "metallic/immersion.hpp"

namespace metallic {

// Tangential/normal components of a constant symmetric ambient operator at a
// point. Tangent-slot matrices live in the (non-orthonormal) Jacobian frame,
// normal-slot matrices in the orthonormal complement frame:
//   op Z_a  = sum_b tangent_tangent(b,a) Z_b + sum_beta normal_tangent(beta,a) nu_beta
//   op nu_b = sum_a tangent_normal(a,b) Z_a + sum_beta normal_normal(beta,b) nu_beta
struct SplitParts {
  Matrix tangent_tangent;  // k x k          (T for J, f for F)
  Matrix normal_tangent;   // (m-k) x k      (N for J, omega for F)
  Matrix tangent_normal;   // k x (m-k)      (t for J, B for F)
  Matrix normal_normal;    // (m-k) x (m-k)  (n for J, C for F)
};

struct SplitOperators {
  Matrix gram;  // induced metric at the point
  SplitParts j;                       // split of the metallic structure
  std::optional<SplitParts> product;  // split of F when the ambient has one

  const Matrix& T() const { return j.tangent_tangent; }
  const Matrix& N() const { return j.normal_tangent; }
  const Matrix& t() const { return j.tangent_normal; }
  const Matrix& n() const { return j.normal_normal; }
};

SplitParts split_operator(const Matrix& op, const FrameData& frame);

// Splits J (and F when present) into the frame of `frame`.
SplitOperators split_J(const AmbientStructure& ambient, const FrameData& frame);

// Max-abs residuals of the four fundamental component identities:
//   T^2 = pT + qI - tN,   pN = NT + nN,
//   n^2 = pn + qI - Nt,   pt = Tt + tn.
struct FundamentalResiduals {
  double t_squared;    // T^2 - pT - qI + tN
  double normal_mix;   // pN - NT - nN
  double n_squared;    // n^2 - pn - qI + Nt
  double t_transfer;   // pt - Tt - tn
  double max() const {
    return std::max(std::max(t_squared, normal_mix),
                    std::max(n_squared, t_transfer));
  }
};

FundamentalResiduals check_fundamental_identities(const SplitOperators& split,
                                                  const MetallicParams& params);

// Residuals of the relations between the splits of an induced metallic
// structure and of its almost product source:
//   T = (p/2) I + s ((2 sigma - p)/2) f,   N = s ((2 sigma - p)/2) omega,
// with sign s = +1 for the J1 branch and s = -1 for the J2 branch, plus the
// g-symmetry defect of f.
struct ProductRelationResiduals {
  double tangential;   // T vs f relation
  double normal;       // N vs omega relation
  double f_symmetry;   // Gf - f^T G
};

ProductRelationResiduals check_product_relations(const SplitOperators& split,
                                                 const MetallicParams& params,
                                                 int sign);

// Reconstruction defect of J Z_a against the split components (max over the
// tangent frame).
double reconstruction_residual(const AmbientStructure& ambient,
                               const FrameData& frame,
                               const SplitOperators& split);

}  // namespace metallic

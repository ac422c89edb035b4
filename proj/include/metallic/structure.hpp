#pragma once

#include <optional>
#include <vector>

#include "metallic/linalg.hpp"

namespace metallic {

struct AlmostProductViolationError : std::runtime_error {
  explicit AlmostProductViolationError(const std::string& what)
      : std::runtime_error(what) {}
};

// Roots of x^2 - p x - q for positive integers p, q. sigma is the positive
// (metallic) root, sigma_bar = p - sigma the conjugate one.
struct MetallicParams {
  int p;
  int q;
  double sigma;
  double sigma_bar;
};

MetallicParams make_params(int p, int q);

enum class Root { sigma, sigma_bar };

// Constant structure tensor J on R^m with J^2 = pJ + qI and J symmetric.
// Constancy makes the ambient locally metallic: the flat derivative of J
// vanishes identically.
struct AmbientStructure {
  int m;
  Matrix J;
  MetallicParams params;
  std::optional<Matrix> F;  // almost product source, when built from one

  // Max-abs residuals of the defining relations.
  double metallic_residual() const {
    return max_abs(J * J - params.p * J - params.q * Matrix::Identity(m, m));
  }
  double symmetry_residual() const { return max_abs(J - J.transpose()); }
};

// J = diag of the chosen roots.
AmbientStructure diagonal_structure(const MetallicParams& params,
                                    const std::vector<Root>& signature);

// The two metallic structures induced by an almost product structure F
// (F^2 = I, F symmetric):
//   J1 =  ((2*sigma - p)/2) F + (p/2) I
//   J2 = -((2*sigma - p)/2) F + (p/2) I
std::pair<AmbientStructure, AmbientStructure> from_almost_product(
    const MetallicParams& params, const Matrix& F);

}  // namespace metallic

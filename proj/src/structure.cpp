#include "metallic/structure.hpp"

#include <cmath>

namespace metallic {

MetallicParams make_params(int p, int q) {
  if (p <= 0 || q <= 0)
    throw std::invalid_argument("make_params: p and q must be positive");
  double sigma = (p + std::sqrt(double(p) * p + 4.0 * q)) / 2.0;
  return MetallicParams{p, q, sigma, p - sigma};
}

AmbientStructure diagonal_structure(const MetallicParams& params,
                                    const std::vector<Root>& signature) {
  if (signature.empty())
    throw std::invalid_argument("diagonal_structure: empty signature");
  int m = static_cast<int>(signature.size());
  Matrix J = Matrix::Zero(m, m);
  for (int i = 0; i < m; ++i)
    J(i, i) = signature[i] == Root::sigma ? params.sigma : params.sigma_bar;
  return AmbientStructure{m, std::move(J), params, std::nullopt};
}

std::pair<AmbientStructure, AmbientStructure> from_almost_product(
    const MetallicParams& params, const Matrix& F) {
  if (F.rows() != F.cols())
    throw std::invalid_argument("from_almost_product: F must be square");
  int m = static_cast<int>(F.rows());
  const Matrix I = Matrix::Identity(m, m);
  if (max_abs(F * F - I) > 1e-10 || max_abs(F - F.transpose()) > 1e-12)
    throw AlmostProductViolationError(
        "from_almost_product: F is not a symmetric almost product structure");
  double c = (2.0 * params.sigma - params.p) / 2.0;
  Matrix J1 = c * F + (params.p / 2.0) * I;
  Matrix J2 = -c * F + (params.p / 2.0) * I;
  return {AmbientStructure{m, std::move(J1), params, F},
          AmbientStructure{m, std::move(J2), params, F}};
}

}  // namespace metallic

#include "metallic/split.hpp"

namespace metallic {

SplitParts split_operator(const Matrix& op, const FrameData& frame) {
  const Matrix& Z = frame.tangent;
  const Matrix& nu = frame.normal;
  const Matrix& G = frame.gram;
  SplitParts s;
  s.tangent_tangent = solve_spd(G, Matrix(Z.transpose() * op * Z));
  s.normal_tangent = nu.transpose() * op * Z;
  s.tangent_normal = solve_spd(G, Matrix(Z.transpose() * op * nu));
  s.normal_normal = nu.transpose() * op * nu;
  return s;
}

SplitOperators split_J(const AmbientStructure& ambient, const FrameData& frame) {
  if (ambient.m != frame.ambient_dim())
    throw std::invalid_argument("split_J: ambient dimension mismatch");
  SplitOperators split;
  split.gram = frame.gram;
  split.j = split_operator(ambient.J, frame);
  if (ambient.F) split.product = split_operator(*ambient.F, frame);
  return split;
}

FundamentalResiduals check_fundamental_identities(const SplitOperators& split,
                                                  const MetallicParams& params) {
  const Matrix& T = split.T();
  const Matrix& N = split.N();
  const Matrix& t = split.t();
  const Matrix& n = split.n();
  const double p = params.p, q = params.q;
  const Matrix Ik = Matrix::Identity(T.rows(), T.cols());
  const Matrix In = Matrix::Identity(n.rows(), n.cols());
  FundamentalResiduals r;
  r.t_squared = max_abs(T * T - p * T - q * Ik + t * N);
  r.normal_mix = max_abs(p * N - N * T - n * N);
  r.n_squared = max_abs(n * n - p * n - q * In + N * t);
  r.t_transfer = max_abs(p * t - T * t - t * n);
  return r;
}

ProductRelationResiduals check_product_relations(const SplitOperators& split,
                                                 const MetallicParams& params,
                                                 int sign) {
  if (!split.product)
    throw std::invalid_argument(
        "check_product_relations: split has no almost product part");
  if (sign != 1 && sign != -1)
    throw std::invalid_argument("check_product_relations: sign must be +-1");
  const Matrix& f = split.product->tangent_tangent;
  const Matrix& omega = split.product->normal_tangent;
  const double p = params.p;
  const double c = sign * (2.0 * params.sigma - p) / 2.0;
  const Matrix Ik = Matrix::Identity(f.rows(), f.cols());
  ProductRelationResiduals r;
  r.tangential = max_abs(split.T() - (p / 2.0) * Ik - c * f);
  r.normal = max_abs(split.N() - c * omega);
  r.f_symmetry = max_abs(split.gram * f - f.transpose() * split.gram);
  return r;
}

double reconstruction_residual(const AmbientStructure& ambient,
                               const FrameData& frame,
                               const SplitOperators& split) {
  return max_abs(ambient.J * frame.tangent - frame.tangent * split.T() -
                 frame.normal * split.N());
}

}  // namespace metallic

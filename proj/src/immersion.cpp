#include "metallic/immersion.hpp"

namespace metallic {

bool ImmersionSpec::inside_domain(const Vector& x, double margin) const {
  if (x.size() != chart_dim) return false;
  for (int i = 0; i < chart_dim; ++i) {
    double lo = domain[i][0], hi = domain[i][1];
    if (lo == hi) {
      // Pinned coordinate (constraint locus). A small band around the pin is
      // admitted so derivative probes across the locus stay evaluable.
      if (std::abs(x(i) - lo) > kDomainMargin) return false;
      continue;
    }
    if (x(i) < lo + margin || x(i) > hi - margin) return false;
  }
  return true;
}

Matrix FrameData::tangent_projector() const {
  return tangent * solve_spd(gram, Matrix(tangent.transpose()));
}

FrameData frame_at(const ImmersionSpec& spec, const Vector& x) {
  if (!spec.inside_domain(x))
    throw std::domain_error("frame_at: point outside domain of '" + spec.name +
                            "'");
  const int k = spec.chart_dim;
  const int m = spec.ambient_dim;
  FrameData frame;
  frame.x = x;
  frame.tangent = Matrix(m, k);
  frame.second.assign(k, Matrix(m, k));
  for (int comp = 0; comp < m; ++comp) {
    Jet2 j = jet_eval(*spec.components[comp], x, spec.consts);
    frame.tangent.row(comp) = j.grad.transpose();
    for (int c = 0; c < k; ++c)
      frame.second[c].row(comp) = j.hess.row(c);
  }
  frame.normal = orthonormal_complement(frame.tangent);
  frame.gram = frame.tangent.transpose() * frame.tangent;
  return frame;
}

ImmersionSpec make_spec(std::string name, int chart_dim, int ambient_dim,
                        std::vector<std::string> component_sources,
                        std::vector<std::array<double, 2>> domain,
                        const MetallicParams& params) {
  if (static_cast<int>(component_sources.size()) != ambient_dim)
    throw std::invalid_argument("make_spec: component count != ambient_dim");
  if (static_cast<int>(domain.size()) != chart_dim)
    throw std::invalid_argument("make_spec: domain count != chart_dim");
  ImmersionSpec spec;
  spec.name = std::move(name);
  spec.chart_dim = chart_dim;
  spec.ambient_dim = ambient_dim;
  spec.domain = std::move(domain);
  spec.consts = ConstBindings{double(params.p), double(params.q), params.sigma,
                              params.sigma_bar};
  for (auto& src : component_sources) {
    ExprPtr e = parse_expression(src);
    if (max_variable_index(*e) >= chart_dim)
      throw UnknownVariableError("make_spec: component uses variable beyond chart dimension");
    spec.components.push_back(std::move(e));
  }
  return spec;
}

}  // namespace metallic

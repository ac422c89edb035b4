#pragma once

#include "metallic/warped.hpp"

namespace metallic {

struct UnknownTargetError : std::runtime_error {
  explicit UnknownTargetError(const std::string& what)
      : std::runtime_error(what) {}
};

// A fully wired verification target: immersion, ambient structure, the
// declared pair of distributions and (when the target carries one) the
// warped block-metric attachment.
struct Target {
  std::string name;
  std::string summary;
  ImmersionSpec spec;
  AmbientStructure ambient;
  Matrix d1;  // k x d1 basis, coefficient columns over the Jacobian frame
  Matrix d2;  // k x d2
  std::optional<WarpedSpec> warped;
  std::string note;  // constraint loci, emptiness remarks
};

std::vector<std::string> registry_names();

// Builds a named built-in target for the given structure parameters.
Target registry_get(const std::string& name, const MetallicParams& params);

// Loads a target from an immersion JSON file
//   {name, k, m, p, q, domain:[[lo,hi],...], components:[...],
//    J_pattern:["sigma"|"sigma_bar",...]}.
// p/q from the file are used unless override_params is supplied.
Target load_target_file(const std::string& path,
                        const MetallicParams* override_params = nullptr);

// Resolves either a registry name or a path to a JSON file.
Target resolve_target(const std::string& name_or_path,
                      const MetallicParams& params);

}  // namespace metallic

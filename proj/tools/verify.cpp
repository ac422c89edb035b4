#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "metallic/runner.hpp"

namespace {

// Basis spec "1,0;0,1": semicolon-separated vectors, comma-separated
// coefficients over the chart frame. Vectors become matrix columns.
metallic::Matrix parse_basis(const std::string& text, int k) {
  std::vector<std::vector<double>> cols;
  std::stringstream ss(text);
  std::string vec;
  while (std::getline(ss, vec, ';')) {
    std::vector<double> coeffs;
    std::stringstream vs(vec);
    std::string num;
    while (std::getline(vs, num, ',')) coeffs.push_back(std::stod(num));
    if (static_cast<int>(coeffs.size()) != k)
      throw metallic::ConfigError("basis vector '" + vec + "' must have " +
                                  std::to_string(k) + " coefficients");
    cols.push_back(std::move(coeffs));
  }
  metallic::Matrix b(k, static_cast<int>(cols.size()));
  for (int j = 0; j < b.cols(); ++j)
    for (int i = 0; i < k; ++i) b(i, j) = cols[j][i];
  return b;
}

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

int do_verify(const metallic::RunConfig& config, const std::string& out_path) {
  metallic::Report report = metallic::run(config);
  std::string payload = metallic::emit(report, config.format);
  if (out_path.empty()) {
    std::cout << payload;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw metallic::ConfigError("cannot write '" + out_path + "'");
    out << payload;
  }
  return report.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical verifier for slant-type submanifold identities"};
  app.require_subcommand(1);

  metallic::RunConfig config;
  std::string suites_csv = "fundamental,slant,extrinsic,bislant,warped,theorems";
  std::string out_path;

  CLI::App* verify = app.add_subcommand("verify", "run identity suites");
  verify->add_option("--target", config.target,
                     "registry name or immersion JSON path")->required();
  verify->add_option("-p", config.p, "structure parameter p (positive integer)");
  verify->add_option("-q", config.q, "structure parameter q (positive integer)");
  verify->add_option("--suites", suites_csv, "comma-separated suite subset");
  verify->add_option("--samples", config.samples, "sample point count");
  verify->add_option("--seed", config.seed, "sampler seed");
  verify->add_option("--tol-alg", config.tol.algebraic, "algebraic tolerance");
  verify->add_option("--tol-d1", config.tol.d1, "first-derivative tolerance");
  verify->add_option("--tol-d2", config.tol.d2, "second-derivative tolerance");
  verify->add_option("--format", config.format, "json | csv | text");
  verify->add_option("--out", out_path, "write the report to a file");

  CLI::App* list = app.add_subcommand("list-registry", "list built-in targets");

  CLI::App* classify = app.add_subcommand(
      "classify", "classify a declared distribution pair");
  std::string cl_target, d1_spec, d2_spec;
  int cl_p = 1, cl_q = 1, cl_samples = 25;
  std::uint64_t cl_seed = 1;
  classify->add_option("--target", cl_target, "registry name or JSON path")
      ->required();
  classify->add_option("--d1", d1_spec, "first distribution basis, e.g. 1,0");
  classify->add_option("--d2", d2_spec, "second distribution basis, e.g. 0,1");
  classify->add_option("-p", cl_p, "structure parameter p");
  classify->add_option("-q", cl_q, "structure parameter q");
  classify->add_option("--samples", cl_samples, "sample point count");
  classify->add_option("--seed", cl_seed, "sampler seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (list->parsed()) {
      for (const auto& name : metallic::registry_names()) {
        metallic::Target t =
            metallic::registry_get(name, metallic::make_params(1, 1));
        std::cout << name << "  -  " << t.summary << "\n";
      }
      return 0;
    }
    if (verify->parsed()) {
      config.suites = split_csv(suites_csv);
      return do_verify(config, out_path);
    }
    // classify
    metallic::MetallicParams params = metallic::make_params(cl_p, cl_q);
    metallic::Target target = metallic::resolve_target(cl_target, params);
    if (!d1_spec.empty()) target.d1 = parse_basis(d1_spec, target.spec.chart_dim);
    if (!d2_spec.empty()) target.d2 = parse_basis(d2_spec, target.spec.chart_dim);
    std::vector<metallic::Vector> pts =
        metallic::sample_points(target.spec, cl_samples, cl_seed);
    std::vector<metallic::SlantReport> reports;
    for (const auto& x : pts) {
      metallic::FrameData frame = metallic::frame_at(target.spec, x);
      metallic::SplitOperators split = metallic::split_J(target.ambient, frame);
      metallic::Distribution dist1 =
          metallic::make_distribution(target.d1, split);
      metallic::Distribution dist2 =
          metallic::make_distribution(target.d2, split);
      metallic::SlantReport r =
          metallic::classify_bislant(dist1, dist2, split, params);
      r.point = x;
      reports.push_back(std::move(r));
    }
    metallic::ClassificationSummary summary =
        metallic::summarize_classification(reports);
    std::cout << "target: " << target.name << "\n"
              << "label: " << summary.label << "\n"
              << "theta1 in [" << summary.theta1_min << ", "
              << summary.theta1_max << "]\n"
              << "theta2 in [" << summary.theta2_min << ", "
              << summary.theta2_max << "]\n"
              << "proper: " << (summary.proper ? "yes" : "no") << "\n";
    if (!target.note.empty()) std::cout << "note: " << target.note << "\n";
    return 0;
  } catch (const metallic::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

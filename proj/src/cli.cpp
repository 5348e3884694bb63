#include "nilkl/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "nilkl/catalog.hpp"
#include "nilkl/io.hpp"
#include "nilkl/report.hpp"
#include "nilkl/selftest.hpp"

namespace nilkl::cli {

namespace {

std::map<std::string, double> parse_params(const std::string& spec) {
  std::map<std::string, double> out;
  if (spec.empty()) return out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw ParseError("--params expects k=v pairs separated by commas, got '" + item + "'");
    std::string key = item.substr(0, eq);
    std::string val = item.substr(eq + 1);
    try {
      size_t used = 0;
      double v = std::stod(val, &used);
      if (used != val.size()) throw std::invalid_argument(val);
      out[key] = v;
    } catch (...) {
      throw ParseError("--params value for '" + key + "' is not a number: '" + val + "'");
    }
  }
  return out;
}

void write_output(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << text;
  } else {
    std::ofstream f(out_path);
    if (!f) throw Error("cannot write to " + out_path);
    f << text;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"analysis of left-invariant Hermitian structures via structure constants"};
  app.require_subcommand(1);

  std::string file, family, params_spec, out_path;
  double tol = kDefaultTol;
  uint64_t seed = 0;
  int rn = 0, rr = 0;
  bool as_json = false, quick = false;

  auto* validate_cmd = app.add_subcommand("validate", "check antisymmetry and Jacobi residuals");
  validate_cmd->add_option("file", file)->required();
  validate_cmd->add_option("--tol", tol);
  validate_cmd->add_flag("--json", as_json);

  auto* analyze_cmd = app.add_subcommand("analyze", "full report for one structure");
  analyze_cmd->add_option("file", file)->required();
  analyze_cmd->add_option("--tol", tol);
  analyze_cmd->add_option("--seed", seed);
  analyze_cmd->add_flag("--json", as_json);

  auto* skl_cmd = app.add_subcommand("classify-skl", "Strominger Kaehler-like decision");
  skl_cmd->add_option("file", file)->required();
  skl_cmd->add_option("--tol", tol);
  skl_cmd->add_option("--seed", seed);
  skl_cmd->add_flag("--json", as_json);

  auto* gen_cmd = app.add_subcommand("generate", "emit a catalog family as a structure file");
  gen_cmd->add_option("--family", family)->required();
  gen_cmd->add_option("--params", params_spec);
  gen_cmd->add_option("--out", out_path);

  auto* rand_cmd = app.add_subcommand("random", "emit a seeded two-step random structure");
  rand_cmd->add_option("--n", rn)->required();
  rand_cmd->add_option("--r", rr)->required();
  rand_cmd->add_option("--seed", seed);
  rand_cmd->add_option("--out", out_path);

  auto* selftest_cmd = app.add_subcommand("selftest", "run the acceptance suite");
  selftest_cmd->add_flag("--quick", quick);

  std::vector<const char*> argv;
  argv.push_back("nilkl");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (validate_cmd->parsed()) {
      HermitianLieData data = parse_structure_file(file);
      ValidationReport rep = validate(data, tol);
      if (as_json) {
        out << "{\n  \"antisymmetry_ok\": " << (rep.antisymmetry_ok ? "true" : "false")
            << ",\n  \"jacobi_residual\": " << rep.jacobi_residual
            << ",\n  \"real_jacobi_residual\": " << rep.real_jacobi_residual
            << ",\n  \"valid\": " << (rep.valid ? "true" : "false") << "\n}\n";
      } else {
        out << "antisymmetry: " << (rep.antisymmetry_ok ? "ok" : "BROKEN")
            << "\njacobi residual: " << rep.jacobi_residual << " [" << rep.jacobi_breakdown[0]
            << ", " << rep.jacobi_breakdown[1] << ", " << rep.jacobi_breakdown[2] << "]"
            << "\nreal jacobi residual: " << rep.real_jacobi_residual << "\nvalid: "
            << (rep.valid ? "yes" : "no") << "\n";
      }
      return rep.valid ? 0 : 1;
    }

    if (analyze_cmd->parsed()) {
      HermitianLieData data = parse_structure_file(file);
      AnalysisReport rep = analyze(data, tol, seed);
      out << (as_json ? report_to_json(rep) : report_to_text(rep));
      return 0;
    }

    if (skl_cmd->parsed()) {
      HermitianLieData data = parse_structure_file(file);
      KLDecision dec = classify_skl(data, tol, seed);
      if (as_json) {
        out << decision_to_json_string(dec);
      } else {
        out << "skl: " << (dec.verdict ? "yes" : "no") << " (stage: " << dec.stage << ")\n";
        if (dec.normal_form) {
          out << "r = " << dec.normal_form->r << ", s = " << dec.normal_form->s << ", lambdas =";
          for (double l : dec.normal_form->lambdas) out << " " << l;
          out << "\n";
        }
        for (const auto& [k, v] : dec.residuals) out << "  " << k << ": " << v << "\n";
      }
      return dec.verdict ? 0 : 1;
    }

    if (gen_cmd->parsed()) {
      HermitianLieData data = build_family(family, parse_params(params_spec));
      write_output(structure_to_json(data), out_path, out);
      return 0;
    }

    if (rand_cmd->parsed()) {
      HermitianLieData data = random_two_step(rn, rr, seed);
      write_output(structure_to_json(data), out_path, out);
      return 0;
    }

    if (selftest_cmd->parsed()) {
      return selftest::run_acceptance(out, quick) ? 0 : 1;
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "no subcommand\n";
  return 2;
}

}  // namespace nilkl::cli

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nilkl/classify.hpp"

// Complete analysis of one structure: validity, algebra invariants, metric
// form residuals, per-connection curvature data, and the three Kaehler-like
// decisions. The JSON rendering is deterministic for a given (input, tol,
// seed) triple; every boolean equals (its scaled residual < tol).

namespace nilkl {

struct ConnectionBlock {
  std::string kind;
  double curvature_norm = 0.0;
  double curvature_norm_scaled = 0.0;
  double kl_sym = 0.0;      // scaled
  double kl_jinv = 0.0;     // scaled
  double kl_sym_raw = 0.0;
  double kl_jinv_raw = 0.0;
  bool kahler_like = false;
  bool flat = false;
};

struct AnalysisReport {
  std::string digest;
  int n = 0;
  std::string label;
  double tol = kDefaultTol;
  uint64_t seed = 0;

  ValidationReport validity;

  LowerCentralSeries series;
  NilpotentJSeries jseries;
  double abelian_J_residual = 0.0;  // scaled
  bool abelian_J = false;

  MetricResiduals metric_raw;
  MetricResiduals metric_scaled;
  bool kahler = false, pluriclosed = false, balanced = false;
  double torsion_norm = 0.0, torsion_norm_scaled = 0.0;

  std::vector<ConnectionBlock> connections;  // riemannian, chern, strominger, gauduchon0

  bool skl_decided = false;  // false when the algebra is not nilpotent
  std::optional<KLDecision> skl;
  KLDecision ckl;
  KLDecision rkl;
};

AnalysisReport analyze(const HermitianLieData& data, double tol = kDefaultTol, uint64_t seed = 0);

std::string report_to_json(const AnalysisReport& rep);
std::string report_to_text(const AnalysisReport& rep);
std::string decision_to_json_string(const KLDecision& dec);

}  // namespace nilkl

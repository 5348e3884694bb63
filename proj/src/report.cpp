#include "nilkl/report.hpp"

#include <json.hpp>
#include <sstream>

#include "nilkl/io.hpp"

namespace nilkl {

namespace {

using ojson = nlohmann::ordered_json;

ojson complex_entry(cplx z) { return ojson::array({z.real(), z.imag()}); }

ojson matrix_to_json(const Eigen::MatrixXcd& M) {
  ojson rows = ojson::array();
  for (int i = 0; i < M.rows(); ++i) {
    ojson row = ojson::array();
    for (int j = 0; j < M.cols(); ++j) row.push_back(complex_entry(M(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ojson decision_to_json(const KLDecision& dec) {
  ojson j;
  j["verdict"] = dec.verdict;
  j["stage"] = dec.stage;
  ojson res;
  for (const auto& [k, v] : dec.residuals) res[k] = v;
  j["residuals"] = std::move(res);
  ojson ext;
  for (const auto& [k, v] : dec.extras) ext[k] = v;
  j["extras"] = std::move(ext);
  if (!dec.warning.empty()) j["warning"] = dec.warning;
  if (dec.normal_form) {
    const auto& nf = *dec.normal_form;
    ojson nj;
    nj["r"] = nf.r;
    nj["s"] = nf.s;
    nj["lambdas"] = nf.lambdas;
    nj["Y"] = matrix_to_json(nf.Y);
    ojson xs = ojson::array();
    for (const auto& x : nf.X) {
      ojson row = ojson::array();
      for (int t = 0; t < x.size(); ++t) row.push_back(x(t));
      xs.push_back(std::move(row));
    }
    nj["X"] = std::move(xs);
    nj["U"] = matrix_to_json(nf.U);
    j["normal_form"] = std::move(nj);
  } else {
    j["normal_form"] = nullptr;
  }
  return j;
}

}  // namespace

AnalysisReport analyze(const HermitianLieData& data, double tol, uint64_t seed) {
  AnalysisReport rep;
  rep.digest = structure_digest(data);
  rep.n = data.n;
  rep.label = data.label;
  rep.tol = tol;
  rep.seed = seed;

  rep.validity = validate(data, tol);
  if (!rep.validity.valid) throw InvalidStructure("analyze: structure fails validation");

  rep.series = lower_central_series(data);
  rep.jseries = is_nilpotent_J(data);
  rep.abelian_J_residual = scale_normalized(data.C.max_abs(), data);
  rep.abelian_J = rep.abelian_J_residual < tol;

  rep.metric_raw = metric_form_residuals(data);
  rep.metric_scaled.kahler = scale_normalized(rep.metric_raw.kahler, data);
  rep.metric_scaled.pluriclosed = scale_normalized(rep.metric_raw.pluriclosed, data);
  rep.metric_scaled.balanced = scale_normalized(rep.metric_raw.balanced, data);
  rep.kahler = rep.metric_scaled.kahler < tol;
  rep.pluriclosed = rep.metric_scaled.pluriclosed < tol;
  rep.balanced = rep.metric_scaled.balanced < tol;
  rep.torsion_norm = chern_torsion(data).max_abs();
  rep.torsion_norm_scaled = scale_normalized(rep.torsion_norm, data);

  RealLieData rd = realify(data);
  for (auto kind : {ConnectionKind::riemannian, ConnectionKind::chern, ConnectionKind::strominger,
                    ConnectionKind::gauduchon0}) {
    ConnectionBlock blk;
    blk.kind = kind_name(kind);
    CurvatureTensor R = curvature(connection(data, kind), rd);
    KLResidual klr = kl_residual(R, rd.J);
    blk.curvature_norm = R.R.max_abs();
    blk.curvature_norm_scaled = scale_normalized(blk.curvature_norm, data);
    blk.kl_sym_raw = klr.sym;
    blk.kl_jinv_raw = klr.jinv;
    blk.kl_sym = scale_normalized(klr.sym, data);
    blk.kl_jinv = scale_normalized(klr.jinv, data);
    blk.kahler_like = blk.kl_sym < tol && blk.kl_jinv < tol;
    blk.flat = blk.curvature_norm_scaled < tol;
    rep.connections.push_back(std::move(blk));
  }

  rep.skl_decided = rep.series.nilpotent;
  if (rep.skl_decided) rep.skl = classify_skl(data, tol, seed);
  rep.ckl = classify_ckl(data, tol);
  rep.rkl = classify_rkl(data, tol);
  return rep;
}

std::string decision_to_json_string(const KLDecision& dec) { return decision_to_json(dec).dump(2) + "\n"; }

std::string report_to_json(const AnalysisReport& rep) {
  ojson j;
  j["schema"] = "nilkl/1";
  j["input"] = {{"n", rep.n}, {"label", rep.label}, {"digest", rep.digest}};
  j["tol"] = rep.tol;
  j["seed"] = rep.seed;

  j["validity"] = {{"antisymmetry_ok", rep.validity.antisymmetry_ok},
                   {"jacobi_residual", rep.validity.jacobi_residual},
                   {"jacobi_breakdown", rep.validity.jacobi_breakdown},
                   {"real_jacobi_residual", rep.validity.real_jacobi_residual},
                   {"valid", rep.validity.valid}};

  j["algebra"] = {{"nilpotent", rep.series.nilpotent},
                  {"step", rep.series.step},
                  {"series_dims", rep.series.dims},
                  {"nilpotent_J", rep.jseries.nilpotent},
                  {"nilpotent_J_dims", rep.jseries.dims},
                  {"abelian_J", rep.abelian_J},
                  {"abelian_J_residual", rep.abelian_J_residual}};

  j["metric"] = {{"kahler_residual", rep.metric_scaled.kahler},
                 {"kahler_residual_raw", rep.metric_raw.kahler},
                 {"kahler", rep.kahler},
                 {"pluriclosed_residual", rep.metric_scaled.pluriclosed},
                 {"pluriclosed_residual_raw", rep.metric_raw.pluriclosed},
                 {"pluriclosed", rep.pluriclosed},
                 {"balanced_residual", rep.metric_scaled.balanced},
                 {"balanced_residual_raw", rep.metric_raw.balanced},
                 {"balanced", rep.balanced},
                 {"torsion_norm", rep.torsion_norm_scaled},
                 {"torsion_norm_raw", rep.torsion_norm}};

  ojson conns;
  for (const auto& blk : rep.connections) {
    conns[blk.kind] = {{"curvature_norm", blk.curvature_norm_scaled},
                       {"curvature_norm_raw", blk.curvature_norm},
                       {"kl_sym_residual", blk.kl_sym},
                       {"kl_sym_residual_raw", blk.kl_sym_raw},
                       {"kl_jinv_residual", blk.kl_jinv},
                       {"kl_jinv_residual_raw", blk.kl_jinv_raw},
                       {"kahler_like", blk.kahler_like},
                       {"flat", blk.flat}};
  }
  j["connections"] = std::move(conns);

  if (rep.skl_decided) {
    j["skl"] = decision_to_json(*rep.skl);
    j["skl"]["status"] = "decided";
  } else {
    j["skl"] = {{"status", "not-nilpotent"}};
  }
  j["ckl"] = decision_to_json(rep.ckl);
  j["rkl"] = decision_to_json(rep.rkl);
  return j.dump(2) + "\n";
}

std::string report_to_text(const AnalysisReport& rep) {
  std::ostringstream os;
  auto yn = [](bool b) { return b ? "yes" : "no"; };
  os << "structure: n = " << rep.n;
  if (!rep.label.empty()) os << "  label = " << rep.label;
  os << "  digest = " << rep.digest << "\n";
  os << "tolerance: " << rep.tol << "\n\n";

  os << "validity     antisymmetry " << yn(rep.validity.antisymmetry_ok) << ", jacobi residual "
     << rep.validity.jacobi_residual << " (real " << rep.validity.real_jacobi_residual
     << ") -> " << (rep.validity.valid ? "valid" : "INVALID") << "\n";
  os << "algebra      nilpotent " << yn(rep.series.nilpotent);
  if (rep.series.nilpotent) os << " (step " << rep.series.step << ")";
  os << ", series dims [";
  for (size_t t = 0; t < rep.series.dims.size(); ++t)
    os << (t ? " " : "") << rep.series.dims[t];
  os << "], nilpotent J " << yn(rep.jseries.nilpotent) << ", abelian J " << yn(rep.abelian_J)
     << "\n";
  os << "metric       kahler " << yn(rep.kahler) << " (" << rep.metric_scaled.kahler
     << "), pluriclosed " << yn(rep.pluriclosed) << " (" << rep.metric_scaled.pluriclosed
     << "), balanced " << yn(rep.balanced) << " (" << rep.metric_scaled.balanced
     << "), torsion norm " << rep.torsion_norm << "\n\n";

  os << "connection   curvature-norm   kl-sym       kl-jinv      kahler-like  flat\n";
  for (const auto& blk : rep.connections) {
    char buf[160];
    snprintf(buf, sizeof buf, "%-12s %-16.3e %-12.3e %-12.3e %-12s %s\n", blk.kind.c_str(),
             blk.curvature_norm_scaled, blk.kl_sym, blk.kl_jinv, yn(blk.kahler_like),
             yn(blk.flat));
    os << buf;
  }
  os << "\n";

  if (rep.skl_decided) {
    const auto& s = *rep.skl;
    os << "skl          " << yn(s.verdict) << " (stage: " << s.stage << ")";
    if (s.normal_form) {
      os << "  r = " << s.normal_form->r << ", s = " << s.normal_form->s << ", lambdas = [";
      for (size_t t = 0; t < s.normal_form->lambdas.size(); ++t)
        os << (t ? " " : "") << s.normal_form->lambdas[t];
      os << "]";
    }
    os << "\n";
  } else {
    os << "skl          not decided: the Lie algebra is not nilpotent\n";
  }
  os << "ckl          " << yn(rep.ckl.verdict) << " (stage: " << rep.ckl.stage
     << ", chern flat residual " << rep.ckl.extras.at("chern_flat") << ")\n";
  os << "rkl          " << yn(rep.rkl.verdict) << " (stage: " << rep.rkl.stage
     << ", theta2 residual " << rep.rkl.extras.at("theta2") << ")\n";
  return os.str();
}

}  // namespace nilkl

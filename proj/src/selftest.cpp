#include "nilkl/selftest.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "nilkl/catalog.hpp"
#include "nilkl/classify.hpp"
#include "nilkl/cli.hpp"
#include "nilkl/io.hpp"
#include "nilkl/report.hpp"

namespace nilkl::selftest {

namespace {

constexpr double kTol = 1e-8;
constexpr double kBandLo = 1e-10;
constexpr double kBandHi = 1e-6;

const cplx kI(0.0, 1.0);

std::string fmt(const char* f, double v) {
  char buf[64];
  snprintf(buf, sizeof buf, f, v);
  return buf;
}

// ---- family draw machinery -------------------------------------------------

struct FamilySpec {
  std::string name;
  int expected_r = 0;
  int expected_s = 0;
  std::vector<std::string> lambda_params;  // drawn from [0.1, 10]
  std::vector<std::string> real_params;    // drawn from [-5, 5], |v| >= 0.1
};

std::vector<FamilySpec> family_specs() {
  return {
      {"cor12_n2", 1, 1, {"lambda"}, {}},
      {"cor12_n3", 2, 2, {"lambda"}, {"a"}},
      {"cor12_n4a", 3, 2, {"lambda"}, {"a"}},
      {"cor12_n4b", 2, 2, {"lambda1", "lambda2"}, {"a"}},
      {"cor12_n5a", 4, 2, {"lambda"}, {"a"}},
      {"cor12_n5b", 3, 3, {"lambda1", "lambda2"}, {"a", "b", "c"}},
      {"cor12_n6a", 5, 2, {"lambda"}, {"a"}},
      {"cor12_n6b", 4, 4, {"lambda1", "lambda2"}, {"a", "b", "c", "x"}},
      {"cor12_n6c", 3, 3, {"lambda1", "lambda2", "lambda3"}, {"a", "b", "c"}},
  };
}


uint64_t name_seed(const std::string& name) {  // FNV-1a, platform independent
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : name) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

double draw_real(Rng& rng) {  // [-5,5] bounded away from zero
  for (;;) {
    double v = rng.uniform(-5.0, 5.0);
    if (std::abs(v) >= 0.1) return v;
  }
}

std::map<std::string, double> draw_params(const FamilySpec& spec, Rng& rng) {
  for (;;) {
    std::map<std::string, double> p;
    for (const auto& k : spec.lambda_params) p[k] = rng.uniform(0.1, 10.0);
    for (const auto& k : spec.real_params) p[k] = draw_real(rng);
    if (spec.name == "cor12_n6b") {
      // the derived y must itself land in the draw range
      double l2 = p["lambda2"];
      double y = -p["b"] * p["c"] * (l2 * l2 + p["a"] * p["a"]) / (l2 * l2 * p["x"]);
      if (std::abs(y) < 0.1 || std::abs(y) > 5.0) continue;
      p["y"] = y;
    }
    return p;
  }
}

// declared d phi tables of a built family, for the forms-engine cross-check
bool dphi_matches_engine(const HermitianLieData& data, double tol, double* worst) {
  CoframeDifferentials cd = to_coframe(data);
  double dev = 0.0;
  for (int j = 1; j <= data.n; ++j) {
    InvariantForm expect(data.n);
    for (const auto& t : cd.hol[j - 1])
      expect += wedge(phi(data.n, t.i), phi(data.n, t.k)) * t.coeff;
    for (const auto& t : cd.mixed[j - 1])
      expect += wedge(phi(data.n, t.i), phi_bar(data.n, t.k)) * t.coeff;
    dev = std::max(dev, (d_operator(phi(data.n, j), data) - expect).norm_inf());
  }
  if (worst) *worst = std::max(*worst, dev);
  return dev < tol;
}

// ---- population records for the sweeps --------------------------------------

struct SweepRecord {
  std::string name;
  // scaled decision residuals
  double d_norm = 0.0, ckl_td = 0.0;
  double chern_sym = 0.0, chern_jinv = 0.0, chern_curv = 0.0;
  double riem_sym = 0.0, riem_jinv = 0.0;
  double strom_sym = 0.0, strom_jinv = 0.0;
  double bracket = 0.0, pluriclosed = 0.0, nabla_s = 0.0, theta2 = 0.0;
  double rkl_nec = 0.0;  // worst of the three necessary-identity residuals
  // raw invariants
  double antisym_raw = 0.0;  // worst pair antisymmetry over all four kinds
  double d8_raw = 0.0;       // |expansion - 2 x direct| for the Chern derivative
  bool nilpotent_J = false;
  // exact-zero bookkeeping for the complex Lie group case
  double ckl_td_raw = 0.0, chern_curv_raw = 0.0, d_norm_raw = 0.0;
};

SweepRecord make_record(const std::string& name, const HermitianLieData& data) {
  SweepRecord rec;
  rec.name = name;
  auto sc = [&](double raw) { return scale_normalized(raw, data); };

  RealLieData rd = realify(data);
  rec.bracket = sc(rd.bracket.max_abs());
  rec.d_norm_raw = data.D.max_abs();
  rec.d_norm = sc(rec.d_norm_raw);
  rec.nilpotent_J = is_nilpotent_J(data).nilpotent;

  TorsionDerivatives tdc = torsion_covariant_derivative(data, ConnectionKind::chern);
  rec.ckl_td_raw = tdc.anti.max_abs();
  rec.ckl_td = sc(rec.ckl_td_raw);
  TorsionDerivatives tds = torsion_covariant_derivative(data, ConnectionKind::strominger);
  rec.nabla_s = sc(std::max(tds.holo.max_abs(), tds.anti.max_abs()));

  rec.pluriclosed = sc(metric_form_residuals(data).pluriclosed);
  rec.theta2 = sc(theta2_residual(data));
  RKLResiduals nec = rkl_necessary_residuals(data);
  rec.rkl_nec = sc(std::max({nec.lemma_first, nec.lemma_second, nec.tcbar}));

  CTensor4 expansion = chern_anti_derivative_expansion(data);
  for (int j = 1; j <= data.n; ++j)
    for (int i = 1; i <= data.n; ++i)
      for (int k = 1; k <= data.n; ++k)
        for (int l = 1; l <= data.n; ++l)
          rec.d8_raw = std::max(rec.d8_raw, std::abs(expansion.at(j, i, k, l) -
                                                     2.0 * tdc.anti.at(j, i, k, l)));

  const int m = rd.dim;
  for (auto kind : {ConnectionKind::riemannian, ConnectionKind::chern, ConnectionKind::strominger,
                    ConnectionKind::gauduchon0}) {
    CurvatureTensor R = curvature(connection(data, kind), rd);
    for (int a = 1; a <= m; ++a)
      for (int b = a; b <= m; ++b)
        for (int c = 1; c <= m; ++c)
          for (int d = c; d <= m; ++d) {
            rec.antisym_raw =
                std::max(rec.antisym_raw, std::abs(R.R.at(a, b, c, d) + R.R.at(b, a, c, d)));
            rec.antisym_raw =
                std::max(rec.antisym_raw, std::abs(R.R.at(a, b, c, d) + R.R.at(a, b, d, c)));
          }
    KLResidual klr = kl_residual(R, rd.J);
    if (kind == ConnectionKind::chern) {
      rec.chern_sym = sc(klr.sym);
      rec.chern_jinv = sc(klr.jinv);
      rec.chern_curv_raw = R.R.max_abs();
      rec.chern_curv = sc(rec.chern_curv_raw);
    } else if (kind == ConnectionKind::riemannian) {
      rec.riem_sym = sc(klr.sym);
      rec.riem_jinv = sc(klr.jinv);
    } else if (kind == ConnectionKind::strominger) {
      rec.strom_sym = sc(klr.sym);
      rec.strom_jinv = sc(klr.jinv);
    }
  }
  return rec;
}

std::vector<std::pair<std::string, HermitianLieData>> catalog_population() {
  std::vector<std::pair<std::string, HermitianLieData>> out;
  for (int n = 1; n <= 6; ++n) out.emplace_back("abelian(" + std::to_string(n) + ")", abelian(n));
  for (double l : {0.5, 1.0, 2.0}) out.emplace_back("kodaira(" + fmt("%g", l) + ")", kodaira(l));
  out.emplace_back("iwasawa", iwasawa());
  out.emplace_back("cor12_n3", build_family("cor12_n3", {{"lambda", 1.0}, {"a", 1.0}}));
  out.emplace_back("cor12_n4a", build_family("cor12_n4a", {{"lambda", 2.0}, {"a", -0.5}}));
  out.emplace_back("cor12_n4b",
                   build_family("cor12_n4b", {{"lambda1", 1.0}, {"a", 1.5}, {"lambda2", 0.7}}));
  out.emplace_back("cor12_n5a", build_family("cor12_n5a", {{"lambda", 0.9}, {"a", 2.0}}));
  out.emplace_back(
      "cor12_n5b",
      build_family("cor12_n5b",
                   {{"lambda1", 1.2}, {"a", 0.8}, {"b", -1.0}, {"lambda2", 0.6}, {"c", 1.1}}));
  out.emplace_back("cor12_n6a", build_family("cor12_n6a", {{"lambda", 3.0}, {"a", 1.0}}));
  out.emplace_back("cor12_n6b", build_family("cor12_n6b", {{"lambda1", 1.0},
                                                           {"a", 1.0},
                                                           {"b", 1.0},
                                                           {"c", 1.0},
                                                           {"lambda2", 1.0},
                                                           {"x", 1.0}}));
  out.emplace_back("cor12_n6c", build_family("cor12_n6c", {{"lambda1", 1.0},
                                                           {"a", -1.0},
                                                           {"b", 0.5},
                                                           {"lambda2", 2.0},
                                                           {"c", 0.4},
                                                           {"lambda3", 1.5}}));
  return out;
}

std::vector<std::pair<std::string, HermitianLieData>> random_population(int per_cell) {
  std::vector<std::pair<std::string, HermitianLieData>> out;
  for (int n = 2; n <= 5; ++n)
    for (int r = 1; r <= n; ++r)
      for (int variant = 0; variant < 3; ++variant)
        for (int s = 0; s < per_cell; ++s) {
          uint64_t seed = 1000003ULL * n + 10007ULL * r + 101ULL * variant + s;
          HermitianLieData d = random_two_step(n, r, seed);
          const char* vn = "mixed";
          if (variant == 1) {  // complex Lie group shape: brackets of (1,0)s only
            for (auto& z : d.D.raw()) z = 0.0;
            vn = "c-only";
          } else if (variant == 2) {
            for (auto& z : d.C.raw()) z = 0.0;
            vn = "d-only";
          }
          out.emplace_back("rts(n=" + std::to_string(n) + ",r=" + std::to_string(r) + "," + vn +
                               ",s=" + std::to_string(s) + ")",
                           d);
        }
  return out;
}

bool in_band(double v) { return v >= kBandLo && v <= kBandHi; }

// ---- criteria ----------------------------------------------------------------

CriterionResult criterion1(bool quick) {
  CriterionResult res{1, "normal-form family positive suite", true, ""};
  const int draws = quick ? 4 : 20;
  int count = 0;
  double worst = 0.0, worst_dphi = 0.0;
  for (const auto& spec : family_specs()) {
    Rng rng(0xC0FFEEULL ^ name_seed(spec.name));
    for (int t = 0; t < draws; ++t) {
      auto params = draw_params(spec, rng);
      HermitianLieData d = build_family(spec.name, params);
      if (!dphi_matches_engine(d, 1e-12, &worst_dphi)) {
        res.pass = false;
        res.detail = spec.name + ": coframe table does not match the forms engine";
        return res;
      }
      KLDecision dec = classify_skl(d, kTol);
      MetricResiduals mr = metric_form_residuals(d);
      TorsionDerivatives td = torsion_covariant_derivative(d, ConnectionKind::strominger);
      RealLieData rd = realify(d);
      KLResidual klr = kl_residual(curvature(connection(d, ConnectionKind::strominger), rd), rd.J);
      double raws = std::max({mr.pluriclosed, td.holo.max_abs(), td.anti.max_abs(), klr.sym,
                              klr.jinv});
      worst = std::max(worst, raws);
      bool ok = dec.verdict && dec.normal_form && dec.normal_form->r == spec.expected_r &&
                dec.normal_form->s == spec.expected_s && raws < 1e-8;
      if (!ok) {
        res.pass = false;
        std::ostringstream os;
        os << spec.name << " draw " << t << ": verdict " << dec.verdict;
        if (dec.normal_form)
          os << " (r,s) = (" << dec.normal_form->r << "," << dec.normal_form->s << ") expected ("
             << spec.expected_r << "," << spec.expected_s << ")";
        os << " residual " << raws;
        res.detail = os.str();
        return res;
      }
      ++count;
    }
  }
  res.detail = std::to_string(count) + " draws over " +
               std::to_string(family_specs().size()) + " families, worst residual " +
               fmt("%.2e", worst) + ", dphi check " + fmt("%.2e", worst_dphi);
  return res;
}

CriterionResult criterion2(bool) {
  CriterionResult res{2, "deleted compensating terms fail pluriclosed", true, ""};
  // shapes with the compensating term(s) removed, a = b = c = lambda's = 1
  struct Case {
    std::string name;
    CoframeDifferentials cd;
  };
  std::vector<Case> cases;
  {
    CoframeDifferentials cd(5);  // n5b without -ab/lambda2
    cd.add_mixed(4, 1, 1, 1.0);
    cd.add_mixed(4, 2, 2, kI);
    cd.add_mixed(4, 3, 3, kI);
    cd.add_mixed(5, 2, 2, 1.0);
    cd.add_mixed(5, 3, 3, kI);  // just i*c
    cases.push_back({"n5b", cd});
  }
  {
    CoframeDifferentials cd(6);  // n6b without -ab/lambda2 and -ac/lambda2
    cd.add_mixed(5, 1, 1, 1.0);
    cd.add_mixed(5, 2, 2, kI);
    cd.add_mixed(5, 3, 3, kI);
    cd.add_mixed(5, 4, 4, kI);
    cd.add_mixed(6, 2, 2, 1.0);
    // x = y = 0 so the deleted terms leave nothing behind
    cases.push_back({"n6b", cd});
  }
  {
    CoframeDifferentials cd(6);  // n6c without -ab/lambda2
    cd.add_mixed(4, 1, 1, 1.0);
    cd.add_mixed(4, 2, 2, kI);
    cd.add_mixed(4, 3, 3, kI);
    cd.add_mixed(5, 2, 2, 1.0);
    cd.add_mixed(5, 3, 3, kI);
    cd.add_mixed(6, 3, 3, 1.0);
    cases.push_back({"n6c", cd});
  }

  std::ostringstream detail;
  for (auto& c : cases) {
    HermitianLieData d = from_coframe(c.cd);
    KLDecision dec = classify_skl(d, kTol);
    // raw residual by the row-pairing formula: rows of Y from the tables
    int n = d.n;
    int r = (n == 5) ? 3 : ((c.name == "n6b") ? 4 : 3);
    Eigen::MatrixXcd Y = Eigen::MatrixXcd::Zero(r, n - r);
    for (int alpha = r + 1; alpha <= n; ++alpha)
      for (int i = 1; i <= r; ++i) Y(i - 1, alpha - r - 1) = -std::conj(d.D.at(i, alpha, i));
    double oracle = 0.0;
    for (int i = 0; i < r; ++i)
      for (int k = i + 1; k < r; ++k) {
        cplx s = 0.0;
        for (int a = 0; a < n - r; ++a)
          s += Y(i, a) * std::conj(Y(k, a)) + Y(k, a) * std::conj(Y(i, a));
        oracle = std::max(oracle, std::abs(s));
      }
    double engine = metric_form_residuals(d).pluriclosed;
    bool ok = !dec.verdict && dec.stage == "pluriclosed" &&
              dec.residuals.at("pluriclosed") >= 0.5 && std::abs(oracle - 2.0) < 1e-12 &&
              std::abs(engine - oracle) < 1e-12;
    if (!ok) {
      res.pass = false;
      res.detail = c.name + ": stage " + dec.stage + " normalized " +
                   fmt("%.3g", dec.residuals.at("pluriclosed")) + " oracle " +
                   fmt("%.3g", oracle) + " engine " + fmt("%.3g", engine);
      return res;
    }
    detail << c.name << " normalized " << fmt("%.3g", dec.residuals.at("pluriclosed"))
           << " raw 2.0; ";
  }
  res.detail = detail.str();
  return res;
}

CriterionResult criterion3(const std::vector<SweepRecord>& recs, size_t random_count) {
  CriterionResult res{3, "Chern equivalences: torsion derivative, flatness, D = 0", true, ""};
  int agree = 0;
  for (const auto& r : recs) {
    bool a = r.ckl_td < kTol, b = r.chern_curv < kTol, c = r.d_norm < kTol;
    if (a != b || b != c) {
      res.pass = false;
      res.detail = r.name + ": td " + fmt("%.2e", r.ckl_td) + " curv " +
                   fmt("%.2e", r.chern_curv) + " dnorm " + fmt("%.2e", r.d_norm);
      return res;
    }
    ++agree;
  }
  SweepRecord iw = make_record("iwasawa", iwasawa());
  if (iw.ckl_td_raw != 0.0 || iw.chern_curv_raw != 0.0 || iw.d_norm_raw != 0.0) {
    res.pass = false;
    res.detail = "iwasawa not exactly zero";
    return res;
  }
  res.detail = std::to_string(agree) + " structures (incl. " + std::to_string(random_count) +
               " random) in three-way agreement; iwasawa exactly 0";
  return res;
}

CriterionResult criterion4(const std::vector<SweepRecord>& recs) {
  CriterionResult res{4, "Riemannian Kaehler-like iff abelian (nilpotent J)", true, ""};
  int checked = 0;
  for (const auto& r : recs) {
    if (!r.nilpotent_J) continue;
    bool kl = r.riem_sym < kTol && r.riem_jinv < kTol;
    bool ab = r.bracket < kTol;
    if (kl != ab) {
      res.pass = false;
      res.detail = r.name + ": kl(" + fmt("%.2e", r.riem_sym) + "," + fmt("%.2e", r.riem_jinv) +
                   ") brackets " + fmt("%.2e", r.bracket);
      return res;
    }
    ++checked;
  }
  res.detail = std::to_string(checked) + " structures in agreement";
  return res;
}

CriterionResult criterion5(const std::vector<SweepRecord>& recs) {
  CriterionResult res{5, "curvature decisions match the torsion-side criteria", true, ""};
  int excluded = 0, checked = 0;
  for (const auto& r : recs) {
    std::vector<double> involved = {r.strom_sym, r.strom_jinv, r.pluriclosed, r.nabla_s,
                                    r.chern_sym, r.chern_jinv, r.ckl_td,     r.riem_sym,
                                    r.riem_jinv, r.theta2};
    bool banded = false;
    for (double v : involved) banded |= in_band(v);
    if (banded) {
      ++excluded;
      continue;
    }
    bool skl_curv = r.strom_sym < kTol && r.strom_jinv < kTol;
    bool skl_crit = r.pluriclosed < kTol && r.nabla_s < kTol;
    bool ckl_curv = r.chern_sym < kTol && r.chern_jinv < kTol;
    bool ckl_crit = r.ckl_td < kTol;
    bool rkl_curv = r.riem_sym < kTol && r.riem_jinv < kTol;
    bool rkl_crit = r.theta2 < kTol;
    if (rkl_curv && r.rkl_nec >= kTol) {
      res.pass = false;
      res.detail = r.name + ": Riemannian Kaehler-like but necessary identities fail (" +
                   fmt("%.2e", r.rkl_nec) + ")";
      return res;
    }
    if (skl_curv != skl_crit || ckl_curv != ckl_crit || rkl_curv != rkl_crit) {
      res.pass = false;
      res.detail = r.name + ": skl " + std::to_string(skl_curv) + "/" + std::to_string(skl_crit) +
                   " ckl " + std::to_string(ckl_curv) + "/" + std::to_string(ckl_crit) + " rkl " +
                   std::to_string(rkl_curv) + "/" + std::to_string(rkl_crit);
      return res;
    }
    ++checked;
  }
  res.pass = res.pass && excluded == 0;
  res.detail = std::to_string(checked) + " structures, zero disagreements, " +
               std::to_string(excluded) + " in the rejection band";
  return res;
}

CriterionResult criterion6(bool) {
  CriterionResult res{6, "abelian structures are flat and Kaehler-like for all connections", true,
                      ""};
  double worst = 0.0;
  for (int n = 1; n <= 6; ++n) {
    HermitianLieData d = abelian(n);
    RealLieData rd = realify(d);
    for (auto kind : {ConnectionKind::riemannian, ConnectionKind::chern,
                      ConnectionKind::strominger, ConnectionKind::gauduchon0}) {
      CurvatureTensor R = curvature(connection(d, kind), rd);
      worst = std::max(worst, R.R.max_abs());
    }
    bool ok = classify_skl(d, kTol).verdict && classify_ckl(d, kTol).verdict &&
              classify_rkl(d, kTol).verdict;
    if (!ok || worst > 1e-12) {
      res.pass = false;
      res.detail = "abelian(" + std::to_string(n) + ")";
      return res;
    }
  }
  res.detail = "n = 1..6, four curvature tensors zero to " + fmt("%.1e", worst) +
               ", three verdicts yes";
  return res;
}

CriterionResult criterion7(bool quick) {
  CriterionResult res{7, "forms engine: d^2 = 0 and the pluriclosed pairing formula", true, ""};
  const int structures = quick ? 20 : 100;
  double worst_dd = 0.0;
  Rng mix(0xF0F0ULL);
  int done = 0;
  while (done < structures) {
    int n = 2 + static_cast<int>(mix.next() % 4);  // 2..5
    int r = 1 + static_cast<int>(mix.next() % n);
    HermitianLieData d = random_two_step(n, r, mix.next());
    for (uint32_t h = 0; h < (1u << n); ++h)
      for (uint32_t b = 0; b < (1u << n); ++b) {
        InvariantForm mono(n);
        mono.add(h, b, 1.0);
        worst_dd = std::max(worst_dd, d_operator(d_operator(mono, d), d).norm_inf());
      }
    ++done;
  }
  if (worst_dd >= 1e-12) {
    res.pass = false;
    res.detail = "d^2 residual " + fmt("%.2e", worst_dd);
    return res;
  }

  // engine vs row-pairing formula on diagonal-shape structures
  double worst_pair = 0.0;
  Rng rng(0xABCDULL);
  for (int t = 0; t < 40; ++t) {
    int n = 3 + static_cast<int>(rng.next() % 3);  // 3..5
    int r = std::max(1, n - 1 - static_cast<int>(rng.next() % 2));
    Eigen::MatrixXcd Y(r, n - r);
    for (int i = 0; i < r; ++i)
      for (int a = 0; a < n - r; ++a) Y(i, a) = rng.cbox();
    HermitianLieData d = from_normal_form(n, r, Y);
    InvariantForm pp = del(delbar(fundamental_form(n), d), d);
    double engine = pp.norm_inf();
    double oracle = 0.0;
    for (int i = 0; i < r; ++i)
      for (int k = i + 1; k < r; ++k) {
        cplx s = 0.0;
        for (int a = 0; a < n - r; ++a)
          s += Y(i, a) * std::conj(Y(k, a)) + Y(k, a) * std::conj(Y(i, a));
        oracle = std::max(oracle, std::abs(s));
      }
    worst_pair = std::max(worst_pair, std::abs(engine - oracle));
  }
  if (worst_pair >= 1e-12) {
    res.pass = false;
    res.detail = "pairing-formula deviation " + fmt("%.2e", worst_pair);
    return res;
  }
  res.detail = std::to_string(structures) + " structures, d^2 " + fmt("%.1e", worst_dd) +
               "; 40 diagonal shapes, formula deviation " + fmt("%.1e", worst_pair);
  return res;
}

CriterionResult criterion8(const std::vector<SweepRecord>& recs) {
  CriterionResult res{8, "curvature pair antisymmetries and the derivative expansion", true, ""};
  double worst_anti = 0.0, worst_d8 = 0.0;
  for (const auto& r : recs) {
    worst_anti = std::max(worst_anti, r.antisym_raw);
    worst_d8 = std::max(worst_d8, r.d8_raw);
    if (r.antisym_raw >= 1e-12 || r.d8_raw >= 1e-12) {
      res.pass = false;
      res.detail = r.name + ": antisym " + fmt("%.2e", r.antisym_raw) + " d8 " +
                   fmt("%.2e", r.d8_raw);
      return res;
    }
  }
  res.detail = "worst antisymmetry " + fmt("%.1e", worst_anti) + ", worst expansion deviation " +
               fmt("%.1e", worst_d8);
  return res;
}

CriterionResult criterion9(bool quick) {
  CriterionResult res{9, "normal-form round trip and kodaira lambdas", true, ""};
  const int draws = quick ? 2 : 6;
  double worst = 0.0;
  for (const auto& spec : family_specs()) {
    Rng rng(0xBEEFULL ^ name_seed(spec.name));
    for (int t = 0; t < draws; ++t) {
      HermitianLieData d = build_family(spec.name, draw_params(spec, rng));
      if (t % 2 == 1) {
        // hide the normal form behind a random unitary frame change
        Eigen::MatrixXcd A(d.n, d.n);
        for (int i = 0; i < d.n; ++i)
          for (int j = 0; j < d.n; ++j) A(i, j) = rng.cbox();
        Eigen::MatrixXcd Q = Eigen::HouseholderQR<Eigen::MatrixXcd>(A).householderQ();
        d = change_frame(d, Q);
      }
      KLDecision dec = classify_skl(d, kTol);
      if (!dec.verdict || !dec.normal_form) {
        res.pass = false;
        res.detail = spec.name + ": unexpectedly negative";
        return res;
      }
      HermitianLieData rotated = change_frame(d, dec.normal_form->U);
      HermitianLieData rebuilt = from_normal_form(d.n, dec.normal_form->r, dec.normal_form->Y);
      double dev = max_diff(rotated, rebuilt);
      worst = std::max(worst, dev);
      if (dev >= 1e-10) {
        res.pass = false;
        res.detail = spec.name + ": rebuild deviation " + fmt("%.2e", dev);
        return res;
      }
    }
  }
  for (double lambda : {0.5, 1.0, 2.0}) {
    KLDecision dec = classify_skl(kodaira(lambda), kTol);
    if (!dec.normal_form || dec.normal_form->lambdas.size() != 1 ||
        std::abs(dec.normal_form->lambdas[0] - std::sqrt(2.0) * lambda) >= 1e-12) {
      res.pass = false;
      res.detail = "kodaira(" + fmt("%g", lambda) + ") lambda_1 mismatch";
      return res;
    }
  }
  res.detail = "round-trip deviation " + fmt("%.1e", worst) +
               "; kodaira lambda_1 = sqrt(2) lambda at 1e-12";
  return res;
}

CriterionResult criterion10(bool quick) {
  CriterionResult res{10, "CLI determinism: repeated runs and permuted inputs", true, ""};
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "nilkl-selftest";
  fs::create_directories(dir);

  auto run_analyze = [&](const fs::path& p) {
    std::ostringstream out, err;
    int code = cli::run({"analyze", p.string(), "--json"}, out, err);
    return std::make_pair(code, out.str());
  };

  auto pop = catalog_population();
  size_t limit = quick ? 4 : pop.size();
  for (size_t t = 0; t < limit; ++t) {
    const auto& [name, data] = pop[t];
    fs::path f = dir / ("cat" + std::to_string(t) + ".json");
    {
      std::ofstream o(f);
      o << structure_to_json(data);
    }
    auto [c1, s1] = run_analyze(f);
    auto [c2, s2] = run_analyze(f);
    if (c1 != 0 || c2 != 0 || s1 != s2) {
      res.pass = false;
      res.detail = name + ": repeated runs differ";
      return res;
    }
    // permute the entry lists
    nlohmann::ordered_json j = nlohmann::ordered_json::parse(structure_to_json(data));
    for (const char* key : {"C", "D"}) {
      if (j.contains(key) && j[key].is_array()) {
        auto arr = j[key];
        std::reverse(arr.begin(), arr.end());
        if (arr.size() > 2) std::rotate(arr.begin(), arr.begin() + 1, arr.end());
        j[key] = arr;
      }
    }
    fs::path g = dir / ("cat" + std::to_string(t) + "p.json");
    {
      std::ofstream o(g);
      o << j.dump(2) << "\n";
    }
    auto [c3, s3] = run_analyze(g);
    if (c3 != 0 || s1 != s3) {
      res.pass = false;
      res.detail = name + ": permuted input changed the report";
      return res;
    }
  }
  res.detail = std::to_string(limit) + " catalog structures byte-identical across runs and " +
               "entry permutations";
  return res;
}

}  // namespace

std::vector<CriterionResult> run_all(bool quick) {
  std::vector<CriterionResult> out;
  out.push_back(criterion1(quick));
  out.push_back(criterion2(quick));

  auto pop = random_population(quick ? 4 : 24);
  size_t random_count = pop.size();
  auto cat = catalog_population();
  std::vector<SweepRecord> recs;
  recs.reserve(pop.size() + cat.size());
  for (const auto& [name, data] : pop) recs.push_back(make_record(name, data));
  for (const auto& [name, data] : cat) recs.push_back(make_record(name, data));

  out.push_back(criterion3(recs, random_count));
  out.push_back(criterion4(recs));
  out.push_back(criterion5(recs));
  out.push_back(criterion6(quick));
  out.push_back(criterion7(quick));
  out.push_back(criterion8(recs));
  out.push_back(criterion9(quick));
  out.push_back(criterion10(quick));
  return out;
}

bool run_acceptance(std::ostream& out, bool quick) {
  bool all = true;
  for (const auto& r : run_all(quick)) {
    out << (r.pass ? "PASS" : "FAIL") << " - criterion " << r.id << ": " << r.name;
    if (!r.detail.empty()) out << " (" << r.detail << ")";
    out << "\n";
    all = all && r.pass;
  }
  out << (all ? "acceptance suite: all criteria passed\n"
              : "acceptance suite: FAILURES present\n");
  return all;
}

}  // namespace nilkl::selftest

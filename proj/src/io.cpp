#include "nilkl/io.hpp"

#include <cinttypes>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "nilkl/catalog.hpp"

namespace nilkl {

namespace {

using json = nlohmann::json;

int get_index(const json& v, const char* what, int n) {
  if (!v.is_number_integer() && !v.is_number_unsigned())
    throw ParseError(std::string("structure file: ") + what + " index must be an integer");
  int idx = v.get<int>();
  if (idx < 1 || idx > n)
    throw ParseError(std::string("structure file: ") + what + " index " + std::to_string(idx) +
                     " out of range 1.." + std::to_string(n));
  return idx;
}

double get_num(const json& v, const char* what) {
  if (!v.is_number()) throw ParseError(std::string("structure file: ") + what + " must be a number");
  return v.get<double>();
}

HermitianLieData parse_constants_mode(const json& j, int n, const std::string& label) {
  HermitianLieData out(n, label);
  std::set<std::tuple<int, int, int>> seen_c, seen_d;
  if (j.contains("C")) {
    if (!j["C"].is_array()) throw ParseError("structure file: C must be an array");
    for (const auto& e : j["C"]) {
      if (!e.is_array() || e.size() != 5)
        throw ParseError("structure file: C entries must be [j,i,k,re,im]");
      int jj = get_index(e[0], "C", n), ii = get_index(e[1], "C", n), kk = get_index(e[2], "C", n);
      if (ii >= kk) throw ParseError("structure file: C entries require i < k");
      if (!seen_c.insert({jj, ii, kk}).second)
        throw ParseError("structure file: duplicate C entry for (" + std::to_string(jj) + "," +
                         std::to_string(ii) + "," + std::to_string(kk) + ")");
      out.set_C(jj, ii, kk, cplx(get_num(e[3], "C"), get_num(e[4], "C")));
    }
  }
  if (j.contains("D")) {
    if (!j["D"].is_array()) throw ParseError("structure file: D must be an array");
    for (const auto& e : j["D"]) {
      if (!e.is_array() || e.size() != 5)
        throw ParseError("structure file: D entries must be [j,i,k,re,im]");
      int jj = get_index(e[0], "D", n), ii = get_index(e[1], "D", n), kk = get_index(e[2], "D", n);
      if (!seen_d.insert({jj, ii, kk}).second)
        throw ParseError("structure file: duplicate D entry for (" + std::to_string(jj) + "," +
                         std::to_string(ii) + "," + std::to_string(kk) + ")");
      out.D.at(jj, ii, kk) = cplx(get_num(e[3], "D"), get_num(e[4], "D"));
    }
  }
  ValidationReport rep = validate(out);
  if (!rep.valid)
    throw JacobiViolation("structure file: constants fail validation (residual " +
                          std::to_string(rep.jacobi_residual) + ")");
  return out;
}

HermitianLieData parse_dphi_mode(const json& j, int n, const std::string& label) {
  CoframeDifferentials cd(n);
  const auto& terms = j["terms"];
  if (!terms.is_object()) throw ParseError("structure file: terms must be an object");
  for (const auto& [key, val] : terms.items()) {
    int jj = 0;
    try {
      jj = std::stoi(key);
    } catch (...) {
      throw ParseError("structure file: terms keys must be 1-based indices, got '" + key + "'");
    }
    if (jj < 1 || jj > n) throw ParseError("structure file: terms key out of range: " + key);
    std::set<std::pair<int, int>> seen_h, seen_m;
    if (val.contains("hol")) {
      for (const auto& e : val["hol"]) {
        if (!e.is_array() || e.size() != 4)
          throw ParseError("structure file: hol entries must be [i,k,re,im]");
        int ii = get_index(e[0], "hol", n), kk = get_index(e[1], "hol", n);
        if (ii >= kk) throw ParseError("structure file: hol entries require i < k");
        if (!seen_h.insert({ii, kk}).second)
          throw ParseError("structure file: duplicate hol entry");
        cd.add_hol(jj, ii, kk, cplx(get_num(e[2], "hol"), get_num(e[3], "hol")));
      }
    }
    if (val.contains("mixed")) {
      for (const auto& e : val["mixed"]) {
        if (!e.is_array() || e.size() != 4)
          throw ParseError("structure file: mixed entries must be [i,k,re,im]");
        int ii = get_index(e[0], "mixed", n), kk = get_index(e[1], "mixed", n);
        if (!seen_m.insert({ii, kk}).second)
          throw ParseError("structure file: duplicate mixed entry");
        cd.add_mixed(jj, ii, kk, cplx(get_num(e[2], "mixed"), get_num(e[3], "mixed")));
      }
    }
  }
  HermitianLieData out = from_coframe(cd);
  out.label = label;
  return out;
}

}  // namespace

HermitianLieData parse_structure_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("structure file: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("structure file: top level must be an object");
  if (!j.contains("n")) throw ParseError("structure file: missing n");
  if (!j["n"].is_number_integer() && !j["n"].is_number_unsigned())
    throw ParseError("structure file: n must be an integer");
  int n = j["n"].get<int>();
  if (n < 1 || n > 16) throw ParseError("structure file: n out of range 1..16");
  std::string label = j.value("label", std::string());

  bool constants_mode = j.contains("C") || j.contains("D");
  bool dphi_mode = j.contains("terms");
  if (constants_mode && dphi_mode)
    throw ParseError("structure file: give either C/D or terms, not both");
  if (!constants_mode && !dphi_mode)
    throw ParseError("structure file: expected C/D arrays or a terms object");
  return constants_mode ? parse_constants_mode(j, n, label) : parse_dphi_mode(j, n, label);
}

HermitianLieData parse_structure_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_structure_json(ss.str());
}

std::string structure_to_json(const HermitianLieData& data) {
  nlohmann::ordered_json j;
  j["n"] = data.n;
  if (!data.label.empty()) j["label"] = data.label;
  auto carr = nlohmann::ordered_json::array();
  auto darr = nlohmann::ordered_json::array();
  for (int jj = 1; jj <= data.n; ++jj)
    for (int ii = 1; ii <= data.n; ++ii)
      for (int kk = 1; kk <= data.n; ++kk) {
        cplx c = data.C.at(jj, ii, kk);
        if (ii < kk && c != cplx(0, 0)) carr.push_back({jj, ii, kk, c.real(), c.imag()});
        cplx d = data.D.at(jj, ii, kk);
        if (d != cplx(0, 0)) darr.push_back({jj, ii, kk, d.real(), d.imag()});
      }
  j["C"] = std::move(carr);
  j["D"] = std::move(darr);
  return j.dump(2) + "\n";
}

std::string structure_digest(const HermitianLieData& data) {
  // FNV-1a over the canonical rendering
  std::string text = structure_to_json(data);
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[32];
  snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return std::string(buf);
}

}  // namespace nilkl

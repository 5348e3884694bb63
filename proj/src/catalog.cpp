#include "nilkl/catalog.hpp"

#include <algorithm>
#include <cmath>

namespace nilkl {

namespace {

const cplx kI(0.0, 1.0);

double get_param(const std::map<std::string, double>& params, const std::string& key) {
  auto it = params.find(key);
  if (it == params.end()) throw ParamOutOfRange("build_family: missing parameter '" + key + "'");
  return it->second;
}

double get_positive(const std::map<std::string, double>& params, const std::string& key) {
  double v = get_param(params, key);
  if (!(v > 0.0)) throw ParamOutOfRange("build_family: parameter '" + key + "' must be positive");
  return v;
}

int largest_two_step_r(const HermitianLieData& data) {
  const int n = data.n;
  for (int r = n; r >= 1; --r) {
    bool ok = true;
    for (int j = 1; j <= n && ok; ++j)
      for (int i = 1; i <= n && ok; ++i)
        for (int k = 1; k <= n; ++k) {
          bool c_ok = (j > r && i <= r && k <= r);
          bool d_ok = (j <= r && i > r && k <= r);
          if (!c_ok && std::abs(data.C.at(j, i, k)) != 0.0) {
            ok = false;
            break;
          }
          if (!d_ok && std::abs(data.D.at(j, i, k)) != 0.0) {
            ok = false;
            break;
          }
        }
    if (ok) return r;
  }
  return 0;
}

}  // namespace

HermitianLieData from_coframe(const CoframeDifferentials& cd, double tol) {
  HermitianLieData out(cd.n);
  for (int j = 1; j <= cd.n; ++j) {
    for (const auto& t : cd.hol[j - 1]) {
      if (t.i < 1 || t.i >= t.k || t.k > cd.n)
        throw ParamOutOfRange("from_coframe: hol term needs 1 <= i < k <= n");
      out.C.at(j, t.i, t.k) += -t.coeff;
      out.C.at(j, t.k, t.i) += t.coeff;
    }
    for (const auto& t : cd.mixed[j - 1]) {
      if (t.i < 1 || t.i > cd.n || t.k < 1 || t.k > cd.n)
        throw ParamOutOfRange("from_coframe: mixed term index out of range");
      out.D.at(t.i, j, t.k) += -std::conj(t.coeff);
    }
  }
  ValidationReport rep = validate(out, tol);
  if (!rep.valid)
    throw JacobiViolation("from_coframe: declared differentials do not close (residual " +
                          std::to_string(rep.jacobi_residual) + ")");
  return out;
}

CoframeDifferentials to_coframe(const HermitianLieData& data) {
  CoframeDifferentials cd(data.n);
  for (int j = 1; j <= data.n; ++j) {
    for (int i = 1; i <= data.n; ++i) {
      for (int k = i + 1; k <= data.n; ++k) {
        cplx c = -data.C.at(j, i, k);
        if (c != cplx(0, 0)) cd.add_hol(j, i, k, c);
      }
      for (int k = 1; k <= data.n; ++k) {
        cplx c = -std::conj(data.D.at(i, j, k));
        if (c != cplx(0, 0)) cd.add_mixed(j, i, k, c);
      }
    }
  }
  return cd;
}

HermitianLieData abelian(int n) {
  if (n < 1) throw BadRange("abelian: n must be >= 1");
  HermitianLieData out(n, "abelian(" + std::to_string(n) + ")");
  return out;
}

HermitianLieData kodaira(double lambda) {
  if (lambda < 0.0) throw ParamOutOfRange("kodaira: lambda must be >= 0");
  CoframeDifferentials cd(2);
  if (lambda != 0.0) cd.add_mixed(2, 1, 1, lambda);
  HermitianLieData out = from_coframe(cd);
  out.label = "kodaira";
  return out;
}

HermitianLieData iwasawa() {
  CoframeDifferentials cd(3);
  cd.add_hol(3, 1, 2, -1.0);
  HermitianLieData out = from_coframe(cd);
  out.label = "iwasawa";
  return out;
}

HermitianLieData build_family(const std::string& name, const std::map<std::string, double>& params) {
  auto P = [&](const std::string& k) { return get_param(params, k); };
  auto Ppos = [&](const std::string& k) { return get_positive(params, k); };

  if (name == "abelian") {
    double nv = P("n");
    int n = static_cast<int>(nv);
    if (n < 1 || nv != n) throw ParamOutOfRange("build_family: abelian needs integer n >= 1");
    return abelian(n);
  }
  if (name == "iwasawa") return iwasawa();
  if (name == "kodaira" || name == "cor12_n2") {
    double lambda = P("lambda");
    if (lambda < 0.0) throw ParamOutOfRange("build_family: lambda must be >= 0");
    HermitianLieData out = kodaira(lambda);
    out.label = name;
    return out;
  }
  if (name == "cor12_n3") {
    CoframeDifferentials cd(3);
    cd.add_mixed(3, 1, 1, Ppos("lambda"));
    cd.add_mixed(3, 2, 2, kI * P("a"));
    HermitianLieData out = from_coframe(cd);
    out.label = name;
    return out;
  }
  if (name == "cor12_n4a") {
    CoframeDifferentials cd(4);
    cd.add_mixed(4, 1, 1, Ppos("lambda"));
    cd.add_mixed(4, 2, 2, kI * P("a"));
    HermitianLieData out = from_coframe(cd);
    out.label = name;
    return out;
  }
  if (name == "cor12_n4b") {
    CoframeDifferentials cd(4);
    cd.add_mixed(3, 1, 1, Ppos("lambda1"));
    cd.add_mixed(3, 2, 2, kI * P("a"));
    cd.add_mixed(4, 2, 2, Ppos("lambda2"));
    HermitianLieData out = from_coframe(cd);
    out.label = name;
    return out;
  }
  if (name == "cor12_n5a") {
    CoframeDifferentials cd(5);
    cd.add_mixed(5, 1, 1, Ppos("lambda"));
    cd.add_mixed(5, 2, 2, kI * P("a"));
    HermitianLieData out = from_coframe(cd);
    out.label = name;
    return out;
  }
  if (name == "cor12_n5b") {
    double l1 = Ppos("lambda1"), l2 = Ppos("lambda2");
    double a = P("a"), b = P("b"), c = P("c");
    CoframeDifferentials cd(5);
    cd.add_mixed(4, 1, 1, l1);
    cd.add_mixed(4, 2, 2, kI * a);
    cd.add_mixed(4, 3, 3, kI * b);
    cd.add_mixed(5, 2, 2, l2);
    cd.add_mixed(5, 3, 3, kI * c - a * b / l2);
    HermitianLieData out = from_coframe(cd);
    out.label = name;
    return out;
  }
  if (name == "cor12_n6a") {
    CoframeDifferentials cd(6);
    cd.add_mixed(6, 1, 1, Ppos("lambda"));
    cd.add_mixed(6, 2, 2, kI * P("a"));
    HermitianLieData out = from_coframe(cd);
    out.label = name;
    return out;
  }
  if (name == "cor12_n6b") {
    double l1 = Ppos("lambda1"), l2 = Ppos("lambda2");
    double a = P("a"), b = P("b"), c = P("c"), x = P("x");
    // row orthogonality for the third and fourth rows:
    //   b c + x y + a^2 b c / lambda2^2 = 0
    double y;
    if (params.count("y")) {
      y = params.at("y");
      double resid = b * c + x * y + a * a * b * c / (l2 * l2);
      double scale = 1.0 + std::abs(b * c) + std::abs(x * y);
      if (std::abs(resid) > 1e-9 * scale)
        throw ParamOutOfRange("build_family: cor12_n6b given y violates row orthogonality");
    } else {
      if (x == 0.0) {
        if (b * c != 0.0)
          throw ParamOutOfRange("build_family: cor12_n6b with x = 0 needs b*c = 0");
        y = 0.0;
      } else {
        y = -b * c * (l2 * l2 + a * a) / (l2 * l2 * x);
      }
    }
    CoframeDifferentials cd(6);
    cd.add_mixed(5, 1, 1, l1);
    cd.add_mixed(5, 2, 2, kI * a);
    cd.add_mixed(5, 3, 3, kI * b);
    cd.add_mixed(5, 4, 4, kI * c);
    cd.add_mixed(6, 2, 2, l2);
    cd.add_mixed(6, 3, 3, kI * x - a * b / l2);
    cd.add_mixed(6, 4, 4, kI * y - a * c / l2);
    HermitianLieData out = from_coframe(cd);
    out.label = name;
    return out;
  }
  if (name == "cor12_n6c") {
    double l1 = Ppos("lambda1"), l2 = Ppos("lambda2"), l3 = Ppos("lambda3");
    double a = P("a"), b = P("b"), c = P("c");
    CoframeDifferentials cd(6);
    cd.add_mixed(4, 1, 1, l1);
    cd.add_mixed(4, 2, 2, kI * a);
    cd.add_mixed(4, 3, 3, kI * b);
    cd.add_mixed(5, 2, 2, l2);
    cd.add_mixed(5, 3, 3, kI * c - a * b / l2);
    cd.add_mixed(6, 3, 3, l3);
    HermitianLieData out = from_coframe(cd);
    out.label = name;
    return out;
  }
  throw UnknownFamily("build_family: unknown family '" + name + "'");
}

std::vector<std::string> family_names() {
  return {"abelian",   "kodaira",   "iwasawa",   "cor12_n2",  "cor12_n3", "cor12_n4a",
          "cor12_n4b", "cor12_n5a", "cor12_n5b", "cor12_n6a", "cor12_n6b", "cor12_n6c"};
}

HermitianLieData random_two_step(int n, int r, uint64_t seed) {
  if (n < 1 || r < 1 || r > n) throw BadRange("random_two_step: need 1 <= r <= n");
  Rng rng(seed);
  HermitianLieData out(n, "random_two_step(n=" + std::to_string(n) + ",r=" + std::to_string(r) +
                              ",seed=" + std::to_string(seed) + ")");
  for (int alpha = r + 1; alpha <= n; ++alpha)
    for (int i = 1; i <= r; ++i)
      for (int k = i + 1; k <= r; ++k) out.set_C(alpha, i, k, rng.cbox());
  for (int i = 1; i <= r; ++i)
    for (int alpha = r + 1; alpha <= n; ++alpha)
      for (int k = 1; k <= r; ++k) out.D.at(i, alpha, k) = rng.cbox();
  return out;
}

HermitianLieData perturb(const HermitianLieData& data, double magnitude, uint64_t seed) {
  ValidationReport rep = validate(data);
  if (!rep.valid) throw InvalidStructure("perturb: invalid input");
  if (magnitude == 0.0) return data;
  int r = largest_two_step_r(data);
  if (r == 0 || r == data.n)
    throw InvalidStructure("perturb: input does not fit a proper two-step sparsity pattern");
  Rng rng(seed);
  HermitianLieData out = data;
  for (int i = 1; i <= r; ++i)
    for (int alpha = r + 1; alpha <= data.n; ++alpha)
      for (int k = 1; k <= r; ++k) out.D.at(i, alpha, k) += magnitude * rng.cbox();
  return out;
}

HermitianLieData from_normal_form(int n, int r, const Eigen::MatrixXcd& Y) {
  if (Y.rows() != r || Y.cols() != n - r) throw DimensionMismatch("from_normal_form: Y shape");
  CoframeDifferentials cd(n);
  for (int alpha = r + 1; alpha <= n; ++alpha)
    for (int i = 1; i <= r; ++i) {
      cplx c = Y(i - 1, alpha - r - 1);
      if (c != cplx(0, 0)) cd.add_mixed(alpha, i, i, c);
    }
  return from_coframe(cd);
}

}  // namespace nilkl

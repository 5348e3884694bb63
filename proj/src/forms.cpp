#include "nilkl/forms.hpp"

#include <bit>
#include <cmath>

namespace nilkl {

namespace {

int popcount(uint32_t x) { return std::popcount(x); }

// parity of merging two disjoint ascending index sets [A then B] into one
// ascending sequence: counts pairs (a in A, b in B) with a > b
int merge_sign(uint32_t A, uint32_t B) {
  int inv = 0;
  while (B) {
    int b = std::countr_zero(B);
    B &= B - 1;
    inv += popcount(A >> (b + 1));
  }
  return (inv & 1) ? -1 : 1;
}

void check_same_n(const InvariantForm& a, const InvariantForm& b) {
  if (a.n != b.n) throw DimensionMismatch("forms: mixed dimensions");
}

}  // namespace

void InvariantForm::add(uint32_t hol, uint32_t bar, cplx c) {
  if (c == cplx(0, 0)) return;
  auto key = Key{hol, bar};
  auto it = terms.find(key);
  if (it == terms.end()) {
    terms.emplace(key, c);
  } else {
    it->second += c;
    if (it->second == cplx(0, 0)) terms.erase(it);
  }
}

InvariantForm& InvariantForm::operator+=(const InvariantForm& o) {
  check_same_n(*this, o);
  for (const auto& [k, c] : o.terms) add(k.first, k.second, c);
  return *this;
}

InvariantForm InvariantForm::operator+(const InvariantForm& o) const {
  InvariantForm r = *this;
  r += o;
  return r;
}

InvariantForm InvariantForm::operator-(const InvariantForm& o) const {
  InvariantForm r = *this;
  check_same_n(r, o);
  for (const auto& [k, c] : o.terms) r.add(k.first, k.second, -c);
  return r;
}

InvariantForm InvariantForm::operator*(cplx s) const {
  InvariantForm r(n);
  if (s == cplx(0, 0)) return r;
  for (const auto& [k, c] : terms) r.terms.emplace(k, c * s);
  return r;
}

double InvariantForm::norm_inf() const {
  double r = 0.0;
  for (const auto& [k, c] : terms) r = std::max(r, std::abs(c));
  return r;
}

cplx InvariantForm::coeff(uint32_t hol, uint32_t bar) const {
  auto it = terms.find(Key{hol, bar});
  return it == terms.end() ? cplx(0, 0) : it->second;
}

InvariantForm InvariantForm::component(int p, int q) const {
  InvariantForm r(n);
  for (const auto& [k, c] : terms)
    if (popcount(k.first) == p && popcount(k.second) == q) r.terms.emplace(k, c);
  return r;
}

InvariantForm phi(int n, int i) {
  InvariantForm f(n);
  f.add(1u << (i - 1), 0, 1.0);
  return f;
}

InvariantForm phi_bar(int n, int i) {
  InvariantForm f(n);
  f.add(0, 1u << (i - 1), 1.0);
  return f;
}

InvariantForm scalar_form(int n, cplx c) {
  InvariantForm f(n);
  f.add(0, 0, c);
  return f;
}

InvariantForm wedge(const InvariantForm& a, const InvariantForm& b) {
  check_same_n(a, b);
  InvariantForm r(a.n);
  for (const auto& [ka, ca] : a.terms) {
    for (const auto& [kb, cb] : b.terms) {
      if ((ka.first & kb.first) || (ka.second & kb.second)) continue;
      int sign = merge_sign(ka.first, kb.first) * merge_sign(ka.second, kb.second);
      // move b's holomorphic factors past a's antiholomorphic block
      if ((popcount(ka.second) * popcount(kb.first)) & 1) sign = -sign;
      r.add(ka.first | kb.first, ka.second | kb.second, static_cast<double>(sign) * ca * cb);
    }
  }
  return r;
}

InvariantForm conj_form(const InvariantForm& a) {
  InvariantForm r(a.n);
  for (const auto& [k, c] : a.terms) {
    int p = popcount(k.first), q = popcount(k.second);
    int sign = ((p * q) & 1) ? -1 : 1;
    r.add(k.second, k.first, static_cast<double>(sign) * std::conj(c));
  }
  return r;
}

namespace {

// d phi_j and d conj(phi_j) read off the structure constants
InvariantForm d_phi(const HermitianLieData& data, int j) {
  const int n = data.n;
  InvariantForm f(n);
  for (int i = 1; i <= n; ++i) {
    for (int k = i + 1; k <= n; ++k) f.add((1u << (i - 1)) | (1u << (k - 1)), 0, -data.C.at(j, i, k));
    for (int k = 1; k <= n; ++k) f.add(1u << (i - 1), 1u << (k - 1), -std::conj(data.D.at(i, j, k)));
  }
  return f;
}

}  // namespace

InvariantForm d_operator(const InvariantForm& form, const HermitianLieData& data) {
  if (form.n != data.n) throw DimensionMismatch("d_operator: form/data dimensions differ");
  const int n = data.n;

  std::vector<InvariantForm> dph(n), dphb(n);
  for (int j = 1; j <= n; ++j) {
    dph[j - 1] = d_phi(data, j);
    dphb[j - 1] = conj_form(dph[j - 1]);
  }

  InvariantForm out(n);
  for (const auto& [key, c] : form.terms) {
    // factors in canonical order: hol ascending, then bar ascending
    int pos = 0;
    for (uint32_t rest = key.first; rest; rest &= rest - 1, ++pos) {
      int idx = std::countr_zero(rest);
      uint32_t pre = key.first & ((1u << idx) - 1);
      uint32_t post = key.first & ~((1u << idx) - 1) & ~(1u << idx);
      InvariantForm prefix(n), suffix(n);
      prefix.add(pre, 0, 1.0);
      suffix.add(post, key.second, 1.0);
      double s = (pos & 1) ? -1.0 : 1.0;
      out += wedge(prefix, wedge(dph[idx], suffix)) * (s * c);
    }
    for (uint32_t rest = key.second; rest; rest &= rest - 1, ++pos) {
      int idx = std::countr_zero(rest);
      uint32_t pre = key.second & ((1u << idx) - 1);
      uint32_t post = key.second & ~((1u << idx) - 1) & ~(1u << idx);
      InvariantForm prefix(n), suffix(n);
      prefix.add(key.first, pre, 1.0);
      suffix.add(0, post, 1.0);
      double s = (pos & 1) ? -1.0 : 1.0;
      out += wedge(prefix, wedge(dphb[idx], suffix)) * (s * c);
    }
  }
  return out;
}

std::pair<InvariantForm, InvariantForm> bidegree_split(const InvariantForm& form,
                                                       const HermitianLieData& data) {
  InvariantForm dp(form.n), dq(form.n);
  // group the terms of `form` by bidegree, apply d, sort the image
  std::map<std::pair<int, int>, InvariantForm> comps;
  for (const auto& [k, c] : form.terms) {
    auto pq = std::make_pair(popcount(k.first), popcount(k.second));
    auto it = comps.find(pq);
    if (it == comps.end()) {
      InvariantForm f(form.n);
      f.terms.emplace(k, c);
      comps.emplace(pq, std::move(f));
    } else {
      it->second.terms.emplace(k, c);
    }
  }
  for (const auto& [pq, comp] : comps) {
    InvariantForm dcomp = d_operator(comp, data);
    dp += dcomp.component(pq.first + 1, pq.second);
    dq += dcomp.component(pq.first, pq.second + 1);
  }
  return {dp, dq};
}

InvariantForm del(const InvariantForm& form, const HermitianLieData& data) {
  return bidegree_split(form, data).first;
}

InvariantForm delbar(const InvariantForm& form, const HermitianLieData& data) {
  return bidegree_split(form, data).second;
}

cplx eval2(const InvariantForm& form, const Eigen::VectorXcd& u, const Eigen::VectorXcd& v) {
  const int n = form.n;
  if (u.size() != 2 * n || v.size() != 2 * n) throw DimensionMismatch("eval2: vector size");
  // covector evaluation: phi_i(w) = w_e[i], conj(phi_i)(w) = w_ebar[i]
  cplx out = 0.0;
  for (const auto& [k, c] : form.terms) {
    if (popcount(k.first) + popcount(k.second) != 2) continue;
    cplx f1u, f1v, f2u, f2v;
    // collect the two covectors in canonical order
    int got = 0;
    for (uint32_t rest = k.first; rest; rest &= rest - 1) {
      int idx = std::countr_zero(rest);
      if (got == 0) {
        f1u = u(idx);
        f1v = v(idx);
      } else {
        f2u = u(idx);
        f2v = v(idx);
      }
      ++got;
    }
    for (uint32_t rest = k.second; rest; rest &= rest - 1) {
      int idx = std::countr_zero(rest);
      if (got == 0) {
        f1u = u(n + idx);
        f1v = v(n + idx);
      } else {
        f2u = u(n + idx);
        f2v = v(n + idx);
      }
      ++got;
    }
    out += c * (f1u * f2v - f1v * f2u);
  }
  return out;
}

InvariantForm fundamental_form(int n) {
  InvariantForm w(n);
  for (int k = 1; k <= n; ++k) w.add(1u << (k - 1), 1u << (k - 1), cplx(0, 1));
  return w;
}

MetricResiduals metric_form_residuals(const HermitianLieData& data) {
  ValidationReport rep = validate(data);
  if (!rep.valid) throw InvalidStructure("metric_form_residuals: invalid structure");

  const int n = data.n;
  InvariantForm w = fundamental_form(n);
  MetricResiduals out;
  out.kahler = d_operator(w, data).norm_inf();
  out.pluriclosed = del(delbar(w, data), data).norm_inf();
  if (n == 1) {
    out.balanced = 0.0;
  } else {
    InvariantForm p = w;
    for (int t = 1; t < n - 1; ++t) p = wedge(p, w);
    out.balanced = d_operator(p, data).norm_inf();
  }
  return out;
}

double MatrixForm::norm_inf() const {
  double r = 0.0;
  for (const auto& f : e) r = std::max(r, f.norm_inf());
  return r;
}

MatrixForm mf_add(const MatrixForm& a, const MatrixForm& b) {
  MatrixForm r(a.n);
  for (int i = 1; i <= a.n; ++i)
    for (int j = 1; j <= a.n; ++j) r.at(i, j) = a.at(i, j) + b.at(i, j);
  return r;
}

MatrixForm mf_sub(const MatrixForm& a, const MatrixForm& b) {
  MatrixForm r(a.n);
  for (int i = 1; i <= a.n; ++i)
    for (int j = 1; j <= a.n; ++j) r.at(i, j) = a.at(i, j) - b.at(i, j);
  return r;
}

MatrixForm mf_wedge(const MatrixForm& a, const MatrixForm& b) {
  MatrixForm r(a.n);
  for (int i = 1; i <= a.n; ++i)
    for (int j = 1; j <= a.n; ++j)
      for (int m = 1; m <= a.n; ++m) r.at(i, j) += wedge(a.at(i, m), b.at(m, j));
  return r;
}

MatrixForm mf_conj(const MatrixForm& a) {
  MatrixForm r(a.n);
  for (int i = 1; i <= a.n; ++i)
    for (int j = 1; j <= a.n; ++j) r.at(i, j) = conj_form(a.at(i, j));
  return r;
}

MatrixForm mf_d(const MatrixForm& a, const HermitianLieData& data) {
  MatrixForm r(a.n);
  for (int i = 1; i <= a.n; ++i)
    for (int j = 1; j <= a.n; ++j) r.at(i, j) = d_operator(a.at(i, j), data);
  return r;
}

}  // namespace nilkl

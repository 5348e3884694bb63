#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "nilkl/algebra.hpp"

// Exterior calculus on left-invariant complex forms. A form is a sparse map
// from canonical monomials to coefficients; the monomial key is a pair of
// bitmasks (holomorphic indices, antiholomorphic indices), bit t standing for
// index t+1, with all phi factors written before all conj(phi) factors and
// each group strictly increasing.

namespace nilkl {

struct InvariantForm {
  using Key = std::pair<uint32_t, uint32_t>;  // (hol mask, bar mask)

  int n = 0;
  std::map<Key, cplx> terms;

  InvariantForm() = default;
  explicit InvariantForm(int n_) : n(n_) {}

  void add(uint32_t hol, uint32_t bar, cplx c);
  InvariantForm& operator+=(const InvariantForm& o);
  InvariantForm operator+(const InvariantForm& o) const;
  InvariantForm operator-(const InvariantForm& o) const;
  InvariantForm operator*(cplx s) const;

  double norm_inf() const;
  bool is_zero(double tol = 0.0) const { return norm_inf() <= tol; }

  // coefficient of a canonical monomial
  cplx coeff(uint32_t hol, uint32_t bar) const;

  // restriction to terms of bidegree (p,q)
  InvariantForm component(int p, int q) const;
};

InvariantForm phi(int n, int i);
InvariantForm phi_bar(int n, int i);
InvariantForm scalar_form(int n, cplx c);

InvariantForm wedge(const InvariantForm& a, const InvariantForm& b);
InvariantForm conj_form(const InvariantForm& a);

InvariantForm d_operator(const InvariantForm& form, const HermitianLieData& data);

// splits d(form) into (del part, delbar part), per bidegree component of form
std::pair<InvariantForm, InvariantForm> bidegree_split(const InvariantForm& form,
                                                       const HermitianLieData& data);
InvariantForm del(const InvariantForm& form, const HermitianLieData& data);
InvariantForm delbar(const InvariantForm& form, const HermitianLieData& data);

// evaluation of a 2-form on complexified frame coefficient vectors
cplx eval2(const InvariantForm& form, const Eigen::VectorXcd& u, const Eigen::VectorXcd& v);

// fundamental form i * sum_k phi_k ^ conj(phi_k)
InvariantForm fundamental_form(int n);

struct MetricResiduals {
  double kahler = 0.0;       // |d omega|
  double pluriclosed = 0.0;  // |del delbar omega|
  double balanced = 0.0;     // |d (omega^(n-1))|, 0 for n = 1
};
MetricResiduals metric_form_residuals(const HermitianLieData& data);

// n x n matrix of invariant forms, 1-based entries
struct MatrixForm {
  int n = 0;
  std::vector<InvariantForm> e;

  MatrixForm() = default;
  explicit MatrixForm(int n_) : n(n_), e(static_cast<size_t>(n_) * n_, InvariantForm(n_)) {}
  InvariantForm& at(int i, int j) { return e[static_cast<size_t>(i - 1) * n + (j - 1)]; }
  const InvariantForm& at(int i, int j) const {
    return e[static_cast<size_t>(i - 1) * n + (j - 1)];
  }
  double norm_inf() const;
};

MatrixForm mf_add(const MatrixForm& a, const MatrixForm& b);
MatrixForm mf_sub(const MatrixForm& a, const MatrixForm& b);
MatrixForm mf_wedge(const MatrixForm& a, const MatrixForm& b);  // entry ij = sum_m a_im ^ b_mj
MatrixForm mf_conj(const MatrixForm& a);
MatrixForm mf_d(const MatrixForm& a, const HermitianLieData& data);

}  // namespace nilkl

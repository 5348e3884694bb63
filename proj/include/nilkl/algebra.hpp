#pragma once

#include <Eigen/Dense>
#include <array>
#include <string>
#include <vector>

#include "nilkl/errors.hpp"
#include "nilkl/tensors.hpp"

// Core data model for left-invariant Hermitian structures on Lie groups.
//
// Conventions, fixed once for the whole project:
//
//   * e_1..e_n is a unitary frame of left-invariant (1,0) vector fields,
//     phi_1..phi_n the dual coframe. The metric is the identity on this
//     frame and J e_a = i e_a; neither is stored.
//   * On the real side, eps_a (a = 1..2n) is the orthonormal frame with
//     e_a = (eps_a - i eps_{n+a}) / sqrt(2), so J eps_a = eps_{n+a}.
//   * Structure constants, with <,> the C-bilinear extension of the metric:
//       C(j,i,k) = <[e_i, e_k], conj(e_j)>     (antisymmetric in i,k)
//       D(j,i,k) = <[conj(e_j), e_k], e_i>
//   * Bracket reconstruction. [e_i,e_k] = sum_j C(j,i,k) e_j has no (0,1)
//     part (the frame is (1,0) for an integrable J). Conjugating
//     [conj(e_j), e_k] and matching pairings gives the remaining table:
//       [conj(e_j), e_k] = sum_i ( -conj(D(k,i,j)) e_i + D(j,i,k) conj(e_i) )
//     all other brackets follow by conjugation.
//   * Exterior derivative sign: d a (X,Y) = -a([X,Y]) for invariant 1-forms,
//     which is exactly what makes the structure equation
//       d phi_j = -1/2 sum C(j,i,k) phi_i^phi_k - sum conj(D(i,j,k)) phi_i^conj(phi_k)
//     evaluate consistently against the brackets above (see tests).
//
// All accessors are 1-based.

namespace nilkl {

struct HermitianLieData {
  int n = 0;
  CTensor3 C;  // C(j,i,k)
  CTensor3 D;  // D(j,i,k)
  std::string label;

  HermitianLieData() = default;
  explicit HermitianLieData(int n_, std::string label_ = "")
      : n(n_), C(n_), D(n_), label(std::move(label_)) {}

  // sets C(j,i,k) = v and C(j,k,i) = -v
  void set_C(int j, int i, int k, cplx v) {
    C.at(j, i, k) = v;
    C.at(j, k, i) = -v;
  }
  double max_abs() const { return std::max(C.max_abs(), D.max_abs()); }
};

struct RealLieData {
  int dim = 0;          // 2n
  RTensor3 bracket;     // bracket(a,b,c) = <[eps_a, eps_b], eps_c>
  Eigen::MatrixXd J;    // J(p,q) = <J eps_q, eps_p>
};

struct ValidationReport {
  bool antisymmetry_ok = false;
  double jacobi_residual = 0.0;            // max over the three complex identity families
  std::array<double, 3> jacobi_breakdown{};  // [CC, CD+DD, mixed-conjugate]
  double real_jacobi_residual = 0.0;       // Jacobi on the realified brackets
  bool valid = false;
};

struct LowerCentralSeries {
  std::vector<int> dims;  // real dimensions of g, [g,g], [[g,g],g], ...
  int step = 0;           // nilpotency class; 0 when not nilpotent
  bool nilpotent = false;
};

struct NilpotentJSeries {
  bool nilpotent = false;
  std::vector<int> dims;  // dims of the J-adapted ascending series a_1, a_2, ...
};

struct SalamonResult {
  bool success = false;
  Eigen::MatrixXcd U;           // frame change; change_frame(data, U) is triangular
  std::vector<int> filtration;  // dim W_1 <= dim W_2 <= ...
};

// Coefficient vectors over the complexified frame (e_1..e_n, conj(e_1)..conj(e_n)).
Eigen::VectorXcd frame_e(int n, int i);
Eigen::VectorXcd frame_ebar(int n, int i);
Eigen::VectorXcd frame_eps(int n, int a);  // a in 1..2n
cplx bilinear_pair(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v);
Eigen::VectorXcd complex_bracket(const HermitianLieData& data, const Eigen::VectorXcd& u,
                                 const Eigen::VectorXcd& v);

ValidationReport validate(const HermitianLieData& data, double tol = kDefaultTol);

RealLieData realify(const HermitianLieData& data);

// Recovers (C, D) from real brackets; used for round-trip checks.
HermitianLieData complexify(const RealLieData& real);

// New constants in the frame e' = U e, U unitary.
HermitianLieData change_frame(const HermitianLieData& data, const Eigen::MatrixXcd& U);

LowerCentralSeries lower_central_series(const HermitianLieData& data);

NilpotentJSeries is_nilpotent_J(const HermitianLieData& data);

// Unitary coframe in which d phi_j only involves phi_i, conj(phi_i) with i < j:
// after the change, C(j,i,k) = 0 unless j > i or j > k, and D(i,j,k) = 0
// unless j > i. Built from the ascending filtration
//   W_l = { (1,0)-forms a : d a in the ideal generated by W_{l-1} }.
SalamonResult salamon_coframe(const HermitianLieData& data);

// Orthonormal basis of the kernel of M (columns), singular values below
// rel_tol * sigma_max treated as zero.
Eigen::MatrixXcd kernel_basis(const Eigen::MatrixXcd& M, double rel_tol = kRankRelTol);
int numeric_rank(const Eigen::MatrixXd& M, double rel_tol = kRankRelTol);

double max_diff(const HermitianLieData& a, const HermitianLieData& b);

}  // namespace nilkl

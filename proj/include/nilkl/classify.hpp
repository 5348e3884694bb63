#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nilkl/connections.hpp"

// Decision procedures for the three Kaehler-like properties of a nilpotent
// left-invariant Hermitian structure, including extraction of the Strominger
// normal form (closed coframe block + diagonal mixed differentials).

namespace nilkl {

struct SKLNormalForm {
  int r = 0;  // dimension of the space of d-closed invariant (1,0)-forms
  int s = 0;  // number of nonzero commutator directions
  Eigen::MatrixXcd Y;             // r x (n-r) coefficients, d phi_alpha = sum Y(i,a) phi_i conj(phi_i)
  std::vector<double> lambdas;    // s positive reals, descending
  std::vector<Eigen::VectorXd> X;  // s orthonormal vectors (length 2n) spanning [g,g], output frame
  Eigen::MatrixXcd U;             // frame change: change_frame(input, U) is in normal form
};

struct KLDecision {
  bool verdict = false;
  std::string stage;                       // first failing stage or "all-passed"
  std::map<std::string, double> residuals;  // scale-normalized; verdict <=> all < tol
  std::map<std::string, double> extras;     // diagnostics that do not gate the verdict
  std::optional<SKLNormalForm> normal_form;
  std::string warning;
};

// decision residuals are divided by (1 + M^2), M = max(|C|_inf, |D|_inf),
// which keeps verdicts stable under rescaling of the metric
double scale_normalized(double raw, const HermitianLieData& data);

struct SimDiagResult {
  Eigen::MatrixXcd U;  // unitary; U * M * U^dagger diagonal for every input
  std::vector<Eigen::VectorXcd> diagonals;
  double residual = 0.0;  // max remaining off-diagonal magnitude
};

// Simultaneous unitary diagonalization of commuting normal matrices:
// eigendecomposition of a random Hermitian combination, refined recursively
// inside degenerate eigenspaces. Both preconditions are checked against tol.
SimDiagResult simultaneous_diagonalize(const std::vector<Eigen::MatrixXcd>& mats, double tol,
                                       uint64_t seed = 0);

// Stage order: pluriclosed, nabla_s_torsion, efv_pattern, abelian_J,
// d_normal/d_commuting, diagonalization, orthogonality, normal_form_rebuild;
// the Strominger curvature symmetry residuals are computed independently and
// must reach the same verdict.
KLDecision classify_skl(const HermitianLieData& data, double tol = kDefaultTol, uint64_t seed = 0);

// Verdict from the vanishing of the Chern-torsion antiholomorphic covariant
// derivative, cross-checked against the Chern curvature symmetry. For
// nilpotent inputs a positive verdict must come with flat Chern curvature
// and D = 0; a violation throws.
KLDecision classify_ckl(const HermitianLieData& data, double tol = kDefaultTol);

// Verdict from the Riemannian curvature symmetries. For inputs with
// nilpotent J a positive verdict must have all brackets zero; a violation
// throws. theta2 and the necessary-identity residuals are reported.
KLDecision classify_rkl(const HermitianLieData& data, double tol = kDefaultTol);

}  // namespace nilkl

#pragma once

#include <map>
#include <string>
#include <vector>

#include "nilkl/algebra.hpp"

// Builders for the standard examples and normal-form families, a converter
// between coframe differentials and structure constants, and seeded
// Jacobi-exact random generators.

namespace nilkl {

// d phi_j tables: hol lists (i, k, c) with i < k for c * phi_i ^ phi_k terms,
// mixed lists (i, k, c) for c * phi_i ^ conj(phi_k) terms.
struct CoframeDifferentials {
  struct Term {
    int i = 0, k = 0;
    cplx coeff;
  };
  int n = 0;
  std::vector<std::vector<Term>> hol;    // index j-1
  std::vector<std::vector<Term>> mixed;  // index j-1

  explicit CoframeDifferentials(int n_ = 0) : n(n_), hol(n_), mixed(n_) {}
  void add_hol(int j, int i, int k, cplx c) { hol[j - 1].push_back({i, k, c}); }
  void add_mixed(int j, int i, int k, cplx c) { mixed[j - 1].push_back({i, k, c}); }
};

// C(j,i,k) = -hol coefficient, D(i,j,k) = -conj(mixed coefficient); the
// result is validated (throws JacobiViolation when d^2 != 0).
HermitianLieData from_coframe(const CoframeDifferentials& cd, double tol = kDefaultTol);
CoframeDifferentials to_coframe(const HermitianLieData& data);

HermitianLieData abelian(int n);
HermitianLieData kodaira(double lambda);
HermitianLieData iwasawa();

// Families, by name:
//   abelian            n
//   kodaira / cor12_n2 lambda
//   cor12_n3           lambda, a
//   cor12_n4a          lambda, a
//   cor12_n4b          lambda1, a, lambda2
//   cor12_n5a          lambda, a
//   cor12_n5b          lambda1, a, b, lambda2, c
//   cor12_n6a          lambda, a
//   cor12_n6b          lambda1, a, b, c, lambda2, x [, y]
//   cor12_n6c          lambda1, a, b, lambda2, c, lambda3
//   iwasawa            (none)
// For cor12_n6b the rows of the coefficient matrix must be orthogonal in the
// (-Im, Re) pairing; that forces lambda2^2 * x * y = -b*c*(lambda2^2 + a^2).
// When y is omitted it is solved for; when given it is checked.
HermitianLieData build_family(const std::string& name, const std::map<std::string, double>& params);

std::vector<std::string> family_names();

// Seeded generator over the two-step sparsity pattern: the only filled
// entries are C(alpha,i,k) for i,k <= r < alpha (antisymmetric in i,k) and
// D(i,alpha,k) for i,k <= r < alpha. Every term of each of the three Jacobi
// identity families then contains a factor whose index pattern is outside
// the filled set, so the identities hold exactly whatever the values:
//  - products C*C need an upper index <= r or a lower index > r;
//  - products involving D(l,j,r) with r summed over the upper slots pair a
//    filled C with a D whose second lower index exceeds r, and so on.
// Real and imaginary parts are drawn uniformly from [-1, 1].
HermitianLieData random_two_step(int n, int r, uint64_t seed);

// Adds seeded noise of the given magnitude to the admissible D entries of a
// structure that fits the two-step sparsity pattern (largest fitting r).
HermitianLieData perturb(const HermitianLieData& data, double magnitude, uint64_t seed);

// Rebuilds constants from a normal-form coefficient matrix: d phi_alpha =
// sum_i Y(i, alpha - r) phi_i ^ conj(phi_i), first r coframe slots closed.
HermitianLieData from_normal_form(int n, int r, const Eigen::MatrixXcd& Y);

}  // namespace nilkl

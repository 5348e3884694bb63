#pragma once

#include <optional>
#include <string>

#include "nilkl/algebra.hpp"
#include "nilkl/forms.hpp"

// Torsion, the four canonical metric connections, curvature on the real
// frame, covariant derivatives of the Chern torsion, and the residuals used
// by the Kaehler-like decision procedures.
//
// Complex coefficients of a Hermitian connection are stored as
//   A(j,i,k) = <nabla_{e_k} e_i, conj(e_j)>,
// with the (0,1)-direction derivatives forced by metric compatibility:
//   <nabla_{conj(e_k)} e_i, conj(e_j)> = -conj(A(i,j,k)).
// The real coefficient array is G(a,b,c) = <nabla_{eps_a} eps_b, eps_c>.

namespace nilkl {

enum class ConnectionKind { riemannian, chern, strominger, gauduchon0 };

const char* kind_name(ConnectionKind k);
ConnectionKind kind_from_name(const std::string& s);

// 2 T(j,i,k) = -C(j,i,k) - D(j,i,k) + D(j,k,i); antisymmetric in (i,k)
CTensor3 chern_torsion(const HermitianLieData& data);

struct ConnectionCoefficients {
  ConnectionKind kind = ConnectionKind::riemannian;
  std::optional<CTensor3> complex_part;  // absent for riemannian
  RTensor3 real_part;                    // G(a,b,c), dim 2n
};

ConnectionCoefficients connection(const HermitianLieData& data, ConnectionKind kind);

struct CurvatureTensor {
  int dim = 0;  // 2n
  RTensor4 R;   // R(a,b,c,d) = <R(eps_a,eps_b) eps_c, eps_d>
};

CurvatureTensor curvature(const ConnectionCoefficients& conn, const RealLieData& real_data);

// A connection is Kaehler-like when its curvature has all the symmetries of
// a Kaehler curvature tensor. In the complexified frame that means: both
// index pairs are of type (1,1), and the surviving block R_{i jbar k lbar}
// is symmetric under i <-> k and jbar <-> lbar. (The literal real-frame
// first/third swap is strictly stronger: combined with the first Bianchi
// identity it forces R = 0 for torsion-free connections, so the complexified
// form is the one that admits the known non-flat examples.)
struct KLResidual {
  double sym = 0.0;   // (2,0)-first-pair components and broken R_{i jbar k lbar} symmetries
  double jinv = 0.0;  // max |R(a,b,Jc,Jd) - R(a,b,c,d)|: (1,1)-type condition on the last pair
};
KLResidual kl_residual(const CurvatureTensor& R, const Eigen::MatrixXd& J);

struct TorsionDerivatives {
  CTensor4 holo;  // T(j,i,k ; l)
  CTensor4 anti;  // T(j,i,k ; conj(l))
};
// kind must be one of chern, strominger, gauduchon0
TorsionDerivatives torsion_covariant_derivative(const HermitianLieData& data, ConnectionKind kind);

// residuals of the identities that hold whenever the Riemannian connection
// is Kaehler-like (covariant derivatives taken in the gauduchon0 connection):
//   first:  T(j,i,k;l) = sum_r T(r,i,k) T(j,r,l)
//   second: T(j,i,k;conj(l)) = T(l,i,k;conj(j))
//   tcbar:  sum_r ( T(j,r,k) conj(G0(i,r,l)) + T(j,i,r) conj(G0(k,r,l))
//                   + T(r,i,k) conj(C(r,j,l)) - T(l,r,k) conj(G0(i,r,j))
//                   - T(l,i,r) conj(G0(k,r,j)) ) = 0
struct RKLResiduals {
  double lemma_first = 0.0;
  double lemma_second = 0.0;
  double tcbar = 0.0;
};
RKLResiduals rkl_necessary_residuals(const HermitianLieData& data);

// |d theta2 - theta2 ^ theta1 - conj(theta1) ^ theta2| for the Levi-Civita
// connection matrices in the splitting nabla e = theta1 e + conj(theta2) ebar:
//   theta1 = theta_chern + gamma,
//   gamma(i,j)  = T(j,i,k) phi_k - conj(T(i,j,k)) conj(phi_k),
//   theta2(i,j) = conj(T(k,i,j)) phi_k.
// Vanishes exactly when the Riemannian connection is Kaehler-like.
double theta2_residual(const HermitianLieData& data);

// Chern connection matrix theta(i,j) = D(j,i,k) phi_k - conj(D(i,j,k)) conj(phi_k)
MatrixForm chern_connection_matrix(const HermitianLieData& data);

// expansion of 2 T(j,i,k;conj(l)) for the Chern connection purely in terms of
// D products (uses the Jacobi identity to eliminate C); agreeing with twice
// the direct derivative re-verifies the mixed Jacobi identity
CTensor4 chern_anti_derivative_expansion(const HermitianLieData& data);

}  // namespace nilkl

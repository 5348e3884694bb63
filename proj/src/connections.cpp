#include "nilkl/connections.hpp"

#include <array>
#include <cmath>

namespace nilkl {

namespace {

void check_valid(const HermitianLieData& data, const char* who) {
  ValidationReport rep = validate(data);
  if (!rep.valid) throw InvalidStructure(std::string(who) + ": invalid structure");
}

// derivative of a complexified vector field along another, for a Hermitian
// connection with complex coefficients A
Eigen::VectorXcd hermitian_derivative(const CTensor3& A, int n, const Eigen::VectorXcd& dir,
                                      const Eigen::VectorXcd& vec) {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(2 * n);
  for (int k = 1; k <= n; ++k) {
    cplx dk = dir(k - 1), dkb = dir(n + k - 1);
    if (dk == cplx(0, 0) && dkb == cplx(0, 0)) continue;
    for (int i = 1; i <= n; ++i) {
      cplx vi = vec(i - 1), vib = vec(n + i - 1);
      if (vi != cplx(0, 0)) {
        for (int j = 1; j <= n; ++j) {
          // nabla_{e_k} e_i = A(j,i,k) e_j ; nabla_{conj(e_k)} e_i = -conj(A(i,j,k)) e_j
          out(j - 1) += dk * vi * A.at(j, i, k);
          out(j - 1) += dkb * vi * (-std::conj(A.at(i, j, k)));
        }
      }
      if (vib != cplx(0, 0)) {
        for (int j = 1; j <= n; ++j) {
          // nabla_{e_k} conj(e_i) = -A(i,j,k) conj(e_j) ; nabla_{conj(e_k)} conj(e_i) = conj(A(j,i,k)) conj(e_j)
          out(n + j - 1) += dk * vib * (-A.at(i, j, k));
          out(n + j - 1) += dkb * vib * std::conj(A.at(j, i, k));
        }
      }
    }
  }
  return out;
}

RTensor3 real_coefficients_from_complex(const CTensor3& A, int n) {
  const int m = 2 * n;
  RTensor3 G(m);
  std::vector<Eigen::VectorXcd> eps(m);
  for (int a = 1; a <= m; ++a) eps[a - 1] = frame_eps(n, a);
  for (int a = 1; a <= m; ++a)
    for (int b = 1; b <= m; ++b) {
      Eigen::VectorXcd der = hermitian_derivative(A, n, eps[a - 1], eps[b - 1]);
      for (int c = 1; c <= m; ++c) G.at(a, b, c) = bilinear_pair(der, eps[c - 1]).real();
    }
  return G;
}

RTensor3 koszul_coefficients(const RealLieData& rd) {
  const int m = rd.dim;
  RTensor3 G(m);
  for (int a = 1; a <= m; ++a)
    for (int b = 1; b <= m; ++b)
      for (int c = 1; c <= m; ++c)
        G.at(a, b, c) =
            0.5 * (rd.bracket.at(a, b, c) - rd.bracket.at(b, c, a) + rd.bracket.at(c, a, b));
  return G;
}

CTensor3 complex_coefficients(const HermitianLieData& data, ConnectionKind kind) {
  const int n = data.n;
  CTensor3 A(n);
  CTensor3 T = chern_torsion(data);
  switch (kind) {
    case ConnectionKind::chern:
      A = data.D;
      break;
    case ConnectionKind::strominger:
      for (int j = 1; j <= n; ++j)
        for (int i = 1; i <= n; ++i)
          for (int k = 1; k <= n; ++k) A.at(j, i, k) = -data.C.at(j, i, k) + data.D.at(j, k, i);
      break;
    case ConnectionKind::gauduchon0:
      // arithmetic mean of the Chern and Strominger coefficients (= D + T)
      for (int j = 1; j <= n; ++j)
        for (int i = 1; i <= n; ++i)
          for (int k = 1; k <= n; ++k)
            A.at(j, i, k) =
                0.5 * (data.D.at(j, i, k) + (-data.C.at(j, i, k) + data.D.at(j, k, i)));
      break;
    default:
      throw UnknownKind("complex_coefficients: riemannian has no complex coefficient array");
  }
  return A;
}

}  // namespace

const char* kind_name(ConnectionKind k) {
  switch (k) {
    case ConnectionKind::riemannian:
      return "riemannian";
    case ConnectionKind::chern:
      return "chern";
    case ConnectionKind::strominger:
      return "strominger";
    case ConnectionKind::gauduchon0:
      return "gauduchon0";
  }
  return "?";
}

ConnectionKind kind_from_name(const std::string& s) {
  if (s == "riemannian") return ConnectionKind::riemannian;
  if (s == "chern") return ConnectionKind::chern;
  if (s == "strominger") return ConnectionKind::strominger;
  if (s == "gauduchon0") return ConnectionKind::gauduchon0;
  throw UnknownKind("unknown connection kind '" + s + "'");
}

CTensor3 chern_torsion(const HermitianLieData& data) {
  check_valid(data, "chern_torsion");
  const int n = data.n;
  CTensor3 T(n);
  for (int j = 1; j <= n; ++j)
    for (int i = 1; i <= n; ++i)
      for (int k = 1; k <= n; ++k)
        T.at(j, i, k) = 0.5 * (-data.C.at(j, i, k) - data.D.at(j, i, k) + data.D.at(j, k, i));
  return T;
}

ConnectionCoefficients connection(const HermitianLieData& data, ConnectionKind kind) {
  check_valid(data, "connection");
  ConnectionCoefficients out;
  out.kind = kind;
  if (kind == ConnectionKind::riemannian) {
    out.real_part = koszul_coefficients(realify(data));
  } else {
    out.complex_part = complex_coefficients(data, kind);
    out.real_part = real_coefficients_from_complex(*out.complex_part, data.n);
  }
  return out;
}

CurvatureTensor curvature(const ConnectionCoefficients& conn, const RealLieData& real_data) {
  const int m = real_data.dim;
  if (conn.real_part.dim() != m) throw DimensionMismatch("curvature: coefficient/bracket dims");
  const RTensor3& G = conn.real_part;
  const RTensor3& f = real_data.bracket;

  CurvatureTensor out;
  out.dim = m;
  out.R = RTensor4(m);
  for (int a = 1; a <= m; ++a)
    for (int b = a + 1; b <= m; ++b)
      for (int c = 1; c <= m; ++c)
        for (int d = 1; d <= m; ++d) {
          double s = 0.0;
          for (int e = 1; e <= m; ++e)
            s += G.at(b, c, e) * G.at(a, e, d) - G.at(a, c, e) * G.at(b, e, d) -
                 f.at(a, b, e) * G.at(e, c, d);
          out.R.at(a, b, c, d) = s;
          out.R.at(b, a, c, d) = -s;
        }
  return out;
}

namespace {

// weights of e_i (bar = false) or conj(e_i) (bar = true) over the real frame,
// e_i = (eps_i - i eps_{n+i}) / sqrt(2)
std::array<std::pair<int, cplx>, 2> holo_weights(int n, int i, bool bar) {
  const double s = 1.0 / std::sqrt(2.0);
  cplx im = bar ? cplx(0, s) : cplx(0, -s);
  return {std::make_pair(i, cplx(s, 0)), std::make_pair(n + i, im)};
}

cplx complex_component(const CurvatureTensor& R, int n, int p, bool pb, int q, bool qb, int r,
                       bool rb, int s, bool sb) {
  cplx out = 0.0;
  for (auto [a, wa] : holo_weights(n, p, pb))
    for (auto [b, wb] : holo_weights(n, q, qb))
      for (auto [c, wc] : holo_weights(n, r, rb))
        for (auto [d, wd] : holo_weights(n, s, sb))
          out += wa * wb * wc * wd * R.R.at(a, b, c, d);
  return out;
}

}  // namespace

// sym: violations of the Kaehler curvature shape in the complexified frame --
// components with a (2,0) or (0,2) first pair, and failures of the
// symmetries R_{i jbar k lbar} = R_{k jbar i lbar} = R_{i lbar k jbar}.
// jinv: J applied to the last two slots as a basis transform on the real
// frame, which measures the (1,1)-type condition on the last pair.
KLResidual kl_residual(const CurvatureTensor& R, const Eigen::MatrixXd& J) {
  const int m = R.dim;
  const int n = m / 2;
  if (J.rows() != m || J.cols() != m) throw DimensionMismatch("kl_residual: J size");

  KLResidual out;
  for (int a = 1; a <= m; ++a)
    for (int b = 1; b <= m; ++b)
      for (int c = 1; c <= m; ++c)
        for (int d = 1; d <= m; ++d) {
          double rj = 0.0;
          for (int p = 1; p <= m; ++p) {
            if (J(p - 1, c - 1) == 0.0) continue;
            for (int q = 1; q <= m; ++q) {
              if (J(q - 1, d - 1) == 0.0) continue;
              rj += J(p - 1, c - 1) * J(q - 1, d - 1) * R.R.at(a, b, p, q);
            }
          }
          out.jinv = std::max(out.jinv, std::abs(rj - R.R.at(a, b, c, d)));
        }

  // (2,0)-type first pair against every last pair
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      for (int r = 1; r <= n; ++r)
        for (int s = 1; s <= n; ++s)
          for (int rb = 0; rb < 2; ++rb)
            for (int sb = 0; sb < 2; ++sb)
              out.sym = std::max(
                  out.sym, std::abs(complex_component(R, n, i, false, j, false, r, rb != 0, s,
                                                      sb != 0)));
  // symmetry of the (1,1|1,1) block in its holomorphic and antiholomorphic slots
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      for (int k = 1; k <= n; ++k)
        for (int l = 1; l <= n; ++l) {
          cplx base = complex_component(R, n, i, false, j, true, k, false, l, true);
          cplx sik = complex_component(R, n, k, false, j, true, i, false, l, true);
          cplx sjl = complex_component(R, n, i, false, l, true, k, false, j, true);
          out.sym = std::max(out.sym, std::abs(base - sik));
          out.sym = std::max(out.sym, std::abs(base - sjl));
        }
  return out;
}

TorsionDerivatives torsion_covariant_derivative(const HermitianLieData& data, ConnectionKind kind) {
  check_valid(data, "torsion_covariant_derivative");
  if (kind == ConnectionKind::riemannian)
    throw UnknownKind("torsion_covariant_derivative: expects a Hermitian connection kind");
  const int n = data.n;
  CTensor3 T = chern_torsion(data);
  CTensor3 A = complex_coefficients(data, kind);

  TorsionDerivatives out;
  out.holo = CTensor4(n);
  out.anti = CTensor4(n);
  for (int j = 1; j <= n; ++j)
    for (int i = 1; i <= n; ++i)
      for (int k = 1; k <= n; ++k)
        for (int l = 1; l <= n; ++l) {
          cplx sh = 0.0, sa = 0.0;
          for (int p = 1; p <= n; ++p) {
            sh += -T.at(j, p, k) * A.at(p, i, l) - T.at(j, i, p) * A.at(p, k, l) +
                  T.at(p, i, k) * A.at(j, p, l);
            sa += T.at(j, p, k) * std::conj(A.at(i, p, l)) +
                  T.at(j, i, p) * std::conj(A.at(k, p, l)) -
                  T.at(p, i, k) * std::conj(A.at(p, j, l));
          }
          out.holo.at(j, i, k, l) = sh;
          out.anti.at(j, i, k, l) = sa;
        }
  return out;
}

RKLResiduals rkl_necessary_residuals(const HermitianLieData& data) {
  check_valid(data, "rkl_necessary_residuals");
  const int n = data.n;
  CTensor3 T = chern_torsion(data);
  CTensor3 G0 = complex_coefficients(data, ConnectionKind::gauduchon0);
  TorsionDerivatives td = torsion_covariant_derivative(data, ConnectionKind::gauduchon0);

  RKLResiduals out;
  for (int j = 1; j <= n; ++j)
    for (int i = 1; i <= n; ++i)
      for (int k = 1; k <= n; ++k)
        for (int l = 1; l <= n; ++l) {
          cplx s1 = td.holo.at(j, i, k, l);
          for (int r = 1; r <= n; ++r) s1 -= T.at(r, i, k) * T.at(j, r, l);
          out.lemma_first = std::max(out.lemma_first, std::abs(s1));

          out.lemma_second = std::max(
              out.lemma_second, std::abs(td.anti.at(j, i, k, l) - td.anti.at(l, i, k, j)));

          cplx s3 = 0.0;
          for (int r = 1; r <= n; ++r)
            s3 += T.at(j, r, k) * std::conj(G0.at(i, r, l)) +
                  T.at(j, i, r) * std::conj(G0.at(k, r, l)) +
                  T.at(r, i, k) * std::conj(data.C.at(r, j, l)) -
                  T.at(l, r, k) * std::conj(G0.at(i, r, j)) -
                  T.at(l, i, r) * std::conj(G0.at(k, r, j));
          out.tcbar = std::max(out.tcbar, std::abs(s3));
        }
  return out;
}

MatrixForm chern_connection_matrix(const HermitianLieData& data) {
  const int n = data.n;
  MatrixForm theta(n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      for (int k = 1; k <= n; ++k) {
        theta.at(i, j).add(1u << (k - 1), 0, data.D.at(j, i, k));
        theta.at(i, j).add(0, 1u << (k - 1), -std::conj(data.D.at(i, j, k)));
      }
  return theta;
}

double theta2_residual(const HermitianLieData& data) {
  check_valid(data, "theta2_residual");
  const int n = data.n;
  CTensor3 T = chern_torsion(data);

  MatrixForm theta = chern_connection_matrix(data);
  MatrixForm gamma(n), theta2(n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      for (int k = 1; k <= n; ++k) {
        gamma.at(i, j).add(1u << (k - 1), 0, T.at(j, i, k));
        gamma.at(i, j).add(0, 1u << (k - 1), -std::conj(T.at(i, j, k)));
        theta2.at(i, j).add(1u << (k - 1), 0, std::conj(T.at(k, i, j)));
      }
  MatrixForm theta1 = mf_add(theta, gamma);

  MatrixForm big = mf_sub(mf_sub(mf_d(theta2, data), mf_wedge(theta2, theta1)),
                          mf_wedge(mf_conj(theta1), theta2));
  return big.norm_inf();
}

CTensor4 chern_anti_derivative_expansion(const HermitianLieData& data) {
  const int n = data.n;
  const CTensor3& D = data.D;
  CTensor4 out(n);
  for (int j = 1; j <= n; ++j)
    for (int i = 1; i <= n; ++i)
      for (int k = 1; k <= n; ++k)
        for (int l = 1; l <= n; ++l) {
          cplx s = 0.0;
          for (int r = 1; r <= n; ++r) {
            s += -(D.at(j, r, k) - D.at(j, k, r)) * std::conj(D.at(i, r, l));
            s += -(D.at(j, i, r) - D.at(j, r, i)) * std::conj(D.at(k, r, l));
            s += (D.at(r, i, k) - D.at(r, k, i)) * std::conj(D.at(r, j, l));
            s += D.at(l, r, i) * std::conj(D.at(k, j, r)) - D.at(l, r, k) * std::conj(D.at(i, j, r));
          }
          out.at(j, i, k, l) = s;
        }
  return out;
}

}  // namespace nilkl

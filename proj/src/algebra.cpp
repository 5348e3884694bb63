#include "nilkl/algebra.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <limits>

namespace nilkl {

namespace {

const double kSqrt2 = std::sqrt(2.0);
const cplx kI(0.0, 1.0);

void check_valid(const HermitianLieData& data, const char* who) {
  ValidationReport rep = validate(data);
  if (!rep.valid) {
    throw InvalidStructure(std::string(who) + ": structure constants fail validation (residual " +
                           std::to_string(rep.jacobi_residual) + ")");
  }
}

// brackets of the 2n complexified basis vectors, row = coefficient vector
std::vector<std::vector<Eigen::VectorXcd>> basis_bracket_table(const HermitianLieData& data) {
  const int n = data.n;
  std::vector<std::vector<Eigen::VectorXcd>> tab(2 * n,
                                                 std::vector<Eigen::VectorXcd>(2 * n));
  for (int p = 0; p < 2 * n; ++p)
    for (int q = 0; q < 2 * n; ++q) tab[p][q] = Eigen::VectorXcd::Zero(2 * n);

  for (int i = 1; i <= n; ++i) {
    for (int k = 1; k <= n; ++k) {
      // [e_i, e_k]
      for (int j = 1; j <= n; ++j) tab[i - 1][k - 1](j - 1) += data.C.at(j, i, k);
      // [conj(e_i), e_k]
      for (int m = 1; m <= n; ++m) {
        tab[n + i - 1][k - 1](m - 1) += -std::conj(data.D.at(k, m, i));
        tab[n + i - 1][k - 1](n + m - 1) += data.D.at(i, m, k);
      }
      // [e_i, conj(e_k)] = -[conj(e_k), e_i]
      for (int m = 1; m <= n; ++m) {
        tab[i - 1][n + k - 1](m - 1) += std::conj(data.D.at(i, m, k));
        tab[i - 1][n + k - 1](n + m - 1) += -data.D.at(k, m, i);
      }
      // [conj(e_i), conj(e_k)]
      for (int j = 1; j <= n; ++j) tab[n + i - 1][n + k - 1](n + j - 1) += std::conj(data.C.at(j, i, k));
    }
  }
  return tab;
}

double real_jacobi_residual(const RealLieData& rd) {
  const int m = rd.dim;
  double worst = 0.0;
  for (int a = 1; a <= m; ++a)
    for (int b = a + 1; b <= m; ++b)
      for (int c = b + 1; c <= m; ++c)
        for (int d = 1; d <= m; ++d) {
          double s = 0.0;
          for (int e = 1; e <= m; ++e) {
            s += rd.bracket.at(a, b, e) * rd.bracket.at(e, c, d);
            s += rd.bracket.at(b, c, e) * rd.bracket.at(e, a, d);
            s += rd.bracket.at(c, a, e) * rd.bracket.at(e, b, d);
          }
          worst = std::max(worst, std::abs(s));
        }
  return worst;
}

RealLieData realify_unchecked(const HermitianLieData& data) {
  const int n = data.n;
  const int m = 2 * n;
  RealLieData rd;
  rd.dim = m;
  rd.bracket = RTensor3(m);
  rd.J = Eigen::MatrixXd::Zero(m, m);
  for (int i = 1; i <= n; ++i) {
    rd.J(n + i - 1, i - 1) = 1.0;
    rd.J(i - 1, n + i - 1) = -1.0;
  }

  auto tab = basis_bracket_table(data);
  std::vector<Eigen::VectorXcd> eps(m);
  for (int a = 1; a <= m; ++a) eps[a - 1] = frame_eps(n, a);

  for (int a = 1; a <= m; ++a) {
    for (int b = a + 1; b <= m; ++b) {
      Eigen::VectorXcd w = Eigen::VectorXcd::Zero(m);
      for (int p = 0; p < m; ++p) {
        if (eps[a - 1](p) == cplx(0, 0)) continue;
        for (int q = 0; q < m; ++q) {
          if (eps[b - 1](q) == cplx(0, 0)) continue;
          w += eps[a - 1](p) * eps[b - 1](q) * tab[p][q];
        }
      }
      // components <w, eps_c>; w is real, so these are real
      for (int c = 1; c <= m; ++c) {
        cplx comp = bilinear_pair(w, eps[c - 1]);
        rd.bracket.at(a, b, c) = comp.real();
        rd.bracket.at(b, a, c) = -comp.real();
      }
    }
  }
  return rd;
}

}  // namespace

Eigen::VectorXcd frame_e(int n, int i) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(2 * n);
  v(i - 1) = 1.0;
  return v;
}

Eigen::VectorXcd frame_ebar(int n, int i) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(2 * n);
  v(n + i - 1) = 1.0;
  return v;
}

Eigen::VectorXcd frame_eps(int n, int a) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(2 * n);
  if (a <= n) {
    v(a - 1) = 1.0 / kSqrt2;
    v(n + a - 1) = 1.0 / kSqrt2;
  } else {
    int b = a - n;
    v(b - 1) = kI / kSqrt2;
    v(n + b - 1) = -kI / kSqrt2;
  }
  return v;
}

cplx bilinear_pair(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v) {
  const int n = static_cast<int>(u.size()) / 2;
  cplx s = 0.0;
  for (int j = 0; j < n; ++j) s += u(j) * v(n + j) + u(n + j) * v(j);
  return s;
}

Eigen::VectorXcd complex_bracket(const HermitianLieData& data, const Eigen::VectorXcd& u,
                                 const Eigen::VectorXcd& v) {
  const int m = 2 * data.n;
  if (u.size() != m || v.size() != m) throw DimensionMismatch("complex_bracket: vector size");
  auto tab = basis_bracket_table(data);
  Eigen::VectorXcd w = Eigen::VectorXcd::Zero(m);
  for (int p = 0; p < m; ++p) {
    if (u(p) == cplx(0, 0)) continue;
    for (int q = 0; q < m; ++q) {
      if (v(q) == cplx(0, 0)) continue;
      w += u(p) * v(q) * tab[p][q];
    }
  }
  return w;
}

ValidationReport validate(const HermitianLieData& data, double tol) {
  const int n = data.n;
  ValidationReport rep;

  for (const auto* t : {&data.C, &data.D})
    for (const auto& z : t->raw())
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        rep.jacobi_residual = std::numeric_limits<double>::infinity();
        rep.jacobi_breakdown = {rep.jacobi_residual, rep.jacobi_residual, rep.jacobi_residual};
        return rep;  // antisymmetry_ok and valid stay false
      }

  rep.antisymmetry_ok = true;
  for (int j = 1; j <= n && rep.antisymmetry_ok; ++j)
    for (int i = 1; i <= n && rep.antisymmetry_ok; ++i)
      for (int k = 1; k <= n; ++k)
        if (data.C.at(j, i, k) != -data.C.at(j, k, i)) {
          rep.antisymmetry_ok = false;
          break;
        }

  // jac1: pure C cyclic identity. jac2: bilinear in (C,D) and (D,D).
  // jac3: the family mixing D with conjugates (closure of the mixed brackets).
  double j1 = 0.0, j2 = 0.0, j3 = 0.0;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      for (int k = 1; k <= n; ++k)
        for (int l = 1; l <= n; ++l) {
          cplx s1 = 0.0, s2 = 0.0, s3 = 0.0;
          for (int r = 1; r <= n; ++r) {
            s1 += data.C.at(r, i, j) * data.C.at(l, r, k) + data.C.at(r, j, k) * data.C.at(l, r, i) +
                  data.C.at(r, k, i) * data.C.at(l, r, j);
            s2 += data.C.at(r, i, k) * data.D.at(l, j, r) + data.D.at(r, j, i) * data.D.at(l, r, k) -
                  data.D.at(r, j, k) * data.D.at(l, r, i);
            s3 += data.C.at(r, i, k) * std::conj(data.D.at(r, j, l)) -
                  data.C.at(j, r, k) * std::conj(data.D.at(i, r, l)) +
                  data.C.at(j, r, i) * std::conj(data.D.at(k, r, l)) -
                  data.D.at(l, r, i) * std::conj(data.D.at(k, j, r)) +
                  data.D.at(l, r, k) * std::conj(data.D.at(i, j, r));
          }
          j1 = std::max(j1, std::abs(s1));
          j2 = std::max(j2, std::abs(s2));
          j3 = std::max(j3, std::abs(s3));
        }
  rep.jacobi_breakdown = {j1, j2, j3};
  rep.jacobi_residual = std::max({j1, j2, j3});
  rep.real_jacobi_residual = real_jacobi_residual(realify_unchecked(data));
  rep.valid = rep.antisymmetry_ok && rep.jacobi_residual < tol;
  return rep;
}

RealLieData realify(const HermitianLieData& data) {
  check_valid(data, "realify");
  return realify_unchecked(data);
}

HermitianLieData complexify(const RealLieData& rd) {
  const int n = rd.dim / 2;
  HermitianLieData out(n);
  // e_i = (eps_i - i eps_{n+i})/sqrt(2); pairings read off the real brackets
  auto bracket_eps = [&](int a, int b, int c) { return rd.bracket.at(a, b, c); };
  for (int j = 1; j <= n; ++j)
    for (int i = 1; i <= n; ++i)
      for (int k = 1; k <= n; ++k) {
        // [e_i, e_k] = 1/2 [eps_i - i eps_{n+i}, eps_k - i eps_{n+k}]
        Eigen::VectorXd w = Eigen::VectorXd::Zero(rd.dim);
        Eigen::VectorXd wi = Eigen::VectorXd::Zero(rd.dim);  // imaginary part
        for (int c = 1; c <= rd.dim; ++c) {
          w(c - 1) = 0.5 * (bracket_eps(i, k, c) - bracket_eps(n + i, n + k, c));
          wi(c - 1) = 0.5 * (-bracket_eps(i, n + k, c) - bracket_eps(n + i, k, c));
        }
        // C(j,i,k) = <[e_i,e_k], conj(e_j)>, conj(e_j) = (eps_j + i eps_{n+j})/sqrt(2)
        cplx re(w(j - 1), wi(j - 1)), im(w(n + j - 1), wi(n + j - 1));
        out.C.at(j, i, k) = (re + kI * im) / kSqrt2;

        // [conj(e_j), e_k] = 1/2 [eps_j + i eps_{n+j}, eps_k - i eps_{n+k}]
        for (int c = 1; c <= rd.dim; ++c) {
          w(c - 1) = 0.5 * (bracket_eps(j, k, c) + bracket_eps(n + j, n + k, c));
          wi(c - 1) = 0.5 * (bracket_eps(n + j, k, c) - bracket_eps(j, n + k, c));
        }
        // D(j,i,k) = <[conj(e_j), e_k], e_i>, e_i = (eps_i - i eps_{n+i})/sqrt(2)
        cplx r2(w(i - 1), wi(i - 1)), i2(w(n + i - 1), wi(n + i - 1));
        out.D.at(j, i, k) = (r2 - kI * i2) / kSqrt2;
      }
  return out;
}

HermitianLieData change_frame(const HermitianLieData& data, const Eigen::MatrixXcd& U) {
  const int n = data.n;
  if (U.rows() != n || U.cols() != n) throw DimensionMismatch("change_frame: U size");
  double udev = (U.adjoint() * U - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
  if (udev > 1e-10) throw NotUnitary("change_frame: U deviates from unitary by " + std::to_string(udev));

  HermitianLieData out(n, data.label);
  for (int j = 1; j <= n; ++j)
    for (int i = 1; i <= n; ++i)
      for (int k = 1; k <= n; ++k) {
        cplx sc = 0.0, sd = 0.0;
        for (int c = 1; c <= n; ++c) {
          if (U(j - 1, c - 1) == cplx(0, 0)) continue;
          cplx uj = std::conj(U(j - 1, c - 1));
          for (int a = 1; a <= n; ++a)
            for (int b = 1; b <= n; ++b) {
              cplx w = U(i - 1, a - 1) * U(k - 1, b - 1) * uj;
              if (i < k) sc += w * data.C.at(c, a, b);
              sd += w * data.D.at(c, a, b);
            }
        }
        if (i < k) out.set_C(j, i, k, sc);  // keeps antisymmetry exact
        out.D.at(j, i, k) = sd;
      }
  return out;
}

namespace {

// singular values are zero below rel_tol * sigma_max, with an absolute floor
// tied to the entry magnitude so that all-roundoff matrices rank as zero
template <typename SV>
int count_rank(const SV& s, double rel_tol, double entry_scale) {
  if (s.size() == 0) return 0;
  double thr = std::max(rel_tol * s(0), 1e-12 * std::max(1.0, entry_scale));
  int r = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s(i) > thr) ++r;
  return r;
}

}  // namespace

int numeric_rank(const Eigen::MatrixXd& M, double rel_tol) {
  if (M.rows() == 0 || M.cols() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
  return count_rank(svd.singularValues(), rel_tol, M.cwiseAbs().maxCoeff());
}

Eigen::MatrixXcd kernel_basis(const Eigen::MatrixXcd& M, double rel_tol) {
  const int cols = static_cast<int>(M.cols());
  if (M.rows() == 0) return Eigen::MatrixXcd::Identity(cols, cols);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M, Eigen::ComputeFullV);
  int rank = count_rank(svd.singularValues(), rel_tol, M.cwiseAbs().maxCoeff());
  if (rank == 0) return Eigen::MatrixXcd::Identity(cols, cols);
  return svd.matrixV().rightCols(cols - rank);
}

LowerCentralSeries lower_central_series(const HermitianLieData& data) {
  check_valid(data, "lower_central_series");
  RealLieData rd = realify_unchecked(data);
  const int m = rd.dim;

  LowerCentralSeries out;
  out.dims.push_back(m);

  // current term of the series as columns of an orthonormal matrix
  Eigen::MatrixXd cur = Eigen::MatrixXd::Identity(m, m);
  while (true) {
    const int w = static_cast<int>(cur.cols());
    if (w == 0) break;
    // span of [cur, g]
    Eigen::MatrixXd spanv(m, static_cast<size_t>(w) * m);
    for (int t = 0; t < w; ++t)
      for (int b = 1; b <= m; ++b) {
        Eigen::VectorXd v = Eigen::VectorXd::Zero(m);
        for (int a = 1; a <= m; ++a) {
          if (cur(a - 1, t) == 0.0) continue;
          for (int c = 1; c <= m; ++c) v(c - 1) += cur(a - 1, t) * rd.bracket.at(a, b, c);
        }
        spanv.col(static_cast<size_t>(t) * m + b - 1) = v;
      }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(spanv, Eigen::ComputeThinU);
    int rank = count_rank(svd.singularValues(), kRankRelTol, spanv.cwiseAbs().maxCoeff());

    out.dims.push_back(rank);
    if (rank == 0) {
      out.nilpotent = true;
      out.step = static_cast<int>(out.dims.size()) - 1;
      break;
    }
    if (rank >= w) break;  // stalled: not nilpotent
    cur = svd.matrixU().leftCols(rank);
  }
  return out;
}

NilpotentJSeries is_nilpotent_J(const HermitianLieData& data) {
  check_valid(data, "is_nilpotent_J");
  RealLieData rd = realify_unchecked(data);
  const int m = rd.dim;

  NilpotentJSeries out;
  // a_0 = 0; a_l = { X : [X,g] in a_{l-1} and [JX,g] in a_{l-1} }
  Eigen::MatrixXd prev(m, 0);
  int prev_dim = 0;
  while (true) {
    // projector onto the complement of prev
    Eigen::MatrixXd P = Eigen::MatrixXd::Identity(m, m) - prev * prev.transpose();
    // constraints: P [X, eps_b] = 0 and P [JX, eps_b] = 0 for all b
    Eigen::MatrixXd M(2 * m * m, m);
    int row = 0;
    for (int b = 1; b <= m; ++b) {
      // rows for [X, eps_b]: X = sum_a x_a eps_a
      Eigen::MatrixXd adb(m, m);  // adb(c,a) = <[eps_a, eps_b], eps_c>
      for (int a = 1; a <= m; ++a)
        for (int c = 1; c <= m; ++c) adb(c - 1, a - 1) = rd.bracket.at(a, b, c);
      Eigen::MatrixXd r1 = P * adb;
      Eigen::MatrixXd r2 = P * adb * rd.J;
      M.block(row, 0, m, m) = r1;
      M.block(row + m, 0, m, m) = r2;
      row += 2 * m;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeFullV);
    int rank = count_rank(svd.singularValues(), kRankRelTol, M.cwiseAbs().maxCoeff());
    int kdim = m - rank;

    out.dims.push_back(kdim);
    if (kdim == m) {
      out.nilpotent = true;
      break;
    }
    if (kdim <= prev_dim) break;  // stalled
    prev = svd.matrixV().rightCols(kdim);
    prev_dim = kdim;
  }
  return out;
}

SalamonResult salamon_coframe(const HermitianLieData& data) {
  check_valid(data, "salamon_coframe");
  const int n = data.n;

  SalamonResult out;
  out.U = Eigen::MatrixXcd::Identity(n, n);

  HermitianLieData cur = data;
  int m = 0;  // current filtration dimension, occupying slots 1..m
  while (m < n) {
    // constraint rows for a coefficient vector a (alpha = sum a_j phi_j):
    //  (2,0) monomial phi_u^phi_v with u,v > m:   sum_j a_j C(j,u,v) = 0
    //  (1,1) monomial phi_u^conj(phi_v), u > m:   sum_j a_j conj(D(u,j,v)) = 0
    std::vector<Eigen::RowVectorXcd> rows;
    for (int u = m + 1; u <= n; ++u) {
      for (int v = u + 1; v <= n; ++v) {
        Eigen::RowVectorXcd r(n);
        for (int j = 1; j <= n; ++j) r(j - 1) = cur.C.at(j, u, v);
        rows.push_back(r);
      }
      for (int v = 1; v <= n; ++v) {
        Eigen::RowVectorXcd r(n);
        for (int j = 1; j <= n; ++j) r(j - 1) = std::conj(cur.D.at(u, j, v));
        rows.push_back(r);
      }
    }
    Eigen::MatrixXcd M(rows.size(), n);
    for (size_t i = 0; i < rows.size(); ++i) M.row(i) = rows[i];
    Eigen::MatrixXcd K = kernel_basis(M);
    int kdim = static_cast<int>(K.cols());

    if (kdim <= m) {  // no growth
      out.success = false;
      return out;
    }
    out.filtration.push_back(kdim);
    if (kdim == n && m == 0) {
      // everything already closed; keep the identity frame
      out.success = true;
      return out;
    }

    // extend the first m coframe slots by the new kernel directions
    // project kernel onto the complement of the current block
    Eigen::MatrixXcd P = Eigen::MatrixXcd::Identity(n, n);
    for (int t = 0; t < m; ++t) P(t, t) = 0.0;
    Eigen::MatrixXcd cand = P * K;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(cand, Eigen::ComputeThinU);
    Eigen::MatrixXcd newdirs = svd.matrixU().leftCols(kdim - m);

    // coframe rotation Q: rows 1..m identity, rows m+1..kdim the new
    // directions, remainder an orthonormal completion
    Eigen::MatrixXcd Q = Eigen::MatrixXcd::Zero(n, n);
    for (int t = 0; t < m; ++t) Q(t, t) = 1.0;
    for (int t = 0; t < kdim - m; ++t) Q.row(m + t) = newdirs.col(t).transpose();
    // completion: kernel of the rows built so far
    Eigen::MatrixXcd built = Q.topRows(kdim);
    Eigen::MatrixXcd compl_basis = kernel_basis(built.conjugate());
    for (int t = 0; t < n - kdim; ++t) Q.row(kdim + t) = compl_basis.col(t).transpose();

    Eigen::MatrixXcd Ustep = Q.conjugate();  // frame change matching the coframe rotation
    cur = change_frame(cur, Ustep);
    out.U = Ustep * out.U;
    m = kdim;
  }
  out.success = true;
  return out;
}

double max_diff(const HermitianLieData& a, const HermitianLieData& b) {
  if (a.n != b.n) throw DimensionMismatch("max_diff: dimensions differ");
  double r = 0.0;
  for (size_t t = 0; t < a.C.raw().size(); ++t) {
    r = std::max(r, std::abs(a.C.raw()[t] - b.C.raw()[t]));
    r = std::max(r, std::abs(a.D.raw()[t] - b.D.raw()[t]));
  }
  return r;
}

}  // namespace nilkl

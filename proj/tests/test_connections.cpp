#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nilkl/catalog.hpp>
#include <nilkl/connections.hpp>

using namespace nilkl;

namespace {

Eigen::MatrixXcd random_unitary(int n, uint64_t seed) {
  Rng rng(seed);
  Eigen::MatrixXcd A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = rng.cbox();
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(A);
  return qr.householderQ();
}

std::vector<HermitianLieData> sample_structures() {
  return {abelian(2), kodaira(1.0), iwasawa(), random_two_step(3, 2, 4), random_two_step(4, 2, 8),
          build_family("cor12_n3", {{"lambda", 1.0}, {"a", 1.0}})};
}

double real_antisym_12(const CurvatureTensor& R) {
  double r = 0.0;
  for (int a = 1; a <= R.dim; ++a)
    for (int b = 1; b <= R.dim; ++b)
      for (int c = 1; c <= R.dim; ++c)
        for (int d = 1; d <= R.dim; ++d)
          r = std::max(r, std::abs(R.R.at(a, b, c, d) + R.R.at(b, a, c, d)));
  return r;
}

double real_antisym_34(const CurvatureTensor& R) {
  double r = 0.0;
  for (int a = 1; a <= R.dim; ++a)
    for (int b = 1; b <= R.dim; ++b)
      for (int c = 1; c <= R.dim; ++c)
        for (int d = 1; d <= R.dim; ++d)
          r = std::max(r, std::abs(R.R.at(a, b, c, d) + R.R.at(a, b, d, c)));
  return r;
}

}  // namespace

TEST_CASE("chern_torsion: abelian, kodaira, iwasawa") {
  CHECK(chern_torsion(abelian(3)).max_abs() == 0.0);

  double lambda = 1.0;
  CTensor3 Tk = chern_torsion(kodaira(lambda));
  CHECK(std::abs(Tk.at(1, 1, 2) - cplx(-lambda / 2, 0)) < 1e-15);
  CHECK(std::abs(Tk.at(1, 2, 1) - cplx(lambda / 2, 0)) < 1e-15);
  double other = 0.0;
  for (int j = 1; j <= 2; ++j)
    for (int i = 1; i <= 2; ++i)
      for (int k = 1; k <= 2; ++k)
        if (!(j == 1 && ((i == 1 && k == 2) || (i == 2 && k == 1))))
          other = std::max(other, std::abs(Tk.at(j, i, k)));
  CHECK(other == 0.0);

  CTensor3 Ti = chern_torsion(iwasawa());
  CHECK(std::abs(Ti.at(3, 1, 2) - cplx(-0.5, 0)) < 1e-15);
}

TEST_CASE("torsion is antisymmetric exactly") {
  HermitianLieData d = random_two_step(4, 2, 12);
  CTensor3 T = chern_torsion(d);
  for (int j = 1; j <= 4; ++j)
    for (int i = 1; i <= 4; ++i)
      for (int k = 1; k <= 4; ++k) CHECK(T.at(j, i, k) == -T.at(j, k, i));
}

TEST_CASE("connection: coefficient examples") {
  for (auto kind : {ConnectionKind::riemannian, ConnectionKind::chern, ConnectionKind::strominger,
                    ConnectionKind::gauduchon0}) {
    auto conn = connection(abelian(2), kind);
    CHECK(conn.real_part.max_abs() == 0.0);
  }

  double lambda = 1.1;
  auto st = connection(kodaira(lambda), ConnectionKind::strominger);
  REQUIRE(st.complex_part.has_value());
  CHECK(std::abs(st.complex_part->at(1, 1, 2) - cplx(-lambda, 0)) < 1e-15);
  double other = 0.0;
  for (int j = 1; j <= 2; ++j)
    for (int i = 1; i <= 2; ++i)
      for (int k = 1; k <= 2; ++k)
        if (!(j == 1 && i == 1 && k == 2))
          other = std::max(other, std::abs(st.complex_part->at(j, i, k)));
  CHECK(other == 0.0);

  auto ch = connection(iwasawa(), ConnectionKind::chern);
  REQUIRE(ch.complex_part.has_value());
  CHECK(ch.complex_part->max_abs() == 0.0);
}

TEST_CASE("gauduchon0 = mean of chern and strominger = D + T") {
  HermitianLieData d = random_two_step(4, 2, 19);
  auto g0 = connection(d, ConnectionKind::gauduchon0);
  auto ch = connection(d, ConnectionKind::chern);
  auto st = connection(d, ConnectionKind::strominger);
  CTensor3 T = chern_torsion(d);
  REQUIRE(g0.complex_part.has_value());
  double dev_mean = 0.0, dev_dt = 0.0;
  for (int j = 1; j <= 4; ++j)
    for (int i = 1; i <= 4; ++i)
      for (int k = 1; k <= 4; ++k) {
        dev_mean = std::max(dev_mean,
                            std::abs(g0.complex_part->at(j, i, k) -
                                     0.5 * (ch.complex_part->at(j, i, k) +
                                            st.complex_part->at(j, i, k))));
        dev_dt = std::max(dev_dt, std::abs(g0.complex_part->at(j, i, k) -
                                           (d.D.at(j, i, k) + T.at(j, i, k))));
      }
  CHECK(dev_mean == 0.0);
  CHECK(dev_dt < 1e-15);
}

TEST_CASE("real coefficients are metric compatible") {
  for (const auto& d : sample_structures()) {
    for (auto kind : {ConnectionKind::riemannian, ConnectionKind::chern,
                      ConnectionKind::strominger, ConnectionKind::gauduchon0}) {
      auto conn = connection(d, kind);
      const int m = 2 * d.n;
      double dev = 0.0;
      for (int a = 1; a <= m; ++a)
        for (int b = 1; b <= m; ++b)
          for (int c = 1; c <= m; ++c)
            dev = std::max(dev, std::abs(conn.real_part.at(a, b, c) + conn.real_part.at(a, c, b)));
      CHECK(dev < 1e-12);
    }
  }
}

TEST_CASE("real coefficients of Hermitian kinds realify the complex ones") {
  HermitianLieData d = random_two_step(3, 2, 77);
  auto conn = connection(d, ConnectionKind::strominger);
  const int n = d.n;
  // recover A(j,i,k) = <nabla_{e_k} e_i, conj(e_j)> from the real array
  for (int j = 1; j <= n; ++j)
    for (int i = 1; i <= n; ++i)
      for (int k = 1; k <= n; ++k) {
        Eigen::VectorXcd ejb = frame_ebar(n, j);
        cplx got = 0.0;
        // expand via e_a = (eps_a - i eps_{n+a})/sqrt(2) in both slots
        const double s2 = std::sqrt(2.0);
        std::vector<std::pair<int, cplx>> dirs = {{k, 1.0 / s2}, {n + k, cplx(0, -1) / s2}};
        std::vector<std::pair<int, cplx>> vecs = {{i, 1.0 / s2}, {n + i, cplx(0, -1) / s2}};
        for (auto [a, wa] : dirs)
          for (auto [b, wb] : vecs) {
            Eigen::VectorXcd der = Eigen::VectorXcd::Zero(2 * n);
            for (int c = 1; c <= 2 * n; ++c) {
              cplx coef = conn.real_part.at(a, b, c);
              if (coef != cplx(0, 0)) der += coef * frame_eps(n, c);
            }
            got += wa * wb * bilinear_pair(der, ejb);
          }
        CHECK(std::abs(got - conn.complex_part->at(j, i, k)) < 1e-13);
      }
}

TEST_CASE("curvature: abelian flat, iwasawa Chern flat") {
  for (auto kind : {ConnectionKind::riemannian, ConnectionKind::chern, ConnectionKind::strominger,
                    ConnectionKind::gauduchon0}) {
    HermitianLieData ab = abelian(3);
    auto R = curvature(connection(ab, kind), realify(ab));
    CHECK(R.R.max_abs() == 0.0);
  }
  HermitianLieData iw = iwasawa();
  auto Rc = curvature(connection(iw, ConnectionKind::chern), realify(iw));
  CHECK(Rc.R.max_abs() == 0.0);
}

TEST_CASE("curvature: kodaira Riemannian sectional value") {
  double lambda = 1.3;
  HermitianLieData k = kodaira(lambda);
  auto R = curvature(connection(k, ConnectionKind::riemannian), realify(k));
  CHECK(std::abs(std::abs(R.R.at(1, 3, 3, 1)) - 1.5 * lambda * lambda) < 1e-12);
}

TEST_CASE("curvature antisymmetries hold for all kinds") {
  for (const auto& d : sample_structures()) {
    RealLieData rd = realify(d);
    for (auto kind : {ConnectionKind::riemannian, ConnectionKind::chern,
                      ConnectionKind::strominger, ConnectionKind::gauduchon0}) {
      auto R = curvature(connection(d, kind), rd);
      CHECK(real_antisym_12(R) < 1e-12);
      CHECK(real_antisym_34(R) < 1e-12);
    }
  }
}

TEST_CASE("kl_residual: abelian zero, cor12 Strominger, kodaira Riemannian") {
  HermitianLieData ab = abelian(2);
  RealLieData rab = realify(ab);
  for (auto kind : {ConnectionKind::riemannian, ConnectionKind::strominger}) {
    auto klr = kl_residual(curvature(connection(ab, kind), rab), rab.J);
    CHECK(klr.sym == 0.0);
    CHECK(klr.jinv == 0.0);
  }

  HermitianLieData c3 = build_family("cor12_n3", {{"lambda", 1.0}, {"a", 1.0}});
  RealLieData r3 = realify(c3);
  auto kls = kl_residual(curvature(connection(c3, ConnectionKind::strominger), r3), r3.J);
  CHECK(kls.sym < 1e-10);
  CHECK(kls.jinv < 1e-10);

  HermitianLieData ko = kodaira(1.0);
  RealLieData rko = realify(ko);
  auto klrk = kl_residual(curvature(connection(ko, ConnectionKind::riemannian), rko), rko.J);
  CHECK(klrk.sym > 1e-2);
}

TEST_CASE("Hermitian connections have J-invariant curvature") {
  for (const auto& d : sample_structures()) {
    RealLieData rd = realify(d);
    for (auto kind :
         {ConnectionKind::chern, ConnectionKind::strominger, ConnectionKind::gauduchon0}) {
      auto klr = kl_residual(curvature(connection(d, kind), rd), rd.J);
      CHECK(klr.jinv < 1e-12);
    }
  }
}

TEST_CASE("torsion derivatives: zero cases and kodaira Chern witness") {
  auto td0 = torsion_covariant_derivative(abelian(3), ConnectionKind::strominger);
  CHECK(td0.holo.max_abs() == 0.0);
  CHECK(td0.anti.max_abs() == 0.0);

  HermitianLieData c3 = build_family("cor12_n3", {{"lambda", 1.0}, {"a", 1.0}});
  auto tds = torsion_covariant_derivative(c3, ConnectionKind::strominger);
  CHECK(tds.holo.max_abs() < 1e-12);
  CHECK(tds.anti.max_abs() < 1e-12);

  // kodaira, Chern connection: the antiholomorphic derivative keeps the
  // antisymmetry of T in its lower pair, so components with i = k vanish;
  // the surviving witness is T(2,1,2;conj(1)) = -lambda^2/2
  double lambda = 1.0;
  auto tdc = torsion_covariant_derivative(kodaira(lambda), ConnectionKind::chern);
  CHECK(std::abs(tdc.anti.at(1, 1, 1, 1)) < 1e-15);
  CHECK(std::abs(tdc.anti.at(2, 1, 2, 1) - cplx(-lambda * lambda / 2, 0)) < 1e-14);
  CHECK(tdc.anti.max_abs() > 0.4);

  CHECK_THROWS_AS(torsion_covariant_derivative(c3, ConnectionKind::riemannian), UnknownKind);
}

TEST_CASE("torsion derivative preserves lower-pair antisymmetry") {
  HermitianLieData d = random_two_step(4, 2, 51);
  for (auto kind :
       {ConnectionKind::chern, ConnectionKind::strominger, ConnectionKind::gauduchon0}) {
    auto td = torsion_covariant_derivative(d, kind);
    double dev = 0.0;
    for (int j = 1; j <= 4; ++j)
      for (int i = 1; i <= 4; ++i)
        for (int k = 1; k <= 4; ++k)
          for (int l = 1; l <= 4; ++l) {
            dev = std::max(dev, std::abs(td.holo.at(j, i, k, l) + td.holo.at(j, k, i, l)));
            dev = std::max(dev, std::abs(td.anti.at(j, i, k, l) + td.anti.at(j, k, i, l)));
          }
    CHECK(dev < 1e-14);
  }
}

TEST_CASE("expansion of the Chern antiholomorphic derivative") {
  for (const auto& d : sample_structures()) {
    auto td = torsion_covariant_derivative(d, ConnectionKind::chern);
    CTensor4 ex = chern_anti_derivative_expansion(d);
    double dev = 0.0;
    for (int j = 1; j <= d.n; ++j)
      for (int i = 1; i <= d.n; ++i)
        for (int k = 1; k <= d.n; ++k)
          for (int l = 1; l <= d.n; ++l)
            dev = std::max(dev, std::abs(2.0 * td.anti.at(j, i, k, l) - ex.at(j, i, k, l)));
    CHECK(dev < 1e-12);
  }
}

TEST_CASE("rkl_necessary_residuals: zero for torsion-free, nonzero for kodaira") {
  auto z = rkl_necessary_residuals(abelian(3));
  CHECK(z.lemma_first == 0.0);
  CHECK(z.lemma_second == 0.0);
  CHECK(z.tcbar == 0.0);

  // torsion vanishes in any unitary frame of an abelian algebra
  HermitianLieData rot = change_frame(abelian(3), random_unitary(3, 15));
  auto zr = rkl_necessary_residuals(rot);
  CHECK(zr.lemma_first < 1e-14);
  CHECK(zr.lemma_second < 1e-14);
  CHECK(zr.tcbar < 1e-14);

  auto k = rkl_necessary_residuals(kodaira(1.0));
  CHECK(std::max({k.lemma_first, k.lemma_second, k.tcbar}) > 1e-3);
}

TEST_CASE("theta2_residual: abelian zero, kodaira and iwasawa nonzero") {
  CHECK(theta2_residual(abelian(3)) == 0.0);
  CHECK(theta2_residual(kodaira(1.0)) > 1e-3);
  CHECK(theta2_residual(iwasawa()) > 1e-3);
}

TEST_CASE("Chern structure equation: d phi = -theta^T ^ phi + tau") {
  for (const auto& d : sample_structures()) {
    const int n = d.n;
    MatrixForm theta = chern_connection_matrix(d);
    CTensor3 T = chern_torsion(d);
    for (int j = 1; j <= n; ++j) {
      InvariantForm lhs = d_operator(phi(n, j), d);
      InvariantForm rhs(n);
      for (int i = 1; i <= n; ++i) rhs += wedge(theta.at(i, j), phi(n, i)) * (-1.0);
      for (int i = 1; i <= n; ++i)
        for (int k = 1; k <= n; ++k)
          rhs += wedge(phi(n, i), phi(n, k)) * T.at(j, i, k);
      CHECK((lhs - rhs).norm_inf() < 1e-13);
    }
  }
}

TEST_CASE("Kahler collapse: all four curvatures agree when torsion vanishes") {
  HermitianLieData rot = change_frame(abelian(3), random_unitary(3, 3));
  CHECK(chern_torsion(rot).max_abs() < 1e-12);
  RealLieData rd = realify(rot);
  std::vector<CurvatureTensor> Rs;
  for (auto kind : {ConnectionKind::riemannian, ConnectionKind::chern, ConnectionKind::strominger,
                    ConnectionKind::gauduchon0})
    Rs.push_back(curvature(connection(rot, kind), rd));
  for (size_t a = 0; a < Rs.size(); ++a)
    for (size_t b = a + 1; b < Rs.size(); ++b) {
      double dev = 0.0;
      const int m = Rs[a].dim;
      for (int p = 1; p <= m; ++p)
        for (int q = 1; q <= m; ++q)
          for (int c = 1; c <= m; ++c)
            for (int e = 1; e <= m; ++e)
              dev = std::max(dev, std::abs(Rs[a].R.at(p, q, c, e) - Rs[b].R.at(p, q, c, e)));
      CHECK(dev < 1e-10);
    }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nilkl/catalog.hpp>
#include <nilkl/forms.hpp>

#include <bit>

using namespace nilkl;

namespace {

InvariantForm random_form(int n, int nterms, uint64_t seed) {
  Rng rng(seed);
  InvariantForm f(n);
  uint32_t full = (1u << n) - 1;
  for (int t = 0; t < nterms; ++t)
    f.add(static_cast<uint32_t>(rng.next()) & full, static_cast<uint32_t>(rng.next()) & full,
          rng.cbox());
  return f;
}

// every monomial basis form of every degree
std::vector<InvariantForm> all_basis_monomials(int n) {
  std::vector<InvariantForm> out;
  for (uint32_t h = 0; h < (1u << n); ++h)
    for (uint32_t b = 0; b < (1u << n); ++b) {
      InvariantForm f(n);
      f.add(h, b, 1.0);
      out.push_back(f);
    }
  return out;
}

}  // namespace

TEST_CASE("wedge: basic signs") {
  int n = 3;
  CHECK(wedge(phi(n, 1), phi(n, 1)).is_zero());

  InvariantForm a = wedge(phi(n, 1), phi_bar(n, 2));
  InvariantForm b = wedge(phi_bar(n, 2), phi(n, 1));
  CHECK((a + b).is_zero());

  InvariantForm w11 = wedge(phi(n, 1), phi_bar(n, 1)) * cplx(0, 1);
  CHECK(wedge(w11, w11).is_zero());
}

TEST_CASE("wedge: graded commutativity and associativity on random monomials") {
  int n = 4;
  for (uint64_t seed = 1; seed <= 4; ++seed) {
    Rng rng(seed);
    uint32_t full = (1u << n) - 1;
    InvariantForm a(n), b(n), c(n);
    a.add(static_cast<uint32_t>(rng.next()) & full, static_cast<uint32_t>(rng.next()) & full,
          rng.cbox());
    b.add(static_cast<uint32_t>(rng.next()) & full, static_cast<uint32_t>(rng.next()) & full,
          rng.cbox());
    c.add(static_cast<uint32_t>(rng.next()) & full, static_cast<uint32_t>(rng.next()) & full,
          rng.cbox());
    auto deg = [](const InvariantForm& f) {
      int d = 0;
      for (const auto& [k, v] : f.terms) d = std::popcount(k.first) + std::popcount(k.second);
      return d;
    };
    int da = deg(a), db = deg(b);
    double sign = ((da * db) % 2 == 0) ? 1.0 : -1.0;
    CHECK((wedge(a, b) - wedge(b, a) * sign).norm_inf() < 1e-15);
    CHECK((wedge(wedge(a, b), c) - wedge(a, wedge(b, c))).norm_inf() < 1e-15);
  }
}

TEST_CASE("d: kodaira structure equation") {
  double lambda = 1.5;
  HermitianLieData k = kodaira(lambda);
  InvariantForm d2 = d_operator(phi(2, 2), k);
  InvariantForm expect = wedge(phi(2, 1), phi_bar(2, 1)) * lambda;
  CHECK((d2 - expect).norm_inf() < 1e-15);
  CHECK(d_operator(phi(2, 1), k).is_zero());
}

TEST_CASE("d: iwasawa structure equation") {
  HermitianLieData iw = iwasawa();
  InvariantForm d3 = d_operator(phi(3, 3), iw);
  InvariantForm expect = wedge(phi(3, 1), phi(3, 2)) * (-1.0);
  CHECK((d3 - expect).norm_inf() < 1e-15);
}

TEST_CASE("d evaluates as -form([.,.]) on the complexified frame") {
  for (auto data : {kodaira(0.8), iwasawa(), random_two_step(3, 2, 5)}) {
    const int n = data.n;
    for (int j = 1; j <= n; ++j) {
      InvariantForm dphi = d_operator(phi(n, j), data);
      for (int a = 1; a <= 2 * n; ++a)
        for (int b = 1; b <= 2 * n; ++b) {
          Eigen::VectorXcd u = frame_eps(n, a), v = frame_eps(n, b);
          cplx lhs = eval2(dphi, u, v);
          Eigen::VectorXcd br = complex_bracket(data, u, v);
          cplx rhs = -br(j - 1);  // -phi_j([u,v])
          CHECK(std::abs(lhs - rhs) < 1e-13);
        }
    }
  }
}

TEST_CASE("d^2 = 0 on all basis monomials") {
  for (auto data : {kodaira(1.0), iwasawa(), random_two_step(4, 2, 17)}) {
    for (const auto& mono : all_basis_monomials(data.n)) {
      InvariantForm dd = d_operator(d_operator(mono, data), data);
      CHECK(dd.norm_inf() < 1e-12);
    }
  }
}

TEST_CASE("conjugation commutes with d") {
  for (auto data : {kodaira(0.3), iwasawa(), random_two_step(4, 2, 23)}) {
    InvariantForm f = random_form(data.n, 5, 99);
    InvariantForm lhs = d_operator(conj_form(f), data);
    InvariantForm rhs = conj_form(d_operator(f, data));
    CHECK((lhs - rhs).norm_inf() < 1e-15);
  }
}

TEST_CASE("bidegree split: kodaira and iwasawa") {
  HermitianLieData k = kodaira(2.0);
  auto [del2, delbar2] = bidegree_split(phi(2, 2), k);
  CHECK(del2.is_zero());
  CHECK((delbar2 - wedge(phi(2, 1), phi_bar(2, 1)) * 2.0).norm_inf() < 1e-15);

  HermitianLieData iw = iwasawa();
  auto [del3, delbar3] = bidegree_split(phi(3, 3), iw);
  CHECK((del3 - wedge(phi(3, 1), phi(3, 2)) * (-1.0)).norm_inf() < 1e-15);
  CHECK(delbar3.is_zero());
}

TEST_CASE("del + delbar reassembles d on 1000 random forms") {
  HermitianLieData data = random_two_step(4, 2, 31);
  double worst = 0.0;
  for (uint64_t seed = 0; seed < 1000; ++seed) {
    InvariantForm f = random_form(4, 6, 1000 + seed);
    auto [p, q] = bidegree_split(f, data);
    worst = std::max(worst, (p + q - d_operator(f, data)).norm_inf());
  }
  CHECK(worst < 1e-15);
}

TEST_CASE("del delbar = -delbar del on the fundamental form") {
  for (auto data : {kodaira(1.0), iwasawa(), random_two_step(4, 2, 41), random_two_step(5, 2, 43)}) {
    InvariantForm w = fundamental_form(data.n);
    InvariantForm a = del(delbar(w, data), data);
    InvariantForm b = delbar(del(w, data), data);
    CHECK((a + b).norm_inf() < 1e-12);
  }
}

TEST_CASE("metric residuals: abelian, kodaira, iwasawa") {
  auto ab = metric_form_residuals(abelian(3));
  CHECK(ab.kahler == 0.0);
  CHECK(ab.pluriclosed == 0.0);
  CHECK(ab.balanced == 0.0);

  double lambda = 1.0;
  auto ko = metric_form_residuals(kodaira(lambda));
  CHECK(std::abs(ko.kahler - lambda) < 1e-13);
  CHECK(ko.pluriclosed < 1e-14);

  auto iw = metric_form_residuals(iwasawa());
  CHECK(std::abs(iw.pluriclosed - 1.0) < 1e-13);
  CHECK(iw.balanced < 1e-14);
}

TEST_CASE("pluriclosed residual matches the row-pairing formula on diagonal shapes") {
  // d phi_alpha = sum_i Y(i,a) phi_i conj(phi_i): the coefficient of
  // phi_i phi_k conj(phi_i) conj(phi_k) in del delbar omega is
  // i * sum_a (Y(i,a) conj(Y(k,a)) + Y(k,a) conj(Y(i,a)))
  int n = 5, r = 3;
  Rng rng(77);
  Eigen::MatrixXcd Y(r, n - r);
  for (int i = 0; i < r; ++i)
    for (int a = 0; a < n - r; ++a) Y(i, a) = rng.cbox();
  HermitianLieData data = from_normal_form(n, r, Y);

  InvariantForm pp = del(delbar(fundamental_form(n), data), data);
  double worst = 0.0;
  for (int i = 1; i <= r; ++i)
    for (int k = i + 1; k <= r; ++k) {
      cplx s = 0.0;
      for (int a = 0; a < n - r; ++a)
        s += Y(i - 1, a) * std::conj(Y(k - 1, a)) + Y(k - 1, a) * std::conj(Y(i - 1, a));
      uint32_t hol = (1u << (i - 1)) | (1u << (k - 1));
      cplx got = pp.coeff(hol, hol);
      worst = std::max(worst, std::abs(got - cplx(0, 1) * s));
    }
  CHECK(worst < 1e-13);
}

TEST_CASE("metric residuals require a valid structure") {
  HermitianLieData bad(2, "bad");
  bad.set_C(1, 1, 2, 1.0);
  bad.D.at(2, 1, 1) = 1.0;
  bad.D.at(1, 2, 2) = 0.5;
  if (!validate(bad).valid) CHECK_THROWS_AS(metric_form_residuals(bad), InvalidStructure);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nilkl/catalog.hpp>
#include <nilkl/connections.hpp>
#include <nilkl/forms.hpp>

using namespace nilkl;

TEST_CASE("from_coframe: empty differentials give the abelian algebra") {
  CoframeDifferentials cd(3);
  HermitianLieData d = from_coframe(cd);
  CHECK(d.max_abs() == 0.0);
}

TEST_CASE("from_coframe: kodaira table puts D(1,2,1) = -lambda") {
  double lambda = 1.0;
  CoframeDifferentials cd(2);
  cd.add_mixed(2, 1, 1, lambda);
  HermitianLieData d = from_coframe(cd);
  CHECK(std::abs(d.D.at(1, 2, 1) - cplx(-lambda, 0)) == 0.0);
  CHECK(d.C.max_abs() == 0.0);
  double other = 0.0;
  for (int j = 1; j <= 2; ++j)
    for (int i = 1; i <= 2; ++i)
      for (int k = 1; k <= 2; ++k)
        if (!(j == 1 && i == 2 && k == 1)) other = std::max(other, std::abs(d.D.at(j, i, k)));
  CHECK(other == 0.0);
}

TEST_CASE("from_coframe: d phi_2 = phi_2 ^ conj(phi_1) closes (solvable algebra)") {
  // accepted by the d^2 / Jacobi test; the resulting algebra is valid but
  // not nilpotent
  CoframeDifferentials cd(2);
  cd.add_mixed(2, 2, 1, 1.0);
  HermitianLieData d = from_coframe(cd);
  CHECK(validate(d).valid);
  CHECK_FALSE(lower_central_series(d).nilpotent);
}

TEST_CASE("from_coframe: genuine closure failures are rejected") {
  // d phi_1 = phi_2 ^ conj(phi_2), d phi_2 = phi_1 ^ conj(phi_1):
  // d^2 phi_1 = phi_1 conj(phi_1) conj(phi_2) - phi_1 phi_2 conj(phi_1) != 0
  CoframeDifferentials cd(2);
  cd.add_mixed(1, 2, 2, 1.0);
  cd.add_mixed(2, 1, 1, 1.0);
  CHECK_THROWS_AS(from_coframe(cd), JacobiViolation);
}

TEST_CASE("builders: iwasawa and abelian") {
  HermitianLieData iw = iwasawa();
  CHECK(iw.C.at(3, 1, 2) == cplx(1.0, 0.0));
  CHECK(iw.C.at(3, 2, 1) == cplx(-1.0, 0.0));
  CHECK(iw.D.max_abs() == 0.0);

  CHECK(build_family("abelian", {{"n", 4}}).max_abs() == 0.0);
}

TEST_CASE("build_family: every family differentials match the declared tables") {
  std::map<std::string, std::map<std::string, double>> cases = {
      {"cor12_n2", {{"lambda", 1.3}}},
      {"cor12_n3", {{"lambda", 0.9}, {"a", -2.0}}},
      {"cor12_n4a", {{"lambda", 2.0}, {"a", 0.7}}},
      {"cor12_n4b", {{"lambda1", 1.0}, {"a", 1.5}, {"lambda2", 2.5}}},
      {"cor12_n5a", {{"lambda", 0.4}, {"a", 3.0}}},
      {"cor12_n5b", {{"lambda1", 1.1}, {"a", 0.8}, {"b", -1.2}, {"lambda2", 0.6}, {"c", 2.2}}},
      {"cor12_n6a", {{"lambda", 5.0}, {"a", -0.3}}},
      {"cor12_n6b",
       {{"lambda1", 1.0}, {"a", 1.0}, {"b", 2.0}, {"c", -1.0}, {"lambda2", 2.0}, {"x", 1.5}}},
      {"cor12_n6c",
       {{"lambda1", 0.9}, {"a", 1.0}, {"b", 1.0}, {"lambda2", 1.4}, {"c", 0.5}, {"lambda3", 2.0}}},
  };
  for (const auto& [name, params] : cases) {
    HermitianLieData d = build_family(name, params);
    CHECK(validate(d).valid);
    // the coframe tables round-trip through the structure constants
    CoframeDifferentials cd = to_coframe(d);
    HermitianLieData back = from_coframe(cd);
    CHECK(max_diff(d, back) < 1e-15);
  }
}

TEST_CASE("build_family: family outputs meet the tight residual bounds") {
  // pluriclosed < 1e-12, strominger torsion derivative and curvature
  // symmetries < 1e-10 on sample instances
  for (auto d : {build_family("cor12_n3", {{"lambda", 2.5}, {"a", -3.0}}),
                 build_family("cor12_n5b", {{"lambda1", 0.3},
                                            {"a", 4.0},
                                            {"b", -2.0},
                                            {"lambda2", 5.0},
                                            {"c", 1.0}})}) {
    CHECK(metric_form_residuals(d).pluriclosed < 1e-12);
    TorsionDerivatives td = torsion_covariant_derivative(d, ConnectionKind::strominger);
    CHECK(std::max(td.holo.max_abs(), td.anti.max_abs()) < 1e-10);
    RealLieData rd = realify(d);
    KLResidual klr = kl_residual(curvature(connection(d, ConnectionKind::strominger), rd), rd.J);
    CHECK(klr.sym < 1e-10);
    CHECK(klr.jinv < 1e-10);
  }
}

TEST_CASE("build_family: kodaira equals cor12_n2") {
  HermitianLieData a = build_family("kodaira", {{"lambda", 2.0}});
  HermitianLieData b = build_family("cor12_n2", {{"lambda", 2.0}});
  CHECK(max_diff(a, b) == 0.0);
}

TEST_CASE("build_family: unknown name and bad parameters") {
  CHECK_THROWS_AS(build_family("nonsense", {}), UnknownFamily);
  CHECK_THROWS_AS(build_family("cor12_n3", {{"lambda", -1.0}, {"a", 0.0}}), ParamOutOfRange);
  CHECK_THROWS_AS(build_family("cor12_n4b", {{"lambda1", 1.0}, {"a", 0.0}, {"lambda2", 0.0}}),
                  ParamOutOfRange);
  CHECK_THROWS_AS(build_family("cor12_n3", {{"lambda", 1.0}}), ParamOutOfRange);
}

TEST_CASE("build_family: cor12_n6b solves or checks the row orthogonality") {
  std::map<std::string, double> p = {{"lambda1", 1.0}, {"a", 1.0}, {"b", 2.0},
                                     {"c", -1.0},      {"lambda2", 2.0}, {"x", 1.5}};
  HermitianLieData d = build_family("cor12_n6b", p);
  // derived y must satisfy lambda2^2 x y = -b c (lambda2^2 + a^2)
  double y = -p["b"] * p["c"] * (4.0 + 1.0) / (4.0 * p["x"]);
  std::map<std::string, double> p2 = p;
  p2["y"] = y;
  CHECK(max_diff(d, build_family("cor12_n6b", p2)) < 1e-15);
  p2["y"] = y + 1.0;
  CHECK_THROWS_AS(build_family("cor12_n6b", p2), ParamOutOfRange);
}

TEST_CASE("random_two_step: determinism, validity, nilpotency") {
  HermitianLieData a = random_two_step(4, 2, 42);
  HermitianLieData b = random_two_step(4, 2, 42);
  CHECK(max_diff(a, b) == 0.0);

  for (int n = 2; n <= 5; ++n)
    for (int r = 1; r <= n; ++r) {
      HermitianLieData d = random_two_step(n, r, 7 * n + r);
      auto rep = validate(d);
      CHECK(rep.valid);
      CHECK(rep.jacobi_residual < 1e-14);
      auto lcs = lower_central_series(d);
      CHECK(lcs.nilpotent);
      CHECK(lcs.dims.size() <= 3);
      CHECK(is_nilpotent_J(d).nilpotent);
    }

  CHECK(random_two_step(3, 3, 5).max_abs() == 0.0);  // r = n forces abelian
  CHECK_THROWS_AS(random_two_step(3, 0, 1), BadRange);
}

TEST_CASE("perturb: zero magnitude is the identity; unit noise keeps Jacobi") {
  HermitianLieData k = kodaira(1.0);
  CHECK(max_diff(perturb(k, 0.0, 9), k) == 0.0);
  HermitianLieData p = perturb(k, 1.0, 9);
  auto rep = validate(p);
  CHECK(rep.valid);
  CHECK(rep.jacobi_residual < 1e-14);
  CHECK(max_diff(p, k) > 0.1);
}

TEST_CASE("from_normal_form round trips through to_coframe") {
  Rng rng(3);
  int n = 4, r = 2;
  Eigen::MatrixXcd Y(r, n - r);
  for (int i = 0; i < r; ++i)
    for (int a = 0; a < n - r; ++a) Y(i, a) = rng.cbox();
  HermitianLieData d = from_normal_form(n, r, Y);
  CHECK(validate(d).valid);
  for (int i = 1; i <= r; ++i)
    for (int alpha = r + 1; alpha <= n; ++alpha)
      CHECK(std::abs(d.D.at(i, alpha, i) + std::conj(Y(i - 1, alpha - r - 1))) < 1e-15);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <limits>

#include <nilkl/algebra.hpp>
#include <nilkl/catalog.hpp>

using namespace nilkl;

namespace {

// n = 1 with a single mixed constant; the 2-dimensional solvable algebra
HermitianLieData affine_n1() {
  HermitianLieData d(1, "affine");
  d.D.at(1, 1, 1) = 1.0;
  return d;
}

Eigen::MatrixXcd random_unitary(int n, uint64_t seed) {
  Rng rng(seed);
  Eigen::MatrixXcd A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = rng.cbox();
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(A);
  Eigen::MatrixXcd Q = qr.householderQ();
  Eigen::MatrixXcd R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i) {
    cplx r = R(i, i);
    if (std::abs(r) > 1e-14) Q.col(i) *= r / std::abs(r);
  }
  return Q;
}

}  // namespace

TEST_CASE("validate: abelian and iwasawa are exact") {
  auto rep = validate(abelian(3));
  CHECK(rep.valid);
  CHECK(rep.antisymmetry_ok);
  CHECK(rep.jacobi_residual == 0.0);
  CHECK(rep.real_jacobi_residual == 0.0);

  auto rep2 = validate(iwasawa());
  CHECK(rep2.valid);
  CHECK(rep2.jacobi_residual == 0.0);
}

TEST_CASE("validate: broken antisymmetry is flagged") {
  HermitianLieData d = iwasawa();
  d.C.at(3, 2, 1) = 0.0;  // delete one orientation
  auto rep = validate(d);
  CHECK_FALSE(rep.antisymmetry_ok);
  CHECK_FALSE(rep.valid);
}

TEST_CASE("validate: real and complex residuals agree on valid structures") {
  for (auto data : {abelian(2), kodaira(1.0), iwasawa(), random_two_step(4, 2, 7)}) {
    auto rep = validate(data);
    CHECK(rep.valid);
    CHECK(rep.jacobi_residual < 1e-12);
    CHECK(rep.real_jacobi_residual < 1e-12);
    CHECK(std::abs(rep.jacobi_residual - rep.real_jacobi_residual) < 1e-12);
  }
}

TEST_CASE("realify: abelian") {
  RealLieData rd = realify(abelian(3));
  CHECK(rd.dim == 6);
  CHECK(rd.bracket.max_abs() == 0.0);
}

TEST_CASE("realify: kodaira brackets are [eps1, eps3] = sqrt(2) lambda eps4") {
  double lambda = 1.0;
  RealLieData rd = realify(kodaira(lambda));
  const double s2 = std::sqrt(2.0);
  for (int a = 1; a <= 4; ++a)
    for (int b = 1; b <= 4; ++b)
      for (int c = 1; c <= 4; ++c) {
        double expect = 0.0;
        if (a == 1 && b == 3 && c == 4) expect = s2 * lambda;
        if (a == 3 && b == 1 && c == 4) expect = -s2 * lambda;
        CHECK(std::abs(rd.bracket.at(a, b, c) - expect) < 1e-14);
      }
}

TEST_CASE("realify/complexify round trip") {
  for (auto data : {kodaira(0.7), iwasawa(), random_two_step(4, 2, 3), random_two_step(5, 3, 11)}) {
    HermitianLieData back = complexify(realify(data));
    CHECK(max_diff(data, back) < 1e-14);
  }
}

TEST_CASE("change_frame: identity, phase, functoriality") {
  HermitianLieData iw = iwasawa();
  Eigen::MatrixXcd I3 = Eigen::MatrixXcd::Identity(3, 3);
  CHECK(max_diff(change_frame(iw, I3), iw) == 0.0);

  double theta = 0.6;
  Eigen::MatrixXcd U = I3;
  U(0, 0) = std::polar(1.0, theta);
  HermitianLieData rot = change_frame(iw, U);
  CHECK(std::abs(rot.C.at(3, 1, 2) - std::polar(1.0, theta)) < 1e-14);

  Eigen::MatrixXcd V = random_unitary(3, 5), W = random_unitary(3, 9);
  HermitianLieData lhs = change_frame(change_frame(iw, V), W);
  HermitianLieData rhs = change_frame(iw, W * V);
  CHECK(max_diff(lhs, rhs) < 1e-12);
}

TEST_CASE("change_frame: rejects non-unitary input") {
  Eigen::MatrixXcd M = 2.0 * Eigen::MatrixXcd::Identity(2, 2);
  CHECK_THROWS_AS(change_frame(kodaira(1.0), M), NotUnitary);
}

TEST_CASE("change_frame preserves jacobi residual and series dimensions") {
  HermitianLieData d = random_two_step(4, 2, 21);
  Eigen::MatrixXcd U = random_unitary(4, 31);
  HermitianLieData rot = change_frame(d, U);
  CHECK(validate(rot).jacobi_residual < 1e-12);
  CHECK(lower_central_series(rot).dims == lower_central_series(d).dims);
  CHECK(is_nilpotent_J(rot).dims == is_nilpotent_J(d).dims);
}

TEST_CASE("lower_central_series: abelian, kodaira, non-nilpotent") {
  auto s1 = lower_central_series(abelian(3));
  CHECK(s1.dims == std::vector<int>{6, 0});
  CHECK(s1.step == 1);
  CHECK(s1.nilpotent);

  auto s2 = lower_central_series(kodaira(2.0));
  CHECK(s2.dims == std::vector<int>{4, 1, 0});
  CHECK(s2.step == 2);
  CHECK(s2.nilpotent);

  auto s3 = lower_central_series(affine_n1());
  CHECK_FALSE(s3.nilpotent);
  CHECK(s3.dims.back() == 1);
}

TEST_CASE("is_nilpotent_J: abelian, kodaira, affine") {
  auto a = is_nilpotent_J(abelian(2));
  CHECK(a.nilpotent);
  CHECK(a.dims == std::vector<int>{4});

  auto k = is_nilpotent_J(kodaira(1.0));
  CHECK(k.nilpotent);
  CHECK(k.dims == std::vector<int>{2, 4});

  auto f = is_nilpotent_J(affine_n1());
  CHECK_FALSE(f.nilpotent);
  CHECK(f.dims.front() == 0);
}

TEST_CASE("nilpotent J implies nilpotent algebra on generated structures") {
  for (uint64_t seed = 0; seed < 6; ++seed) {
    HermitianLieData d = random_two_step(4, 2, seed);
    CHECK(is_nilpotent_J(d).nilpotent);
    CHECK(lower_central_series(d).nilpotent);
  }
}

TEST_CASE("salamon_coframe: abelian is already triangular") {
  auto res = salamon_coframe(abelian(4));
  CHECK(res.success);
  CHECK(res.filtration == std::vector<int>{4});
  CHECK((res.U - Eigen::MatrixXcd::Identity(4, 4)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("salamon_coframe: iwasawa filtration [2,3] and triangular pattern") {
  HermitianLieData iw = iwasawa();
  auto res = salamon_coframe(iw);
  CHECK(res.success);
  CHECK(res.filtration == std::vector<int>{2, 3});

  HermitianLieData tri = change_frame(iw, res.U);
  double viol = 0.0;
  for (int j = 1; j <= 3; ++j)
    for (int i = 1; i <= 3; ++i)
      for (int k = 1; k <= 3; ++k) {
        if (!(j > i || j > k)) viol = std::max(viol, std::abs(tri.C.at(j, i, k)));
        if (!(j > i)) viol = std::max(viol, std::abs(tri.D.at(i, j, k)));
      }
  CHECK(viol < 1e-10);
}

TEST_CASE("salamon_coframe: stalls on the affine algebra") {
  auto res = salamon_coframe(affine_n1());
  CHECK_FALSE(res.success);
}

TEST_CASE("salamon_coframe: random two-step structures") {
  for (uint64_t seed : {1, 2, 3}) {
    HermitianLieData d = random_two_step(5, 3, seed);
    auto res = salamon_coframe(d);
    REQUIRE(res.success);
    HermitianLieData tri = change_frame(d, res.U);
    double viol = 0.0;
    for (int j = 1; j <= 5; ++j)
      for (int i = 1; i <= 5; ++i)
        for (int k = 1; k <= 5; ++k) {
          if (!(j > i || j > k)) viol = std::max(viol, std::abs(tri.C.at(j, i, k)));
          if (!(j > i)) viol = std::max(viol, std::abs(tri.D.at(i, j, k)));
        }
    CHECK(viol < 1e-10);
  }
}

TEST_CASE("validate rejects non-finite entries") {
  HermitianLieData d = kodaira(1.0);
  d.D.at(2, 1, 1) = cplx(std::numeric_limits<double>::infinity(), 0.0);
  CHECK_FALSE(validate(d).valid);
  HermitianLieData d2 = kodaira(1.0);
  d2.D.at(2, 1, 1) = cplx(std::numeric_limits<double>::quiet_NaN(), 0.0);
  CHECK_FALSE(validate(d2).valid);
}

TEST_CASE("realify rejects invalid structures") {
  HermitianLieData bad(2, "bad");
  bad.set_C(1, 1, 2, 1.0);
  bad.D.at(2, 1, 1) = 1.0;
  bad.D.at(1, 2, 2) = 0.5;
  if (!validate(bad).valid) CHECK_THROWS_AS(realify(bad), InvalidStructure);
}

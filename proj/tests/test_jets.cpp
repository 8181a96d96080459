#include <doctest.h>

#include <cmath>

#include "klab/chart.hpp"
#include "klab/jet.hpp"
#include "oracles.hpp"

using namespace klab;

namespace {

Jet sample_expr(const JetVec& x) {
  // f(x,y,z) = sin(x) * exp(y) + x^2 * z / (1 + y^2)
  return sin(x[0]) * exp(x[1]) + x[0] * x[0] * x[2] / (1.0 + x[1] * x[1]);
}

double sample_value(const Vec& p) {
  return std::sin(p[0]) * std::exp(p[1]) + p[0] * p[0] * p[2] / (1.0 + p[1] * p[1]);
}

}  // namespace

TEST_CASE("jet arithmetic matches finite differences") {
  Vec p(3);
  p << 0.3, -0.4, 0.7;
  Jet f = sample_expr(seed_point(p, 2));

  CHECK(f.value() == doctest::Approx(sample_value(p)).epsilon(1e-14));

  Vec g_fd = oracle::fd_gradient(sample_value, p);
  Eigen::MatrixXd h_fd = oracle::fd_hessian(sample_value, p);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(f.d1(i) - g_fd[i]) < 1e-9);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(std::abs(f.d2(i, j) - h_fd(i, j)) < 1e-5);
}

TEST_CASE("hessian is exactly symmetric") {
  Vec p(3);
  p << 0.1, 0.2, -0.3;
  Jet f = sample_expr(seed_point(p, 2));
  Eigen::MatrixXd h = f.hessian();
  CHECK((h - h.transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("derivative() agrees with direct jets of the derivative") {
  Vec p(2);
  p << 0.5, -0.2;
  // f = exp(x) * cos(y); df/dx = same; check order-3 -> order-2 extraction.
  auto f = [](const JetVec& x) { return exp(x[0]) * cos(x[1]); };
  Jet j3 = f(seed_point(p, 3));
  Jet dx = j3.derivative(0);
  Jet direct = f(seed_point(p, 2));
  CHECK(dx.value() == doctest::Approx(direct.value()).epsilon(1e-14));
  CHECK(dx.d1(1) == doctest::Approx(direct.d1(1)).epsilon(1e-13));
  CHECK(dx.d2(1, 1) == doctest::Approx(direct.d2(1, 1)).epsilon(1e-13));
}

TEST_CASE("division, log, pow, sqrt round-trip") {
  Vec p(2);
  p << 1.7, 0.4;
  JetVec x = seed_point(p, 4);
  Jet u = 2.0 + x[0] * x[1];
  Jet v = exp(log(u));
  for (int i = 0; i < v.coeffs().size(); ++i)
    CHECK(std::abs(v.coeffs()[i] - u.coeffs()[i]) < 1e-13);
  Jet w = sqrt(u) * sqrt(u);
  for (int i = 0; i < w.coeffs().size(); ++i)
    CHECK(std::abs(w.coeffs()[i] - u.coeffs()[i]) < 1e-13);
  Jet q = pow(u, -2.0) * u * u * u;
  for (int i = 0; i < q.coeffs().size(); ++i)
    CHECK(std::abs(q.coeffs()[i] - u.coeffs()[i]) < 1e-12);
  Jet one = u / u;
  CHECK(one.value() == doctest::Approx(1.0));
  CHECK(std::abs(one.d1(0)) < 1e-15);
}

TEST_CASE("fourth-order coefficients are exact on a polynomial") {
  Vec p(2);
  p << 0.0, 0.0;
  JetVec x = seed_point(p, 4);
  Jet f = x[0] * x[0] * x[1] * x[1];  // x^2 y^2
  MultiIndex a{};
  a[0] = 2;
  a[1] = 2;
  CHECK(f.deriv(a) == doctest::Approx(4.0));  // d^4/dx^2 dy^2 = 2! * 2! = 4
}

TEST_CASE("jet matrix inverse is exact") {
  Vec p(2);
  p << 0.2, -0.1;
  JetVec x = seed_point(p, 2);
  JetMat m(2, 2);
  m(0, 0) = 2.0 + x[0];
  m(0, 1) = x[1];
  m(1, 0) = x[0] * x[1];
  m(1, 1) = 1.0 + x[1] * x[1];
  JetMat mi = jet_mat_inverse(m);
  JetMat id = jet_mat_mul(m, mi);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      CHECK(id(i, j).value() == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-13));
      for (int k = 0; k < 2; ++k) CHECK(std::abs(id(i, j).d1(k)) < 1e-13);
    }
}

TEST_CASE("embed places sub-chart jets on ambient coordinates") {
  Vec psub(2);
  psub << 0.3, 0.9;
  Jet f = [](const JetVec& x) { return x[0] * x[1] + sin(x[1]); }(seed_point(psub, 2));
  const JetSpace& amb = JetSpace::get(4, 2);
  Jet e = embed(f, amb, 2);
  CHECK(e.value() == doctest::Approx(f.value()));
  CHECK(e.d1(2) == doctest::Approx(f.d1(0)));
  CHECK(e.d1(3) == doctest::Approx(f.d1(1)));
  CHECK(e.d1(0) == 0.0);
  CHECK(e.d2(2, 3) == doctest::Approx(f.d2(0, 1)));
}

TEST_CASE("sampling is deterministic, inside the shrunk chart") {
  ChartDomain c = ChartDomain::box(3, 1.0);
  auto a = sample_points(c, 50, 42);
  auto b = sample_points(c, 50, 42);
  auto d = sample_points(c, 50, 43);
  REQUIRE(a.size() == 50);
  bool identical = true, differs = false;
  for (int i = 0; i < 50; ++i) {
    if ((a[i] - b[i]).cwiseAbs().maxCoeff() != 0.0) identical = false;
    if ((a[i] - d[i]).cwiseAbs().maxCoeff() > 0) differs = true;
    for (int k = 0; k < 3; ++k) CHECK(std::abs(a[i][k]) <= 0.9);
  }
  CHECK(identical);
  CHECK(differs);
}

TEST_CASE("chart validation rejects empty intervals and bad dims") {
  ChartDomain c;
  c.dim = 2;
  c.bounds = {{0.0, 1.0}, {1.0, 1.0}};
  CHECK_THROWS(c.validate());
  CHECK_THROWS(ChartDomain::box(9, 1.0));
}

#include <doctest.h>

#include <cmath>
#include <random>

#include "klab/chart.hpp"
#include "klab/exterior.hpp"
#include "oracles.hpp"

using namespace klab;

namespace {

ScalarField scalar2(std::function<Jet(const JetVec&)> f) {
  return ScalarField(2, [f = std::move(f)](const Vec& p, int order) {
    return f(seed_point(p, order));
  });
}

// omega_FS = -4/(1+r^2)^2 dx^dy in the orientation J dx = -dy.
KForm fs_omega() {
  return KForm(2, 2, [](const Vec& p, int order) {
    JetVec x = seed_point(p, order);
    Jet r2 = x[0] * x[0] + x[1] * x[1];
    Jet c = -4.0 * pow(1.0 + r2, -2.0);
    return JetVec{c};
  });
}

KForm random_form(int dim, int degree, std::mt19937& rng) {
  // Polynomial coefficients of total degree <= 2 in the coordinates.
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int n = FormIndex::get(dim, degree).count();
  std::vector<std::array<double, 4>> coef(n);
  std::vector<std::array<int, 2>> vars(n);
  for (int c = 0; c < n; ++c) {
    coef[c] = {u(rng), u(rng), u(rng), u(rng)};
    vars[c] = {static_cast<int>(rng() % dim), static_cast<int>(rng() % dim)};
  }
  return KForm(dim, degree, [n, coef, vars](const Vec& p, int order) {
    JetVec x = seed_point(p, order);
    JetVec r(n);
    for (int c = 0; c < n; ++c) {
      const Jet& a = x[vars[c][0]];
      const Jet& b = x[vars[c][1]];
      r[c] = coef[c][0] + coef[c][1] * a + coef[c][2] * b + coef[c][3] * a * b;
    }
    return r;
  });
}

double max_abs(const Vec& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

TEST_CASE("d(x dy) = dx^dy") {
  KForm alpha(2, 1, [](const Vec& p, int order) {
    JetVec x = seed_point(p, order);
    return JetVec{Jet::constant(x[0].space(), 0.0), x[0]};
  });
  KForm d = exterior_derivative(alpha);
  Vec p(2);
  p << 0.37, -0.21;
  CHECK(d.values(p)[0] == doctest::Approx(1.0));
}

TEST_CASE("d o d = 0 for df with f = sin(x) exp(y), 50 seeded points") {
  ScalarField f = scalar2([](const JetVec& x) { return sin(x[0]) * exp(x[1]); });
  KForm ddf = exterior_derivative(differential(f));
  for (const Vec& p : sample_points(ChartDomain::box(2, 1.0), 50, 7)) {
    CHECK(max_abs(ddf.values(p)) <= 1e-10);
  }
}

TEST_CASE("Fubini-Study form is closed; jet vs finite differences") {
  KForm w = fs_omega();
  KForm dw = exterior_derivative(w);
  auto comp = [&](const Vec& p) { return w.values(p)[0]; };
  for (const Vec& p : sample_points(ChartDomain::box(2, 1.2), 40, 11)) {
    CHECK(max_abs(dw.values(p)) <= 1e-10);
    // Cross-check the jet derivative of the single component against FD.
    JetVec c = w.eval(p, 1);
    Vec fd = oracle::fd_gradient(comp, p);
    for (int i = 0; i < 2; ++i) CHECK(std::abs(c[0].d1(i) - fd[i]) <= 1e-4);
  }
}

TEST_CASE("wedge normalization anchor: (dx^dy)(ex, ey) = 1") {
  KForm dx = KForm::monomial(2, {0});
  KForm dy = KForm::monomial(2, {1});
  KForm w = wedge(dx, dy);
  Vec p = Vec::Zero(2);
  JetVec comps = w.eval(p, 0);
  std::vector<JetVec> vecs = {seed_point(p, 0), seed_point(p, 0)};
  // e_x, e_y as jet vectors:
  const JetSpace& sp = JetSpace::get(2, 0);
  JetVec ex{Jet::constant(sp, 1.0), Jet::constant(sp, 0.0)};
  JetVec ey{Jet::constant(sp, 0.0), Jet::constant(sp, 1.0)};
  CHECK(form_apply(w.layout(), comps, {ex, ey}).value() == doctest::Approx(1.0));
}

TEST_CASE("graded commutativity for random forms") {
  std::mt19937 rng(123);
  Vec p(4);
  p << 0.2, -0.3, 0.15, 0.4;
  for (int rep = 0; rep < 3; ++rep) {
    KForm a1 = random_form(4, 1, rng);
    KForm b2 = random_form(4, 2, rng);
    // a^b - (-1)^{|a||b|} b^a = 0
    KForm r = wedge(a1, b2) - wedge(b2, a1);
    CHECK(max_abs(r.values(p)) <= 1e-12);
    KForm a2 = random_form(4, 2, rng);
    KForm r2 = wedge(a2, b2) - wedge(b2, a2);
    CHECK(max_abs(r2.values(p)) <= 1e-12);
    KForm c1 = random_form(4, 1, rng);
    KForm r3 = wedge(a1, c1) + wedge(c1, a1);
    CHECK(max_abs(r3.values(p)) <= 1e-12);
  }
}

TEST_CASE("(dx^dy)^(du^dv) matches the brute-force permutation sum") {
  std::mt19937 rng(5);
  KForm a = wedge(KForm::monomial(4, {0}), KForm::monomial(4, {1}));
  KForm b = wedge(KForm::monomial(4, {2}), KForm::monomial(4, {3}));
  KForm w = wedge(a, b);
  Vec p = Vec::Zero(4);
  std::vector<Vec> frame(4, Vec::Zero(4));
  for (int i = 0; i < 4; ++i) frame[i][i] = 1.0;
  CHECK(w.values(p)[w.layout().rank({0, 1, 2, 3})] == doctest::Approx(1.0));
  CHECK(oracle::brute_force_wedge(a, b, p, frame) == doctest::Approx(1.0));
  // Random forms against the oracle.
  for (int rep = 0; rep < 3; ++rep) {
    KForm x = random_form(4, 1, rng);
    KForm y = random_form(4, 2, rng);
    KForm xy = wedge(x, y);
    Vec q(4);
    q << 0.1, 0.7, -0.2, 0.05;
    std::vector<Vec> vs;
    std::uniform_real_distribution<double> u(-1, 1);
    for (int i = 0; i < 3; ++i) {
      Vec v(4);
      for (int k = 0; k < 4; ++k) v[k] = u(rng);
      vs.push_back(v);
    }
    JetVec comps = xy.eval(q, 0);
    const JetSpace& sp = JetSpace::get(4, 0);
    std::vector<JetVec> jv;
    for (auto& v : vs) {
      JetVec w4(4);
      for (int k = 0; k < 4; ++k) w4[k] = Jet::constant(sp, v[k]);
      jv.push_back(w4);
    }
    double ours = form_apply(xy.layout(), comps, jv).value();
    double oracle_v = oracle::brute_force_wedge(x, y, q, vs);
    CHECK(ours == doctest::Approx(oracle_v).epsilon(1e-10));
  }
}

TEST_CASE("graded Leibniz rule of d") {
  std::mt19937 rng(77);
  KForm a = random_form(4, 1, rng);
  KForm b = random_form(4, 2, rng);
  KForm lhs = exterior_derivative(wedge(a, b));
  KForm rhs = wedge(exterior_derivative(a), b) + (-1.0 * wedge(a, exterior_derivative(b)));
  // (-1)^{|a|} a ^ db with |a| = 1.
  for (const Vec& p : sample_points(ChartDomain::box(4, 0.9), 20, 3)) {
    Vec diff = lhs.values(p) - rhs.values(p);
    CHECK(max_abs(diff) <= 1e-10);
  }
}

TEST_CASE("interior product basics and alternation") {
  // ex . (dx^dy) = dy
  KForm w = wedge(KForm::monomial(2, {0}), KForm::monomial(2, {1}));
  VectorField ex(2, [](const Vec& p, int order) {
    const JetSpace& sp = JetSpace::get(2, order);
    return JetVec{Jet::constant(sp, 1.0), Jet::constant(sp, 0.0)};
  });
  KForm iw = interior_product(ex, w);
  Vec p(2);
  p << 0.3, 0.4;
  CHECK(iw.values(p)[0] == doctest::Approx(0.0));
  CHECK(iw.values(p)[1] == doctest::Approx(1.0));

  // X . (X . alpha) = 0 for a 3-form.
  std::mt19937 rng(9);
  KForm alpha = random_form(4, 3, rng);
  VectorField X(4, [](const Vec& p2, int order) {
    JetVec x = seed_point(p2, order);
    return JetVec{x[1], x[0] * x[2], sin(x[3]), x[0]};
  });
  KForm xx = interior_product(X, interior_product(X, alpha));
  Vec q(4);
  q << 0.2, -0.5, 0.3, 0.6;
  CHECK(max_abs(xx.values(q)) <= 1e-12);
}

TEST_CASE("rotation field contraction against d(r^2/2)") {
  // With K = -y ex + x ey and the euclidean area form dx^dy:
  // K . (dx^dy) = -y dy - x dx = -d(r^2/2).
  VectorField K(2, [](const Vec& p, int order) {
    JetVec x = seed_point(p, order);
    return JetVec{-x[1], x[0]};
  });
  KForm area = wedge(KForm::monomial(2, {0}), KForm::monomial(2, {1}));
  ScalarField r2h = scalar2([](const JetVec& x) { return 0.5 * (x[0] * x[0] + x[1] * x[1]); });
  KForm lhs = interior_product(K, area);
  KForm rhs = -1.0 * differential(r2h);
  for (const Vec& p : sample_points(ChartDomain::box(2, 1.0), 10, 1)) {
    CHECK(max_abs(lhs.values(p) - rhs.values(p)) <= 1e-13);
  }
}

TEST_CASE("Lie derivative: translation isometry of the euclidean metric") {
  MetricField g = MetricField::euclidean(2);
  VectorField X(2, [](const Vec& p, int order) {
    const JetSpace& sp = JetSpace::get(2, order);
    return JetVec{Jet::constant(sp, 1.0), Jet::constant(sp, 0.0)};
  });
  MetricField lg = lie_derivative(X, g);
  Vec p(2);
  p << 0.4, -0.7;
  CHECK(lg.values(p).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("Cartan formula vs coordinate formula for Lie derivatives of forms") {
  std::mt19937 rng(31);
  KForm alpha = random_form(4, 2, rng);
  VectorField X(4, [](const Vec& p, int order) {
    JetVec x = seed_point(p, order);
    return JetVec{x[1] * x[2], -x[0], exp(0.3 * x[3]), x[2] * x[2]};
  });
  KForm a = lie_derivative(X, alpha);
  KForm b = lie_derivative_coordinate(X, alpha);
  for (const Vec& p : sample_points(ChartDomain::box(4, 0.8), 15, 2)) {
    CHECK(max_abs(a.values(p) - b.values(p)) <= 1e-10);
  }
}

TEST_CASE("rotation is a Killing field of the round metric (flow oracle)") {
  // g = 4/(1+r^2)^2 * id; K = -y ex + x ey.
  MetricField g(2, [](const Vec& p, int order) {
    JetVec x = seed_point(p, order);
    Jet c = 4.0 * pow(1.0 + x[0] * x[0] + x[1] * x[1], -2.0);
    JetMat m(2, 2);
    m(0, 0) = c;
    m(1, 1) = c;
    m(0, 1) = Jet::constant(c.space(), 0.0);
    m(1, 0) = m(0, 1);
    return m;
  });
  VectorField K(2, [](const Vec& p, int order) {
    JetVec x = seed_point(p, order);
    return JetVec{-x[1], x[0]};
  });
  MetricField lg = lie_derivative(K, g);
  auto gv = [&](const Vec& p) { return g.values(p); };
  auto kv = [&](const Vec& p) { return K.values(p); };
  for (const Vec& p : sample_points(ChartDomain::box(2, 1.2), 10, 21)) {
    CHECK(lg.values(p).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(oracle::flow_transport_metric_residual(kv, gv, p) <= 1e-4);
  }
  // Dilation is not an isometry: residual = 2 |g| on the diagonal.
  VectorField D(2, [](const Vec& p, int order) {
    JetVec x = seed_point(p, order);
    return JetVec{x[0], Jet::constant(x[0].space(), 0.0)};
  });
  MetricField ld = lie_derivative(D, MetricField::euclidean(2));
  Vec p0(2);
  p0 << 0.3, 0.3;
  CHECK(ld.values(p0)(0, 0) == doctest::Approx(2.0));
}

TEST_CASE("top-degree exterior derivative is rejected") {
  KForm w = wedge(KForm::monomial(2, {0}), KForm::monomial(2, {1}));
  CHECK_THROWS_WITH_AS(static_cast<void>(exterior_derivative(w)),
                       doctest::Contains("top-degree"), std::invalid_argument);
}

TEST_CASE("wedge degree overflow is rejected") {
  KForm a = wedge(KForm::monomial(2, {0}), KForm::monomial(2, {1}));
  CHECK_THROWS_AS(static_cast<void>(wedge(a, KForm::monomial(2, {0}))),
                  std::invalid_argument);
}

TEST_CASE("interior product of a 0-form is rejected") {
  ScalarField f = scalar2([](const JetVec& x) { return x[0]; });
  KForm zf(2, 0, [f](const Vec& p, int order) { return JetVec{f.eval(p, order)}; });
  VectorField X(2, [](const Vec& p, int order) {
    return JetVec{Jet::constant(JetSpace::get(2, order), 1.0),
                  Jet::constant(JetSpace::get(2, order), 0.0)};
  });
  CHECK_THROWS_AS(static_cast<void>(interior_product(X, zf)), std::invalid_argument);
}

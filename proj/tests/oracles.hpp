#pragma once

// Test-only oracles, deliberately independent of the jet implementation:
// central finite differences, brute-force alternating products, and
// flow-transport checks.

#include <cmath>
#include <functional>
#include <vector>

#include "klab/fields.hpp"

namespace klab::oracle {

inline constexpr double kFdStep = 1e-5;

// Central finite-difference gradient of a pointwise scalar function.
inline Vec fd_gradient(const std::function<double(const Vec&)>& f, const Vec& p,
                       double h = kFdStep) {
  Vec g(p.size());
  for (int i = 0; i < p.size(); ++i) {
    Vec a = p, b = p;
    a[i] += h;
    b[i] -= h;
    g[i] = (f(a) - f(b)) / (2 * h);
  }
  return g;
}

inline Eigen::MatrixXd fd_hessian(const std::function<double(const Vec&)>& f, const Vec& p,
                                  double h = 1e-4) {
  int d = static_cast<int>(p.size());
  Eigen::MatrixXd H(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Vec pp = p, pm = p, mp = p, mm = p;
      pp[i] += h; pp[j] += h;
      pm[i] += h; pm[j] -= h;
      mp[i] -= h; mp[j] += h;
      mm[i] -= h; mm[j] -= h;
      H(i, j) = (f(pp) - f(pm) - f(mp) + f(mm)) / (4 * h * h);
    }
  return H;
}

// Brute-force wedge: evaluate (alpha ^ beta)(v_1, ..., v_{ka+kb}) as the full
// antisymmetrization sum over permutations with 1/(ka! kb!) normalization.
double brute_force_wedge(const KForm& alpha, const KForm& beta, const Vec& p,
                         const std::vector<Vec>& vectors);

// Finite-difference Lie bracket of two pointwise vector functions.
inline Vec fd_lie_bracket(const std::function<Vec(const Vec&)>& X,
                          const std::function<Vec(const Vec&)>& Y, const Vec& p,
                          double h = kFdStep) {
  int d = static_cast<int>(p.size());
  Vec out = Vec::Zero(d);
  Vec xv = X(p), yv = Y(p);
  for (int a = 0; a < d; ++a) {
    Vec pa = p, pb = p;
    pa[a] += h;
    pb[a] -= h;
    Vec dY = (Y(pa) - Y(pb)) / (2 * h);
    Vec dX = (X(pa) - X(pb)) / (2 * h);
    out += xv[a] * dY - yv[a] * dX;
  }
  return out;
}

// Transport g by the flow of X for total time t (RK4 steps) and compare with
// g at p: returns max-abs of (phi_t^* g - g)/t, an O(t) approximation of
// L_X g at p.
double flow_transport_metric_residual(const std::function<Vec(const Vec&)>& X,
                                      const std::function<Eigen::MatrixXd(const Vec&)>& g,
                                      const Vec& p, double t = 1e-4);

}  // namespace klab::oracle

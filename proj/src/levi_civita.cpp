#include "klab/levi_civita.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace klab {

namespace {

void check_metric_invertible(const Eigen::MatrixXd& gv, const Vec& p) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(gv);
  double smin = svd.singularValues().minCoeff();
  double smax = svd.singularValues().maxCoeff();
  if (smin < 1e-12 * std::max(1.0, smax)) {
    std::ostringstream os;
    os << "metric singular at sample (condition number "
       << (smin > 0 ? smax / smin : std::numeric_limits<double>::infinity()) << ", point [";
    for (int i = 0; i < p.size(); ++i) os << (i ? ", " : "") << p[i];
    os << "])";
    throw std::runtime_error(os.str());
  }
}

}  // namespace

Jet3 christoffels(const MetricField& g, const Vec& p, int order) {
  int d = g.dim();
  JetMat gm = g.eval(p, order + 1);
  check_metric_invertible(gm.values(), p);
  JetMat gt(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) gt(i, j) = truncate(gm(i, j), order);
  JetMat gi = jet_mat_inverse(gt);
  // dg(a,i,j) = d_a g_ij at the reduced order.
  Jet3 dg(d);
  for (int a = 0; a < d; ++a)
    for (int i = 0; i < d; ++i)
      for (int j = i; j < d; ++j) {
        dg(a, i, j) = gm(i, j).derivative(a);
        if (j != i) dg(a, j, i) = dg(a, i, j);
      }
  Jet3 out(d);
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = i; j < d; ++j) {
        Jet s = Jet::constant(gi(0, 0).space(), 0.0);
        for (int l = 0; l < d; ++l)
          s += gi(k, l) * (dg(i, j, l) + dg(j, i, l) - dg(l, i, j));
        s *= 0.5;
        out(k, i, j) = s;
        if (j != i) out(k, j, i) = s;
      }
  return out;
}

namespace {

// Riemann with one index up, as jets: R^l_{ijk} = d_i G^l_{jk} - d_j G^l_{ik}
// + G^l_{ia} G^a_{jk} - G^l_{ja} G^a_{ik}; R(e_i,e_j)e_k = R^l_{ijk} e_l.
void riemann_up_flat(const MetricField& g, const Vec& p, int order,
                     std::vector<Jet>& out_flat) {
  int d = g.dim();
  Jet3 gamma = christoffels(g, p, order + 1);
  Jet3 gt(d);
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) gt(k, i, j) = truncate(gamma(k, i, j), order);
  out_flat.assign(static_cast<size_t>(d) * d * d * d, Jet());
  auto at = [&](int l, int i, int j, int k) -> Jet& {
    return out_flat[((static_cast<size_t>(l) * d + i) * d + j) * d + k];
  };
  for (int l = 0; l < d; ++l)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) {
          Jet s = gamma(l, j, k).derivative(i) - gamma(l, i, k).derivative(j);
          for (int a = 0; a < d; ++a)
            s += gt(l, i, a) * gt(a, j, k) - gt(l, j, a) * gt(a, i, k);
          at(l, i, j, k) = s;
        }
}

}  // namespace

Curvature riemann_ricci_scalar(const MetricField& g, const Vec& p) {
  int d = g.dim();
  std::vector<Jet> up;
  riemann_up_flat(g, p, 0, up);
  auto upv = [&](int l, int i, int j, int k) {
    return up[((static_cast<size_t>(l) * d + i) * d + j) * d + k].value();
  };
  Eigen::MatrixXd gv = g.values(p);
  Curvature c;
  c.dim = d;
  c.R.assign(static_cast<size_t>(d) * d * d * d, 0.0);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          double s = 0.0;
          for (int a = 0; a < d; ++a) s += gv(a, l) * upv(a, i, j, k);
          c.R[((static_cast<size_t>(i) * d + j) * d + k) * d + l] = s;
        }
  c.ricci = Eigen::MatrixXd::Zero(d, d);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) {
      double s = 0.0;
      for (int i = 0; i < d; ++i) s += upv(i, i, j, k);
      c.ricci(j, k) = s;
    }
  Eigen::MatrixXd gi = gv.inverse();
  c.scalar = (gi * c.ricci).trace();
  return c;
}

MetricField ricci_tensor_field(const MetricField& g) {
  int d = g.dim();
  return MetricField(d, [g, d](const Vec& p, int order) {
    std::vector<Jet> up;
    riemann_up_flat(g, p, order, up);
    auto at = [&](int l, int i, int j, int k) -> const Jet& {
      return up[((static_cast<size_t>(l) * d + i) * d + j) * d + k];
    };
    JetMat ric(d, d);
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        Jet s = Jet::constant(at(0, 0, 0, 0).space(), 0.0);
        for (int i = 0; i < d; ++i) s += at(i, i, j, k);
        ric(j, k) = s;
      }
    return ric;
  });
}

KForm ricci_form_field(const MetricField& g, const EndoField& J) {
  MetricField ric = ricci_tensor_field(g);
  int d = g.dim();
  const FormIndex* fo = &FormIndex::get(d, 2);
  return KForm(d, 2, [ric, J, d, fo](const Vec& p, int order) {
    JetMat rm = ric.eval(p, order);
    JetMat jm = J.eval(p, order);
    JetVec r(fo->count());
    for (int c = 0; c < fo->count(); ++c) {
      int i = fo->tuple(c)[0], j = fo->tuple(c)[1];
      Jet s = Jet::constant(rm(0, 0).space(), 0.0);
      for (int a = 0; a < d; ++a) s += jm(a, i) * rm(a, j);
      r[c] = s;
    }
    return r;
  });
}

ScalarField scalar_curvature_field(const MetricField& g) {
  MetricField ric = ricci_tensor_field(g);
  int d = g.dim();
  return ScalarField(d, [g, ric, d](const Vec& p, int order) {
    JetMat rm = ric.eval(p, order);
    JetMat gm = g.eval(p, order);
    JetMat gi = jet_mat_inverse(gm);
    Jet s = Jet::constant(rm(0, 0).space(), 0.0);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) s += gi(i, j) * rm(i, j);
    return s;
  });
}

Jet3 covariant_derivative_endo(const MetricField& g, const EndoField& T, const Vec& p,
                               int order) {
  int d = g.dim();
  Jet3 gamma = christoffels(g, p, order);
  JetMat tm = T.eval(p, order + 1);
  JetMat tt(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) tt(i, j) = truncate(tm(i, j), order);
  Jet3 out(d);
  for (int a = 0; a < d; ++a)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        Jet s = tm(i, j).derivative(a);
        for (int b = 0; b < d; ++b)
          s += gamma(i, a, b) * tt(b, j) - gamma(b, a, j) * tt(i, b);
        out(a, i, j) = s;
      }
  return out;
}

std::vector<JetVec> covariant_derivative_form(const MetricField& g, const KForm& alpha,
                                              const Vec& p, int order) {
  int d = g.dim();
  int k = alpha.degree();
  const FormIndex& fi = alpha.layout();
  Jet3 gamma = christoffels(g, p, order);
  JetVec a = alpha.eval(p, order + 1);
  JetVec at(fi.count());
  for (int c = 0; c < fi.count(); ++c) at[c] = truncate(a[c], order);
  std::vector<JetVec> out(d, JetVec(fi.count()));
  std::vector<int> t;
  for (int dir = 0; dir < d; ++dir) {
    for (int c = 0; c < fi.count(); ++c) {
      Jet s = a[c].derivative(dir);
      t = fi.tuple(c);
      for (int slot = 0; slot < k; ++slot) {
        int orig = t[slot];
        for (int b = 0; b < d; ++b) {
          t[slot] = b;
          auto so = fi.sort(t);
          if (so.sign != 0) {
            Jet term = gamma(b, dir, orig) * at[so.rank];
            if (so.sign < 0) term = -term;
            s -= term;
          }
        }
        t[slot] = orig;
      }
      out[dir][c] = s;
    }
  }
  return out;
}

Jet3 covariant_derivative_metric(const MetricField& g, const MetricField& T, const Vec& p,
                                 int order) {
  int d = g.dim();
  Jet3 gamma = christoffels(g, p, order);
  JetMat tm = T.eval(p, order + 1);
  JetMat tt(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) tt(i, j) = truncate(tm(i, j), order);
  Jet3 out(d);
  for (int a = 0; a < d; ++a)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        Jet s = tm(i, j).derivative(a);
        for (int b = 0; b < d; ++b)
          s -= gamma(b, a, i) * tt(b, j) + gamma(b, a, j) * tt(i, b);
        out(a, i, j) = s;
      }
  return out;
}

JetVec codifferential(const MetricField& g, const KForm& alpha, const Vec& p, int order) {
  int d = g.dim();
  int k = alpha.degree();
  if (k < 1) throw std::invalid_argument("codifferential rejected: 0-form");
  const FormIndex& fin = alpha.layout();
  const FormIndex& fout = FormIndex::get(d, k - 1);
  std::vector<JetVec> nab = covariant_derivative_form(g, alpha, p, order);
  JetMat gm = g.eval(p, order);
  JetMat gi = jet_mat_inverse(gm);
  JetVec out(fout.count(), Jet::constant(gi(0, 0).space(), 0.0));
  std::vector<int> t;
  for (int c = 0; c < fout.count(); ++c) {
    t = fout.tuple(c);
    t.insert(t.begin(), 0);
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        t[0] = b;
        auto so = fin.sort(t);
        if (so.sign == 0) continue;
        Jet term = gi(a, b) * nab[a][so.rank];
        if (so.sign < 0) term = -term;
        out[c] -= term;
      }
  }
  return out;
}

double laplacian(const MetricField& g, const ScalarField& f, const Vec& p) {
  KForm df = differential(f);
  return codifferential(g, df, p, 0)[0].value();
}

ScalarField laplacian_field(const MetricField& g, const ScalarField& f) {
  KForm df = differential(f);
  int d = g.dim();
  return ScalarField(d, [g, df](const Vec& p, int order) {
    return codifferential(g, df, p, order)[0];
  });
}

JetVec lstar(const MetricField& g, const EndoField& J, const KForm& alpha, const Vec& p,
             int order) {
  int d = g.dim();
  int k = alpha.degree();
  if (k < 2) return JetVec{};  // zero form by convention
  const FormIndex& fin = alpha.layout();
  const FormIndex& fout = FormIndex::get(d, k - 2);
  JetVec a = alpha.eval(p, order);
  JetMat gi = jet_mat_inverse(g.eval(p, order));
  JetMat jm = J.eval(p, order);
  // sum_i alpha(e_i, J e_i, ...) = g^{ac} J^b_c alpha(e_a, e_b, ...).
  JetMat w = jet_mat_mul(jm, gi);  // w(b,a) = J^b_c g^{ca}
  JetVec out(fout.count(), Jet::constant(gi(0, 0).space(), 0.0));
  std::vector<int> t;
  for (int c = 0; c < fout.count(); ++c) {
    t = fout.tuple(c);
    t.insert(t.begin(), 0);
    t.insert(t.begin(), 0);
    for (int aa = 0; aa < d; ++aa)
      for (int bb = 0; bb < d; ++bb) {
        t[0] = aa;
        t[1] = bb;
        auto so = fin.sort(t);
        if (so.sign == 0) continue;
        Jet term = w(bb, aa) * a[so.rank];
        if (so.sign < 0) term = -term;
        out[c] += term;
      }
  }
  for (auto& j : out) j *= 0.5;
  return out;
}

Jet3 nijenhuis(const EndoField& J, const Vec& p, int order) {
  int d = J.dim();
  JetMat jm = J.eval(p, order + 1);
  JetMat jt(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) jt(i, j) = truncate(jm(i, j), order);
  // dj(a, i, j) = d_a J^i_j
  Jet3 dj(d);
  for (int a = 0; a < d; ++a)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) dj(a, i, j) = jm(i, j).derivative(a);
  Jet3 out(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        Jet s = Jet::constant(jt(0, 0).space(), 0.0);
        for (int a = 0; a < d; ++a) {
          s += jt(k, a) * (dj(i, a, j) - dj(j, a, i));
          s -= jt(a, i) * dj(a, k, j);
          s += jt(a, j) * dj(a, k, i);
        }
        out(k, i, j) = s;
      }
  return out;
}

std::vector<JetVec> gram_schmidt(const JetMat& gram_metric, const std::vector<JetVec>& cols,
                                 double pivot_tol) {
  const JetMat& G = gram_metric;
  int d = G.rows();
  std::vector<JetVec> out;
  auto inner = [&](const JetVec& x, const JetVec& y) {
    Jet s = Jet::constant(G(0, 0).space(), 0.0);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) s += x[i] * G(i, j) * y[j];
    return s;
  };
  for (const JetVec& c : cols) {
    JetVec v = c;
    for (const JetVec& e : out) {
      Jet proj = inner(e, v);
      for (int i = 0; i < d; ++i) v[i] -= proj * e[i];
    }
    Jet n2 = inner(v, v);
    if (n2.value() < pivot_tol) continue;  // dependent column, skip
    Jet inv_n = inverse(sqrt(n2));
    for (int i = 0; i < d; ++i) v[i] = v[i] * inv_n;
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<JetVec> orthonormal_frame(const MetricField& g, const Vec& p, int order) {
  int d = g.dim();
  JetMat gm = g.eval(p, order);
  check_metric_invertible(gm.values(), p);
  std::vector<JetVec> cols(d, JetVec(d, Jet::constant(gm(0, 0).space(), 0.0)));
  for (int i = 0; i < d; ++i) cols[i][i] = Jet::constant(gm(0, 0).space(), 1.0);
  std::vector<JetVec> frame = gram_schmidt(gm, cols);
  if (static_cast<int>(frame.size()) != d)
    throw std::runtime_error("frame degeneracy: Gram-Schmidt lost rank");
  return frame;
}

}  // namespace klab

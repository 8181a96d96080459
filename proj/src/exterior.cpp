#include "klab/exterior.hpp"

#include <algorithm>
#include <stdexcept>

namespace klab {

namespace {

Jet zero_like(const JetVec& any, const Vec& p, int order) {
  if (!any.empty()) return Jet::constant(any[0].space(), 0.0);
  return Jet::constant(JetSpace::get(static_cast<int>(p.size()), order), 0.0);
}

}  // namespace

KForm exterior_derivative(const KForm& alpha) {
  int dim = alpha.dim();
  int k = alpha.degree();
  if (k >= dim)
    throw std::invalid_argument("exterior derivative rejected: top-degree form");
  const FormIndex* in = &FormIndex::get(dim, k);
  const FormIndex* out = &FormIndex::get(dim, k + 1);
  return KForm(dim, k + 1, [alpha, k, in, out](const Vec& p, int order) {
    JetVec a = alpha.eval(p, order + 1);
    JetVec r(out->count());
    std::vector<int> rest(k);
    for (int c = 0; c < out->count(); ++c) {
      const std::vector<int>& t = out->tuple(c);
      Jet s;
      for (int drop = 0; drop <= k; ++drop) {
        int w = 0;
        for (int j = 0; j <= k; ++j)
          if (j != drop) rest[w++] = t[j];
        Jet term = a[in->rank(rest)].derivative(t[drop]);
        if (drop % 2 == 1) term = -term;
        s = s.valid() ? s + term : term;
      }
      r[c] = s;
    }
    return r;
  });
}

KForm wedge(const KForm& alpha, const KForm& beta) {
  int dim = alpha.dim();
  int ka = alpha.degree(), kb = beta.degree();
  if (ka + kb > dim) throw std::invalid_argument("wedge rejected: degree overflow");
  const FormIndex* fa = &FormIndex::get(dim, ka);
  const FormIndex* fb = &FormIndex::get(dim, kb);
  const FormIndex* fo = &FormIndex::get(dim, ka + kb);
  return KForm(dim, ka + kb, [alpha, beta, ka, kb, fa, fb, fo](const Vec& p, int order) {
    JetVec a = alpha.eval(p, order);
    JetVec b = beta.eval(p, order);
    const Jet zero = zero_like(a.empty() ? b : a, p, order);
    JetVec r(fo->count(), zero);
    int n = ka + kb;
    std::vector<int> pos(ka), ta(ka), tb(kb);
    for (int c = 0; c < fo->count(); ++c) {
      const std::vector<int>& t = fo->tuple(c);
      if (ka == 0) {
        r[c] = a[0] * b[c];
        continue;
      }
      if (kb == 0) {
        r[c] = a[c] * b[0];
        continue;
      }
      for (int i = 0; i < ka; ++i) pos[i] = i;
      while (true) {
        int possum = 0;
        int wa = 0, wb = 0, pi = 0;
        for (int i = 0; i < n; ++i) {
          if (pi < ka && pos[pi] == i) {
            ta[wa++] = t[i];
            possum += i;
            ++pi;
          } else {
            tb[wb++] = t[i];
          }
        }
        // Sign of the (ka,kb)-shuffle that moves the alpha block to the front.
        int par = possum - ka * (ka - 1) / 2;
        Jet term = a[fa->rank(ta)] * b[fb->rank(tb)];
        if (par % 2 == 1) term = -term;
        r[c] += term;
        int i = ka - 1;
        while (i >= 0 && pos[i] == n - ka + i) --i;
        if (i < 0) break;
        ++pos[i];
        for (int j = i + 1; j < ka; ++j) pos[j] = pos[j - 1] + 1;
      }
    }
    return r;
  });
}

KForm interior_product(const VectorField& X, const KForm& alpha) {
  int dim = alpha.dim();
  int k = alpha.degree();
  if (k < 1) throw std::invalid_argument("interior product rejected: 0-form");
  const FormIndex* fo = &FormIndex::get(dim, k - 1);
  return KForm(dim, k - 1, [X, alpha, dim, fo](const Vec& p, int order) {
    JetVec x = X.eval(p, order);
    JetVec a = alpha.eval(p, order);
    JetVec r(fo->count(), Jet::constant(x[0].space(), 0.0));
    std::vector<int> t;
    for (int c = 0; c < fo->count(); ++c) {
      t = fo->tuple(c);
      t.insert(t.begin(), 0);
      for (int i = 0; i < dim; ++i) {
        t[0] = i;
        auto s = alpha.layout().sort(t);
        if (s.sign == 0) continue;
        Jet term = x[i] * a[s.rank];
        if (s.sign < 0) term = -term;
        r[c] += term;
      }
    }
    return r;
  });
}

KForm differential(const ScalarField& f) {
  int dim = f.dim();
  return KForm(dim, 1, [f, dim](const Vec& p, int order) {
    Jet u = f.eval(p, order + 1);
    JetVec r(dim);
    for (int i = 0; i < dim; ++i) r[i] = u.derivative(i);
    return r;
  });
}

KForm operator+(const KForm& a, const KForm& b) {
  return KForm(a.dim(), a.degree(), [a, b](const Vec& p, int order) {
    JetVec x = a.eval(p, order), y = b.eval(p, order);
    for (size_t i = 0; i < x.size(); ++i) x[i] += y[i];
    return x;
  });
}

KForm operator-(const KForm& a, const KForm& b) {
  return KForm(a.dim(), a.degree(), [a, b](const Vec& p, int order) {
    JetVec x = a.eval(p, order), y = b.eval(p, order);
    for (size_t i = 0; i < x.size(); ++i) x[i] -= y[i];
    return x;
  });
}

KForm operator*(double c, const KForm& a) {
  return KForm(a.dim(), a.degree(), [a, c](const Vec& p, int order) {
    JetVec x = a.eval(p, order);
    for (auto& j : x) j *= c;
    return x;
  });
}

KForm scale(const ScalarField& f, const KForm& a) {
  return KForm(a.dim(), a.degree(), [f, a](const Vec& p, int order) {
    Jet u = f.eval(p, order);
    JetVec x = a.eval(p, order);
    for (auto& j : x) j = u * j;
    return x;
  });
}

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
  return ScalarField(a.dim(), [a, b](const Vec& p, int order) {
    return a.eval(p, order) + b.eval(p, order);
  });
}

ScalarField operator*(const ScalarField& a, const ScalarField& b) {
  return ScalarField(a.dim(), [a, b](const Vec& p, int order) {
    return a.eval(p, order) * b.eval(p, order);
  });
}

ScalarField log_field(const ScalarField& a) {
  return ScalarField(a.dim(),
                     [a](const Vec& p, int order) { return log(a.eval(p, order)); });
}

ScalarField pow_field(const ScalarField& a, double q) {
  return ScalarField(a.dim(),
                     [a, q](const Vec& p, int order) { return pow(a.eval(p, order), q); });
}

EndoField operator+(const EndoField& a, const EndoField& b) {
  int dim = a.dim();
  return EndoField(dim, [a, b, dim](const Vec& p, int order) {
    JetMat x = a.eval(p, order), y = b.eval(p, order);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) x(i, j) += y(i, j);
    return x;
  });
}

EndoField operator-(const EndoField& a, const EndoField& b) {
  int dim = a.dim();
  return EndoField(dim, [a, b, dim](const Vec& p, int order) {
    JetMat x = a.eval(p, order), y = b.eval(p, order);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) x(i, j) -= y(i, j);
    return x;
  });
}

EndoField compose(const EndoField& a, const EndoField& b) {
  return EndoField(a.dim(), [a, b](const Vec& p, int order) {
    return jet_mat_mul(a.eval(p, order), b.eval(p, order));
  });
}

EndoField rank_one(const KForm& beta, const VectorField& W) {
  int dim = W.dim();
  if (beta.degree() != 1) throw std::invalid_argument("rank_one needs a 1-form");
  return EndoField(dim, [beta, W, dim](const Vec& p, int order) {
    JetVec b = beta.eval(p, order);
    JetVec w = W.eval(p, order);
    JetMat out(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) out(i, j) = w[i] * b[j];
    return out;
  });
}

VectorField apply(const EndoField& a, const VectorField& X) {
  return VectorField(a.dim(), [a, X](const Vec& p, int order) {
    return jet_mat_apply(a.eval(p, order), X.eval(p, order));
  });
}

VectorField operator+(const VectorField& a, const VectorField& b) {
  return VectorField(a.dim(), [a, b](const Vec& p, int order) {
    JetVec x = a.eval(p, order), y = b.eval(p, order);
    for (size_t i = 0; i < x.size(); ++i) x[i] += y[i];
    return x;
  });
}

VectorField operator*(double c, const VectorField& a) {
  return VectorField(a.dim(), [a, c](const Vec& p, int order) {
    JetVec x = a.eval(p, order);
    for (auto& j : x) j *= c;
    return x;
  });
}

KForm form_compose(const KForm& beta, const EndoField& J) {
  int dim = beta.dim();
  if (beta.degree() != 1) throw std::invalid_argument("form_compose needs a 1-form");
  return KForm(dim, 1, [beta, J, dim](const Vec& p, int order) {
    JetVec b = beta.eval(p, order);
    JetMat j = J.eval(p, order);
    JetVec r(dim, Jet::constant(b[0].space(), 0.0));
    for (int col = 0; col < dim; ++col)
      for (int a = 0; a < dim; ++a) r[col] += b[a] * j(a, col);
    return r;
  });
}

KForm lie_derivative(const VectorField& X, const KForm& alpha) {
  if (alpha.degree() == 0) {
    int dim = alpha.dim();
    return KForm(dim, 0, [X, alpha](const Vec& p, int order) {
      JetVec x = X.eval(p, order);
      Jet a = alpha.eval(p, order + 1)[0];
      Jet s = Jet::constant(x[0].space(), 0.0);
      for (size_t i = 0; i < x.size(); ++i) s += x[i] * a.derivative(static_cast<int>(i));
      return JetVec{s};
    });
  }
  if (alpha.degree() == alpha.dim())
    return lie_derivative_coordinate(X, alpha);  // Cartan needs d(alpha)
  return exterior_derivative(interior_product(X, alpha)) +
         interior_product(X, exterior_derivative(alpha));
}

KForm lie_derivative_coordinate(const VectorField& X, const KForm& alpha) {
  int dim = alpha.dim();
  int k = alpha.degree();
  const FormIndex* fi = &FormIndex::get(dim, k);
  return KForm(dim, k, [X, alpha, dim, k, fi](const Vec& p, int order) {
    JetVec x = X.eval(p, order + 1);
    JetVec a = alpha.eval(p, order + 1);
    JetVec xt(dim), at(fi->count());
    for (int i = 0; i < dim; ++i) xt[i] = truncate(x[i], order);
    for (int c = 0; c < fi->count(); ++c) at[c] = truncate(a[c], order);
    JetVec r(fi->count());
    std::vector<int> t;
    for (int c = 0; c < fi->count(); ++c) {
      Jet s = Jet::constant(xt[0].space(), 0.0);
      for (int i = 0; i < dim; ++i) s += xt[i] * a[c].derivative(i);
      t = fi->tuple(c);
      for (int slot = 0; slot < k; ++slot) {
        int orig = t[slot];
        for (int i = 0; i < dim; ++i) {
          t[slot] = i;
          auto so = fi->sort(t);
          if (so.sign != 0) {
            Jet term = at[so.rank] * x[i].derivative(orig);
            if (so.sign < 0) term = -term;
            s += term;
          }
        }
        t[slot] = orig;
      }
      r[c] = s;
    }
    return r;
  });
}

MetricField lie_derivative(const VectorField& X, const MetricField& g) {
  int dim = g.dim();
  return MetricField(dim, [X, g, dim](const Vec& p, int order) {
    JetVec x = X.eval(p, order + 1);
    JetMat gm = g.eval(p, order + 1);
    JetVec xt(dim);
    for (int i = 0; i < dim; ++i) xt[i] = truncate(x[i], order);
    JetMat gt(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) gt(i, j) = truncate(gm(i, j), order);
    JetMat out(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        Jet s = Jet::constant(xt[0].space(), 0.0);
        for (int a = 0; a < dim; ++a) {
          s += xt[a] * gm(i, j).derivative(a);
          s += gt(a, j) * x[a].derivative(i);
          s += gt(i, a) * x[a].derivative(j);
        }
        out(i, j) = s;
      }
    return out;
  });
}

EndoField lie_derivative(const VectorField& X, const EndoField& T) {
  int dim = T.dim();
  return EndoField(dim, [X, T, dim](const Vec& p, int order) {
    JetVec x = X.eval(p, order + 1);
    JetMat tm = T.eval(p, order + 1);
    JetVec xt(dim);
    for (int i = 0; i < dim; ++i) xt[i] = truncate(x[i], order);
    JetMat tt(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) tt(i, j) = truncate(tm(i, j), order);
    JetMat out(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        Jet s = Jet::constant(xt[0].space(), 0.0);
        for (int a = 0; a < dim; ++a) {
          s += xt[a] * tm(i, j).derivative(a);
          s -= tt(a, j) * x[i].derivative(a);
          s += tt(i, a) * x[a].derivative(j);
        }
        out(i, j) = s;
      }
    return out;
  });
}

KForm fundamental_form(const MetricField& g, const EndoField& J) {
  int dim = g.dim();
  const FormIndex* fo = &FormIndex::get(dim, 2);
  return KForm(dim, 2, [g, J, dim, fo](const Vec& p, int order) {
    JetMat gm = g.eval(p, order);
    JetMat jm = J.eval(p, order);
    JetVec r(fo->count());
    for (int c = 0; c < fo->count(); ++c) {
      int i = fo->tuple(c)[0], j = fo->tuple(c)[1];
      Jet s = Jet::constant(gm(0, 0).space(), 0.0);
      for (int a = 0; a < dim; ++a) s += jm(a, i) * gm(a, j);
      r[c] = s;
    }
    return r;
  });
}

MetricField metric_from_form(const KForm& omega, const EndoField& J) {
  int dim = omega.dim();
  return MetricField(dim, [omega, J, dim](const Vec& p, int order) {
    JetMat om = two_form_matrix(omega, p, order);
    JetMat jm = J.eval(p, order);
    JetMat out(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        Jet s = Jet::constant(om(0, 0).space(), 0.0);
        for (int a = 0; a < dim; ++a) s += jm(a, i) * om(a, j);
        out(i, j) = -s;
      }
    return out;
  });
}

KForm restrict_form(const KForm& alpha, const EndoField& P) {
  int dim = alpha.dim();
  int k = alpha.degree();
  if (k == 1) {
    return form_compose(alpha, P);
  }
  if (k != 2) throw std::invalid_argument("restrict_form implemented for degrees 1 and 2");
  const FormIndex* fo = &FormIndex::get(dim, 2);
  return KForm(dim, 2, [alpha, P, dim, fo](const Vec& p, int order) {
    JetMat am = two_form_matrix(alpha, p, order);
    JetMat pm = P.eval(p, order);
    // (P^T A P)_{ij}
    JetMat ap = jet_mat_mul(am, pm);
    JetVec r(fo->count());
    for (int c = 0; c < fo->count(); ++c) {
      int i = fo->tuple(c)[0], j = fo->tuple(c)[1];
      Jet s = Jet::constant(am(0, 0).space(), 0.0);
      for (int a = 0; a < dim; ++a) s += pm(a, i) * ap(a, j);
      r[c] = s;
    }
    return r;
  });
}

MetricField restrict_metric(const MetricField& g, const EndoField& P) {
  int dim = g.dim();
  return MetricField(dim, [g, P, dim](const Vec& p, int order) {
    JetMat gm = g.eval(p, order);
    JetMat pm = P.eval(p, order);
    JetMat gp = jet_mat_mul(gm, pm);
    JetMat out(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        Jet s = Jet::constant(gm(0, 0).space(), 0.0);
        for (int a = 0; a < dim; ++a) s += pm(a, i) * gp(a, j);
        out(i, j) = s;
      }
    return out;
  });
}

MetricField sym_product(const KForm& theta, const KForm& sigma) {
  int dim = theta.dim();
  return MetricField(dim, [theta, sigma, dim](const Vec& p, int order) {
    JetVec t = theta.eval(p, order);
    JetVec s = sigma.eval(p, order);
    JetMat out(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) out(i, j) = t[i] * s[j] + s[i] * t[j];
    return out;
  });
}

MetricField operator+(const MetricField& a, const MetricField& b) {
  int dim = a.dim();
  return MetricField(dim, [a, b, dim](const Vec& p, int order) {
    JetMat x = a.eval(p, order), y = b.eval(p, order);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) x(i, j) += y(i, j);
    return x;
  });
}

MetricField operator-(const MetricField& a, const MetricField& b) {
  int dim = a.dim();
  return MetricField(dim, [a, b, dim](const Vec& p, int order) {
    JetMat x = a.eval(p, order), y = b.eval(p, order);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) x(i, j) -= y(i, j);
    return x;
  });
}

MetricField scale(const ScalarField& f, const MetricField& g) {
  int dim = g.dim();
  return MetricField(dim, [f, g, dim](const Vec& p, int order) {
    Jet u = f.eval(p, order);
    JetMat x = g.eval(p, order);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) x(i, j) = u * x(i, j);
    return x;
  });
}

VectorField sharp(const MetricField& g, const KForm& theta) {
  if (theta.degree() != 1) throw std::invalid_argument("sharp needs a 1-form");
  int dim = g.dim();
  return VectorField(dim, [g, theta](const Vec& p, int order) {
    JetMat gi = jet_mat_inverse(g.eval(p, order));
    return jet_mat_apply(gi, theta.eval(p, order));
  });
}

Jet form_apply(const FormIndex& fi, const JetVec& comps, const std::vector<JetVec>& vectors) {
  int k = fi.degree();
  const JetSpace& sp = comps.empty() ? vectors[0][0].space() : comps[0].space();
  Jet out = Jet::constant(sp, 0.0);
  if (k == 0) return comps[0];
  // sum over increasing tuples of alpha_I * det(V[I]).
  std::vector<int> perm(k);
  for (int c = 0; c < fi.count(); ++c) {
    const std::vector<int>& t = fi.tuple(c);
    for (int i = 0; i < k; ++i) perm[i] = i;
    Jet det = Jet::constant(sp, 0.0);
    // Leibniz over permutations (k <= 4 keeps this small).
    std::sort(perm.begin(), perm.end());
    do {
      int sign = 1;
      for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
          if (perm[i] > perm[j]) sign = -sign;
      Jet prod = Jet::constant(sp, static_cast<double>(sign));
      for (int i = 0; i < k; ++i) prod = prod * vectors[perm[i]][t[i]];
      det += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    out += comps[c] * det;
  }
  return out;
}

JetMat two_form_matrix(const KForm& alpha, const Vec& p, int order) {
  int dim = alpha.dim();
  if (alpha.degree() != 2) throw std::invalid_argument("two_form_matrix needs a 2-form");
  JetVec a = alpha.eval(p, order);
  const FormIndex& fi = alpha.layout();
  const JetSpace& sp = a[0].space();
  JetMat out(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) out(i, j) = Jet::constant(sp, 0.0);
  for (int c = 0; c < fi.count(); ++c) {
    int i = fi.tuple(c)[0], j = fi.tuple(c)[1];
    out(i, j) = a[c];
    out(j, i) = -a[c];
  }
  return out;
}

KForm two_form_from_matrix(int dim, std::function<JetMat(const Vec&, int)> m) {
  const FormIndex* fo = &FormIndex::get(dim, 2);
  return KForm(dim, 2, [m = std::move(m), fo](const Vec& p, int order) {
    JetMat mm = m(p, order);
    JetVec r(fo->count());
    for (int c = 0; c < fo->count(); ++c)
      r[c] = mm(fo->tuple(c)[0], fo->tuple(c)[1]);
    return r;
  });
}

}  // namespace klab

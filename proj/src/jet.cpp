#include "klab/jet.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace klab {

namespace {

int pack_key(const MultiIndex& a, int dim, int order) {
  int key = 0;
  int radix = order + 1;
  for (int k = dim - 1; k >= 0; --k) key = key * radix + a[k];
  return key;
}

// All multi-indices with |a| <= order over `dim` variables, graded, then
// lexicographic inside each degree.  Index 0 is the constant term.
void enumerate(int dim, int order, std::vector<MultiIndex>& out) {
  MultiIndex cur{};
  for (int deg = 0; deg <= order; ++deg) {
    // Recursively distribute `deg` among dim slots.
    struct Rec {
      int dim;
      std::vector<MultiIndex>& out;
      MultiIndex& cur;
      void go(int slot, int remaining) {
        if (slot == dim - 1) {
          cur[slot] = static_cast<std::uint8_t>(remaining);
          out.push_back(cur);
          cur[slot] = 0;
          return;
        }
        for (int k = remaining; k >= 0; --k) {
          cur[slot] = static_cast<std::uint8_t>(k);
          go(slot + 1, remaining - k);
        }
        cur[slot] = 0;
      }
    } rec{dim, out, cur};
    rec.go(0, deg);
  }
}

}  // namespace

JetSpace::JetSpace(int dim, int order) : dim_(dim), order_(order) {
  if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("jet dim out of range");
  if (order < 0 || order > kMaxOrder) throw std::invalid_argument("jet order out of range");

  enumerate(dim, order, exps_);
  size_ = static_cast<int>(exps_.size());

  degree_.resize(size_);
  fact_.resize(size_);
  int radix = order + 1;
  int lookup_size = 1;
  for (int k = 0; k < dim; ++k) lookup_size *= radix;
  lookup_.assign(lookup_size, -1);

  for (int i = 0; i < size_; ++i) {
    int deg = 0;
    double f = 1.0;
    for (int k = 0; k < dim; ++k) {
      deg += exps_[i][k];
      for (int t = 2; t <= exps_[i][k]; ++t) f *= t;
    }
    degree_[i] = deg;
    fact_[i] = f;
    lookup_[pack_key(exps_[i], dim, order)] = i;
  }

  // Multiplication table: all coefficient pairs whose degrees fit.
  for (int a = 0; a < size_; ++a) {
    for (int b = 0; b < size_; ++b) {
      if (degree_[a] + degree_[b] > order) continue;
      MultiIndex s{};
      for (int k = 0; k < dim; ++k)
        s[k] = static_cast<std::uint8_t>(exps_[a][k] + exps_[b][k]);
      mul_.push_back({a, b, lookup_[pack_key(s, dim, order)]});
    }
  }

  // Differentiation tables into the order-1-lower space.
  if (order >= 1) {
    const JetSpace& lower = JetSpace::get(dim, order - 1);
    for (int i = 0; i < dim; ++i) {
      for (int src = 0; src < size_; ++src) {
        if (exps_[src][i] == 0) continue;
        MultiIndex b = exps_[src];
        b[i] -= 1;
        int dst = lower.index_of(b);
        if (dst < 0) continue;
        diff_[i].push_back({src, dst, static_cast<double>(exps_[src][i])});
      }
    }
  }
}

const JetSpace& JetSpace::get(int dim, int order) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<JetSpace>> cache;
  std::lock_guard<std::mutex> lk(mu);
  auto key = std::make_pair(dim, order);
  auto it = cache.find(key);
  if (it == cache.end()) {
    it = cache.emplace(key, std::unique_ptr<JetSpace>(new JetSpace(dim, order))).first;
  }
  return *it->second;
}

int JetSpace::index_of(const MultiIndex& a) const {
  int deg = 0;
  for (int k = 0; k < dim_; ++k) deg += a[k];
  if (deg > order_) return -1;
  return lookup_[pack_key(a, dim_, order_)];
}

Jet Jet::coordinate(const JetSpace& sp, int i, double v) {
  Jet j(sp);
  j.c_[0] = v;
  if (sp.order() >= 1) {
    MultiIndex e{};
    e[i] = 1;
    j.c_[sp.index_of(e)] = 1.0;
  }
  return j;
}

double Jet::d1(int i) const {
  if (sp_->order() < 1) throw std::logic_error("jet order too low for d1");
  MultiIndex e{};
  e[i] = 1;
  return c_[sp_->index_of(e)];
}

double Jet::d2(int i, int j) const {
  if (sp_->order() < 2) throw std::logic_error("jet order too low for d2");
  MultiIndex e{};
  e[i] += 1;
  e[j] += 1;
  int idx = sp_->index_of(e);
  return c_[idx] * sp_->factorial_of(idx);
}

double Jet::deriv(const MultiIndex& a) const {
  int idx = sp_->index_of(a);
  if (idx < 0) throw std::logic_error("derivative order exceeds jet order");
  return c_[idx] * sp_->factorial_of(idx);
}

Eigen::VectorXd Jet::gradient() const {
  Eigen::VectorXd g(sp_->dim());
  for (int i = 0; i < sp_->dim(); ++i) g[i] = d1(i);
  return g;
}

Eigen::MatrixXd Jet::hessian() const {
  int d = sp_->dim();
  Eigen::MatrixXd h(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j <= i; ++j) h(i, j) = h(j, i) = d2(i, j);
  return h;
}

Jet Jet::derivative(int i) const {
  const JetSpace& lower = JetSpace::get(sp_->dim(), sp_->order() - 1);
  Jet out(lower);
  for (const auto& e : sp_->diff_table(i)) out.coeffs()[e.dst] += e.factor * c_[e.src];
  return out;
}

Jet Jet::operator-() const {
  Jet out = *this;
  out.c_ = -out.c_;
  return out;
}

Jet& Jet::operator+=(const Jet& o) {
  c_ += o.c_;
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  c_ -= o.c_;
  return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
  Jet out(*a.sp_);
  const double* pa = a.c_.data();
  const double* pb = b.c_.data();
  double* pc = out.c_.data();
  for (const auto& e : a.sp_->mul_table()) pc[e.c] += pa[e.a] * pb[e.b];
  return out;
}

Jet Jet::compose(const std::array<double, kMaxOrder + 1>& derivs) const {
  // Horner evaluation of sum_k derivs[k]/k! * t^k with t = (*this) - value().
  const JetSpace& sp = *sp_;
  Jet t = *this;
  t.c_[0] = 0.0;
  int K = sp.order();
  static const double inv_fact[kMaxOrder + 1] = {1.0, 1.0, 0.5, 1.0 / 6.0, 1.0 / 24.0};
  Jet w = Jet::constant(sp, derivs[K] * inv_fact[K]);
  for (int k = K - 1; k >= 0; --k) {
    w = w * t;
    w += derivs[k] * inv_fact[k];
  }
  return w;
}

Jet exp(const Jet& u) {
  double e = std::exp(u.value());
  return u.compose({e, e, e, e, e});
}

Jet log(const Jet& u) {
  double v = u.value();
  if (v <= 0.0) throw std::domain_error("log of non-positive jet value");
  double iv = 1.0 / v;
  return u.compose({std::log(v), iv, -iv * iv, 2.0 * iv * iv * iv, -6.0 * iv * iv * iv * iv});
}

Jet sqrt(const Jet& u) { return pow(u, 0.5); }

Jet sin(const Jet& u) {
  double s = std::sin(u.value()), c = std::cos(u.value());
  return u.compose({s, c, -s, -c, s});
}

Jet cos(const Jet& u) {
  double s = std::sin(u.value()), c = std::cos(u.value());
  return u.compose({c, -s, -c, s, c});
}

Jet pow(const Jet& u, double q) {
  double v = u.value();
  std::array<double, kMaxOrder + 1> d{};
  double coef = 1.0;
  for (int k = 0; k <= kMaxOrder; ++k) {
    d[k] = coef * std::pow(v, q - k);
    coef *= (q - k);
  }
  return u.compose(d);
}

Jet inverse(const Jet& u) {
  double v = u.value();
  if (v == 0.0) throw std::domain_error("inverse of zero jet value");
  double iv = 1.0 / v;
  double iv2 = iv * iv;
  return u.compose({iv, -iv2, 2.0 * iv2 * iv, -6.0 * iv2 * iv2, 24.0 * iv2 * iv2 * iv});
}

Jet operator/(const Jet& a, const Jet& b) { return a * inverse(b); }

Jet operator/(double a, const Jet& b) { return inverse(b) * a; }

Jet truncate(const Jet& u, int order) {
  if (order == u.space().order()) return u;
  if (order > u.space().order()) throw std::logic_error("truncate cannot raise jet order");
  const JetSpace& lower = JetSpace::get(u.space().dim(), order);
  Jet out(lower);
  out.coeffs() = u.coeffs().head(lower.size());
  return out;
}

Jet embed(const Jet& sub, const JetSpace& ambient, int offset) {
  const JetSpace& ssp = sub.space();
  if (ssp.order() != ambient.order()) throw std::logic_error("embed order mismatch");
  if (offset + ssp.dim() > ambient.dim()) throw std::logic_error("embed out of range");
  Jet out(ambient);
  for (int i = 0; i < ssp.size(); ++i) {
    double v = sub.coeffs()[i];
    if (v == 0.0) continue;
    MultiIndex a{};
    const MultiIndex& e = ssp.exponents(i);
    for (int k = 0; k < ssp.dim(); ++k) a[offset + k] = e[k];
    out.coeffs()[ambient.index_of(a)] = v;
  }
  return out;
}

JetMat jet_mat_mul(const JetMat& a, const JetMat& b) {
  JetMat out(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) {
      Jet s = Jet::constant(a(i, 0).space(), 0.0);
      for (int k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      out(i, j) = s;
    }
  return out;
}

JetVec jet_mat_apply(const JetMat& a, const JetVec& x) {
  JetVec out(a.rows());
  for (int i = 0; i < a.rows(); ++i) {
    Jet s = Jet::constant(x[0].space(), 0.0);
    for (int k = 0; k < a.cols(); ++k) s += a(i, k) * x[k];
    out[i] = s;
  }
  return out;
}

JetMat jet_mat_inverse(const JetMat& a) {
  int n = a.rows();
  const JetSpace& sp = a(0, 0).space();
  JetMat work = a;
  JetMat inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv(i, j) = Jet::constant(sp, i == j ? 1.0 : 0.0);

  std::vector<int> rows(n);
  for (int i = 0; i < n; ++i) rows[i] = i;

  for (int col = 0; col < n; ++col) {
    int piv = col;
    double best = std::abs(work(rows[col], col).value());
    for (int r = col + 1; r < n; ++r) {
      double v = std::abs(work(rows[r], col).value());
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best < 1e-14) throw std::runtime_error("jet matrix singular (pivot < 1e-14)");
    std::swap(rows[col], rows[piv]);
    Jet ipiv = inverse(work(rows[col], col));
    for (int j = 0; j < n; ++j) {
      work(rows[col], j) = work(rows[col], j) * ipiv;
      inv(rows[col], j) = inv(rows[col], j) * ipiv;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      Jet f = work(rows[r], col);
      if (f.value() == 0.0) {
        bool zero = true;
        for (int t = 0; t < f.coeffs().size(); ++t)
          if (f.coeffs()[t] != 0.0) { zero = false; break; }
        if (zero) continue;
      }
      for (int j = 0; j < n; ++j) {
        work(rows[r], j) -= f * work(rows[col], j);
        inv(rows[r], j) -= f * inv(rows[col], j);
      }
    }
  }

  JetMat out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = inv(rows[i], j);
  return out;
}

}  // namespace klab

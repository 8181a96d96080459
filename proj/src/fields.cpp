#include "klab/fields.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

namespace klab {

FormIndex::FormIndex(int dim, int degree) : dim_(dim), degree_(degree) {
  if (degree < 0 || degree > dim) throw std::invalid_argument("form degree out of range");
  std::vector<int> cur(degree);
  // Lexicographic enumeration of increasing tuples.
  std::function<void(int, int)> rec = [&](int slot, int from) {
    if (slot == degree) {
      tuples_.push_back(cur);
      return;
    }
    for (int i = from; i < dim; ++i) {
      cur[slot] = i;
      rec(slot + 1, i + 1);
    }
  };
  if (degree == 0)
    tuples_.push_back({});
  else
    rec(0, 0);
}

const FormIndex& FormIndex::get(int dim, int degree) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<FormIndex>> cache;
  std::lock_guard<std::mutex> lk(mu);
  auto key = std::make_pair(dim, degree);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, std::unique_ptr<FormIndex>(new FormIndex(dim, degree))).first;
  return *it->second;
}

int FormIndex::rank(const std::vector<int>& t) const {
  auto it = std::lower_bound(tuples_.begin(), tuples_.end(), t);
  if (it == tuples_.end() || *it != t) throw std::logic_error("tuple not found");
  return static_cast<int>(it - tuples_.begin());
}

FormIndex::Sorted FormIndex::sort(std::vector<int> t) const {
  int sign = 1;
  for (size_t i = 1; i < t.size(); ++i)
    for (size_t j = i; j > 0 && t[j - 1] > t[j]; --j) {
      std::swap(t[j - 1], t[j]);
      sign = -sign;
    }
  for (size_t i = 1; i < t.size(); ++i)
    if (t[i] == t[i - 1]) return {0, 0};
  return {rank(t), sign};
}

Vec VectorField::values(const Vec& p) const {
  JetVec j = eval(p, 0);
  Vec v(dim_);
  for (int i = 0; i < dim_; ++i) v[i] = j[i].value();
  return v;
}

VectorField VectorField::zero(int dim) {
  return VectorField(dim, [dim](const Vec& p, int order) {
    const JetSpace& sp = JetSpace::get(static_cast<int>(p.size()), order);
    return JetVec(dim, Jet::constant(sp, 0.0));
  });
}

EndoField EndoField::identity(int dim, double scale) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(dim, dim) * scale;
  return constant(m);
}

EndoField EndoField::constant(const Eigen::MatrixXd& m) {
  int dim = static_cast<int>(m.rows());
  return EndoField(dim, [m, dim](const Vec& p, int order) {
    const JetSpace& sp = JetSpace::get(static_cast<int>(p.size()), order);
    JetMat out(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) out(i, j) = Jet::constant(sp, m(i, j));
    return out;
  });
}

MetricField MetricField::euclidean(int dim) {
  return MetricField(dim, [dim](const Vec& p, int order) {
    const JetSpace& sp = JetSpace::get(static_cast<int>(p.size()), order);
    JetMat out(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) out(i, j) = Jet::constant(sp, i == j ? 1.0 : 0.0);
    return out;
  });
}

KForm::KForm(int dim, int degree, Fn f)
    : dim_(dim), degree_(degree), f_(std::make_shared<Fn>(std::move(f))) {
  if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("form dim out of range");
  if (degree < 0 || degree > dim) throw std::invalid_argument("form degree out of range");
}

Vec KForm::values(const Vec& p) const {
  JetVec j = eval(p, 0);
  Vec v(j.size());
  for (size_t i = 0; i < j.size(); ++i) v[i] = j[i].value();
  return v;
}

KForm KForm::zero(int dim, int degree) {
  int n = FormIndex::get(dim, degree).count();
  return KForm(dim, degree, [n](const Vec& p, int order) {
    const JetSpace& sp = JetSpace::get(static_cast<int>(p.size()), order);
    return JetVec(n, Jet::constant(sp, 0.0));
  });
}

KForm KForm::monomial(int dim, const std::vector<int>& tuple, double coeff) {
  const FormIndex& fi = FormIndex::get(dim, static_cast<int>(tuple.size()));
  auto s = fi.sort(tuple);
  if (s.sign == 0) return KForm::zero(dim, static_cast<int>(tuple.size()));
  int n = fi.count();
  int r = s.rank;
  double c = coeff * s.sign;
  return KForm(dim, static_cast<int>(tuple.size()), [n, r, c](const Vec& p, int order) {
    const JetSpace& sp = JetSpace::get(static_cast<int>(p.size()), order);
    JetVec out(n, Jet::constant(sp, 0.0));
    out[r] = Jet::constant(sp, c);
    return out;
  });
}

Jet form_component(const KForm& alpha, const JetVec& comps, const std::vector<int>& tuple) {
  const FormIndex& fi = alpha.layout();
  auto s = fi.sort(tuple);
  const JetSpace& sp = comps.empty() ? JetSpace::get(alpha.dim(), 0) : comps[0].space();
  if (s.sign == 0) return Jet::constant(sp, 0.0);
  Jet out = comps[s.rank];
  if (s.sign < 0) out = -out;
  return out;
}

}  // namespace klab

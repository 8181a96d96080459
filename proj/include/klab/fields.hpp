#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "klab/chart.hpp"
#include "klab/jet.hpp"

namespace klab {

// Component layout for alternating forms: components are stored on strictly
// increasing index tuples, ordered lexicographically.
class FormIndex {
 public:
  static const FormIndex& get(int dim, int degree);

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  int count() const { return static_cast<int>(tuples_.size()); }
  const std::vector<int>& tuple(int i) const { return tuples_[i]; }
  int rank(const std::vector<int>& increasing_tuple) const;

  // Sorts an arbitrary tuple; returns component rank and permutation sign,
  // or sign 0 when an index repeats.
  struct Sorted {
    int rank;
    int sign;
  };
  Sorted sort(std::vector<int> tuple) const;

 private:
  FormIndex(int dim, int degree);
  int dim_, degree_;
  std::vector<std::vector<int>> tuples_;
};

// All field evaluators are pure: results depend only on (point, order) and
// evaluation may run concurrently.

class ScalarField {
 public:
  using Fn = std::function<Jet(const Vec&, int)>;
  ScalarField() = default;
  ScalarField(int dim, Fn f) : dim_(dim), f_(std::make_shared<Fn>(std::move(f))) {}
  int dim() const { return dim_; }
  Jet eval(const Vec& p, int order) const { return (*f_)(p, order); }
  double value(const Vec& p) const { return eval(p, 0).value(); }
  bool valid() const { return f_ != nullptr; }

  static ScalarField constant(int dim, double v) {
    return ScalarField(dim, [v](const Vec& p, int order) {
      return Jet::constant(JetSpace::get(static_cast<int>(p.size()), order), v);
    });
  }

 private:
  int dim_ = 0;
  std::shared_ptr<Fn> f_;
};

class VectorField {
 public:
  using Fn = std::function<JetVec(const Vec&, int)>;
  VectorField() = default;
  VectorField(int dim, Fn f) : dim_(dim), f_(std::make_shared<Fn>(std::move(f))) {}
  int dim() const { return dim_; }
  JetVec eval(const Vec& p, int order) const { return (*f_)(p, order); }
  Vec values(const Vec& p) const;
  bool valid() const { return f_ != nullptr; }

  static VectorField zero(int dim);

 private:
  int dim_ = 0;
  std::shared_ptr<Fn> f_;
};

// Endomorphism field T^i_j; column j holds the image of coordinate vector j.
class EndoField {
 public:
  using Fn = std::function<JetMat(const Vec&, int)>;
  EndoField() = default;
  EndoField(int dim, Fn f) : dim_(dim), f_(std::make_shared<Fn>(std::move(f))) {}
  int dim() const { return dim_; }
  JetMat eval(const Vec& p, int order) const { return (*f_)(p, order); }
  Eigen::MatrixXd values(const Vec& p) const { return eval(p, 0).values(); }
  bool valid() const { return f_ != nullptr; }

  static EndoField identity(int dim, double scale = 1.0);
  static EndoField constant(const Eigen::MatrixXd& m);

 private:
  int dim_ = 0;
  std::shared_ptr<Fn> f_;
};

// Symmetric 2-tensor field (metrics, Lie derivatives of metrics, ...).
class MetricField {
 public:
  using Fn = std::function<JetMat(const Vec&, int)>;
  MetricField() = default;
  MetricField(int dim, Fn f) : dim_(dim), f_(std::make_shared<Fn>(std::move(f))) {}
  int dim() const { return dim_; }
  JetMat eval(const Vec& p, int order) const { return (*f_)(p, order); }
  Eigen::MatrixXd values(const Vec& p) const { return eval(p, 0).values(); }
  bool valid() const { return f_ != nullptr; }

  static MetricField euclidean(int dim);

 private:
  int dim_ = 0;
  std::shared_ptr<Fn> f_;
};

class KForm {
 public:
  using Fn = std::function<JetVec(const Vec&, int)>;
  KForm() = default;
  KForm(int dim, int degree, Fn f);
  int dim() const { return dim_; }
  int degree() const { return degree_; }
  const FormIndex& layout() const { return FormIndex::get(dim_, degree_); }
  // Components on increasing tuples, in FormIndex order.
  JetVec eval(const Vec& p, int order) const { return (*f_)(p, order); }
  Vec values(const Vec& p) const;
  bool valid() const { return f_ != nullptr; }

  static KForm zero(int dim, int degree);
  // Constant coordinate k-form with a single component on `tuple`.
  static KForm monomial(int dim, const std::vector<int>& tuple, double coeff = 1.0);

 private:
  int dim_ = 0, degree_ = 0;
  std::shared_ptr<Fn> f_;
};

// Full antisymmetric evaluation of stored components on an arbitrary tuple
// of coordinate indices.
Jet form_component(const KForm& alpha, const JetVec& comps, const std::vector<int>& tuple);

}  // namespace klab

#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace klab {

// Truncated multivariate Taylor arithmetic on coordinate charts.
//
// A Jet stores the Taylor coefficients c_a of a smooth function around a
// point, for all multi-indices a with |a| <= order.  Derivatives are then
// exact: D^a f = a! * c_a.  Arithmetic is plain polynomial algebra truncated
// at the order; elementary functions are composed via their univariate
// Taylor expansions.

inline constexpr int kMaxDim = 8;
inline constexpr int kMaxOrder = 4;

using MultiIndex = std::array<std::uint8_t, kMaxDim>;

class JetSpace {
 public:
  // Cached, immutable layout tables for one (dim, order) pair.
  static const JetSpace& get(int dim, int order);

  int dim() const { return dim_; }
  int order() const { return order_; }
  int size() const { return size_; }

  const MultiIndex& exponents(int i) const { return exps_[i]; }
  int degree(int i) const { return degree_[i]; }
  double factorial_of(int i) const { return fact_[i]; }

  // Index of a multi-index; -1 if |a| > order.
  int index_of(const MultiIndex& a) const;

  struct MulEntry {
    std::int32_t a, b, c;  // c += lhs[a] * rhs[b]
  };
  const std::vector<MulEntry>& mul_table() const { return mul_; }

  // Coefficient map for d/dx_i as entries (src, dst, factor) into the
  // order-1-lower space.
  struct DiffEntry {
    std::int32_t src, dst;
    double factor;
  };
  const std::vector<DiffEntry>& diff_table(int i) const { return diff_[i]; }

 private:
  JetSpace(int dim, int order);

  int dim_, order_, size_;
  std::vector<MultiIndex> exps_;
  std::vector<int> degree_;
  std::vector<double> fact_;
  std::vector<std::int32_t> lookup_;  // packed base-(order+1) exponents -> index
  std::vector<MulEntry> mul_;
  std::array<std::vector<DiffEntry>, kMaxDim> diff_;
};

class Jet {
 public:
  Jet() : sp_(nullptr) {}
  explicit Jet(const JetSpace& sp) : sp_(&sp), c_(Eigen::VectorXd::Zero(sp.size())) {}

  static Jet constant(const JetSpace& sp, double v) {
    Jet j(sp);
    j.c_[0] = v;
    return j;
  }
  // Coordinate x_i seeded at value v: c_0 = v, c_{e_i} = 1.
  static Jet coordinate(const JetSpace& sp, int i, double v);

  const JetSpace& space() const { return *sp_; }
  bool valid() const { return sp_ != nullptr; }
  double value() const { return c_[0]; }

  // Exact partial derivatives at the base point.
  double d1(int i) const;
  double d2(int i, int j) const;
  double deriv(const MultiIndex& a) const;  // D^a f = a! c_a

  Eigen::VectorXd gradient() const;
  Eigen::MatrixXd hessian() const;

  // d/dx_i as a jet of one order lower.
  Jet derivative(int i) const;

  Jet operator-() const;
  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator+=(double v) { c_[0] += v; return *this; }
  Jet& operator-=(double v) { c_[0] -= v; return *this; }
  Jet& operator*=(double v) { c_ *= v; return *this; }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator+(Jet a, double b) { return a += b; }
  friend Jet operator+(double a, Jet b) { return b += a; }
  friend Jet operator-(Jet a, double b) { return a -= b; }
  friend Jet operator-(double a, const Jet& b) { return (-b) += a; }
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator*(Jet a, double b) { return a *= b; }
  friend Jet operator*(double a, Jet b) { return b *= a; }
  friend Jet operator/(const Jet& a, const Jet& b);
  friend Jet operator/(Jet a, double b) { return a *= (1.0 / b); }
  friend Jet operator/(double a, const Jet& b);

  // Composition with a univariate series: derivs[k] = f^(k)(value()).
  Jet compose(const std::array<double, kMaxOrder + 1>& derivs) const;

  const Eigen::VectorXd& coeffs() const { return c_; }
  Eigen::VectorXd& coeffs() { return c_; }

 private:
  const JetSpace* sp_;
  Eigen::VectorXd c_;
};

Jet exp(const Jet& u);
Jet log(const Jet& u);
Jet sqrt(const Jet& u);
Jet sin(const Jet& u);
Jet cos(const Jet& u);
Jet pow(const Jet& u, double q);
Jet inverse(const Jet& u);

// Drop coefficients above `order`.  The graded coefficient layout makes the
// lower space a prefix of the higher one.
Jet truncate(const Jet& u, int order);

// Reinterpret a jet on a sub-chart as a jet on an ambient chart whose
// coordinates [offset, offset+subdim) are the sub-chart ones.
Jet embed(const Jet& sub, const JetSpace& ambient, int offset);

// Carrier for a value with exact first and second derivatives.
struct Jet2Scalar {
  double value = 0.0;
  Eigen::VectorXd gradient;
  Eigen::MatrixXd hessian;
};

inline Jet2Scalar jet2(const Jet& j) {
  return Jet2Scalar{j.value(), j.gradient(), j.hessian()};
}

using JetVec = std::vector<Jet>;

// Dense matrix of jets, row-major (rows = output slot for endomorphisms).
class JetMat {
 public:
  JetMat() : rows_(0), cols_(0) {}
  JetMat(int rows, int cols) : rows_(rows), cols_(cols), m_(rows * cols) {}
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Jet& operator()(int i, int j) { return m_[i * cols_ + j]; }
  const Jet& operator()(int i, int j) const { return m_[i * cols_ + j]; }

  Eigen::MatrixXd values() const {
    Eigen::MatrixXd v(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) v(i, j) = (*this)(i, j).value();
    return v;
  }

 private:
  int rows_, cols_;
  std::vector<Jet> m_;
};

// Solve of a jet-valued linear system: inverse of a square JetMat whose
// value matrix is invertible.  Gauss-Jordan with partial pivoting on values;
// the resulting Taylor coefficients are exact regardless of pivot path.
JetMat jet_mat_inverse(const JetMat& a);

JetMat jet_mat_mul(const JetMat& a, const JetMat& b);
JetVec jet_mat_apply(const JetMat& a, const JetVec& x);

}  // namespace klab

#pragma once

#include "klab/exterior.hpp"
#include "klab/fields.hpp"

namespace klab {

// Rank-3 array of jets, G(k,i,j) symmetric in (i,j) for Christoffels,
// or eta[k] = endomorphism in direction k for intrinsic torsion.
class Jet3 {
 public:
  Jet3() : dim_(0) {}
  explicit Jet3(int dim) : dim_(dim), v_(dim * dim * dim) {}
  int dim() const { return dim_; }
  Jet& operator()(int k, int i, int j) { return v_[(k * dim_ + i) * dim_ + j]; }
  const Jet& operator()(int k, int i, int j) const { return v_[(k * dim_ + i) * dim_ + j]; }

 private:
  int dim_;
  std::vector<Jet> v_;
};

// Christoffel symbols of g at p; entries are jets at order `order`
// (g is consumed at order + 1).  Throws with a condition-number diagnostic
// if the metric matrix is singular at p.
Jet3 christoffels(const MetricField& g, const Vec& p, int order);

struct Curvature {
  int dim = 0;
  std::vector<double> R;   // lowered R(e_i,e_j,e_k,e_l), index ((i*d+j)*d+k)*d+l
  Eigen::MatrixXd ricci;   // Ric(e_j, e_k)
  double scalar = 0.0;
  double r(int i, int j, int k, int l) const { return R[((i * dim + j) * dim + k) * dim + l]; }
};

// Sign convention: the unit round 2-sphere has scalar curvature +2.
Curvature riemann_ricci_scalar(const MetricField& g, const Vec& p);

// Ricci endomorphism and Ricci form rho = Ric(J., .) as lazy fields.
MetricField ricci_tensor_field(const MetricField& g);
KForm ricci_form_field(const MetricField& g, const EndoField& J);
ScalarField scalar_curvature_field(const MetricField& g);

// Covariant derivative values (nabla_a T) as jets; `order` is the jet order
// of the result.
Jet3 covariant_derivative_endo(const MetricField& g, const EndoField& T, const Vec& p,
                               int order);
// (nabla_a alpha) for a k-form: result[a] = component vector of nabla_a alpha.
std::vector<JetVec> covariant_derivative_form(const MetricField& g, const KForm& alpha,
                                              const Vec& p, int order);
Jet3 covariant_derivative_metric(const MetricField& g, const MetricField& T, const Vec& p,
                                 int order);

// Codifferential d* alpha = -sum_i e_i . nabla_{e_i} alpha over a g-orthonormal
// frame; evaluated via the metric trace, so no explicit frame is required.
// Degree-0 input is rejected; on functions the induced Laplacian d*d is
// positive (flat chart: laplacian(x^2) = -2, unit sphere: laplacian of the
// height function = 2 * height).
JetVec codifferential(const MetricField& g, const KForm& alpha, const Vec& p, int order);

double laplacian(const MetricField& g, const ScalarField& f, const Vec& p);
ScalarField laplacian_field(const MetricField& g, const ScalarField& f);

// L* alpha = 1/2 sum_i J e_i . e_i . alpha  (adjoint of wedging with omega).
// Degree < 2 returns the zero form of degree k-2 clamped at 0 components:
// callers receive an empty value vector for degree <= 1.
JetVec lstar(const MetricField& g, const EndoField& J, const KForm& alpha, const Vec& p,
             int order);

// Nijenhuis tensor N(X,Y) = [X,Y] + J[JX,Y] + J[X,JY] - [JX,JY] on
// coordinate fields; out(k,i,j) = component k of N(e_i, e_j).
Jet3 nijenhuis(const EndoField& J, const Vec& p, int order);

// Gram-Schmidt over the metric: orthonormalize the given columns, keeping
// the subset selected by `pivots` (deterministic column order).
std::vector<JetVec> gram_schmidt(const JetMat& gram_metric, const std::vector<JetVec>& cols,
                                 double pivot_tol = 1e-12);

// Pointwise orthonormal coordinate-frame at p.
std::vector<JetVec> orthonormal_frame(const MetricField& g, const Vec& p, int order);

}  // namespace klab

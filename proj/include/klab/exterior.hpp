#pragma once

#include "klab/fields.hpp"

namespace klab {

// Exterior calculus on chart fields.  All operations build lazy derived
// fields; derivatives consumed internally raise the jet order requested from
// the inputs, so every result still evaluates with exact derivatives.

KForm exterior_derivative(const KForm& alpha);
KForm wedge(const KForm& alpha, const KForm& beta);
KForm interior_product(const VectorField& X, const KForm& alpha);
KForm differential(const ScalarField& f);  // df as a 1-form

KForm operator+(const KForm& a, const KForm& b);
KForm operator-(const KForm& a, const KForm& b);
KForm operator*(double c, const KForm& a);
KForm scale(const ScalarField& f, const KForm& a);

ScalarField operator+(const ScalarField& a, const ScalarField& b);
ScalarField operator*(const ScalarField& a, const ScalarField& b);
ScalarField log_field(const ScalarField& a);
ScalarField pow_field(const ScalarField& a, double q);

EndoField operator+(const EndoField& a, const EndoField& b);
EndoField operator-(const EndoField& a, const EndoField& b);
EndoField compose(const EndoField& a, const EndoField& b);  // a after b
// Rank-one endomorphism  beta (x) W : U |-> beta(U) W.
EndoField rank_one(const KForm& beta, const VectorField& W);
VectorField apply(const EndoField& a, const VectorField& X);
VectorField operator+(const VectorField& a, const VectorField& b);
VectorField operator*(double c, const VectorField& a);

// Form action of an endomorphism on a 1-form: (J beta)(X) := beta(J X).
KForm form_compose(const KForm& beta, const EndoField& J);

// Lie derivatives.  Forms use Cartan's formula; an independent coordinate
// formula is exposed for cross-checking.
KForm lie_derivative(const VectorField& X, const KForm& alpha);
KForm lie_derivative_coordinate(const VectorField& X, const KForm& alpha);
MetricField lie_derivative(const VectorField& X, const MetricField& g);
EndoField lie_derivative(const VectorField& X, const EndoField& T);

// omega = g(J., .) and g = -omega(J., .): the two directions of the
// fundamental-form correspondence.
KForm fundamental_form(const MetricField& g, const EndoField& J);
MetricField metric_from_form(const KForm& omega, const EndoField& J);

// Restriction through a projector: alpha(P., ..., P.).
KForm restrict_form(const KForm& alpha, const EndoField& P);
MetricField restrict_metric(const MetricField& g, const EndoField& P);

// theta (x) sigma + sigma (x) theta as a symmetric 2-tensor field.
MetricField sym_product(const KForm& theta, const KForm& sigma);

MetricField operator+(const MetricField& a, const MetricField& b);
MetricField operator-(const MetricField& a, const MetricField& b);
MetricField scale(const ScalarField& f, const MetricField& g);

// Musical isomorphisms (pointwise metric inversion under the hood).
VectorField sharp(const MetricField& g, const KForm& theta);

// Evaluate a k-form (component jets) on k jet vectors.
Jet form_apply(const FormIndex& fi, const JetVec& comps, const std::vector<JetVec>& vectors);

// Full antisymmetric 2-form component matrix  A_ij = alpha(e_i, e_j).
JetMat two_form_matrix(const KForm& alpha, const Vec& p, int order);
KForm two_form_from_matrix(int dim, std::function<JetMat(const Vec&, int)> m);

}  // namespace klab

#pragma once

#include "klab/fields.hpp"

namespace klab {

// Lifts of fields from a factor chart to a product chart.  The factor
// occupies coordinates [offset, offset + field.dim()); lifted tensors are
// extended by zero outside the block.

ScalarField lift_scalar(const ScalarField& f, int ambient_dim, int offset);
VectorField lift_vector(const VectorField& X, int ambient_dim, int offset);
EndoField lift_endo_block(const EndoField& T, int ambient_dim, int offset);
MetricField lift_metric_block(const MetricField& g, int ambient_dim, int offset);
KForm lift_form(const KForm& alpha, int ambient_dim, int offset);

}  // namespace klab

#include "klab/lift.hpp"

namespace klab {

namespace {

Vec sub_point(const Vec& p, int offset, int dim) { return p.segment(offset, dim); }

}  // namespace

ScalarField lift_scalar(const ScalarField& f, int ambient_dim, int offset) {
  int sub = f.dim();
  return ScalarField(ambient_dim, [f, ambient_dim, offset, sub](const Vec& p, int order) {
    const JetSpace& amb = JetSpace::get(ambient_dim, order);
    return embed(f.eval(sub_point(p, offset, sub), order), amb, offset);
  });
}

VectorField lift_vector(const VectorField& X, int ambient_dim, int offset) {
  int sub = X.dim();
  return VectorField(ambient_dim, [X, ambient_dim, offset, sub](const Vec& p, int order) {
    const JetSpace& amb = JetSpace::get(ambient_dim, order);
    JetVec v = X.eval(sub_point(p, offset, sub), order);
    JetVec out(ambient_dim, Jet::constant(amb, 0.0));
    for (int i = 0; i < sub; ++i) out[offset + i] = embed(v[i], amb, offset);
    return out;
  });
}

EndoField lift_endo_block(const EndoField& T, int ambient_dim, int offset) {
  int sub = T.dim();
  return EndoField(ambient_dim, [T, ambient_dim, offset, sub](const Vec& p, int order) {
    const JetSpace& amb = JetSpace::get(ambient_dim, order);
    JetMat m = T.eval(sub_point(p, offset, sub), order);
    JetMat out(ambient_dim, ambient_dim);
    for (int i = 0; i < ambient_dim; ++i)
      for (int j = 0; j < ambient_dim; ++j) out(i, j) = Jet::constant(amb, 0.0);
    for (int i = 0; i < sub; ++i)
      for (int j = 0; j < sub; ++j) out(offset + i, offset + j) = embed(m(i, j), amb, offset);
    return out;
  });
}

MetricField lift_metric_block(const MetricField& g, int ambient_dim, int offset) {
  int sub = g.dim();
  return MetricField(ambient_dim, [g, ambient_dim, offset, sub](const Vec& p, int order) {
    const JetSpace& amb = JetSpace::get(ambient_dim, order);
    JetMat m = g.eval(sub_point(p, offset, sub), order);
    JetMat out(ambient_dim, ambient_dim);
    for (int i = 0; i < ambient_dim; ++i)
      for (int j = 0; j < ambient_dim; ++j) out(i, j) = Jet::constant(amb, 0.0);
    for (int i = 0; i < sub; ++i)
      for (int j = 0; j < sub; ++j) out(offset + i, offset + j) = embed(m(i, j), amb, offset);
    return out;
  });
}

KForm lift_form(const KForm& alpha, int ambient_dim, int offset) {
  int sub = alpha.dim();
  int k = alpha.degree();
  const FormIndex* fin = &FormIndex::get(sub, k);
  const FormIndex* fout = &FormIndex::get(ambient_dim, k);
  return KForm(ambient_dim, k,
               [alpha, ambient_dim, offset, sub, k, fin, fout](const Vec& p, int order) {
                 const JetSpace& amb = JetSpace::get(ambient_dim, order);
                 JetVec a = alpha.eval(sub_point(p, offset, sub), order);
                 JetVec out(fout->count(), Jet::constant(amb, 0.0));
                 std::vector<int> t(k);
                 for (int c = 0; c < fin->count(); ++c) {
                   for (int s = 0; s < k; ++s) t[s] = fin->tuple(c)[s] + offset;
                   out[fout->rank(t)] = embed(a[c], amb, offset);
                 }
                 return out;
               });
}

}  // namespace klab

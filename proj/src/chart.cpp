#include "klab/chart.hpp"

namespace klab {

ChartDomain product_chart(const ChartDomain& a, const ChartDomain& b) {
  ChartDomain c;
  c.dim = a.dim + b.dim;
  c.bounds = a.bounds;
  c.bounds.insert(c.bounds.end(), b.bounds.begin(), b.bounds.end());
  c.validate();
  return c;
}

namespace {

double halton(std::uint64_t index, int base) {
  double f = 1.0, r = 0.0;
  while (index > 0) {
    f /= base;
    r += f * static_cast<double>(index % base);
    index /= base;
  }
  return r;
}

constexpr int kPrimes[kMaxDim] = {2, 3, 5, 7, 11, 13, 17, 19};

}  // namespace

std::vector<Vec> sample_points(const ChartDomain& chart, int count, std::uint64_t seed) {
  chart.validate();
  if (count < 1) throw std::invalid_argument("sample count must be >= 1");
  // Skip an initial seed-dependent segment of the Halton stream; the large
  // prime stride decorrelates nearby seeds.
  std::uint64_t start = 1000 + (seed % 1000003) * 7919;
  std::vector<Vec> pts;
  pts.reserve(count);
  for (int k = 0; k < count; ++k) {
    Vec p(chart.dim);
    for (int i = 0; i < chart.dim; ++i) {
      double u = halton(start + static_cast<std::uint64_t>(k) + 1, kPrimes[i]);
      auto [lo, hi] = chart.bounds[i];
      double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo) * 0.9;  // 10% shrink
      p[i] = mid + (2.0 * u - 1.0) * half;
    }
    pts.push_back(std::move(p));
  }
  return pts;
}

JetVec seed_point(const Vec& p, int order) {
  const JetSpace& sp = JetSpace::get(static_cast<int>(p.size()), order);
  JetVec out(p.size());
  for (int i = 0; i < p.size(); ++i) out[i] = Jet::coordinate(sp, i, p[i]);
  return out;
}

}  // namespace klab

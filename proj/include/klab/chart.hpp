#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "klab/jet.hpp"

namespace klab {

using Vec = Eigen::VectorXd;

// Open box in R^dim serving as a local coordinate chart.
struct ChartDomain {
  int dim = 0;
  std::vector<std::pair<double, double>> bounds;

  static ChartDomain box(int dim, double half_width) {
    ChartDomain c;
    c.dim = dim;
    c.bounds.assign(dim, {-half_width, half_width});
    c.validate();
    return c;
  }

  void validate() const {
    if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("chart dim must be 1..8");
    if (static_cast<int>(bounds.size()) != dim)
      throw std::invalid_argument("chart bounds size mismatch");
    for (auto& [lo, hi] : bounds)
      if (!(lo < hi)) throw std::invalid_argument("chart interval has empty interior");
  }

  bool contains(const Vec& p) const {
    for (int i = 0; i < dim; ++i)
      if (p[i] <= bounds[i].first || p[i] >= bounds[i].second) return false;
    return true;
  }
};

// Product of two charts; the left factor occupies the leading coordinates.
ChartDomain product_chart(const ChartDomain& a, const ChartDomain& b);

// Deterministic low-discrepancy samples, shrunk 10% from the boundary.
// The seed offsets the Halton index stream, so distinct seeds give distinct
// but reproducible point sets.
std::vector<Vec> sample_points(const ChartDomain& chart, int count, std::uint64_t seed);

// Coordinate jets of a point at the requested order.
JetVec seed_point(const Vec& p, int order);

}  // namespace klab

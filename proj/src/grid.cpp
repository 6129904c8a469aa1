#include "anisolab/grid.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "anisolab/kernels.hpp"

namespace anisolab {

Grid make_grid(std::span<const double> extents, std::span<const int> resolution) {
  const int n = static_cast<int>(extents.size());
  if (n != static_cast<int>(resolution.size()))
    throw std::invalid_argument("make_grid: extents/resolution length mismatch");
  if (n != 2 && n != 3)
    throw std::invalid_argument("make_grid: n_dims must be 2 or 3");
  Grid g;
  g.n_dims = n;
  g.node_count = 1;
  g.cell_weight = 1.0;
  for (int d = 0; d < n; ++d) {
    if (!(extents[d] > 0.0))
      throw std::invalid_argument("make_grid: extents must be positive");
    if (resolution[d] < 2)
      throw std::invalid_argument("make_grid: resolution must be at least 2");
    g.extents[d] = extents[d];
    g.resolution[d] = resolution[d];
    g.spacing[d] = extents[d] / (resolution[d] + 1);
    g.stride[d] = g.node_count;
    g.node_count *= resolution[d];
    g.cell_weight *= g.spacing[d];
  }
  return g;
}

double norm(const Field& f, double exponent) {
  if (!(exponent >= 1.0))
    throw std::invalid_argument("norm: exponent must be in [1, inf]");
  const std::size_t n = f.values.size();
  const double* v = f.values.data();
  if (std::isinf(exponent)) return kernels::max_abs(v, n);
  const double w = f.grid.cell_weight;
  if (exponent == 1.0) return kernels::sum_abs(v, n) * w;
  if (exponent == 2.0) return std::sqrt(kernels::sum_sq(v, n) * w);
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    s += std::pow(std::fabs(v[i]), exponent);
  return std::pow(s * w, 1.0 / exponent);
}

Field truncate_gk(const Field& f, double k) {
  if (!(k >= 0.0)) throw std::invalid_argument("truncate_gk: k must be >= 0");
  Field out(f.grid);
  kernels::shrink(f.values.data(), k, out.values.data(), f.values.size());
  return out;
}

Field truncate_tn(const Field& f, double n) {
  if (!(n > 0.0)) throw std::invalid_argument("truncate_tn: n must be > 0");
  Field out(f.grid);
  kernels::clamp_sym(f.values.data(), n, out.values.data(), f.values.size());
  return out;
}

namespace {

double axis_energy_sum(const Field& f, int d, double p) {
  const Grid& g = f.grid;
  const double* u = f.values.data();
  const double inv_h = 1.0 / g.spacing[d];
  const std::int64_t stride = g.stride[d];
  const std::int64_t count = g.resolution[d];
  double axis_sum = 0.0;
  for_each_line(g, d, [&](std::int64_t base) {
    double prev = 0.0;  // ghost boundary value
    std::int64_t idx = base;
    for (std::int64_t k = 0; k < count; ++k, idx += stride) {
      axis_sum += std::pow(std::fabs((u[idx] - prev) * inv_h), p);
      prev = u[idx];
    }
    // far-boundary edge: difference (0 - u_last)
    axis_sum += std::pow(std::fabs(prev * inv_h), p);
  });
  return axis_sum;
}

}  // namespace

double anisotropic_energy(const Field& f, const ExponentVector& exponents) {
  const Grid& g = f.grid;
  if (exponents.n_dims != g.n_dims)
    throw std::invalid_argument(
        "anisotropic_energy: exponent dimension does not match grid");
  double total = 0.0;
  for (int d = 0; d < g.n_dims; ++d)
    total += axis_energy_sum(f, d, exponents.p[d]);
  return total * g.cell_weight;
}

double axis_gradient_norm(const Field& f, int axis, double p) {
  if (axis < 0 || axis >= f.grid.n_dims)
    throw std::invalid_argument("axis_gradient_norm: axis out of range");
  if (!(p >= 1.0))
    throw std::invalid_argument("axis_gradient_norm: p must be >= 1");
  return std::pow(axis_energy_sum(f, axis, p) * f.grid.cell_weight, 1.0 / p);
}

double lrs_norm(const Trajectory& traj, double r, double s, double t0,
                double t1) {
  if (!(r >= 1.0 && s >= 1.0))
    throw std::invalid_argument("lrs_norm: indices must be in [1, inf]");
  if (!(t0 >= 0.0 && t0 < t1))
    throw std::invalid_argument("lrs_norm: empty time window");
  std::vector<double> ts;
  std::vector<double> gs;
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const double t = traj.times[i];
    if (t < t0 - 1e-15 || t > t1 + 1e-15) continue;
    ts.push_back(t);
    gs.push_back(norm(traj.states[i], s));
  }
  if (ts.empty()) throw std::invalid_argument("lrs_norm: empty time window");
  if (std::isinf(r)) {
    double m = 0.0;
    for (double gv : gs) m = std::max(m, gv);
    return m;
  }
  if (ts.size() == 1) return 0.0;
  double integral = 0.0;
  for (std::size_t i = 0; i + 1 < ts.size(); ++i)
    integral += 0.5 * (std::pow(gs[i], r) + std::pow(gs[i + 1], r)) *
                (ts[i + 1] - ts[i]);
  return std::pow(integral, 1.0 / r);
}

}  // namespace anisolab

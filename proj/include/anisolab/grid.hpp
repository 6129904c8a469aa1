#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "anisolab/exponents.hpp"

namespace anisolab {

struct ProblemSpec;

// Uniform rectangular grid of interior nodes with homogeneous Dirichlet
// boundary. Interior node counts are per axis; spacing h_i = extent_i /
// (resolution_i + 1). Nodes are ordered lexicographically with axis 0
// varying fastest: index = i0 + n0*(i1 + n1*i2).
struct Grid {
  int n_dims = 0;
  std::array<double, 3> extents{};
  std::array<int, 3> resolution{};
  std::array<double, 3> spacing{};
  std::array<std::int64_t, 3> stride{};
  std::int64_t node_count = 0;
  double cell_weight = 0.0;  // product of spacings, the quadrature weight

  // measure of the interior quadrature region (node_count * cell_weight)
  double interior_measure() const { return node_count * cell_weight; }
  // measure of the full domain box
  double domain_measure() const {
    double m = 1.0;
    for (int d = 0; d < n_dims; ++d) m *= extents[d];
    return m;
  }
  bool operator==(const Grid&) const = default;
};

Grid make_grid(std::span<const double> extents, std::span<const int> resolution);

// Scalar state on the interior nodes; the boundary value is structurally
// zero and never stored.
struct Field {
  Grid grid;
  std::vector<double> values;

  Field() = default;
  explicit Field(const Grid& g) : grid(g), values(g.node_count, 0.0) {}
};

struct NormRecord {
  double t = 0;
  double l1 = 0;
  double l2 = 0;
  double sup = 0;
  double energy = 0;
};

// Time-indexed sequence of states produced by the parabolic solver.
struct Trajectory {
  std::shared_ptr<const ProblemSpec> problem;
  std::vector<double> times;
  std::vector<Field> states;
  std::vector<NormRecord> norm_log;
};

// Discrete L^p norm with quadrature weight prod(h_i); sup norm for p = inf.
double norm(const Field& f, double exponent);

// G_k(s) = sign(s) * max(|s| - k, 0)
Field truncate_gk(const Field& f, double k);
// T_n(s) = clamp to [-n, n]
Field truncate_tn(const Field& f, double n);

// sum_i sum_edges |forward difference along axis i|^{p_i} * cell_weight,
// over all edges including the boundary ones (ghost value 0).
double anisotropic_energy(const Field& f, const ExponentVector& exponents);

// L^p norm of the forward-difference gradient along one axis:
// (sum_edges |D_axis u|^p * cell_weight)^{1/p}.
double axis_gradient_norm(const Field& f, int axis, double p);

// (integral_{t0}^{t1} ||u(tau)||_{L^s}^r dtau)^{1/r} by the trapezoidal rule
// over the recorded instants inside [t0, t1]; sup over samples for r = inf.
double lrs_norm(const Trajectory& traj, double r, double s, double t0,
                double t1);

// Applies f(base_index) for the first node of every grid line along `axis`;
// the line has grid.resolution[axis] nodes spaced grid.stride[axis] apart.
template <class F>
void for_each_line(const Grid& g, int axis, F&& f) {
  int other[2];
  int n_other = 0;
  for (int d = 0; d < g.n_dims; ++d)
    if (d != axis) other[n_other++] = d;
  const std::int64_t c0 = n_other > 0 ? g.resolution[other[0]] : 1;
  const std::int64_t c1 = n_other > 1 ? g.resolution[other[1]] : 1;
  const std::int64_t s0 = n_other > 0 ? g.stride[other[0]] : 0;
  const std::int64_t s1 = n_other > 1 ? g.stride[other[1]] : 0;
  for (std::int64_t j1 = 0; j1 < c1; ++j1)
    for (std::int64_t j0 = 0; j0 < c0; ++j0) f(j0 * s0 + j1 * s1);
}

}  // namespace anisolab

#pragma once

#include <optional>
#include <vector>

#include "anisolab/flux.hpp"
#include "anisolab/grid.hpp"

namespace anisolab {

struct EllipticSpec {
  Grid grid;
  ExponentVector exponents;
  FluxModel flux;
  Field forcing;
  std::vector<double> levels;    // optional truncation levels for the data
  std::optional<Field> initial;  // pseudo-time start, default zero field
  double solver_tol = 1e-10;
  int max_newton_iters = 200;
};

struct EllipticResult {
  Field w;
  // L1 distances ||w_{n_k} - w_{n_{k+1}}||_1 between consecutive levels,
  // empty when no levels were requested
  std::vector<double> level_l1_distances;
  double residual = 0.0;  // final sup norm of div_h(a(grad_h w)) + f
};

// Stationary solution of  div_h(a(grad_h w)) + f = 0  with zero Dirichlet
// boundary: pseudo-time continuation (backward-Euler steps with growing
// step size) until the stationary residual collapses below solver_tol.
// With levels, solves per truncated datum T_n(f) and returns the
// finest-level solution plus the inter-level L1 distances.
EllipticResult solve_elliptic(const EllipticSpec& spec);

}  // namespace anisolab

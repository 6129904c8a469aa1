#include "anisolab/elliptic.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "anisolab/kernels.hpp"
#include "anisolab/parabolic.hpp"

namespace anisolab {

namespace {

double stationary_residual(const EllipticSpec& spec, const Field& u,
                           const Field& f) {
  const Field au = apply_flux_operator(u, spec.flux);
  return kernels::max_abs_diff(au.values.data(), f.values.data(),
                               spec.grid.node_count);
}

}  // namespace

EllipticResult solve_elliptic(const EllipticSpec& spec) {
  if (!(spec.solver_tol > 0.0))
    throw std::invalid_argument("solve_elliptic: solver_tol must be > 0");
  if (!(spec.forcing.grid == spec.grid))
    throw std::invalid_argument("solve_elliptic: forcing grid mismatch");
  if (spec.exponents.n_dims != spec.grid.n_dims)
    throw std::invalid_argument("solve_elliptic: exponents do not match grid");
  if (spec.initial && !(spec.initial->grid == spec.grid))
    throw std::invalid_argument("solve_elliptic: initial guess grid mismatch");

  // Backward-Euler pseudo-time toward the unique steady state; the step
  // size grows until a single step is effectively the stationary solve.
  auto solve_single = [&](const Field& f, double* out_residual) -> Field {
    Field u = spec.initial ? *spec.initial : Field(spec.grid);
    double dt = 0.05;
    const double dt_max = 1e5;
    double res = stationary_residual(spec, u, f);
    for (int it = 0; it < 600; ++it) {
      if (res <= spec.solver_tol) break;
      const double step_tol =
          std::max(0.05 * spec.solver_tol * dt, 1e-14);
      u = step_implicit(u, dt, f, spec.flux, step_tol, spec.max_newton_iters);
      res = stationary_residual(spec, u, f);
      dt = std::min(dt * 1.6, dt_max);
    }
    if (res > spec.solver_tol) {
      std::ostringstream msg;
      msg << "solve_elliptic: no convergence, stationary residual " << res;
      throw StepFailure(msg.str(), res);
    }
    if (out_residual) *out_residual = res;
    return u;
  };

  EllipticResult result;
  if (spec.levels.empty()) {
    result.w = solve_single(spec.forcing, &result.residual);
  } else {
    for (std::size_t i = 0; i + 1 < spec.levels.size(); ++i)
      if (!(spec.levels[i] < spec.levels[i + 1]))
        throw std::invalid_argument("solve_elliptic: levels must be increasing");
    Field prev;
    for (std::size_t i = 0; i < spec.levels.size(); ++i) {
      Field w = solve_single(truncate_tn(spec.forcing, spec.levels[i]),
                             &result.residual);
      if (i > 0)
        result.level_l1_distances.push_back(
            kernels::sum_abs_diff(w.values.data(), prev.values.data(),
                                  spec.grid.node_count) *
            spec.grid.cell_weight);
      prev = std::move(w);
    }
    result.w = std::move(prev);
  }
  return result;
}

}  // namespace anisolab

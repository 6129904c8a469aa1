#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

#include "anisolab/flux.hpp"
#include "anisolab/grid.hpp"

namespace anisolab {

// Forcing sampled at given instants; the solver evaluates it at the
// end-of-step time by linear interpolation (clamped at the ends).
struct TimeSampledForcing {
  std::vector<double> times;
  std::vector<Field> fields;
};

using Forcing = std::variant<Field, TimeSampledForcing>;

struct ProblemSpec {
  Grid grid;
  ExponentVector exponents;
  FluxModel flux;
  Field initial;
  Forcing forcing;
  double t_final = 1.0;
  double dt = 1e-3;
  double newton_tol = 1e-10;
  int newton_max_iters = 60;
  int record_every = 1;

  bool autonomous() const { return std::holds_alternative<Field>(forcing); }
};

void validate(const ProblemSpec& p);

// Thrown when the damped Newton iteration cannot reach the residual
// tolerance within the iteration budget.
struct StepFailure : std::runtime_error {
  double residual;
  double time;  // filled by solve_parabolic with the failing instant
  StepFailure(const std::string& what, double residual_, double time_ = -1.0)
      : std::runtime_error(what), residual(residual_), time(time_) {}
};

// The discrete operator A(u) = -div_h(a(grad_h u)), the exact first
// variation of the anisotropic energy for the orthotropic flux.
Field apply_flux_operator(const Field& u, const FluxModel& flux);

// One backward-Euler step: solves
//   u_new - dt * div_h(a(grad_h u_new)) = state + dt * forcing
// to residual sup norm <= tol with a damped Newton iteration (Jacobi-
// preconditioned CG inner solves).
Field step_implicit(const Field& state, double dt, const Field& forcing,
                    const FluxModel& flux, double tol, int max_iters);

Trajectory solve_parabolic(const ProblemSpec& problem);
// Continues a run from a saved state at step index `start_step` (time =
// start_step * dt); used by checkpoint resume.
Trajectory solve_parabolic_from(const ProblemSpec& problem, const Field& state,
                                std::int64_t start_step);

// Evaluates the forcing at time t (end-of-step convention).
Field forcing_at(const ProblemSpec& problem, double t);

// Truncation-level approximation driver: runs the problem with data
// T_n(u0), T_n(f) per level and records the pairwise L1 closeness of the
// trajectories against the truncation-data bound.
struct SolaReport {
  std::vector<double> levels;
  std::vector<Trajectory> trajectories;
  std::vector<std::vector<double>> cauchy_matrix;      // sup_t ||u_n - u_m||_1
  std::vector<std::vector<double>> data_bound_matrix;  // data-truncation bound
  std::vector<std::vector<bool>> satisfied;
  double tolerance = 0.0;
  bool all_satisfied = false;
};

SolaReport sola_solve(const ProblemSpec& problem, std::span<const double> levels,
                      double tolerance);

}  // namespace anisolab

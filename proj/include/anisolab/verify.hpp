#pragma once

#include <span>
#include <string>
#include <vector>

#include "anisolab/exponents.hpp"
#include "anisolab/grid.hpp"
#include "anisolab/parabolic.hpp"

namespace anisolab {

// One verified estimate. Constants are always fitted (least constant making
// the bound hold on the window); exponents are matched against the
// closed-form values from the exponent algebra.
struct BoundCheckReport {
  std::string name;
  double window_lo = 0.0;
  double window_hi = 0.0;
  double fitted_constant = 0.0;
  double fitted_exponent = 0.0;
  double expected_exponent = 0.0;
  bool passed = false;
  double margin = 0.0;
  double fitted_offset = 0.0;  // additive constant / secondary measurement
  double fitted_sigma = 0.0;   // exponential rate (p_bar = 2 regime)
  std::string note;
};

struct FitResult {
  double constant = 0.0;
  double exponent = 0.0;
  double residual = 0.0;  // rms of log residuals
};

// Least-squares fit of value = C * t^{-h} on the samples with t inside
// [window_lo, window_hi]; needs >= 5 positive samples.
FitResult fit_decay_rate(std::span<const double> t, std::span<const double> value,
                         double window_lo, double window_hi);

// ||u(t)-v(t)||_1 <= ||u0-v0||_1 + int_0^t ||f-g||_1 at every recorded
// instant. f_minus_g_l1 holds the accumulated forcing-difference integral
// per recorded instant (empty means f = g). slack < 0 selects the default
// 10 * newton_tol * steps * max(1, |Omega_h|).
BoundCheckReport check_l1_contraction(const Trajectory& traj_u,
                                      const Trajectory& traj_v, const Field& u0,
                                      const Field& v0,
                                      std::span<const double> f_minus_g_l1,
                                      double slack = -1.0);

// Accumulated int_0^t ||f-g||_1 at the given instants, using the same
// end-of-step sampling as the solver.
std::vector<double> forcing_gap_series(const ProblemSpec& pu,
                                       const ProblemSpec& pv,
                                       std::span<const double> times);

// Sup-norm decay of u - v against the regime exponents plus the gradient
// tail bounds (C0 = |Omega| / (2 gamma)). Emits "uno"/"graduno" always,
// "expo"/"gradexpo" for p_bar = 2, "uni"/"graduni" for p_bar > 2.
std::vector<BoundCheckReport> check_decay_bounds(
    const Trajectory& traj_u, const Trajectory& traj_v,
    const ExponentVector& exponents, double gamma, double domain_measure,
    double window_lo, double window_hi, double exponent_tol = 0.15);

// Regularizing effect: S(t0) = sup_{t >= t0} ||u(t)||_inf fits
// C * t0^{-h} + c with h the algebraic decay exponent; residual is the rms
// relative misfit over a log-spaced t0 grid in [t0_min, t0_max].
BoundCheckReport check_regularizing(const Trajectory& traj, double f_lm_norm,
                                    double m, const ExponentVector& exponents,
                                    double t0_min, double t0_max,
                                    double residual_tol = 0.10);

// Regularity transfer via the pointwise bound
// |u(x,t)| <= ||u(t)-v(t)||_inf + |v(x,t)|: checks the bound sample-by-
// sample and compares lrs_norm(u) against envelope + lrs_norm(v) on the
// decay report's window intersected with [t0, T].
BoundCheckReport check_regularity_transfer(const Trajectory& traj_u,
                                           const Trajectory& traj_v,
                                           const BoundCheckReport& decay,
                                           double r, double s, double t0);

// ||u(t) - w||_inf nonincreasing after tail_start and below threshold by
// the final time; requires an autonomous run.
BoundCheckReport check_steady_convergence(const Trajectory& traj,
                                          const Field& steady,
                                          double tail_start,
                                          double threshold = 1e-4);

// Truncated energy inequality: for every recorded pair t1 < t2,
//   1/2||G_k(u-v)(t2)||_2^2 - 1/2||G_k(u-v)(t1)||_2^2
//     + gamma * sum dt * energy(G_k(u-v)) <= slack.
// Sharp when the trajectories are recorded at every step. slack < 0 selects
// the default 10 * newton_tol * steps * max(1, ||G_k(u0-v0)||_1).
BoundCheckReport check_energy_dissipation(const Trajectory& traj_u,
                                          const Trajectory& traj_v,
                                          double gamma, double k,
                                          double slack = -1.0);

// Empirical lower bounds for the anisotropic Sobolev and Poincare
// constants: maximal observed ratios over smooth probe fields and seeded
// random fields. The Poincare right-hand side uses q = p_i.
std::pair<double, double> estimate_functional_constants(
    const Grid& grid, const ExponentVector& exponents, long sample_count,
    unsigned seed);

// Largest relative spread (max/min - 1) of sup_{t >= t_from} ||u(t)||_inf
// across runs (universal-bound / data-independence comparisons).
double tail_sup_spread(std::span<const Trajectory> runs, double t_from);

}  // namespace anisolab

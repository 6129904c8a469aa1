#pragma once

#include <optional>
#include <span>
#include <string>

#include "anisolab/exponents.hpp"
#include "anisolab/grid.hpp"

namespace anisolab {

enum class FluxKind { orthotropic_power, regularized_power, perturbed };

// The coefficient family a_i(x,t,xi). All kinds are diagonal (a_i depends
// on xi only through xi_i) and autonomous:
//   orthotropic_power: a_i(xi) = |xi_i|^{p_i-2} xi_i
//   regularized_power: a_i(xi) = (eps^2 + xi_i^2)^{(p_i-2)/2} xi_i
//   perturbed:         a_i(xi) = |xi_i|^{p_i-2} xi_i + h^{1-1/p_i} tanh(xi_i)
// The perturbation level h is h_level for pointwise evaluation; the solver
// samples h_field (averaged onto edges) when one is attached.
struct FluxModel {
  FluxKind kind = FluxKind::orthotropic_power;
  ExponentVector exponents;
  double epsilon = 0.0;
  double alpha = 1.0;
  std::vector<double> beta;
  double gamma = 0.0;  // strong-monotonicity constant; 2^{2-p_max} for p_min >= 2
  double h_level = 0.0;
  std::optional<Field> h_field;
};

FluxModel make_flux(FluxKind kind, ExponentVector exponents,
                    double epsilon = 0.0);

// Empirical validation of the structure conditions at sampled argument
// pairs. worst_gamma is the smallest observed ratio
// (a_i(xi)-a_i(eta))(xi_i-eta_i) / |xi_i-eta_i|^{p_i}.
struct StructureReport {
  bool coercivity_ok = false;
  bool growth_ok = false;
  bool strict_monotone_ok = false;
  bool strong_monotone_ok = false;
  double worst_gamma = 0.0;
  long sample_count = 0;
};

double flux_eval(const FluxModel& m, int axis, std::span<const double> grad);
double flux_eval(const FluxModel& m, int axis, std::span<const double> grad,
                 double h_value);
double flux_derivative(const FluxModel& m, int axis,
                       std::span<const double> grad);
double flux_derivative(const FluxModel& m, int axis,
                       std::span<const double> grad, double h_value);

// Scalar fast paths used by the solvers (a_i depends only on xi_i).
double flux_eval_scalar(const FluxModel& m, int axis, double xi, double h_value);
double flux_derivative_scalar(const FluxModel& m, int axis, double xi,
                              double h_value);

StructureReport verify_structure(const FluxModel& m, long sample_count,
                                 unsigned seed);

std::string flux_kind_name(FluxKind k);
FluxKind flux_kind_from_name(const std::string& name);

}  // namespace anisolab

#pragma once

#include <optional>
#include <string>
#include <vector>

namespace anisolab {

// The anisotropy exponents p_i with the derived quantities that control
// embeddings and decay rates. p_bar is the harmonic mean N / sum(1/p_i);
// p_star = N*p_bar/(N - p_bar) exists only for p_bar < N.
struct ExponentVector {
  std::vector<double> p;
  int n_dims = 0;
  double p_bar = 0.0;
  std::optional<double> p_star;
  double p_min = 0.0;
  double p_max = 0.0;
  double p_infty = 0.0;  // max(p_star, p_max); p_max when p_star is undefined
};

// Per-exponent admissibility flags for the window
//   2 - 1/(N+1) < p_i < p_bar*(N+1)/N,   p_bar < N.
// model_monotone_ok records min p_i >= 2 (the strong-monotonicity condition
// for the orthotropic model) and does not enter `admissible`.
struct AdmissibilityReport {
  std::vector<bool> lower_ok;
  std::vector<bool> upper_ok;
  bool subcritical_ok = false;
  bool model_monotone_ok = false;
  bool admissible = false;
};

enum class DecayRegime { algebraic, exponential, universal };

// Decay exponents implied by the abstract integral estimates with norm
// indices r0 < r < q and dissipation exponent b:
//   h1 = 1 / (b - (r - r0) - r0*b/q),   h0 = h1*(1 - b/q)*r0.
// The regime is decided by sign(b - r): b = r gives exponential decay with
// rate sigma = c1*kappa / (4*(r - r0)*|Omega|^{1 - r/q}); b > r gives the
// universal bound with h2 = h1 + h0/(b - r) = 1/(b - r). The algebraic
// exponents h0, h1 are defined in every regime.
struct DecayProfile {
  double r = 0, r0 = 0, q = 0, b = 0;
  double h0 = 0, h1 = 0;
  DecayRegime regime = DecayRegime::algebraic;
  double h2 = 0;     // universal regime only, else NaN
  double sigma = 0;  // exponential regime only, else NaN
  double kappa = 0;  // free parameter, defaulted to the midpoint of (0, 1-r0/r)
  double c1 = 0, c2 = 0;
};

double harmonic_mean(const std::vector<double>& p, int n_dims);
double sobolev_critical(double p_bar, int n_dims);
ExponentVector make_exponents(std::vector<double> p);
AdmissibilityReport check_admissible(const std::vector<double>& p, int n_dims);
DecayProfile decay_profile(double r, double r0, double q, double b,
                           double domain_measure, double c1, double c2);

std::string regime_name(DecayRegime r);

}  // namespace anisolab

#include "anisolab/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace anisolab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Exact rational arithmetic on top of int64 with overflow-checked __int128
// intermediates. Exponent inputs almost always arrive as short decimals
// (2, 2.5, 15/7 from a prior exact computation), so doing the index algebra
// in rationals gives bit-exact closed-form matches; anything irrational or
// overflowing falls back to double.
struct Rat {
  std::int64_t num = 0;
  std::int64_t den = 1;
};

std::optional<Rat> rat_make(__int128 n, __int128 d) {
  if (d == 0) return std::nullopt;
  if (d < 0) {
    n = -n;
    d = -d;
  }
  __int128 a = n < 0 ? -n : n;
  __int128 b = d;
  while (b != 0) {
    const __int128 t = a % b;
    a = b;
    b = t;
  }
  if (a != 0) {
    n /= a;
    d /= a;
  }
  constexpr __int128 lim = std::numeric_limits<std::int64_t>::max();
  if (n > lim || n < -lim || d > lim) return std::nullopt;
  return Rat{static_cast<std::int64_t>(n), static_cast<std::int64_t>(d)};
}

std::optional<Rat> rat_add(Rat a, Rat b) {
  return rat_make(static_cast<__int128>(a.num) * b.den +
                      static_cast<__int128>(b.num) * a.den,
                  static_cast<__int128>(a.den) * b.den);
}

std::optional<Rat> rat_sub(Rat a, Rat b) {
  return rat_make(static_cast<__int128>(a.num) * b.den -
                      static_cast<__int128>(b.num) * a.den,
                  static_cast<__int128>(a.den) * b.den);
}

std::optional<Rat> rat_mul(Rat a, Rat b) {
  return rat_make(static_cast<__int128>(a.num) * b.num,
                  static_cast<__int128>(a.den) * b.den);
}

std::optional<Rat> rat_div(Rat a, Rat b) {
  if (b.num == 0) return std::nullopt;
  return rat_make(static_cast<__int128>(a.num) * b.den,
                  static_cast<__int128>(a.den) * b.num);
}

double rat_value(Rat a) {
  return static_cast<double>(a.num) / static_cast<double>(a.den);
}

// Continued-fraction reconstruction; accepted only if the quotient
// reproduces the double exactly.
std::optional<Rat> to_rational(double x) {
  if (!std::isfinite(x)) return std::nullopt;
  constexpr std::int64_t max_den = 1'000'000'000;
  double v = x;
  std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  for (int it = 0; it < 64; ++it) {
    const double fl = std::floor(v);
    if (std::fabs(fl) > 9.0e15) return std::nullopt;
    const auto a = static_cast<std::int64_t>(fl);
    const __int128 p2 = static_cast<__int128>(a) * p1 + p0;
    const __int128 q2 = static_cast<__int128>(a) * q1 + q0;
    if (q2 > max_den || p2 > max_den || p2 < -max_den) break;
    p0 = p1;
    q0 = q1;
    p1 = static_cast<std::int64_t>(p2);
    q1 = static_cast<std::int64_t>(q2);
    if (q1 != 0 &&
        static_cast<double>(p1) / static_cast<double>(q1) == x)
      return Rat{p1, q1};
    const double frac = v - fl;
    if (frac <= 0.0) break;
    v = 1.0 / frac;
  }
  return std::nullopt;
}

void validate_exponents(const std::vector<double>& p, int n_dims) {
  if (p.empty()) throw std::invalid_argument("exponent list is empty");
  if (n_dims < 2) throw std::invalid_argument("n_dims must be at least 2");
  if (static_cast<int>(p.size()) != n_dims)
    throw std::invalid_argument("exponent list length does not match n_dims");
  for (double pi : p)
    if (!(pi > 1.0))
      throw std::invalid_argument("every exponent must exceed 1");
}

}  // namespace

double harmonic_mean(const std::vector<double>& p, int n_dims) {
  validate_exponents(p, n_dims);

  // exact route: N / sum(1/p_i)
  std::optional<Rat> sum = Rat{0, 1};
  for (double pi : p) {
    if (!sum) break;
    const auto r = to_rational(pi);
    if (!r) {
      sum = std::nullopt;
      break;
    }
    const auto inv = rat_div(Rat{1, 1}, *r);
    sum = inv ? rat_add(*sum, *inv) : std::nullopt;
  }
  if (sum) {
    if (const auto pb = rat_div(Rat{n_dims, 1}, *sum)) return rat_value(*pb);
  }

  double s = 0.0;
  for (double pi : p) s += 1.0 / pi;
  return static_cast<double>(n_dims) / s;
}

double sobolev_critical(double p_bar, int n_dims) {
  if (!(p_bar > 1.0)) throw std::invalid_argument("p_bar must exceed 1");
  if (!(p_bar < n_dims))
    throw std::domain_error(
        "critical exponent undefined: harmonic mean is not below the "
        "dimension");
  const auto pb = to_rational(p_bar);
  if (pb) {
    const auto num = rat_mul(Rat{n_dims, 1}, *pb);
    const auto den = rat_sub(Rat{n_dims, 1}, *pb);
    if (num && den) {
      if (const auto ps = rat_div(*num, *den)) return rat_value(*ps);
    }
  }
  return n_dims * p_bar / (n_dims - p_bar);
}

ExponentVector make_exponents(std::vector<double> p) {
  const int n = static_cast<int>(p.size());
  validate_exponents(p, n);
  ExponentVector e;
  e.p = std::move(p);
  e.n_dims = n;
  e.p_bar = harmonic_mean(e.p, n);
  e.p_min = *std::min_element(e.p.begin(), e.p.end());
  e.p_max = *std::max_element(e.p.begin(), e.p.end());
  if (e.p_bar < n) e.p_star = sobolev_critical(e.p_bar, n);
  e.p_infty = e.p_star ? std::max(*e.p_star, e.p_max) : e.p_max;
  return e;
}

AdmissibilityReport check_admissible(const std::vector<double>& p, int n_dims) {
  validate_exponents(p, n_dims);
  AdmissibilityReport rep;
  const double p_bar = harmonic_mean(p, n_dims);
  const double lower = 2.0 - 1.0 / (n_dims + 1);
  const double upper = p_bar * (n_dims + 1) / n_dims;
  bool all = true;
  for (double pi : p) {
    rep.lower_ok.push_back(pi > lower);
    rep.upper_ok.push_back(pi < upper);
    all = all && rep.lower_ok.back() && rep.upper_ok.back();
  }
  rep.subcritical_ok = p_bar < n_dims;
  rep.model_monotone_ok =
      *std::min_element(p.begin(), p.end()) >= 2.0;
  rep.admissible = all && rep.subcritical_ok;
  return rep;
}

DecayProfile decay_profile(double r, double r0, double q, double b,
                           double domain_measure, double c1, double c2) {
  if (!(r0 >= 1.0 && r0 < r && r < q))
    throw std::invalid_argument("decay_profile: need 1 <= r0 < r < q");
  const double inv_q = std::isinf(q) ? 0.0 : 1.0 / q;
  const double b0 = (r - r0) / (1.0 - r0 * inv_q);
  if (!(b > b0 && b < q))
    throw std::invalid_argument("decay_profile: need b0 < b < q");
  if (!(c1 > 0.0 && c2 > 0.0))
    throw std::invalid_argument("decay_profile: constants must be positive");

  DecayProfile d;
  d.r = r;
  d.r0 = r0;
  d.q = q;
  d.b = b;
  d.c1 = c1;
  d.c2 = c2;

  d.h1 = kNaN;
  d.h0 = kNaN;
  // exact route when all indices are rational (q = inf handled as 1/q = 0)
  const auto rr = to_rational(r), rr0 = to_rational(r0), rb = to_rational(b);
  const auto rq = std::isinf(q) ? std::optional<Rat>{Rat{1, 1}} : to_rational(q);
  if (rr && rr0 && rb && rq) {
    const Rat b_over_q =
        std::isinf(q) ? Rat{0, 1} : rat_div(*rb, *rq).value_or(Rat{0, 0});
    if (b_over_q.den != 0) {
      // denom = b - (r - r0) - r0*b/q
      auto denom = rat_sub(*rb, rat_sub(*rr, *rr0).value_or(Rat{0, 0}));
      if (denom)
        denom = rat_sub(*denom,
                        rat_mul(*rr0, b_over_q).value_or(Rat{0, 0}));
      if (denom && denom->num != 0) {
        const auto h1 = rat_div(Rat{1, 1}, *denom);
        const auto one_minus = rat_sub(Rat{1, 1}, b_over_q);
        if (h1 && one_minus) {
          const auto h0 =
              rat_mul(rat_mul(*h1, *one_minus).value_or(Rat{0, 0}), *rr0);
          if (h0 && h0->den != 0) {
            d.h1 = rat_value(*h1);
            d.h0 = rat_value(*h0);
          }
        }
      }
    }
  }
  if (!std::isfinite(d.h1)) {
    const double denom = b - (r - r0) - r0 * b * inv_q;
    d.h1 = 1.0 / denom;
    d.h0 = d.h1 * (1.0 - b * inv_q) * r0;
  }

  d.kappa = 0.5 * (1.0 - r0 / r);
  d.h2 = kNaN;
  d.sigma = kNaN;
  if (b > r) {
    d.regime = DecayRegime::universal;
    const auto rbr = rb && rr ? rat_sub(*rb, *rr) : std::nullopt;
    const auto h2 = rbr ? rat_div(Rat{1, 1}, *rbr) : std::nullopt;
    d.h2 = h2 ? rat_value(*h2) : 1.0 / (b - r);
  } else if (b == r) {
    d.regime = DecayRegime::exponential;
    if (!(domain_measure > 0.0))
      throw std::invalid_argument(
          "decay_profile: exponential regime needs a finite domain measure");
    d.sigma = c1 * d.kappa /
              (4.0 * (r - r0) * std::pow(domain_measure, 1.0 - r * inv_q));
  } else {
    d.regime = DecayRegime::algebraic;
  }
  return d;
}

std::string regime_name(DecayRegime r) {
  switch (r) {
    case DecayRegime::algebraic: return "algebraic";
    case DecayRegime::exponential: return "exponential";
    case DecayRegime::universal: return "universal";
  }
  return "unknown";
}

}  // namespace anisolab

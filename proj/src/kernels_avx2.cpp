// AVX2 kernel variants. This translation unit is compiled with -mavx2; it
// must only be entered after avx2::available() returned true.

#include "anisolab/kernels.hpp"

#include <cmath>

#if (defined(__x86_64__) || defined(_M_X64)) && !defined(ANISOLAB_NO_AVX2)
#include <immintrin.h>

namespace anisolab::kernels::avx2 {

bool available() {
#if defined(__GNUC__) || defined(__clang__)
  return __builtin_cpu_supports("avx2") != 0;
#else
  return false;
#endif
}

namespace {

const __m256d kSignMask = _mm256_set1_pd(-0.0);

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(lo) + _mm_cvtsd_f64(_mm_unpackhi_pd(lo, lo));
}

inline double hmax(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_max_pd(lo, hi);
  const double a = _mm_cvtsd_f64(lo);
  const double b = _mm_cvtsd_f64(_mm_unpackhi_pd(lo, lo));
  return a > b ? a : b;
}

}  // namespace

double dot(const double* x, const double* y, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(_mm256_loadu_pd(x + i),
                                             _mm256_loadu_pd(y + i)));
    acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(_mm256_loadu_pd(x + i + 4),
                                             _mm256_loadu_pd(y + i + 4)));
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

double sum_abs(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_add_pd(acc, _mm256_andnot_pd(kSignMask, _mm256_loadu_pd(x + i)));
  double s = hsum(acc);
  for (; i < n; ++i) s += std::fabs(x[i]);
  return s;
}

double sum_sq(const double* x, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d a = _mm256_loadu_pd(x + i);
    const __m256d b = _mm256_loadu_pd(x + i + 4);
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(a, a));
    acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(b, b));
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += x[i] * x[i];
  return s;
}

double max_abs(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_max_pd(acc, _mm256_andnot_pd(kSignMask, _mm256_loadu_pd(x + i)));
  double m = hmax(acc);
  for (; i < n; ++i) {
    const double a = std::fabs(x[i]);
    if (a > m) m = a;
  }
  return m;
}

double sum_abs_diff(const double* x, const double* y, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d =
        _mm256_sub_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
    acc = _mm256_add_pd(acc, _mm256_andnot_pd(kSignMask, d));
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += std::fabs(x[i] - y[i]);
  return s;
}

double max_abs_diff(const double* x, const double* y, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d =
        _mm256_sub_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
    acc = _mm256_max_pd(acc, _mm256_andnot_pd(kSignMask, d));
  }
  double m = hmax(acc);
  for (; i < n; ++i) {
    const double a = std::fabs(x[i] - y[i]);
    if (a > m) m = a;
  }
  return m;
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d t =
        _mm256_add_pd(_mm256_loadu_pd(y + i),
                      _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
    _mm256_storeu_pd(y + i, t);
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void xpby(const double* x, double b, double* y, std::size_t n) {
  const __m256d vb = _mm256_set1_pd(b);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d t =
        _mm256_add_pd(_mm256_loadu_pd(x + i),
                      _mm256_mul_pd(vb, _mm256_loadu_pd(y + i)));
    _mm256_storeu_pd(y + i, t);
  }
  for (; i < n; ++i) y[i] = x[i] + b * y[i];
}

void scale(double a, double* x, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(x + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
  for (; i < n; ++i) x[i] *= a;
}

void mul(const double* x, const double* y, double* z, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(
        z + i, _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  for (; i < n; ++i) z[i] = x[i] * y[i];
}

void clamp_sym(const double* x, double bound, double* out, std::size_t n) {
  const __m256d hi = _mm256_set1_pd(bound);
  const __m256d lo = _mm256_set1_pd(-bound);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v = _mm256_loadu_pd(x + i);
    v = _mm256_min_pd(v, hi);
    v = _mm256_max_pd(v, lo);
    _mm256_storeu_pd(out + i, v);
  }
  for (; i < n; ++i) {
    double v = x[i];
    if (v > bound) v = bound;
    if (v < -bound) v = -bound;
    out[i] = v;
  }
}

void shrink(const double* x, double k, double* out, std::size_t n) {
  const __m256d vk = _mm256_set1_pd(k);
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(x + i);
    const __m256d m = _mm256_sub_pd(_mm256_andnot_pd(kSignMask, v), vk);
    const __m256d pos = _mm256_cmp_pd(m, zero, _CMP_GT_OQ);
    const __m256d signedm =
        _mm256_or_pd(_mm256_max_pd(m, zero), _mm256_and_pd(kSignMask, v));
    // lanes with m <= 0 produce exactly +0.0, matching the scalar kernel
    _mm256_storeu_pd(out + i, _mm256_and_pd(signedm, pos));
  }
  for (; i < n; ++i) {
    const double v = x[i];
    const double m = std::fabs(v) - k;
    out[i] = m > 0.0 ? (v > 0.0 ? m : -m) : 0.0;
  }
}

}  // namespace anisolab::kernels::avx2

#else  // non-x86 fallback: report unavailable, forward to scalar

namespace anisolab::kernels::avx2 {
bool available() { return false; }
double dot(const double* x, const double* y, std::size_t n) { return scalar::dot(x, y, n); }
double sum_abs(const double* x, std::size_t n) { return scalar::sum_abs(x, n); }
double sum_sq(const double* x, std::size_t n) { return scalar::sum_sq(x, n); }
double max_abs(const double* x, std::size_t n) { return scalar::max_abs(x, n); }
double sum_abs_diff(const double* x, const double* y, std::size_t n) { return scalar::sum_abs_diff(x, y, n); }
double max_abs_diff(const double* x, const double* y, std::size_t n) { return scalar::max_abs_diff(x, y, n); }
void axpy(double a, const double* x, double* y, std::size_t n) { scalar::axpy(a, x, y, n); }
void xpby(const double* x, double b, double* y, std::size_t n) { scalar::xpby(x, b, y, n); }
void scale(double a, double* x, std::size_t n) { scalar::scale(a, x, n); }
void mul(const double* x, const double* y, double* z, std::size_t n) { scalar::mul(x, y, z, n); }
void clamp_sym(const double* x, double bound, double* out, std::size_t n) { scalar::clamp_sym(x, bound, out, n); }
void shrink(const double* x, double k, double* out, std::size_t n) { scalar::shrink(x, k, out, n); }
}  // namespace anisolab::kernels::avx2

#endif

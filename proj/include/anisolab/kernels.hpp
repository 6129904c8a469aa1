#pragma once

#include <cstddef>

// Data-parallel inner loops used by the solvers and the field algebra.
// Every kernel has a scalar reference implementation and, on x86-64, an
// AVX2 variant; the active backend is picked once at startup from the CPU
// feature flags and can be overridden with ANISOLAB_KERNELS=scalar|avx2.
// Elementwise kernels (axpy, xpby, scale, mul, clamp_sym, shrink) are
// bit-identical across backends; reductions may reassociate and are
// equivalence-tested to tight relative tolerance.

namespace anisolab::kernels {

enum class Backend { scalar, avx2 };

Backend active();
const char* backend_name();
// Forces a backend (for tests/benchmarks). Throws if unavailable on this CPU.
void force_backend(Backend b);

double dot(const double* x, const double* y, std::size_t n);
double sum_abs(const double* x, std::size_t n);
double sum_sq(const double* x, std::size_t n);
double max_abs(const double* x, std::size_t n);
double sum_abs_diff(const double* x, const double* y, std::size_t n);
double max_abs_diff(const double* x, const double* y, std::size_t n);

void axpy(double a, const double* x, double* y, std::size_t n);   // y += a*x
void xpby(const double* x, double b, double* y, std::size_t n);   // y = x + b*y
void scale(double a, double* x, std::size_t n);
void mul(const double* x, const double* y, double* z, std::size_t n);
void clamp_sym(const double* x, double bound, double* out, std::size_t n);
void shrink(const double* x, double k, double* out, std::size_t n);

namespace scalar {
double dot(const double* x, const double* y, std::size_t n);
double sum_abs(const double* x, std::size_t n);
double sum_sq(const double* x, std::size_t n);
double max_abs(const double* x, std::size_t n);
double sum_abs_diff(const double* x, const double* y, std::size_t n);
double max_abs_diff(const double* x, const double* y, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
void xpby(const double* x, double b, double* y, std::size_t n);
void scale(double a, double* x, std::size_t n);
void mul(const double* x, const double* y, double* z, std::size_t n);
void clamp_sym(const double* x, double bound, double* out, std::size_t n);
void shrink(const double* x, double k, double* out, std::size_t n);
}  // namespace scalar

namespace avx2 {
bool available();
double dot(const double* x, const double* y, std::size_t n);
double sum_abs(const double* x, std::size_t n);
double sum_sq(const double* x, std::size_t n);
double max_abs(const double* x, std::size_t n);
double sum_abs_diff(const double* x, const double* y, std::size_t n);
double max_abs_diff(const double* x, const double* y, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
void xpby(const double* x, double b, double* y, std::size_t n);
void scale(double a, double* x, std::size_t n);
void mul(const double* x, const double* y, double* z, std::size_t n);
void clamp_sym(const double* x, double bound, double* out, std::size_t n);
void shrink(const double* x, double k, double* out, std::size_t n);
}  // namespace avx2

}  // namespace anisolab::kernels

#include "anisolab/kernels.hpp"

#include <cstdlib>
#include <cstring>
#include <mutex>
#include <stdexcept>

namespace anisolab::kernels {

namespace {

struct Table {
  double (*dot)(const double*, const double*, std::size_t);
  double (*sum_abs)(const double*, std::size_t);
  double (*sum_sq)(const double*, std::size_t);
  double (*max_abs)(const double*, std::size_t);
  double (*sum_abs_diff)(const double*, const double*, std::size_t);
  double (*max_abs_diff)(const double*, const double*, std::size_t);
  void (*axpy)(double, const double*, double*, std::size_t);
  void (*xpby)(const double*, double, double*, std::size_t);
  void (*scale)(double, double*, std::size_t);
  void (*mul)(const double*, const double*, double*, std::size_t);
  void (*clamp_sym)(const double*, double, double*, std::size_t);
  void (*shrink)(const double*, double, double*, std::size_t);
};

constexpr Table kScalar = {
    scalar::dot,     scalar::sum_abs,      scalar::sum_sq,
    scalar::max_abs, scalar::sum_abs_diff, scalar::max_abs_diff,
    scalar::axpy,    scalar::xpby,         scalar::scale,
    scalar::mul,     scalar::clamp_sym,    scalar::shrink};

constexpr Table kAvx2 = {
    avx2::dot,     avx2::sum_abs,      avx2::sum_sq,
    avx2::max_abs, avx2::sum_abs_diff, avx2::max_abs_diff,
    avx2::axpy,    avx2::xpby,         avx2::scale,
    avx2::mul,     avx2::clamp_sym,    avx2::shrink};

Backend g_backend = Backend::scalar;
const Table* g_table = &kScalar;
std::once_flag g_init;

void set(Backend b) {
  g_backend = b;
  g_table = (b == Backend::avx2) ? &kAvx2 : &kScalar;
}

void init() {
  Backend b = avx2::available() ? Backend::avx2 : Backend::scalar;
  if (const char* env = std::getenv("ANISOLAB_KERNELS")) {
    if (std::strcmp(env, "scalar") == 0) b = Backend::scalar;
    if (std::strcmp(env, "avx2") == 0 && avx2::available()) b = Backend::avx2;
  }
  set(b);
}

const Table& table() {
  std::call_once(g_init, init);
  return *g_table;
}

}  // namespace

Backend active() {
  std::call_once(g_init, init);
  return g_backend;
}

const char* backend_name() {
  return active() == Backend::avx2 ? "avx2" : "scalar";
}

void force_backend(Backend b) {
  std::call_once(g_init, init);
  if (b == Backend::avx2 && !avx2::available())
    throw std::runtime_error("AVX2 kernels not available on this CPU");
  set(b);
}

double dot(const double* x, const double* y, std::size_t n) { return table().dot(x, y, n); }
double sum_abs(const double* x, std::size_t n) { return table().sum_abs(x, n); }
double sum_sq(const double* x, std::size_t n) { return table().sum_sq(x, n); }
double max_abs(const double* x, std::size_t n) { return table().max_abs(x, n); }
double sum_abs_diff(const double* x, const double* y, std::size_t n) { return table().sum_abs_diff(x, y, n); }
double max_abs_diff(const double* x, const double* y, std::size_t n) { return table().max_abs_diff(x, y, n); }
void axpy(double a, const double* x, double* y, std::size_t n) { table().axpy(a, x, y, n); }
void xpby(const double* x, double b, double* y, std::size_t n) { table().xpby(x, b, y, n); }
void scale(double a, double* x, std::size_t n) { table().scale(a, x, n); }
void mul(const double* x, const double* y, double* z, std::size_t n) { table().mul(x, y, z, n); }
void clamp_sym(const double* x, double bound, double* out, std::size_t n) { table().clamp_sym(x, bound, out, n); }
void shrink(const double* x, double k, double* out, std::size_t n) { table().shrink(x, k, out, n); }

}  // namespace anisolab::kernels

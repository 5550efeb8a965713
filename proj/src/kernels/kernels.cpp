#include "hypa/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace hypa::kernels {

namespace {

double sum_scalar(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i];
  return acc;
}

double dot_scalar(const double* x, const double* y, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

void scale_scalar(double* x, std::size_t n, double c) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= c;
}

void mul_indexed_scalar(double* x, const std::uint32_t* idx, std::size_t n,
                        const double* factor) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= factor[idx[i]];
}

double sq_diff_sum_scalar(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return acc;
}

double gather_sum_scalar(const double* x, const std::uint32_t* idx,
                         std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[idx[i]];
  return acc;
}

constexpr Ops kScalar{
    "scalar",          sum_scalar,         dot_scalar, scale_scalar,
    mul_indexed_scalar, sq_diff_sum_scalar, gather_sum_scalar,
};

const Ops* resolve_active() {
  const char* pref = std::getenv("HYPA_KERNELS");
  if (pref != nullptr) {
    if (std::strcmp(pref, "scalar") == 0) return &kScalar;
    if (std::strcmp(pref, "avx2") == 0) {
      const Ops* v = avx2_ops();
      return v != nullptr ? v : &kScalar;
    }
  }
  const Ops* v = avx2_ops();
  return v != nullptr ? v : &kScalar;
}

}  // namespace

const Ops& scalar_ops() { return kScalar; }

const Ops& active_ops() {
  static const Ops* active = resolve_active();
  return *active;
}

}  // namespace hypa::kernels

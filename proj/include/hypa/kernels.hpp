#pragma once

#include <cstddef>
#include <cstdint>

namespace hypa::kernels {

// Data-parallel primitives for the fitting and spectral inner loops. Each op
// has a scalar reference implementation and, on x86-64 with AVX2, a
// vectorized variant picked at runtime. Reductions may reassociate, so
// backends agree to rounding error, not bit-for-bit.
struct Ops {
  const char* name;
  double (*sum)(const double* x, std::size_t n);
  double (*dot)(const double* x, const double* y, std::size_t n);
  void (*scale)(double* x, std::size_t n, double c);
  // x[i] *= factor[idx[i]]; used to apply per-column corrections to entries
  // stored row-major.
  void (*mul_indexed)(double* x, const std::uint32_t* idx, std::size_t n,
                      const double* factor);
  double (*sq_diff_sum)(const double* a, const double* b, std::size_t n);
  // sum of x[idx[i]]; one CSR matvec row.
  double (*gather_sum)(const double* x, const std::uint32_t* idx,
                       std::size_t n);
};

const Ops& scalar_ops();

// nullptr when the binary lacks AVX2 code or the CPU lacks the feature.
const Ops* avx2_ops();

// Backend in effect: AVX2 when available, unless HYPA_KERNELS=scalar|avx2
// overrides. Resolved once on first use.
const Ops& active_ops();

}  // namespace hypa::kernels

#pragma once

// Data-parallel complex vector kernels used by the dense linear algebra.
//
// Every kernel has a scalar reference implementation; SIMD variants (AVX2+FMA
// on x86-64, NEON on aarch64) are compiled into separate translation units and
// selected at runtime. Variants agree with the reference to rounding, not
// bitwise (FMA contracts differently).

#include <complex>
#include <cstddef>
#include <string_view>
#include <vector>

namespace lieps::kernels {

using cplx = std::complex<double>;

struct Table {
  std::string_view name;
  /// sum_i conj(x_i) y_i
  cplx (*dotc)(const cplx* x, const cplx* y, std::size_t n);
  /// sum_i |x_i|^2
  double (*norm2)(const cplx* x, std::size_t n);
  /// y += a x
  void (*axpy)(cplx a, const cplx* x, cplx* y, std::size_t n);
  /// Plane rotation on a column pair:
  ///   x' = c x - s y,  y' = conj(s) x + c y   (c real, c^2 + |s|^2 = 1)
  void (*rot)(cplx* x, cplx* y, std::size_t n, double c, cplx s);
};

const Table& scalar();

/// nullptr when the variant was not compiled in or the CPU lacks the features.
const Table* avx2();
const Table* neon();

/// Best available table. LIEPS_KERNELS=scalar|avx2|neon in the environment
/// forces a choice (falls back to scalar if unavailable). Resolved once.
const Table& active();

/// Every table usable on this machine, scalar first.
std::vector<const Table*> available();

}  // namespace lieps::kernels

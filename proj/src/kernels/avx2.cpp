// AVX2 + FMA variants. This translation unit is the only one compiled with
// -mavx2 -mfma; dispatch.cpp checks CPU support before handing out the table.

#include <immintrin.h>

#include "lieps/kernels.hpp"

namespace lieps::kernels {
namespace {

// One __m256d holds two complex numbers: [re0, im0, re1, im1].
inline __m256d load2(const cplx* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store2(cplx* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }
inline __m256d swap_ri(__m256d v) { return _mm256_permute_pd(v, 0b0101); }

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

cplx dotc(const cplx* x, const cplx* y, std::size_t n) {
  __m256d acc_re = _mm256_setzero_pd();  // [xr*yr, xi*yi, ...]
  __m256d acc_im = _mm256_setzero_pd();  // [xr*yi, xi*yr, ...]
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = load2(x + i);
    const __m256d yv = load2(y + i);
    acc_re = _mm256_fmadd_pd(xv, yv, acc_re);
    acc_im = _mm256_fmadd_pd(xv, swap_ri(yv), acc_im);
  }
  alignas(32) double im_parts[4];
  _mm256_store_pd(im_parts, acc_im);
  double re = hsum(acc_re);
  double im = (im_parts[0] - im_parts[1]) + (im_parts[2] - im_parts[3]);
  for (; i < n; ++i) {
    re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return {re, im};
}

double norm2(const cplx* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = load2(x + i);
    acc = _mm256_fmadd_pd(xv, xv, acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  return s;
}

void axpy(cplx a, const cplx* x, cplx* y, std::size_t n) {
  const __m256d ar = _mm256_set1_pd(a.real());
  const __m256d ai = _mm256_set1_pd(a.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = load2(x + i);
    // a*x = [ar*xr - ai*xi, ar*xi + ai*xr]
    const __m256d ax = _mm256_fmaddsub_pd(ar, xv, _mm256_mul_pd(ai, swap_ri(xv)));
    store2(y + i, _mm256_add_pd(load2(y + i), ax));
  }
  for (; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    y[i] = cplx(y[i].real() + a.real() * xr - a.imag() * xi,
                y[i].imag() + a.real() * xi + a.imag() * xr);
  }
}

void rot(cplx* x, cplx* y, std::size_t n, double c, cplx s) {
  const __m256d cv = _mm256_set1_pd(c);
  const __m256d sr = _mm256_set1_pd(s.real());
  const __m256d si = _mm256_set1_pd(s.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = load2(x + i);
    const __m256d yv = load2(y + i);
    // s*y = [sr*yr - si*yi, sr*yi + si*yr]
    const __m256d sy = _mm256_fmaddsub_pd(sr, yv, _mm256_mul_pd(si, swap_ri(yv)));
    // conj(s)*x = [sr*xr + si*xi, sr*xi - si*xr]
    const __m256d sx = _mm256_fmsubadd_pd(sr, xv, _mm256_mul_pd(si, swap_ri(xv)));
    store2(x + i, _mm256_fmsub_pd(cv, xv, sy));
    store2(y + i, _mm256_fmadd_pd(cv, yv, sx));
  }
  const double srs = s.real(), sis = s.imag();
  for (; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    const double yr = y[i].real(), yi = y[i].imag();
    x[i] = cplx(c * xr - (srs * yr - sis * yi), c * xi - (srs * yi + sis * yr));
    y[i] = cplx(srs * xr + sis * xi + c * yr, srs * xi - sis * xr + c * yi);
  }
}

constexpr Table kAvx2{"avx2", &dotc, &norm2, &axpy, &rot};

}  // namespace

const Table& avx2_table() { return kAvx2; }

}  // namespace lieps::kernels

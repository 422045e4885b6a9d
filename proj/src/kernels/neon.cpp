// NEON variants for aarch64. One float64x2_t holds one complex number.

#include <arm_neon.h>

#include "lieps/kernels.hpp"

namespace lieps::kernels {
namespace {

inline float64x2_t load1(const cplx* p) { return vld1q_f64(reinterpret_cast<const double*>(p)); }
inline void store1(cplx* p, float64x2_t v) { vst1q_f64(reinterpret_cast<double*>(p), v); }
inline float64x2_t swap_ri(float64x2_t v) { return vextq_f64(v, v, 1); }

cplx dotc(const cplx* x, const cplx* y, std::size_t n) {
  float64x2_t acc_re = vdupq_n_f64(0.0);  // [xr*yr, xi*yi]
  float64x2_t acc_im = vdupq_n_f64(0.0);  // [xr*yi, xi*yr]
  for (std::size_t i = 0; i < n; ++i) {
    const float64x2_t xv = load1(x + i);
    const float64x2_t yv = load1(y + i);
    acc_re = vfmaq_f64(acc_re, xv, yv);
    acc_im = vfmaq_f64(acc_im, xv, swap_ri(yv));
  }
  return {vaddvq_f64(acc_re), vgetq_lane_f64(acc_im, 0) - vgetq_lane_f64(acc_im, 1)};
}

double norm2(const cplx* x, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const float64x2_t xv = load1(x + i);
    acc = vfmaq_f64(acc, xv, xv);
  }
  return vaddvq_f64(acc);
}

void axpy(cplx a, const cplx* x, cplx* y, std::size_t n) {
  const float64x2_t ar = vdupq_n_f64(a.real());
  const double ai_signed_init[2] = {-a.imag(), a.imag()};
  const float64x2_t ai_signed = vld1q_f64(ai_signed_init);
  for (std::size_t i = 0; i < n; ++i) {
    const float64x2_t xv = load1(x + i);
    float64x2_t yv = vfmaq_f64(load1(y + i), ar, xv);
    yv = vfmaq_f64(yv, ai_signed, swap_ri(xv));
    store1(y + i, yv);
  }
}

void rot(cplx* x, cplx* y, std::size_t n, double c, cplx s) {
  const float64x2_t cv = vdupq_n_f64(c);
  const float64x2_t sr = vdupq_n_f64(s.real());
  const double sy_init[2] = {-s.imag(), s.imag()};
  const double sx_init[2] = {s.imag(), -s.imag()};
  const float64x2_t si_y = vld1q_f64(sy_init);
  const float64x2_t si_x = vld1q_f64(sx_init);
  for (std::size_t i = 0; i < n; ++i) {
    const float64x2_t xv = load1(x + i);
    const float64x2_t yv = load1(y + i);
    const float64x2_t sy = vfmaq_f64(vmulq_f64(sr, yv), si_y, swap_ri(yv));
    const float64x2_t sx = vfmaq_f64(vmulq_f64(sr, xv), si_x, swap_ri(xv));
    store1(x + i, vsubq_f64(vmulq_f64(cv, xv), sy));
    store1(y + i, vfmaq_f64(sx, cv, yv));
  }
}

constexpr Table kNeon{"neon", &dotc, &norm2, &axpy, &rot};

}  // namespace

const Table& neon_table() { return kNeon; }

}  // namespace lieps::kernels

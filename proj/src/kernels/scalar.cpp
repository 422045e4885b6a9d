#include "lieps/kernels.hpp"

namespace lieps::kernels {
namespace {

cplx dotc(const cplx* x, const cplx* y, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    const double yr = y[i].real(), yi = y[i].imag();
    re += xr * yr + xi * yi;
    im += xr * yi - xi * yr;
  }
  return {re, im};
}

double norm2(const cplx* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  }
  return s;
}

void axpy(cplx a, const cplx* x, cplx* y, std::size_t n) {
  const double ar = a.real(), ai = a.imag();
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    y[i] = cplx(y[i].real() + ar * xr - ai * xi, y[i].imag() + ar * xi + ai * xr);
  }
}

void rot(cplx* x, cplx* y, std::size_t n, double c, cplx s) {
  const double sr = s.real(), si = s.imag();
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    const double yr = y[i].real(), yi = y[i].imag();
    // s*y and conj(s)*x
    const double syr = sr * yr - si * yi, syi = sr * yi + si * yr;
    const double sxr = sr * xr + si * xi, sxi = sr * xi - si * xr;
    x[i] = cplx(c * xr - syr, c * xi - syi);
    y[i] = cplx(sxr + c * yr, sxi + c * yi);
  }
}

constexpr Table kScalar{"scalar", &dotc, &norm2, &axpy, &rot};

}  // namespace

const Table& scalar() { return kScalar; }

}  // namespace lieps::kernels

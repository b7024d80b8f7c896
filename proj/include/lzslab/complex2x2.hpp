#pragma once

#include <cmath>
#include <complex>

namespace lzslab {

using cplx = std::complex<double>;

// 2x2 complex matrix, row-major. Small enough to live on the stack and be
// passed by value everywhere.
struct Complex2x2 {
  cplx a11{}, a12{}, a21{}, a22{};

  static Complex2x2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static Complex2x2 diag(cplx d1, cplx d2) { return {d1, 0.0, 0.0, d2}; }

  cplx trace() const { return a11 + a22; }
  cplx det() const { return a11 * a22 - a12 * a21; }

  Complex2x2 operator+(const Complex2x2& o) const {
    return {a11 + o.a11, a12 + o.a12, a21 + o.a21, a22 + o.a22};
  }
  Complex2x2 operator-(const Complex2x2& o) const {
    return {a11 - o.a11, a12 - o.a12, a21 - o.a21, a22 - o.a22};
  }
  Complex2x2 operator*(const Complex2x2& o) const {
    return {a11 * o.a11 + a12 * o.a21, a11 * o.a12 + a12 * o.a22,
            a21 * o.a11 + a22 * o.a21, a21 * o.a12 + a22 * o.a22};
  }
  friend Complex2x2 operator*(cplx s, const Complex2x2& m) {
    return {s * m.a11, s * m.a12, s * m.a21, s * m.a22};
  }

  // y = M x for a 2-vector
  void apply(const cplx x[2], cplx y[2]) const {
    y[0] = a11 * x[0] + a12 * x[1];
    y[1] = a21 * x[0] + a22 * x[1];
  }

  double frobenius_norm() const {
    return std::sqrt(std::norm(a11) + std::norm(a12) + std::norm(a21) + std::norm(a22));
  }

  double max_abs_diff(const Complex2x2& o) const {
    double d = std::abs(a11 - o.a11);
    d = std::max(d, std::abs(a12 - o.a12));
    d = std::max(d, std::abs(a21 - o.a21));
    d = std::max(d, std::abs(a22 - o.a22));
    return d;
  }

  bool finite() const {
    auto ok = [](cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); };
    return ok(a11) && ok(a12) && ok(a21) && ok(a22);
  }
};

// Pauli-basis constructor: c0*I + cx*sigma_x + cy*sigma_y + cz*sigma_z
inline Complex2x2 pauli(cplx cx, cplx cy, cplx cz, cplx c0 = 0.0) {
  const cplx i(0.0, 1.0);
  return {c0 + cz, cx - i * cy, cx + i * cy, c0 - cz};
}

}  // namespace lzslab

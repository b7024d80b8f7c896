#pragma once

#include <complex>

#include "lzslab/errors.hpp"

namespace lzslab::specfun {

using cplx = std::complex<double>;

// log Gamma(z) on the whole plane (Lanczos in the right half plane,
// reflection elsewhere).  Branch: principal log of the Lanczos factors;
// exp(log_gamma) always gives the correct Gamma value.
cplx log_gamma(cplx z);

// Gamma(z) via exp(log_gamma).
cplx gamma(cplx z);

// 1/Gamma(z); zero at the poles z = 0, -1, -2, ...
cplx rgamma(cplx z);

// arg Gamma(z), principal value in (-pi, pi].
double arg_gamma(cplx z);

// ---------------------------------------------------------------------------
// Parabolic cylinder function D_p(zeta), complex order and argument.
// ---------------------------------------------------------------------------

enum class PcfRegime { series, asymptotic };

struct PcfEvalReport {
  cplx value{};
  PcfRegime regime{PcfRegime::series};
  double est_abs_error{0.0};
};

inline constexpr double kPcfCrossoverRadius = 12.0;

// Power-series regime: Taylor continuation of the Weber equation
//   w'' = (zeta^2/4 - p - 1/2) w
// from zeta = 0 (where D_p and D_p' have closed forms in terms of Gamma)
// along the straight ray to zeta.  Truncation: last 3 terms each below
// 1e-16 * |partial sum|, total term cap 1e4.
PcfEvalReport pcf_series(cplx p, cplx zeta);

// Large-|zeta| regime.  For |arg zeta| <= pi/2 the principal expansion
//   D_p(zeta) ~ e^{-zeta^2/4} zeta^p sum_k (-1)^k (-p)_{2k} / (k! (2 zeta^2)^k)
// (DLMF 12.9.1); outside that sector the exact connection formula
//   D_p(z) = e^{-+ i pi p} D_p(-z)
//          + sqrt(2 pi)/Gamma(-p) e^{-+ i pi (p+1)/2} D_{-p-1}(+-iz)
// maps both evaluations back into the principal sector.  Throws DomainError
// below the crossover radius.
PcfEvalReport pcf_asymptotic(cplx p, cplx zeta, double crossover = kPcfCrossoverRadius);

// Regime dispatcher on |zeta| vs the crossover radius.
PcfEvalReport pcf(cplx p, cplx zeta, double crossover = kPcfCrossoverRadius);

}  // namespace lzslab::specfun

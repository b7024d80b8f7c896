#pragma once

#include <functional>

#include "lzslab/complex2x2.hpp"
#include "lzslab/twolevel.hpp"

namespace lzslab::lzs {

using twolevel::RealGapLZParams;

// Sign combination (+-m, +-gamma) of the local Hamiltonian at the second
// crossing, relative to (m, gamma) at the first.
enum class LZSCase {
  case_i,    // (-m, +gamma)
  case_ii,   // (+m, -gamma)
  case_iii,  // (+m, +gamma)
  case_iv,   // (-m, -gamma)
};

struct LZSSetup {
  RealGapLZParams local;  // F, m, gamma at the first crossing
  double t1 = 0.0;
  double t2 = 0.0;  // > t1
  LZSCase kase = LZSCase::case_i;
  // Upper-band dispersion E_+(t) between the crossings; the lower band is
  // -E_+ (traceless).  Re E_+ enters the dynamical phases.
  std::function<cplx(double)> upper_band_energy;
};

struct LZSResult {
  BandPopulations populations;
  double phi_t = 0.0;  // total phase, case offset included
  double phi_s = 0.0;
  Complex2x2 U_A;
};

// I1 = [[U12, U11], [U22, U21]] in the adiabatic basis.
Complex2x2 impulse_matrix_first(const RealGapLZParams& p);

// The printed I2 per case (case ii coincides with I1).
Complex2x2 impulse_matrix_second(const RealGapLZParams& p, LZSCase kase);

// Dynamical phases int_{t1}^{t2} Re E_{+-}(t) dt by adaptive quadrature.
std::pair<double, double> adiabatic_phase(const LZSSetup& setup);

// U_A = I2 A I1 with A = diag(e^{-i phi_d+}, e^{-i phi_d-}); populations
// from the squared column entries.
LZSResult compose(const LZSSetup& setup);

// Closed-form case formulas.  `phi_base` is phi_d+ - phi_d- + 2 phi_s; the
// pi offset for cases i and iv is applied internally.
BandPopulations analytic_populations(const RealGapLZParams& p, double phi_base, LZSCase kase);

}  // namespace lzslab::lzs

#include "lzslab/lzs.hpp"

#include <cmath>

#include "lzslab/errors.hpp"
#include "lzslab/quadrature.hpp"

namespace lzslab::lzs {

namespace {
constexpr double kPi = 3.14159265358979323846;
const cplx kI(0.0, 1.0);

bool has_pi_offset(LZSCase kase) {
  return kase == LZSCase::case_i || kase == LZSCase::case_iv;
}
}  // namespace

Complex2x2 impulse_matrix_first(const RealGapLZParams& p) {
  const Complex2x2 u = twolevel::real_gap_asymptotic_U(p);
  return {u.a12, u.a11, u.a22, u.a21};
}

Complex2x2 impulse_matrix_second(const RealGapLZParams& p, LZSCase kase) {
  const Complex2x2 u = twolevel::real_gap_asymptotic_U(p);
  switch (kase) {
    case LZSCase::case_i:
      return {-u.a12, u.a11, u.a22, -u.a21};
    case LZSCase::case_ii:
      return {u.a12, u.a11, u.a22, u.a21};
    case LZSCase::case_iii:
      return {-std::conj(u.a21), u.a11, u.a22, -std::conj(u.a12)};
    case LZSCase::case_iv:
      return {std::conj(u.a21), u.a11, u.a22, std::conj(u.a12)};
  }
  throw DomainError("impulse_matrix_second: bad case");
}

std::pair<double, double> adiabatic_phase(const LZSSetup& setup) {
  if (!(setup.t2 > setup.t1)) {
    throw DomainError("adiabatic_phase: need t2 > t1");
  }
  if (!setup.upper_band_energy) {
    throw DomainError("adiabatic_phase: no dispersion provided");
  }
  auto re_eplus = [&](double t) { return std::real(setup.upper_band_energy(t)); };
  const auto q = quadrature::integrate(re_eplus, setup.t1, setup.t2, 1e-8);
  return {q.value, -q.value};
}

LZSResult compose(const LZSSetup& setup) {
  const auto [phi_dp, phi_dm] = adiabatic_phase(setup);
  const Complex2x2 i1 = impulse_matrix_first(setup.local);
  const Complex2x2 i2 = impulse_matrix_second(setup.local, setup.kase);
  const Complex2x2 a = Complex2x2::diag(std::exp(-kI * phi_dp), std::exp(-kI * phi_dm));
  LZSResult out;
  out.U_A = i2 * (a * i1);
  out.phi_s = twolevel::stokes_phase(setup.local.delta());
  out.phi_t = (phi_dp - phi_dm) + 2.0 * out.phi_s + (has_pi_offset(setup.kase) ? kPi : 0.0);
  out.populations.p_minus_plus = std::norm(out.U_A.a12);
  out.populations.p_minus_minus = std::norm(out.U_A.a22);
  out.populations.p_plus_plus = std::norm(out.U_A.a11);
  out.populations.p_plus_minus = std::norm(out.U_A.a21);
  return out;
}

BandPopulations analytic_populations(const RealGapLZParams& p, double phi_base, LZSCase kase) {
  const double m = p.m, g = p.gamma;
  if (std::abs(std::abs(m) - std::abs(g)) <= 1e-14 * (std::abs(m) + std::abs(g))) {
    throw ExceptionalPointError("analytic_populations: |m| = |gamma|");
  }
  const double delta = p.delta();
  const double plz = std::exp(-2.0 * kPi * delta);
  const double one_minus = -std::expm1(-2.0 * kPi * delta);
  const double phi_t = phi_base + (has_pi_offset(kase) ? kPi : 0.0);
  const double s2 = std::sin(0.5 * phi_t) * std::sin(0.5 * phi_t);
  const double cs = std::cos(phi_t);
  BandPopulations b;
  if (kase == LZSCase::case_i || kase == LZSCase::case_ii) {
    const double q = (m - g) / (m + g);
    b.p_minus_plus = 4.0 * plz * one_minus * (s2 + g * g / (m * m - g * g));
    b.p_plus_minus = b.p_minus_plus;
    b.p_minus_minus = plz * plz + q * q * one_minus * one_minus + 2.0 * q * plz * one_minus * cs;
    b.p_plus_plus = plz * plz + one_minus * one_minus / (q * q) + 2.0 / q * plz * one_minus * cs;
  } else {
    const double q = (m - g) / (m + g);
    b.p_minus_plus = 4.0 * q * plz * one_minus * s2;
    b.p_plus_minus = 4.0 / q * plz * one_minus * s2;
    b.p_minus_minus = plz * plz + one_minus * one_minus + 2.0 * plz * one_minus * cs;
    b.p_plus_plus = b.p_minus_minus;
  }
  return b;
}

}  // namespace lzslab::lzs

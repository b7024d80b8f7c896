#include "lzslab/twolevel.hpp"

#include <cmath>

#include "lzslab/quadrature.hpp"
#include "lzslab/specfun.hpp"

namespace lzslab::twolevel {

namespace {
constexpr double kPi = 3.14159265358979323846;
const cplx kI(0.0, 1.0);
}  // namespace

Complex2x2 hamiltonian_at(const GenericLZParams& p, double t) {
  return pauli(cplx(p.m, p.m_prime), cplx(p.n, p.n_prime), cplx(p.F * t, p.kappa));
}

Complex2x2 hamiltonian_at(const RealGapLZParams& p, double t) {
  return hamiltonian_at(p.generic(), t);
}

std::pair<cplx, cplx> adiabatic_spectrum(const Complex2x2& h) {
  cplx md = -h.det();
  // flush a negative-zero imaginary part so the principal branch is taken
  // consistently on the negative real axis
  md = cplx(md.real(), md.imag() + 0.0);
  const cplx e = std::sqrt(md);
  return {e, -e};
}

std::pair<Complex2x2, Complex2x2> projectors(const Complex2x2& h) {
  const auto [ep, em] = adiabatic_spectrum(h);
  const double scale = h.frobenius_norm();
  if (std::abs(ep - em) <= 1e-13 * std::max(1.0, scale)) {
    throw DegeneracyError("projectors: coincident eigenvalues (exceptional point)");
  }
  const cplx inv = 1.0 / (ep - em);
  const Complex2x2 id = Complex2x2::identity();
  Complex2x2 pp = inv * (h - em * id);
  Complex2x2 pm = (-inv) * (h - ep * id);
  return {pp, pm};
}

EigenSystem2 eigensystem(const Complex2x2& h) {
  EigenSystem2 es;
  const auto [ep, em] = adiabatic_spectrum(h);
  es.e_plus = ep;
  es.e_minus = em;
  const double scale = std::max(1.0, h.frobenius_norm());
  if (std::abs(ep - em) <= 1e-13 * scale) {
    throw DegeneracyError("eigensystem: coincident eigenvalues");
  }
  auto right_for = [&](cplx e) -> std::array<cplx, 2> {
    // candidates (h12, e - h11) and (e + h11, h21); pick the larger
    const std::array<cplx, 2> v1 = {h.a12, e - h.a11};
    const std::array<cplx, 2> v2 = {e + h.a11, h.a21};
    const double n1 = std::norm(v1[0]) + std::norm(v1[1]);
    const double n2 = std::norm(v2[0]) + std::norm(v2[1]);
    std::array<cplx, 2> v = (n1 >= n2) ? v1 : v2;
    const double nn = std::sqrt(std::norm(v[0]) + std::norm(v[1]));
    if (nn == 0.0) throw DegeneracyError("eigensystem: null eigenvector");
    v[0] /= nn;
    v[1] /= nn;
    return v;
  };
  auto left_for = [&](cplx e) -> std::array<cplx, 2> {
    const std::array<cplx, 2> v1 = {h.a21, e - h.a11};
    const std::array<cplx, 2> v2 = {e + h.a11, h.a12};
    const double n1 = std::norm(v1[0]) + std::norm(v1[1]);
    const double n2 = std::norm(v2[0]) + std::norm(v2[1]);
    return (n1 >= n2) ? v1 : v2;
  };
  es.right_plus = right_for(ep);
  es.right_minus = right_for(em);
  es.left_plus = left_for(ep);
  es.left_minus = left_for(em);
  return es;
}

std::pair<double, double> band_populations_of_state(const Complex2x2& h,
                                                    const std::array<cplx, 2>& psi) {
  const EigenSystem2 es = eigensystem(h);
  auto weight = [&](const std::array<cplx, 2>& ul, const std::array<cplx, 2>& ur) {
    const cplx d = ul[0] * ur[0] + ul[1] * ur[1];
    const double uln = std::sqrt(std::norm(ul[0]) + std::norm(ul[1]));
    if (std::abs(d) <= 1e-13 * uln) {
      throw DegeneracyError("band populations: <uL|uR> underflow");
    }
    const cplx ov = ul[0] * psi[0] + ul[1] * psi[1];
    return std::norm(ov) / std::norm(d);
  };
  const double to_upper = weight(es.left_plus, es.right_plus);
  const double to_lower = weight(es.left_minus, es.right_minus);
  return {to_lower, to_upper};
}

namespace {

// int_0^z e^{i u^2} du for real z >= 0; Gauss quadrature up to the patch
// point, asymptotic tail beyond (DLMF 7.12-style).
cplx fresnel_half(double z) {
  constexpr double kPatch = 12.0;
  const cplx half_line = std::sqrt(kPi) * std::exp(kI * kPi / 4.0) * 0.5;
  if (z <= kPatch) {
    auto f = [](double u) { return std::exp(kI * u * u); };
    return quadrature::integrate_complex(f, 0.0, z, 1e-13).value;
  }
  // tail T(z) = int_z^inf = (i e^{i z^2} / (2 z)) sum_k (1/2)_k (i/z^2)^k
  const cplx iz2 = kI / (z * z);
  cplx term(1.0, 0.0), sum(1.0, 0.0);
  for (int k = 1; k <= 40; ++k) {
    term *= (0.5 + (k - 1)) * iz2;
    sum += term;
    if (std::abs(term) < 1e-18) break;
  }
  const cplx tail = kI * std::exp(kI * z * z) / (2.0 * z) * sum;
  return half_line - tail;
}

cplx fresnel_segment(double a, double b) {
  // int_a^b e^{i u^2} du, any real a < b, using evenness of the integrand
  auto half_signed = [](double x) {
    return (x >= 0.0) ? fresnel_half(x) : -fresnel_half(-x);
  };
  return half_signed(b) - half_signed(a);
}

}  // namespace

Complex2x2 closed_form_evolution(const GenericLZParams& p, double t_i, double t_f) {
  if (p.kappa != 0.0) {
    throw DomainError("closed_form_evolution: kappa must be 0 (numeric propagator handles it)");
  }
  if (!(p.F > 0.0)) throw DomainError("closed_form_evolution: F must be positive");
  if (!(t_i <= t_f)) throw DomainError("closed_form_evolution: need t_i <= t_f");
  if (t_i == t_f) return Complex2x2::identity();

  const cplx x(p.m, p.m_prime), y(p.n, p.n_prime);
  const cplx h12 = x - kI * y;  // H(t) = [[Ft, h12], [h21, -Ft]]
  const cplx h21 = x + kI * y;
  const double cpl = std::abs(h12) + std::abs(h21);

  // quadratic diagonal phase e^{-i F (t_f^2 - t_i^2)/2} of the decoupled level
  const cplx ph_up = std::exp(-kI * 0.5 * p.F * (t_f * t_f - t_i * t_i));
  const cplx ph_dn = std::conj(ph_up);

  if (cpl == 0.0) {
    // DegenerateGap: evolution is diagonal
    return Complex2x2::diag(ph_up, ph_dn);
  }
  if (std::abs(h21) <= 1e-14 * cpl || std::abs(h12) <= 1e-14 * cpl) {
    // triangular sweep (delta + i delta' = 0 with nonzero coupling):
    // the remaining off-diagonal element is an exact Fresnel-type integral.
    const double sf = std::sqrt(p.F);
    Complex2x2 u = Complex2x2::diag(ph_up, ph_dn);
    if (std::abs(h21) <= 1e-14 * cpl) {
      const cplx integral = fresnel_segment(sf * t_i, sf * t_f) / sf;
      u.a12 = -kI * h12 * std::exp(-kI * 0.5 * p.F * (t_f * t_f + t_i * t_i)) * integral;
    } else {
      const cplx integral = std::conj(fresnel_segment(sf * t_i, sf * t_f)) / sf;
      u.a21 = -kI * h21 * std::exp(kI * 0.5 * p.F * (t_f * t_f + t_i * t_i)) * integral;
    }
    return u;
  }

  const double delta = p.delta();
  const double dprime = p.delta_prime();
  const cplx pc = -kI * delta + dprime;  // order p = -i delta + delta'

  const cplx cab = h12 / (std::sqrt(2.0 * p.F) * (delta + kI * dprime)) * std::exp(-kI * kPi / 4.0);
  const cplx ray = std::exp(kI * kPi / 4.0) * std::sqrt(2.0 * p.F);
  const cplx tau_i = ray * t_i, tau_f = ray * t_f;

  using specfun::pcf;
  const cplx dp_tf = pcf(pc, tau_f).value;
  const cplx dp_mtf = pcf(pc, -tau_f).value;
  const cplx dp_ti = pcf(pc, tau_i).value;
  const cplx dp_mti = pcf(pc, -tau_i).value;
  const cplx dm_tf = pcf(pc - 1.0, tau_f).value;
  const cplx dm_mtf = pcf(pc - 1.0, -tau_f).value;
  const cplx dm_ti = pcf(pc - 1.0, tau_i).value;
  const cplx dm_mti = pcf(pc - 1.0, -tau_i).value;

  // D_p(z) D_{p-1}(-z) + D_p(-z) D_{p-1}(z) = sqrt(2 pi)/Gamma(1-p), exact
  const cplx den = std::sqrt(2.0 * kPi) * specfun::rgamma(1.0 - pc);

  Complex2x2 u;
  u.a11 = (dp_tf * dm_mti + dp_mtf * dm_ti) / den;
  u.a12 = (dp_tf * dp_mti - dp_mtf * dp_ti) / den * cab;
  u.a21 = (dm_tf * dm_mti - dm_mtf * dm_ti) / den / cab;
  u.a22 = (dp_mti * dm_tf + dp_ti * dm_mtf) / den;
  return u;
}

PopulationSample band_populations(const GenericLZParams& p, double T, Basis basis,
                                  Band initial_band) {
  if (!(T > 0.0)) throw DomainError("band_populations: T must be positive");
  const Complex2x2 u = closed_form_evolution(p, -T, T);
  if (basis == Basis::diabatic) {
    // initial lower band at -T = spin-up column; upper = spin-down
    PopulationSample s;
    if (initial_band == Band::lower) {
      s.to_upper = std::norm(u.a11);  // stays spin-up, which ends in the upper band
      s.to_lower = std::norm(u.a21);
    } else {
      s.to_lower = std::norm(u.a22);
      s.to_upper = std::norm(u.a12);
    }
    return s;
  }
  const EigenSystem2 es0 = eigensystem(hamiltonian_at(p, -T));
  const std::array<cplx, 2> psi0 =
      (initial_band == Band::lower) ? es0.right_minus : es0.right_plus;
  cplx in[2] = {psi0[0], psi0[1]}, out[2];
  u.apply(in, out);
  const auto pops = band_populations_of_state(hamiltonian_at(p, T), {out[0], out[1]});
  return {pops.first, pops.second};
}

AsymptoticClassification asymptotic_band_populations(double delta, double delta_prime,
                                                     const GenericLZParams& p, Basis basis) {
  constexpr double kBoundaryTol = 1e-12;
  const double plz = std::exp(-2.0 * kPi * delta);
  AsymptoticClassification out;

  const double half = (basis == Basis::adiabatic) ? 1.5 : 0.5;
  const double cross_arg = std::abs(delta_prime);
  const double stay_arg = std::abs(delta_prime - half);

  // P_{-+}-type: constant below |delta'| = half, power law above, marginal at it
  if (std::abs(cross_arg - half) <= kBoundaryTol) {
    out.cross.branch = AsymptoticBranch::marginal;
    if (basis == Basis::adiabatic) {
      const double f0 = (1.0 + plz) / (delta * delta + 0.25) + plz;
      out.cross.constant = f0;
      out.cross.osc_amplitude =
          2.0 * std::exp(-kPi * delta) * std::sqrt((1.0 + plz) / (delta * delta + 0.25));
    } else {
      out.cross.constant = 1.0 + 2.0 * plz;
      out.cross.osc_amplitude = 2.0 * std::exp(-kPi * delta) * std::sqrt(1.0 + plz);
    }
  } else if (cross_arg < half) {
    out.cross.branch = AsymptoticBranch::constant;
    out.cross.constant = plz;
  } else {
    out.cross.branch = AsymptoticBranch::power_law;
    out.cross.exponent =
        (basis == Basis::adiabatic) ? 4.0 * cross_arg - 6.0 : 4.0 * cross_arg - 2.0;
  }

  // P_{--}-type: decays to zero inside |delta' - half| < half, power law
  // outside, marginal constants g at the boundary.
  if (std::abs(stay_arg - half) <= kBoundaryTol) {
    out.stay.branch = AsymptoticBranch::marginal;
    const double num = p.m * p.m + p.n * p.n - p.m_prime * p.m_prime - p.n_prime * p.n_prime;
    const double den = (p.m + p.n_prime) * (p.m + p.n_prime) +
                       (p.m_prime - p.n) * (p.m_prime - p.n);
    const double g0 = num / den;
    double g = g0;
    if (basis == Basis::adiabatic && std::abs(delta_prime - 3.0) <= kBoundaryTol) {
      g = g0 * (delta * delta + 9.0) /
          (delta * delta * (delta * delta + 1.0) * (delta * delta + 4.0));
    } else if (basis == Basis::diabatic && std::abs(delta_prime - 1.0) <= kBoundaryTol) {
      g = ((p.m_prime + p.n) * (p.m_prime + p.n) + (p.m - p.n_prime) * (p.m - p.n_prime)) / num;
    }
    out.stay.constant = g * (1.0 - plz);
  } else if (stay_arg < half) {
    out.stay.branch = AsymptoticBranch::constant;
    out.stay.constant = 0.0;
  } else {
    out.stay.branch = AsymptoticBranch::power_law;
    out.stay.exponent = (basis == Basis::adiabatic) ? 4.0 * stay_arg - 6.0 : 4.0 * stay_arg - 2.0;
  }
  return out;
}

double stokes_phase(double delta) {
  if (delta == 0.0) return kPi / 4.0;
  return kPi / 4.0 + delta * (std::log(std::abs(delta)) - 1.0) -
         specfun::arg_gamma(cplx(1.0, delta));
}

Complex2x2 real_gap_asymptotic_U(const RealGapLZParams& p) {
  if (std::abs(std::abs(p.m) - std::abs(p.gamma)) <= 1e-14 * (std::abs(p.m) + std::abs(p.gamma))) {
    throw ExceptionalPointError("real_gap_asymptotic_U: |m| = |gamma|");
  }
  const double delta = p.delta();
  const double one_minus = -std::expm1(-2.0 * kPi * delta);
  const double phis = stokes_phase(delta);
  // radicands taken as the full real products, nonnegative in every sign
  // sector; the sgn prefactors applied as printed
  const double r12 = (p.m + p.gamma) / (p.m - p.gamma) * one_minus;
  const double r21 = (p.m - p.gamma) / (p.m + p.gamma) * one_minus;
  const double s12 = (p.m + p.gamma) >= 0.0 ? 1.0 : -1.0;
  const double s21 = (p.gamma - p.m) >= 0.0 ? 1.0 : -1.0;
  Complex2x2 u;
  u.a11 = u.a22 = std::exp(-kPi * delta);
  u.a12 = s12 * std::sqrt(r12) * std::exp(-kI * phis);
  u.a21 = s21 * std::sqrt(r21) * std::exp(kI * phis);
  return u;
}

BandPopulations real_gap_populations(const RealGapLZParams& p) {
  if (std::abs(std::abs(p.m) - std::abs(p.gamma)) <= 1e-14 * (std::abs(p.m) + std::abs(p.gamma))) {
    throw ExceptionalPointError("real_gap_populations: |m| = |gamma|");
  }
  const double delta = p.delta();
  const double plz = std::exp(-2.0 * kPi * delta);
  const double one_minus = -std::expm1(-2.0 * kPi * delta);
  BandPopulations b;
  b.p_minus_plus = plz;
  b.p_plus_minus = plz;
  b.p_minus_minus = (p.m - p.gamma) / (p.m + p.gamma) * one_minus;
  b.p_plus_plus = (p.m + p.gamma) / (p.m - p.gamma) * one_minus;
  return b;
}

double lz_transition_time(const RealGapLZParams& p) {
  const double delta = p.delta();
  const double chi = kPi / 4.0 - specfun::arg_gamma(cplx(0.5, 0.5 * delta)) -
                     specfun::arg_gamma(cplx(1.0, -0.5 * delta));
  if (delta == 0.0) return std::sqrt(2.0 * kPi);  // analytic limit
  const double one_minus = -std::expm1(-2.0 * kPi * delta);  // 1 - P_LZ, sign of delta
  return std::abs(one_minus) / (std::sqrt(2.0 * delta * one_minus) * std::cos(chi));
}

}  // namespace lzslab::twolevel

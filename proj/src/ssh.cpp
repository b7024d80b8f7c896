#include "lzslab/ssh.hpp"

#include <cmath>

#include "lzslab/errors.hpp"

namespace lzslab::ssh {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

Complex2x2 bloch_hamiltonian(const SSHParams& p, double k, double t) {
  const double th = k * p.d + p.E_field * t;
  return pauli(2.0 * p.J * std::cos(th), -2.0 * p.alpha * p.J * std::sin(th),
               cplx(0.0, p.gamma));
}

std::pair<cplx, cplx> band_spectrum(const SSHParams& p, double k) {
  const double th = k * p.d;
  const double c = std::cos(th), s = std::sin(th);
  const double radicand =
      4.0 * p.J * p.J * c * c + 4.0 * p.alpha * p.alpha * p.J * p.J * s * s - p.gamma * p.gamma;
  const cplx e = std::sqrt(cplx(radicand, 0.0));
  return {e, -e};
}

std::vector<double> exceptional_points(const SSHParams& p) {
  // 4 J^2 cos^2 + 4 a^2 J^2 sin^2 = gamma^2  ->  cos^2 = c
  const double j2 = 4.0 * p.J * p.J;
  const double a2j2 = 4.0 * p.alpha * p.alpha * p.J * p.J;
  const double denom = j2 - a2j2;
  std::vector<double> out;
  if (denom == 0.0) return out;
  const double c = (p.gamma * p.gamma - a2j2) / denom;
  if (c < 0.0 || c > 1.0) return out;
  const double th0 = std::acos(std::sqrt(c));  // in [0, pi/2]
  const double ths[4] = {th0, kPi - th0, kPi + th0, 2.0 * kPi - th0};
  for (double th : ths) {
    if (th >= 2.0 * kPi - 1e-12) continue;
    if (out.empty() || std::abs(th - out.back() * p.d) > 1e-12) {
      out.push_back(th / p.d);
    }
  }
  return out;
}

LocalExpansion local_expansion(const SSHParams& p, Crossing crossing) {
  if (!(p.E_field > 0.0)) throw DomainError("local_expansion: need E > 0");
  LocalExpansion le;
  le.local.F = p.lz_F();
  le.local.m = p.lz_m();
  le.local.gamma = p.gamma;
  le.kase = lzs::LZSCase::case_i;
  le.t1 = kPi / (2.0 * p.E_field);
  le.t2 = 3.0 * kPi / (2.0 * p.E_field);
  (void)crossing;  // both crossings share the same |m|, |gamma|
  return le;
}

Trajectory bloch_oscillation(const SSHParams& p, double k0, twolevel::Band band0, double t_f,
                             const IntegratorConfig& cfg, int n_samples) {
  const auto h_of_t = [&p, k0](double t) { return bloch_hamiltonian(p, k0, t); };
  const auto es = twolevel::eigensystem(h_of_t(0.0));
  const std::array<cplx, 2> psi0 =
      (band0 == twolevel::Band::lower) ? es.right_minus : es.right_plus;
  IntegratorConfig c = cfg;
  std::vector<double> samples;
  if (n_samples > 1) {
    c.dense_output = true;
    samples.resize(n_samples);
    for (int i = 0; i < n_samples; ++i) {
      samples[i] = t_f * static_cast<double>(i) / (n_samples - 1);
    }
  }
  Trajectory traj = integrate_two_level(h_of_t, psi0, 0.0, t_f, c, samples);
  band_project(traj, h_of_t);
  return traj;
}

BandPopulations lzs_prediction(const SSHParams& p) {
  const LocalExpansion le = local_expansion(p, Crossing::first);
  lzs::LZSSetup setup;
  setup.local = le.local;
  setup.t1 = le.t1;
  setup.t2 = le.t2;
  setup.kase = le.kase;
  const SSHParams ssh = p;
  setup.upper_band_energy = [ssh](double t) {
    // moving argument theta = E t (k0 = 0 start)
    return band_spectrum(ssh, ssh.E_field * t / ssh.d).first;
  };
  const auto [phi_dp, phi_dm] = lzs::adiabatic_phase(setup);
  const double phi_base = (phi_dp - phi_dm) + 2.0 * twolevel::stokes_phase(le.local.delta());
  return lzs::analytic_populations(le.local, phi_base, le.kase);
}

void ring_apply(const SSHParams& p, double t, const std::vector<cplx>& psi,
                std::vector<cplx>& out) {
  const std::size_t n = psi.size();
  out.assign(n, cplx(0.0, 0.0));
  if (n % 2 != 0 || n < 4) throw DomainError("ring_apply: need an even site count >= 4");
  const cplx ph = std::exp(cplx(0.0, p.E_field * t));  // e^{+i E t} on right hops
  const cplx phc = std::conj(ph);
  const cplx ig(0.0, p.gamma);
  for (std::size_t msite = 0; msite < n; ++msite) {
    const std::size_t right = (msite + 1) % n;
    const std::size_t left = (msite + n - 1) % n;
    const double jr = (msite % 2 == 0) ? p.J1() : p.J2();
    const double jl = (msite % 2 == 0) ? p.J2() : p.J1();
    const cplx onsite = (msite % 2 == 0) ? ig : -ig;
    out[msite] = jr * ph * psi[right] + jl * phc * psi[left] + onsite * psi[msite];
  }
}

}  // namespace lzslab::ssh

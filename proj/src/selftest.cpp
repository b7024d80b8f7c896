#include "lzslab/selftest.hpp"

#include <cmath>
#include <random>

#include "lzslab/lzs.hpp"
#include "lzslab/propagator.hpp"
#include "lzslab/specfun.hpp"
#include "lzslab/ssh.hpp"
#include "lzslab/twolevel.hpp"
#include "lzslab/waveguide.hpp"

namespace lzslab::selftest {

namespace {

constexpr double kPi = 3.14159265358979323846;
const cplx kRay = std::sqrt(2.0) * std::exp(cplx(0.0, kPi / 4.0));

void add(Report& r, const std::string& name, double residual, double tol) {
  r.checks.push_back({name, residual <= tol, residual, tol});
}

// deterministic parameter draws
std::mt19937_64 seeded_rng() { return std::mt19937_64(0x5eed5eedULL); }

twolevel::GenericLZParams random_generic(std::mt19937_64& rng, double bound) {
  std::uniform_real_distribution<double> u(-1.2, 1.2);
  while (true) {
    twolevel::GenericLZParams p;
    p.F = 1.0;
    p.m = u(rng);
    p.n = u(rng);
    p.m_prime = u(rng);
    p.n_prime = u(rng);
    if (std::abs(p.delta()) <= bound && std::abs(p.delta_prime()) <= bound &&
        std::abs(cplx(p.delta(), p.delta_prime())) > 1e-3) {
      return p;
    }
  }
}

}  // namespace

Report run(bool quick) {
  Report rep;
  auto rng = seeded_rng();

  // --- determinant of the closed-form evolution -----------------------------
  {
    double worst = 0.0;
    const int n = quick ? 6 : 20;
    for (int i = 0; i < n; ++i) {
      const auto p = random_generic(rng, 2.0);
      const auto u = twolevel::closed_form_evolution(p, -40.0, 40.0);
      // the determinant difference rounds at the |U|^2 scale
      const double f = u.frobenius_norm();
      worst = std::max(worst, std::abs(u.det() - cplx(1.0)) / std::max(1.0, 0.5 * f * f));
    }
    add(rep, "closed-form det U = 1 (scaled)", worst, 1e-8);
  }

  // --- Hermitian-limit unitarity --------------------------------------------
  {
    double worst = 0.0;
    const int n = quick ? 4 : 12;
    std::uniform_real_distribution<double> u(0.1, 1.2);
    for (int i = 0; i < n; ++i) {
      twolevel::GenericLZParams p;
      p.F = 1.0;
      p.m = u(rng);
      p.n = u(rng);
      const auto um = twolevel::closed_form_evolution(p, -40.0, 40.0);
      // U^dagger U
      const Complex2x2 ud = {std::conj(um.a11), std::conj(um.a21), std::conj(um.a12),
                             std::conj(um.a22)};
      const Complex2x2 prod = ud * um;
      worst = std::max(worst, prod.max_abs_diff(Complex2x2::identity()));
    }
    add(rep, "Hermitian limit: U+U = 1", worst, 1e-8);
  }

  // --- PT symmetry of the real-gap Hamiltonian -------------------------------
  {
    double worst = 0.0;
    twolevel::RealGapLZParams p{0.7, 0.4, 0.25};
    for (double t : {-3.0, -0.4, 0.0, 1.1, 2.7}) {
      const auto h = twolevel::hamiltonian_at(p, t);
      const auto hm = twolevel::hamiltonian_at(p, -t);
      const Complex2x2 lhs = {std::conj(h.a22), std::conj(h.a21), std::conj(h.a12),
                              std::conj(h.a11)};
      const Complex2x2 rhs = {hm.a11, hm.a21, hm.a12, hm.a22};
      worst = std::max(worst, lhs.max_abs_diff(rhs));
    }
    add(rep, "PT symmetry sx h*(t) sx = h(-t)^T", worst, 0.0);
  }

  // --- projector algebra -----------------------------------------------------
  {
    double worst = 0.0;
    const int n = quick ? 8 : 30;
    for (int i = 0; i < n; ++i) {
      const auto p = random_generic(rng, 3.0);
      const auto h = twolevel::hamiltonian_at(p, 0.37);
      const auto [pp, pm] = twolevel::projectors(h);
      worst = std::max(worst, (pp * pp).max_abs_diff(pp));
      worst = std::max(worst, (pm * pm).max_abs_diff(pm));
      worst = std::max(worst, (pp + pm).max_abs_diff(Complex2x2::identity()));
      const Complex2x2 zero{};
      worst = std::max(worst, (pp * pm).max_abs_diff(zero));
    }
    add(rep, "projector algebra", worst, 1e-12);
  }

  // --- spectrum antisymmetry --------------------------------------------------
  {
    double worst = 0.0;
    for (int i = 0; i < (quick ? 5 : 20); ++i) {
      const auto p = random_generic(rng, 3.0);
      const auto [ep, em] = twolevel::adiabatic_spectrum(twolevel::hamiltonian_at(p, -1.3));
      worst = std::max(worst, std::abs(ep + em));
    }
    add(rep, "spectrum antisymmetry E+ = -E-", worst, 0.0);
  }

  // --- PCF recurrence / derivative identities --------------------------------
  {
    double worst = 0.0;
    const cplx ps[] = {{0.3, -0.8}, {1.2, 0.4}, {-0.7, -0.25}};
    const double zas[] = {2.0, 6.0, 10.0, 25.0};
    for (const cplx& p : ps) {
      for (double za : zas) {
        for (double sgn : {1.0, -1.0}) {
          const cplx zeta = sgn * kRay * za;
          const auto d1 = specfun::pcf(p + cplx(1.0), zeta);
          const auto d0 = specfun::pcf(p, zeta);
          const auto dm = specfun::pcf(p - cplx(1.0), zeta);
          const double resid = std::abs(d1.value - zeta * d0.value + p * dm.value) /
                               std::max(1.0, std::abs(d1.value));
          worst = std::max(worst, resid);
        }
      }
    }
    add(rep, "PCF recurrence identity", worst, 1e-9);

    double worst_d = 0.0;
    for (const cplx& p : ps) {
      const cplx zeta = kRay * 5.0;
      const double h = 1e-5;
      const cplx dir = zeta / std::abs(zeta);
      const cplx dnum = (specfun::pcf(p, zeta + h * dir).value -
                         specfun::pcf(p, zeta - h * dir).value) /
                        (2.0 * h * dir);
      const cplx resid = dnum + 0.5 * zeta * specfun::pcf(p, zeta).value -
                         p * specfun::pcf(p - cplx(1.0), zeta).value;
      worst_d = std::max(worst_d, std::abs(resid));
    }
    add(rep, "PCF derivative identity", worst_d, 1e-5);
  }

  // --- propagator: determinant conservation & reversibility ------------------
  {
    twolevel::RealGapLZParams p{1.0, 0.6, 0.25};
    auto h = [&](double t) { return twolevel::hamiltonian_at(p, t); };
    IntegratorConfig cfg;
    const auto u = fundamental_matrix(h, -10.0, 10.0, cfg);
    add(rep, "propagator det U = 1", std::abs(u.det() - cplx(1.0)), 1e-8);

    const std::array<cplx, 2> psi0 = {cplx(0.8, 0.1), cplx(-0.3, 0.45)};
    auto fwd = integrate_two_level(h, psi0, -10.0, 10.0, cfg);
    auto rev_h = [&](double t) {
      const auto m = h(-t);
      return cplx(-1.0) * m;
    };
    const auto& yf = fwd.states.back();
    auto back = integrate_two_level(rev_h, {yf[0], yf[1]}, -10.0, 10.0, cfg);
    const auto& y0 = back.states.back();
    const double resid = std::abs(y0[0] - psi0[0]) + std::abs(y0[1] - psi0[1]);
    add(rep, "propagator time reversal", resid, 10.0 * cfg.rel_tol + 1e-8);
  }

  // --- Gaussian beam normalisation -------------------------------------------
  {
    waveguide::WaveguideConfig cfg;
    cfg.ssh.N = 160;
    cfg.ssh.E_field = 0.05;
    cfg.x0 = 40.0;
    cfg.l = 8.0;
    const auto b = waveguide::init_gaussian(cfg);
    double total = 0.0;
    for (const auto& a : b.psi) total += std::norm(a);
    add(rep, "Gaussian beam normalisation", std::abs(total * cfg.ssh.d - 1.0), 1e-3);
  }

  // --- oracle equivalence: closed form vs direct integration -----------------
  if (!quick) {
    double worst = 0.0;
    IntegratorConfig cfg;
    cfg.rel_tol = 1e-12;
    cfg.abs_tol = 1e-14;
    for (int i = 0; i < 8; ++i) {
      const auto p = random_generic(rng, 2.0);
      const auto uc = twolevel::closed_form_evolution(p, -40.0, 40.0);
      auto h = [&](double t) { return twolevel::hamiltonian_at(p, t); };
      const auto uo = fundamental_matrix(h, -40.0, 40.0, cfg);
      auto dev = [](cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(a)); };
      worst = std::max({worst, dev(uc.a11, uo.a11), dev(uc.a12, uo.a12), dev(uc.a21, uo.a21),
                        dev(uc.a22, uo.a22)});
    }
    add(rep, "closed form vs propagator (subset)", worst, 1e-6);
  }

  return rep;
}

}  // namespace lzslab::selftest

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lzslab/waveguide.hpp"

using namespace lzslab;
using namespace lzslab::waveguide;

namespace {
constexpr double kPi = 3.14159265358979323846;

WaveguideConfig reference_config() {
  WaveguideConfig cfg;
  cfg.ssh.J = 1.0;
  cfg.ssh.alpha = 0.1;
  cfg.ssh.gamma = 0.1;
  cfg.ssh.E_field = 0.05;
  cfg.ssh.N = 160;
  cfg.x0 = 40.0;
  cfg.l = 8.0;
  return cfg;
}
}  // namespace

TEST_CASE("gaussian input: normalisation, symmetry, peak") {
  auto cfg = reference_config();
  const auto b = init_gaussian(cfg);
  double total = 0.0;
  for (const auto& a : b.psi) total += std::norm(a);
  CHECK(std::abs(total - 1.0) < 1e-3);
  CHECK(std::abs(b.psi[40]) == doctest::Approx(std::pow(kPi * 64.0, -0.25)));
  for (int s = 1; s < 30; ++s) {
    CHECK(std::abs(b.psi[40 + s] - b.psi[40 - s]) < 1e-15);
  }
  CHECK(center_of_mass(b) == doctest::Approx(40.0).epsilon(1e-10));

  WaveguideConfig bad = cfg;
  bad.l = 2.0;
  CHECK_THROWS_AS(init_gaussian(bad), DomainError);
}

TEST_CASE("center of mass basics") {
  BeamState s;
  s.psi = {cplx(0.0), cplx(1.0), cplx(0.0), cplx(1.0), cplx(0.0)};
  CHECK(center_of_mass(s) == doctest::Approx(2.0));  // equal packets at 1 and 3
  BeamState z;
  z.psi = {cplx(0.0), cplx(0.0)};
  CHECK_THROWS_AS(center_of_mass(z), ZeroIntensity);
}

TEST_CASE("hermitian field-free propagation conserves intensity") {
  auto cfg = reference_config();
  cfg.ssh.gamma = 0.0;
  cfg.ssh.E_field = 0.0;
  cfg.z_max = 20.0;
  cfg.sample_every = 5.0;
  const auto b0 = init_gaussian(cfg);
  const auto res = propagate(cfg, b0);
  double i0 = 0.0, i1 = 0.0;
  for (const auto& a : res.snapshots.front().psi) i0 += std::norm(a);
  for (const auto& a : res.snapshots.back().psi) i1 += std::norm(a);
  CHECK(std::abs(i1 - i0) < 1e-8);
}

TEST_CASE("beam splits into two branches after the first crossing") {
  auto cfg = reference_config();
  cfg.z_max = (kPi / 2.0 + 0.5) / cfg.ssh.E_field;
  cfg.sample_every = cfg.z_max / 8.0;
  const auto res = propagate(cfg, init_gaussian(cfg));

  // before the crossing: one macroscopic maximum
  std::vector<double> early(cfg.ssh.N), late(cfg.ssh.N);
  for (int m = 0; m < cfg.ssh.N; ++m) early[m] = std::norm(res.snapshots[2].psi[m]);
  CHECK(branch_maxima(early).size() == 1);
  // after: two branches separated by more than 4 sites
  for (int m = 0; m < cfg.ssh.N; ++m) late[m] = std::norm(res.snapshots.back().psi[m]);
  const auto peaks = branch_maxima(late);
  REQUIRE(peaks.size() == 2);
  CHECK(peaks[1] - peaks[0] > 4);
}

TEST_CASE("band decomposition tracks the split") {
  auto cfg = reference_config();
  const auto b0 = init_gaussian(cfg);
  const auto d0 = band_decompose(b0, cfg.ssh, 0.0);
  const double w0 = d0.upper_weight + d0.lower_weight;
  CHECK(d0.upper_weight / w0 > 0.99);  // broad Gaussian sits in the upper band
  CHECK(d0.lower_weight / w0 < 1e-3);
  CHECK(d0.upper_com == doctest::Approx(40.0).epsilon(1e-3));

  // gamma = 0: weights sum to the (conserved) total intensity
  auto cfg_h = cfg;
  cfg_h.ssh.gamma = 0.0;
  const auto bh = init_gaussian(cfg_h);
  const auto dh = band_decompose(bh, cfg_h.ssh, 0.0);
  double total = 0.0;
  for (const auto& a : bh.psi) total += std::norm(a);
  CHECK(std::abs(dh.upper_weight + dh.lower_weight - total) < 1e-6);

  // at z = pi/E the lower band carries the displaced branch; use a wider
  // array with the beam launched mid-bulk so every component (including the
  // small counter-moving band contamination) stays clear of the edges
  cfg.ssh.N = 320;
  cfg.x0 = 140.0;
  cfg.z_max = kPi / cfg.ssh.E_field;
  cfg.sample_every = cfg.z_max;
  const auto res = propagate(cfg, init_gaussian(cfg));
  const auto dmid = band_decompose(res.snapshots.back(), cfg.ssh, cfg.z_max);
  const double ew = 2.0 * std::sqrt(4.0 - 0.01);
  CHECK(std::abs(dmid.lower_com - (cfg.x0 + ew / cfg.ssh.E_field)) < 2.0);
  CHECK(std::abs(dmid.upper_com - cfg.x0) < 2.0);

  // CoM additivity: intensity CoM equals the weight-weighted band CoMs
  const double com = center_of_mass(res.snapshots.back());
  const double mix = (dmid.upper_weight * dmid.upper_com + dmid.lower_weight * dmid.lower_com) /
                     (dmid.upper_weight + dmid.lower_weight);
  // interband intensity cross terms limit additivity to ~0.1 d at gamma = 0.1
  CHECK(std::abs(com - mix) < 0.15);
}

TEST_CASE("analytic CoM: pins and limits") {
  auto p = reference_config().ssh;
  // E_w and the displaced-branch position
  const double ew = 2.0 * std::sqrt(4.0 * p.J * p.J - p.gamma * p.gamma);
  CHECK(ew == doctest::Approx(3.99500).epsilon(1e-5));

  // adiabatic limit: the band-following branch returns to x0 and carries
  // all the weight, so the CoM reverts to the launch site
  auto pad = p;
  pad.E_field = 0.002;
  CHECK(std::abs(analytic_com(pad, 40.0, ComTime::half_period) - 40.0) < 1e-6);
  CHECK(std::abs(analytic_com(pad, 40.0, ComTime::full_period) - 40.0) < 1e-5);

  // diabatic limit: the jump branch dominates and sits at x0 + E_w/E
  auto pdia = p;
  pdia.E_field = 1.5;
  const double com_dia = analytic_com(pdia, 40.0, ComTime::half_period);
  CHECK(com_dia > 40.0 + 0.9 * ew / pdia.E_field);

  // half-period against the full simulation (reference configuration)
  auto cfg = reference_config();
  cfg.z_max = kPi / cfg.ssh.E_field;
  cfg.sample_every = cfg.z_max;
  const auto res = propagate(cfg, init_gaussian(cfg));
  const double com_sim = center_of_mass(res.snapshots.back());
  const double com_an = analytic_com(cfg.ssh, 40.0, ComTime::half_period);
  CHECK(std::abs(com_sim - com_an) < 0.5);
}

TEST_CASE("periodic revival for gamma = 0, adiabatic regime") {
  WaveguideConfig cfg;
  cfg.ssh.J = 1.0;
  cfg.ssh.alpha = 0.35;  // large gap: delta = m^2/(4 J E) >> 1
  cfg.ssh.gamma = 0.0;
  cfg.ssh.E_field = 0.02;
  cfg.ssh.N = 200;
  cfg.x0 = 60.0;
  cfg.l = 8.0;
  cfg.z_max = 2.0 * kPi / cfg.ssh.E_field;
  cfg.sample_every = cfg.z_max;
  const auto res = propagate(cfg, init_gaussian(cfg));
  CHECK(std::abs(center_of_mass(res.snapshots.back()) - 60.0) < 0.5);
}

TEST_CASE("equivalence of pictures: lattice band weights match the k-space run") {
  // full-period band weights of the beam against a single-k two-level
  // integration with the same swept argument kd - E z, upper-band start
  auto cfg = reference_config();
  cfg.ssh.N = 240;  // keep the displaced branch in the bulk
  const double E = cfg.ssh.E_field;
  cfg.z_max = 2.0 * kPi / E;
  cfg.sample_every = cfg.z_max;
  const auto res = propagate(cfg, init_gaussian(cfg));
  const auto d = band_decompose(res.snapshots.back(), cfg.ssh, cfg.z_max);
  const double wsum = d.upper_weight + d.lower_weight;

  const auto p = cfg.ssh;
  auto h = [&p, E](double z) {
    const double th = -E * z;
    return pauli(2.0 * p.J * std::cos(th), -2.0 * p.alpha * p.J * std::sin(th),
                 cplx(0.0, p.gamma));
  };
  const auto es = twolevel::eigensystem(h(0.0));
  auto traj = integrate_two_level(h, es.right_plus, 0.0, cfg.z_max, {});
  const auto pops = twolevel::band_populations_of_state(
      h(cfg.z_max), {traj.states.back()[0], traj.states.back()[1]});
  const double psum = pops.first + pops.second;
  CHECK(std::abs(d.upper_weight / wsum - pops.second / psum) < 1e-2);
  CHECK(std::abs(d.lower_weight / wsum - pops.first / psum) < 1e-2);
}

TEST_CASE("band decomposition stays finite across PT-broken arcs") {
  // gamma > 2 alpha J: exceptional arcs around kd = pi/2; the decomposition
  // skips coalescing k-points and still returns usable weights
  auto cfg = reference_config();
  cfg.ssh.gamma = 0.3;
  cfg.z_max = 0.5 * kPi / cfg.ssh.E_field;  // mid-arc sweep position
  cfg.sample_every = cfg.z_max;
  const auto res = propagate(cfg, init_gaussian(cfg));
  const auto d = band_decompose(res.snapshots.back(), cfg.ssh, cfg.z_max);
  CHECK(std::isfinite(d.upper_weight));
  CHECK(std::isfinite(d.lower_weight));
  CHECK(d.upper_weight + d.lower_weight > 0.1);
}

TEST_CASE("boundary contamination warning fires when the beam hits an edge") {
  WaveguideConfig cfg = reference_config();
  cfg.ssh.N = 96;  // too small for the excursion
  cfg.x0 = 48.0;
  cfg.z_max = kPi / cfg.ssh.E_field;
  cfg.sample_every = cfg.z_max / 4.0;
  const auto res = propagate(cfg, init_gaussian(cfg));
  CHECK(!res.warnings.empty());
}

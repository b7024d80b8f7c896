#pragma once

#include <vector>

#include "lzslab/complex2x2.hpp"
#include "lzslab/lzs.hpp"
#include "lzslab/propagator.hpp"
#include "lzslab/twolevel.hpp"

namespace lzslab::ssh {

// Gain-and-loss SSH chain under a uniform field: hoppings J(1 +- alpha),
// staggered +- i gamma, field E_field in the hopping-phase gauge.
struct SSHParams {
  double J = 1.0;
  double alpha = 0.0;
  double gamma = 0.0;
  double E_field = 0.0;  // script-E
  double d = 1.0;        // site spacing
  int N = 2;             // unit cells

  double J1() const { return J * (1.0 + alpha); }
  double J2() const { return J * (1.0 - alpha); }
  // local Landau-Zener mapping at the crossings
  double lz_F() const { return 2.0 * J * E_field; }
  double lz_m() const { return 2.0 * alpha * J; }
  double lz_delta() const { return (lz_m() * lz_m() - gamma * gamma) / (2.0 * lz_F()); }
};

// h(k) = 2J cos(kd + Et) sigma_x - 2 alpha J sin(kd + Et) sigma_y + i gamma sigma_z
Complex2x2 bloch_hamiltonian(const SSHParams& p, double k, double t);

// Static (E = 0) band energies, principal branch.
std::pair<cplx, cplx> band_spectrum(const SSHParams& p, double k);

// Quasimomenta in [0, 2 pi/d) where the radicand of the dispersion
// vanishes; empty in the PT-unbroken regime.
std::vector<double> exceptional_points(const SSHParams& p);

struct LocalExpansion {
  twolevel::RealGapLZParams local;  // F = 2 J E, m = 2 alpha J, gamma
  lzs::LZSCase kase = lzs::LZSCase::case_i;
  double t1 = 0.0, t2 = 0.0;
};
enum class Crossing { first, second };
LocalExpansion local_expansion(const SSHParams& p, Crossing crossing);

// Two-level Bloch-oscillation run at fixed k0 with moving argument
// kd + E t; populations filled via band_project.
Trajectory bloch_oscillation(const SSHParams& p, double k0, twolevel::Band band0, double t_f,
                             const IntegratorConfig& cfg, int n_samples = 2000);

// Case-i adiabatic-impulse prediction with the SSH dispersion phases.
BandPopulations lzs_prediction(const SSHParams& p);

// Real-space ring (PBC) Hamiltonian in the hopping-phase gauge, for
// consistency checks against the k-space picture.  psi has 2N entries,
// sublattice 1 on even sites.
void ring_apply(const SSHParams& p, double t, const std::vector<cplx>& psi,
                std::vector<cplx>& out);

}  // namespace lzslab::ssh

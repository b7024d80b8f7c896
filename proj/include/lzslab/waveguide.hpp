#pragma once

#include <string>
#include <vector>

#include "lzslab/propagator.hpp"
#include "lzslab/ssh.hpp"

namespace lzslab::waveguide {

// Tight-binding beam propagation: N = ssh.N counts SITES here (waveguides),
// not unit cells.
struct WaveguideConfig {
  ssh::SSHParams ssh;    // ssh.N = number of waveguides (sites)
  double x0 = 40.0;      // initial beam centre, site units of d
  double l = 8.0;        // beam width, units of d
  double z_max = 0.0;    // propagation length
  double sample_every = 0.0;  // snapshot interval; 0 = (2 pi / E)/400
};

struct BeamState {
  double z = 0.0;
  std::vector<cplx> psi;  // one amplitude per site
};

struct PropagationResult {
  std::vector<BeamState> snapshots;
  std::vector<std::string> warnings;  // boundary contamination etc.
};

// psi_m(0) = (pi l^2)^{-1/4} exp(-(x_m - x0)^2 / (2 l^2)), real positive.
BeamState init_gaussian(const WaveguideConfig& cfg);

// i d psi_m / dz = J_m e^{-i E z} psi_{m+1} + J_{m-1} e^{+i E z} psi_{m-1}
//                + i gamma (-1)^m psi_m,   open ends, site 0 = gain sublattice.
PropagationResult propagate(const WaveguideConfig& cfg, const BeamState& initial,
                            const IntegratorConfig& icfg = {});

// Intensity-weighted mean position, site units of d.
double center_of_mass(const BeamState& state);

enum class ComTime { half_period, full_period };

// Closed-form centre of mass at z = pi/E or 2 pi/E from the local
// Landau-Zener mapping of the swept Bloch Hamiltonian (case-i weights for
// the band the Gaussian actually starts in, displaced branch at
// x0 + E_w/E with E_w = 2 E_+(k=0)).
double analytic_com(const ssh::SSHParams& p, double x0, ComTime at);

struct BandDecomposition {
  double upper_weight = 0.0;
  double lower_weight = 0.0;
  double upper_com = 0.0;  // site units of d
  double lower_com = 0.0;
};

// Sublattice Fourier transform, projection on the instantaneous Bloch
// eigenvectors at argument kd - E z, per-band centre of mass in real space.
BandDecomposition band_decompose(const BeamState& state, const ssh::SSHParams& p, double z);

// Macroscopic intensity maxima: sublattice pairs merged, short-scale
// fringes smoothed out, maxima closer than 4 sites clustered.  Returns
// site indices.
std::vector<int> branch_maxima(const std::vector<double>& intensity);

}  // namespace lzslab::waveguide

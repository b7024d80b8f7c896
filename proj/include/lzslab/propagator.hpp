#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "lzslab/complex2x2.hpp"
#include "lzslab/errors.hpp"

namespace lzslab {

struct IntegratorConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double max_step = 0.0;  // 0 = unlimited
  bool dense_output = false;
};

struct BandPopulations {
  double p_minus_plus = 0.0;
  double p_minus_minus = 0.0;
  double p_plus_minus = 0.0;
  double p_plus_plus = 0.0;
};

// Populations of one evolved state projected on the instantaneous bands.
// NaN entries mark times where the band projection is degenerate.
struct PopulationSample {
  double to_lower = 0.0;
  double to_upper = 0.0;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<std::vector<cplx>> states;
  std::vector<PopulationSample> populations;  // filled by band_project
};

// Applies H(t) to psi: out = H(t) psi.  The integrator advances
// i dpsi/dt = H(t) psi without renormalising (non-unitary growth is
// physical).
using HamiltonianApply =
    std::function<void(double t, const std::vector<cplx>& psi, std::vector<cplx>& out)>;

// Adaptive Dormand-Prince 5(4).  Sampling:
//  - dense_output false: stores accepted steps only;
//  - dense_output true + sample_times: cubic Hermite interpolation at the
//    requested times (must be increasing, inside [t_i, t_f]).
// Throws StepUnderflow when the required step drops below
// 1e-14 * (t_f - t_i).
Trajectory integrate(const HamiltonianApply& h_apply, const std::vector<cplx>& psi0, double t_i,
                     double t_f, const IntegratorConfig& cfg,
                     const std::vector<double>& sample_times = {});

// Convenience wrapper for 2x2 matrix generators.
Trajectory integrate_two_level(const std::function<Complex2x2(double)>& h_of_t,
                               const std::array<cplx, 2>& psi0, double t_i, double t_f,
                               const IntegratorConfig& cfg,
                               const std::vector<double>& sample_times = {});

// Biorthogonal band populations of a two-level trajectory, with the
// 1/|<uL|uR>|^2 weights included.  Degenerate instants are marked NaN.
void band_project(Trajectory& traj, const std::function<Complex2x2(double)>& h_of_t);

// Fundamental matrix U(t_f, t_i) by integrating the two basis columns.
Complex2x2 fundamental_matrix(const std::function<Complex2x2(double)>& h_of_t, double t_i,
                              double t_f, const IntegratorConfig& cfg);

}  // namespace lzslab

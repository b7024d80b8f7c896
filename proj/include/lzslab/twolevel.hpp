#pragma once

#include <array>
#include <complex>
#include <utility>

#include "lzslab/complex2x2.hpp"
#include "lzslab/errors.hpp"
#include "lzslab/propagator.hpp"

namespace lzslab::twolevel {

// H(t) = (F t + i kappa) sigma_z + (m + i m') sigma_x + (n + i n') sigma_y
struct GenericLZParams {
  double F = 1.0;  // sweep velocity, > 0
  double kappa = 0.0;
  double m = 0.0, n = 0.0;
  double m_prime = 0.0, n_prime = 0.0;

  double delta() const { return (m * m - m_prime * m_prime + n * n - n_prime * n_prime) / (2 * F); }
  double delta_prime() const { return (m * m_prime + n * n_prime) / F; }
};

// h(t) = F t sigma_z + m sigma_x + i gamma sigma_y (real adiabatic parameter)
struct RealGapLZParams {
  double F = 1.0;
  double m = 0.0;
  double gamma = 0.0;

  double delta() const { return (m * m - gamma * gamma) / (2 * F); }
  GenericLZParams generic() const {
    GenericLZParams g;
    g.F = F;
    g.m = m;
    g.n_prime = gamma;
    return g;
  }
};

Complex2x2 hamiltonian_at(const GenericLZParams& p, double t);
Complex2x2 hamiltonian_at(const RealGapLZParams& p, double t);

// E_+ = -E_- = principal sqrt(-det h) of a traceless h.
std::pair<cplx, cplx> adiabatic_spectrum(const Complex2x2& h);

// Spectral projectors P_+, P_- of a traceless 2x2; throws DegeneracyError
// at (near-)exceptional points.
std::pair<Complex2x2, Complex2x2> projectors(const Complex2x2& h);

// Right/left eigenvectors for the upper (+) and lower (-) band; right
// vectors Euclid-normalised, left vectors unnormalised rows.
struct EigenSystem2 {
  cplx e_plus, e_minus;
  std::array<cplx, 2> right_plus, right_minus;
  std::array<cplx, 2> left_plus, left_minus;  // rows: uL . H = E uL
};
EigenSystem2 eigensystem(const Complex2x2& h);

// Biorthogonal band populations of a state: {to_lower, to_upper} with the
// 1/|<uL|uR>|^2 weights.
std::pair<double, double> band_populations_of_state(const Complex2x2& h,
                                                    const std::array<cplx, 2>& psi);

// U(t_f, t_i) for kappa = 0 from the parabolic-cylinder solution with
// tau = e^{i pi/4} sqrt(2F) t; shared denominator via the exact Wronskian
// value sqrt(2 pi)/Gamma(1-p).  Degenerate-coupling cases (one or both
// off-diagonal couplings zero) are handled in closed form.
Complex2x2 closed_form_evolution(const GenericLZParams& p, double t_i, double t_f);

enum class Basis { adiabatic, diabatic };
enum class Band { lower, upper };

// Populations at +T for evolution started in `initial_band` at -T.
// Adiabatic basis: biorthogonal projections; diabatic basis: squared moduli
// of evolution-matrix entries.
PopulationSample band_populations(const GenericLZParams& p, double T, Basis basis,
                                  Band initial_band);

// Large-T classification of P_{-+} / P_{--} (adiabatic) or the diabatic
// analogues.
enum class AsymptoticBranch { constant, power_law, marginal };
struct BranchInfo {
  AsymptoticBranch branch{};
  double constant = 0.0;        // constant branch value, or marginal constant
  double exponent = 0.0;        // power-law exponent in T
  double osc_amplitude = 0.0;   // marginal oscillation amplitude scale
};
struct AsymptoticClassification {
  BranchInfo cross;  // P_{-+}-type
  BranchInfo stay;   // P_{--}-type
};
AsymptoticClassification asymptotic_band_populations(double delta, double delta_prime,
                                                     const GenericLZParams& p, Basis basis);

// Stokes phase pi/4 + delta (ln|delta| - 1) - arg Gamma(1 + i delta).
double stokes_phase(double delta);

// Asymptotic evolution matrix of the real-gap model (adiabatic dynamical
// phase stripped).  Throws ExceptionalPointError at |m| = |gamma|.
Complex2x2 real_gap_asymptotic_U(const RealGapLZParams& p);

// P_{-+} = P_{+-} = e^{-2 pi delta}; P_{--}, P_{++} with (m -+ gamma)/(m +- gamma)
// weights.
BandPopulations real_gap_populations(const RealGapLZParams& p);

// tau_LZ = |1 - P_LZ| / (sqrt(2 delta (1 - P_LZ)) cos chi(delta)).
double lz_transition_time(const RealGapLZParams& p);

}  // namespace lzslab::twolevel

#include "lzslab/propagator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "lzslab/twolevel.hpp"

namespace lzslab {

namespace {

// Dormand-Prince 5(4) tableau
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

using Vec = std::vector<cplx>;

struct Rhs {
  const HamiltonianApply& h_apply;
  mutable Vec hpsi;
  void operator()(double t, const Vec& y, Vec& dy) const {
    h_apply(t, y, hpsi);
    const cplx mi(0.0, -1.0);
    for (std::size_t i = 0; i < y.size(); ++i) dy[i] = mi * hpsi[i];
  }
};

void axpy_combine(Vec& out, const Vec& y, std::initializer_list<std::pair<double, const Vec*>> ks,
                  double h) {
  out = y;
  for (const auto& [a, k] : ks) {
    if (a == 0.0) continue;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += h * a * (*k)[i];
  }
}

// cubic Hermite between accepted steps
Vec hermite(double t, double t0, double t1, const Vec& y0, const Vec& y1, const Vec& f0,
            const Vec& f1) {
  const double h = t1 - t0;
  const double s = (t - t0) / h;
  const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
  const double h10 = s * (1 - s) * (1 - s);
  const double h01 = s * s * (3 - 2 * s);
  const double h11 = s * s * (s - 1);
  Vec out(y0.size());
  for (std::size_t i = 0; i < y0.size(); ++i) {
    out[i] = h00 * y0[i] + h * h10 * f0[i] + h01 * y1[i] + h * h11 * f1[i];
  }
  return out;
}

}  // namespace

Trajectory integrate(const HamiltonianApply& h_apply, const Vec& psi0, double t_i, double t_f,
                     const IntegratorConfig& cfg, const std::vector<double>& sample_times) {
  if (!(t_i < t_f)) throw DomainError("integrate: need t_i < t_f");
  if (psi0.empty()) throw DomainError("integrate: empty state");
  if (!(cfg.rel_tol > 0.0) || !(cfg.abs_tol > 0.0)) {
    throw DomainError("integrate: tolerances must be positive");
  }

  const std::size_t n = psi0.size();
  Rhs rhs{h_apply, Vec(n)};

  Vec y = psi0, ynew(n), ytmp(n);
  std::array<Vec, 7> k;
  for (auto& v : k) v = Vec(n);

  double t = t_i;
  const double span = t_f - t_i;
  const double hmin = 1e-14 * span;
  double hmax = (cfg.max_step > 0.0) ? cfg.max_step : span;

  Trajectory traj;
  const bool sampling = cfg.dense_output && !sample_times.empty();
  std::size_t next_sample = 0;

  auto record = [&](double tt, const Vec& yy) {
    traj.times.push_back(tt);
    traj.states.push_back(yy);
  };

  rhs(t, y, k[0]);
  if (sampling) {
    while (next_sample < sample_times.size() && sample_times[next_sample] <= t) {
      record(sample_times[next_sample++], y);
    }
  } else {
    record(t, y);
  }

  // initial step heuristic (deterministic)
  double f0n = 0.0, y0n = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    f0n += std::norm(k[0][i]);
    y0n += std::norm(y[i]);
  }
  double h = 0.01 * std::sqrt((y0n + 1e-300) / (f0n + 1e-300));
  h = std::min({h, span / 100.0, hmax});
  h = std::max(h, hmin * 10.0);

  // k[0] always holds f(t, y) at the top of the loop (FSAL after acceptance,
  // unchanged after rejection).
  while (t < t_f) {
    h = std::min(h, t_f - t);
    if (h < hmin) throw StepUnderflow("integrate: step size underflow");

    axpy_combine(ytmp, y, {{a21, &k[0]}}, h);
    rhs(t + c2 * h, ytmp, k[1]);
    axpy_combine(ytmp, y, {{a31, &k[0]}, {a32, &k[1]}}, h);
    rhs(t + c3 * h, ytmp, k[2]);
    axpy_combine(ytmp, y, {{a41, &k[0]}, {a42, &k[1]}, {a43, &k[2]}}, h);
    rhs(t + c4 * h, ytmp, k[3]);
    axpy_combine(ytmp, y, {{a51, &k[0]}, {a52, &k[1]}, {a53, &k[2]}, {a54, &k[3]}}, h);
    rhs(t + c5 * h, ytmp, k[4]);
    axpy_combine(ytmp, y, {{a61, &k[0]}, {a62, &k[1]}, {a63, &k[2]}, {a64, &k[3]}, {a65, &k[4]}},
                 h);
    rhs(t + h, ytmp, k[5]);
    axpy_combine(ynew, y, {{b1, &k[0]}, {b3, &k[2]}, {b4, &k[3]}, {b5, &k[4]}, {b6, &k[5]}}, h);
    rhs(t + h, ynew, k[6]);

    // embedded error, scaled per component against the current magnitude
    double err2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const cplx e = h * (e1 * k[0][i] + e3 * k[2][i] + e4 * k[3][i] + e5 * k[4][i] +
                          e6 * k[5][i] + e7 * k[6][i]);
      const double sc =
          cfg.abs_tol + cfg.rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      err2 += std::norm(e / sc);
    }
    const double err = std::sqrt(err2 / static_cast<double>(n));

    if (err <= 1.0) {
      const double t_old = t;
      t += h;
      if (sampling) {
        while (next_sample < sample_times.size() && sample_times[next_sample] <= t) {
          const double ts = sample_times[next_sample];
          if (ts <= t_old) {
            record(ts, y);
          } else {
            record(ts, hermite(ts, t_old, t, y, ynew, k[0], k[6]));
          }
          ++next_sample;
        }
      }
      y.swap(ynew);
      k[0].swap(k[6]);  // FSAL
      if (!sampling) record(t, y);
      const double fac = std::clamp(0.9 * std::pow(err + 1e-300, -0.2), 0.2, 5.0);
      h = std::min(fac * h, hmax);
    } else {
      const double fac = std::clamp(0.9 * std::pow(err, -0.2), 0.2, 1.0);
      h *= fac;
    }
  }
  if (sampling) {
    while (next_sample < sample_times.size() && sample_times[next_sample] <= t_f + 1e-12 * span) {
      record(sample_times[next_sample++], y);
    }
  }
  return traj;
}

Trajectory integrate_two_level(const std::function<Complex2x2(double)>& h_of_t,
                               const std::array<cplx, 2>& psi0, double t_i, double t_f,
                               const IntegratorConfig& cfg,
                               const std::vector<double>& sample_times) {
  HamiltonianApply apply = [&h_of_t](double t, const Vec& psi, Vec& out) {
    const Complex2x2 h = h_of_t(t);
    out.resize(2);
    cplx in[2] = {psi[0], psi[1]}, o[2];
    h.apply(in, o);
    out[0] = o[0];
    out[1] = o[1];
  };
  return integrate(apply, {psi0[0], psi0[1]}, t_i, t_f, cfg, sample_times);
}

void band_project(Trajectory& traj, const std::function<Complex2x2(double)>& h_of_t) {
  traj.populations.clear();
  traj.populations.reserve(traj.times.size());
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    if (traj.states[i].size() != 2) {
      throw DomainError("band_project: two-level trajectory required");
    }
    const Complex2x2 h = h_of_t(traj.times[i]);
    PopulationSample s;
    try {
      const std::array<cplx, 2> psi = {traj.states[i][0], traj.states[i][1]};
      const auto pops = twolevel::band_populations_of_state(h, psi);
      s.to_lower = pops.first;
      s.to_upper = pops.second;
    } catch (const DegeneracyError&) {
      s.to_lower = std::numeric_limits<double>::quiet_NaN();
      s.to_upper = std::numeric_limits<double>::quiet_NaN();
    }
    traj.populations.push_back(s);
  }
}

Complex2x2 fundamental_matrix(const std::function<Complex2x2(double)>& h_of_t, double t_i,
                              double t_f, const IntegratorConfig& cfg) {
  Complex2x2 u;
  const std::array<cplx, 2> e1c = {1.0, 0.0}, e2c = {0.0, 1.0};
  auto t1 = integrate_two_level(h_of_t, e1c, t_i, t_f, cfg);
  auto t2 = integrate_two_level(h_of_t, e2c, t_i, t_f, cfg);
  const auto& c1 = t1.states.back();
  const auto& c2v = t2.states.back();
  u.a11 = c1[0];
  u.a21 = c1[1];
  u.a12 = c2v[0];
  u.a22 = c2v[1];
  return u;
}

}  // namespace lzslab

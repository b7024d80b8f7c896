#include "lzslab/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <vector>

namespace lzslab::specfun {

namespace {

constexpr double kPi = 3.14159265358979323846;
const cplx kI(0.0, 1.0);

// Lanczos g = 607/128, 15 coefficients (Godfrey's set), ~1e-15 relative
// accuracy for Re z >= 1/2.
constexpr double kLanczosG = 4.7421875;
constexpr std::array<double, 15> kLanczosC = {
    0.99999999999999709182,     57.156235665862923517,
    -59.597960355475491248,     14.136097974741747174,
    -0.49191381609762019978,    0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4,
    0.15808870322491248884e-3,  -0.21026444172410488319e-3,
    0.21743961811521264320e-3,  -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
};

cplx log_gamma_lanczos(cplx z) {
  // valid for Re z >= 1/2
  cplx sum = kLanczosC[0];
  for (std::size_t k = 1; k < kLanczosC.size(); ++k) {
    sum += kLanczosC[k] / (z + static_cast<double>(k - 1));
  }
  const cplx t = z + (kLanczosG - 0.5);
  return 0.5 * std::log(2.0 * kPi) + (z - 0.5) * std::log(t) - t + std::log(sum);
}

bool near_nonpositive_integer(cplx z) {
  if (std::abs(z.imag()) > 1e-14) return false;
  const double r = z.real();
  if (r > 0.5) return false;
  return std::abs(r - std::round(r)) < 1e-14;
}

}  // namespace

cplx log_gamma(cplx z) {
  if (z.real() >= 0.5) return log_gamma_lanczos(z);
  // reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
  return std::log(kPi) - std::log(std::sin(kPi * z)) - log_gamma_lanczos(1.0 - z);
}

cplx gamma(cplx z) {
  if (near_nonpositive_integer(z)) {
    return {std::numeric_limits<double>::infinity(), 0.0};
  }
  return std::exp(log_gamma(z));
}

cplx rgamma(cplx z) {
  if (near_nonpositive_integer(z)) return {0.0, 0.0};
  return std::exp(-log_gamma(z));
}

double arg_gamma(cplx z) {
  const double a = std::imag(log_gamma(z));
  return std::remainder(a, 2.0 * kPi);
}

// ---------------------------------------------------------------------------
// Series regime
// ---------------------------------------------------------------------------

PcfEvalReport pcf_series(cplx p, cplx zeta) {
  if (!std::isfinite(zeta.real()) || !std::isfinite(zeta.imag()) ||
      !std::isfinite(p.real()) || !std::isfinite(p.imag())) {
    throw DomainError("pcf_series: non-finite input");
  }

  const double sqrt_pi = std::sqrt(kPi);
  // D_p(0) and D_p'(0); rgamma handles the poles (e.g. p = 0 gives w' = 0).
  cplx w = std::exp(0.5 * p * std::log(cplx(2.0))) * sqrt_pi * rgamma(0.5 * (1.0 - p));
  cplx dw = -std::exp(0.5 * (p + 1.0) * std::log(cplx(2.0))) * sqrt_pi * rgamma(-0.5 * p);

  const double r = std::abs(zeta);
  double est = 0.0;
  if (r == 0.0) return {w, PcfRegime::series, est};

  const cplx u = zeta / r;  // unit direction; march s: 0 -> r
  const cplx u2 = u * u, u3 = u2 * u, u4 = u2 * u2;

  constexpr std::size_t kMaxTotalTerms = 10000;
  constexpr std::size_t kMaxOrder = 120;
  std::size_t total_terms = 0;

  double s0 = 0.0;
  std::vector<cplx> c(kMaxOrder + 2);
  while (s0 < r) {
    // local step: keep the oscillation budget (s0 + h) h / 2 modest
    double h = -s0 + std::sqrt(s0 * s0 + 12.0);  // solves (s0 + h) h / 2 = 6
    h = std::min(h, 3.0);
    h = std::min(h, r - s0);

    const cplx zeta0 = u * s0;
    const cplx q0 = u2 * (zeta0 * zeta0 * 0.25 - p - 0.5);
    const cplx q1 = u3 * zeta0 * 0.5;
    const cplx q2 = u4 * 0.25;

    // w as a function of arclength s: w''(s) = u^2 (zeta(s)^2/4 - p - 1/2) w
    // with zeta(s) = u s; c[j] are Taylor coefficients around s0.
    c[0] = w;
    c[1] = dw * u;

    cplx sum = c[0] + c[1] * h;
    cplx dsum = c[1];
    double powh = h;  // h^{j+1} entering iteration j
    double max_term = std::max(std::abs(c[0]), std::abs(c[1]) * h);
    int small_run = 0;
    double omitted = 0.0;
    for (std::size_t j = 0; j + 2 <= kMaxOrder; ++j) {
      cplx rhs = q0 * c[j];
      if (j >= 1) rhs += q1 * c[j - 1];
      if (j >= 2) rhs += q2 * c[j - 2];
      c[j + 2] = rhs / (static_cast<double>(j + 2) * static_cast<double>(j + 1));
      dsum += static_cast<double>(j + 2) * c[j + 2] * powh;  // h^{j+1}
      powh *= h;                                             // h^{j+2}
      const double term_mag = std::abs(c[j + 2]) * powh;
      sum += c[j + 2] * powh;
      max_term = std::max(max_term, term_mag);
      ++total_terms;
      if (term_mag < 1e-16 * std::abs(sum)) {
        if (++small_run >= 3) {
          omitted = term_mag;
          break;
        }
      } else {
        small_run = 0;
      }
    }
    if (small_run < 3) {
      throw NonConvergence("pcf_series: Taylor step did not converge");
    }
    if (total_terms > kMaxTotalTerms) {
      throw NonConvergence("pcf_series: term cap exceeded");
    }
    est += omitted + max_term * std::numeric_limits<double>::epsilon();

    w = sum;
    dw = dsum / u;  // back to d/dzeta
    s0 += h;
  }
  return {w, PcfRegime::series, est};
}

// ---------------------------------------------------------------------------
// Asymptotic regime
// ---------------------------------------------------------------------------

namespace {

struct PrincipalEval {
  cplx value;
  double est_abs_error;
};

// e^{-z^2/4} z^nu sum_k (-1)^k (-nu)_{2k} / (k! (2 z^2)^k), optimally
// truncated.  Accurate for |arg z| <= pi/2 (the reflected solution is
// absent there; on arg z = +-pi/4 its coefficient is exactly zero).
PrincipalEval pcf_principal(cplx nu, cplx z) {
  const cplx inv = 1.0 / (2.0 * z * z);
  cplx term(1.0, 0.0);
  cplx sum(1.0, 0.0);
  double last = 1.0;
  double est_rel = 0.0;
  for (int k = 1; k <= 60; ++k) {
    const cplx factor = -(-nu + cplx(2.0 * k - 2.0)) * (-nu + cplx(2.0 * k - 1.0)) * inv /
                        static_cast<double>(k);
    const cplx next = term * factor;
    if (std::abs(next) >= last) {
      est_rel = std::abs(next);  // divergence onset: first omitted term
      break;
    }
    sum += next;
    term = next;
    last = std::abs(next);
    est_rel = last;
    if (last < 1e-17 * std::abs(sum)) break;
  }
  const cplx prefac = std::exp(-0.25 * z * z + nu * std::log(z));
  return {prefac * sum, std::abs(prefac) * est_rel};
}

}  // namespace

PcfEvalReport pcf_asymptotic(cplx p, cplx zeta, double crossover) {
  const double r = std::abs(zeta);
  if (!(r >= crossover)) {
    throw DomainError("pcf_asymptotic: |zeta| below crossover radius");
  }
  const double phi = std::arg(zeta);
  if (std::abs(phi) <= 0.5 * kPi + 1e-12) {
    auto ev = pcf_principal(p, zeta);
    return {ev.value, PcfRegime::asymptotic, ev.est_abs_error};
  }
  // Exact connection (A&S 19.4): both evaluations land in |arg| <= pi/2.
  const double sgn = (phi > 0.0) ? 1.0 : -1.0;
  const cplx e1 = std::exp(sgn * kI * kPi * p);
  const cplx e2 = std::exp(sgn * kI * kPi * 0.5 * (p + 1.0));
  const cplx pref2 = std::sqrt(2.0 * kPi) * rgamma(-p) * e2;
  const cplx zr = (sgn > 0.0) ? (-kI * zeta) : (kI * zeta);
  auto ev1 = pcf_principal(p, -zeta);
  auto ev2 = pcf_principal(-p - 1.0, zr);
  const cplx value = e1 * ev1.value + pref2 * ev2.value;
  const double est = std::abs(e1) * ev1.est_abs_error + std::abs(pref2) * ev2.est_abs_error;
  return {value, PcfRegime::asymptotic, est};
}

PcfEvalReport pcf(cplx p, cplx zeta, double crossover) {
  if (!std::isfinite(zeta.real()) || !std::isfinite(zeta.imag()) ||
      !std::isfinite(p.real()) || !std::isfinite(p.imag())) {
    throw DomainError("pcf: non-finite input");
  }
  if (std::abs(zeta) < crossover) return pcf_series(p, zeta);
  return pcf_asymptotic(p, zeta, crossover);
}

}  // namespace lzslab::specfun

// lzslab: Landau-Zener / LZS interferometry toolkit for PT-symmetric models.
//
// Subcommands reproduce the toolkit's reference datasets as CSV:
//   lz-populations  band-population curves P(z) for a (delta, delta') family
//   lzs-sweep       exact vs adiabatic-impulse P-+ over a field grid
//   waveguide       beam propagation snapshots / CoM series / CoM sweep
//   selftest        invariant suite
//   emit-config     write a template config for a subcommand
#include <CLI11.hpp>

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <thread>

#include "lzslab/lzs.hpp"
#include "lzslab/propagator.hpp"
#include "lzslab/runconfig.hpp"
#include "lzslab/selftest.hpp"
#include "lzslab/ssh.hpp"
#include "lzslab/twolevel.hpp"
#include "lzslab/version.hpp"
#include "lzslab/waveguide.hpp"

namespace {

using namespace lzslab;
constexpr double kPi = 3.14159265358979323846;

int g_jobs = 0;

// ordered parallel map over [0, n)
template <typename F>
void parallel_for(std::size_t n, F&& body) {
  unsigned jobs = (g_jobs > 0) ? static_cast<unsigned>(g_jobs)
                               : std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, n > 0 ? static_cast<unsigned>(n) : 1u);
  if (jobs <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(jobs);
  for (unsigned w = 0; w < jobs; ++w) {
    pool.emplace_back([&]() {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        body(i);
      }
    });
  }
  for (auto& th : pool) th.join();
}

// realize (delta, delta') as generic LZ parameters with F = 1
twolevel::GenericLZParams realize(double delta, double dprime) {
  twolevel::GenericLZParams p;
  p.F = 1.0;
  if (std::abs(delta) < 1e-14) {
    const double c = std::sqrt(std::abs(dprime) / 2.0);
    p.m = c;
    p.n_prime = c;
    p.n = (dprime >= 0.0) ? c : -c;
    p.m_prime = (dprime >= 0.0) ? c : -c;
    return p;
  }
  if (delta > 0.0) {
    p.n = std::sqrt(2.0 * delta);
    const double c = dprime / p.n;
    p.m = c;
    p.n_prime = c;
  } else {
    p.m_prime = std::sqrt(-2.0 * delta);
    const double c = dprime / p.m_prime;
    p.m = c;
    p.n_prime = c;
  }
  return p;
}

int cmd_lz_populations(const RunConfig& cfg) {
  const double delta = cfg.get_real("delta", 9.0 / 32.0);
  const auto dprimes = cfg.get_reals("delta_primes", std::vector<double>{0.0, 1.0, 1.5, 2.0});
  const double za_min = cfg.get_real("za_min", 1.0);
  const double za_max = cfg.get_real("za_max", 40.0);
  const long long n = cfg.get_int("n_points", 80);
  if (dprimes.empty()) throw ValidationError("lz-populations: delta_primes must be non-empty");
  if (!(za_min > 0.0) || !(za_max > za_min)) {
    throw ValidationError("lz-populations: need 0 < za_min < za_max");
  }
  if (n < 2) throw ValidationError("lz-populations: n_points must be at least 2");

  SweepResult out;
  out.axis_name = "za";
  out.axis.resize(n);
  for (long long i = 0; i < n; ++i) {
    out.axis[i] = za_min + (za_max - za_min) * i / static_cast<double>(n - 1);
  }
  for (const double dp : dprimes) {
    Curve cmp{"Pmp_dp=" + std::to_string(dp), std::vector<double>(n)};
    Curve cmm{"Pmm_dp=" + std::to_string(dp), std::vector<double>(n)};
    const auto params = realize(delta, dp);
    parallel_for(n, [&](std::size_t i) {
      auto h = [&params](double t) { return twolevel::hamiltonian_at(params, t); };
      const double T = out.axis[i];
      const auto es = twolevel::eigensystem(h(-T));
      auto traj = integrate_two_level(h, es.right_minus, -T, T, {});
      const auto& y = traj.states.back();
      const auto pops = twolevel::band_populations_of_state(h(T), {y[0], y[1]});
      cmm.values[i] = pops.first;
      cmp.values[i] = pops.second;
    });
    out.curves.push_back(std::move(cmp));
    out.curves.push_back(std::move(cmm));

    // asymptotic overlay: constant branches only carry a value
    const auto cls = twolevel::asymptotic_band_populations(delta, dp, params,
                                                           twolevel::Basis::adiabatic);
    Curve overlay{"Pmp_asym_dp=" + std::to_string(dp), std::vector<double>(n)};
    for (long long i = 0; i < n; ++i) {
      switch (cls.cross.branch) {
        case twolevel::AsymptoticBranch::constant:
          overlay.values[i] = cls.cross.constant;
          break;
        case twolevel::AsymptoticBranch::marginal:
          overlay.values[i] = cls.cross.constant;
          break;
        case twolevel::AsymptoticBranch::power_law:
          overlay.values[i] = std::pow(out.axis[i], cls.cross.exponent);
          break;
      }
    }
    out.curves.push_back(std::move(overlay));
  }
  out.config_echo = cfg;
  write_csv(out, resolve_output_path(cfg.output_path.empty() ? "lz_populations.csv"
                                                             : cfg.output_path));
  return 0;
}

int cmd_lzs_sweep(const RunConfig& cfg) {
  ssh::SSHParams p;
  p.J = cfg.get_real("J", 1.0);
  p.alpha = cfg.get_real("alpha", 0.2);
  p.gamma = cfg.get_real("gamma", 0.2);
  const double e_min = cfg.get_real("E_min", 0.01);
  const double e_max = cfg.get_real("E_max", 0.2);
  const long long n = cfg.get_int("n_points", 30);
  if (!(e_min > 0.0) || !(e_max > e_min)) {
    throw ValidationError("lzs-sweep: need 0 < E_min < E_max");
  }
  if (n < 2) throw ValidationError("lzs-sweep: n_points must be at least 2");

  SweepResult out;
  out.axis_name = "E";
  out.axis.resize(n);
  Curve exact{"Pmp_exact", std::vector<double>(n)};
  Curve analytic{"Pmp_analytic", std::vector<double>(n)};
  Curve diff{"abs_diff", std::vector<double>(n)};
  for (long long i = 0; i < n; ++i) {
    out.axis[i] = e_min + (e_max - e_min) * i / static_cast<double>(n - 1);
  }
  parallel_for(n, [&](std::size_t i) {
    ssh::SSHParams q = p;
    q.E_field = out.axis[i];
    auto traj =
        ssh::bloch_oscillation(q, 0.0, twolevel::Band::lower, 2.0 * kPi / q.E_field, {}, 2);
    const auto pred = ssh::lzs_prediction(q);
    exact.values[i] = traj.populations.back().to_upper;
    analytic.values[i] = pred.p_minus_plus;
    diff.values[i] = std::abs(exact.values[i] - analytic.values[i]);
  });
  out.curves = {exact, analytic, diff};
  out.config_echo = cfg;
  write_csv(out, resolve_output_path(cfg.output_path.empty() ? "lzs_sweep.csv"
                                                             : cfg.output_path));
  return 0;
}

int cmd_waveguide(const RunConfig& cfg, bool strict) {
  waveguide::WaveguideConfig w;
  w.ssh.J = cfg.get_real("J", 1.0);
  w.ssh.alpha = cfg.get_real("alpha", 0.1);
  w.ssh.gamma = cfg.get_real("gamma", 0.1);
  w.ssh.N = static_cast<int>(cfg.get_int("sites", 160));
  w.x0 = cfg.get_real("x0", 40.0);
  w.l = cfg.get_real("width", 8.0);
  const std::string mode = [&] {
    auto it = cfg.parameters.find("mode");
    if (it == cfg.parameters.end()) return std::string("single");
    if (const auto* s = std::get_if<std::string>(&it->second)) return *s;
    throw ValidationError("waveguide: 'mode' must be a string");
  }();

  const std::string base = cfg.output_path.empty() ? "waveguide" : cfg.output_path;

  if (mode == "single") {
    w.ssh.E_field = cfg.get_real("E", 0.05);
    w.z_max = cfg.get_real("z_max", 2.0 * kPi / w.ssh.E_field);
    w.sample_every = cfg.get_real("sample_every", (2.0 * kPi / w.ssh.E_field) / 400.0);
    const auto res = waveguide::propagate(w, waveguide::init_gaussian(w));
    for (const auto& warn : res.warnings) {
      std::fprintf(stderr, "warning: %s\n", warn.c_str());
      if (strict) throw ValidationError("strict mode: " + warn);
    }
    // snapshots: z, site, re, im, intensity (raw and max-normalised)
    const std::string snap_path = resolve_output_path(base + "_snapshots.csv");
    std::FILE* f = std::fopen(snap_path.c_str(), "w");
    if (f == nullptr) throw ValidationError("cannot write " + snap_path);
    std::fprintf(f, "# lzslab %s\n# command: waveguide\n", kVersion);
    std::fprintf(f, "z,site,re_psi,im_psi,intensity,intensity_norm\n");
    for (const auto& s : res.snapshots) {
      double peak = 0.0;
      for (const auto& a : s.psi) peak = std::max(peak, std::norm(a));
      for (std::size_t m = 0; m < s.psi.size(); ++m) {
        std::fprintf(f, "%.17g,%zu,%.17g,%.17g,%.17g,%.17g\n", s.z, m, s.psi[m].real(),
                     s.psi[m].imag(), std::norm(s.psi[m]),
                     peak > 0.0 ? std::norm(s.psi[m]) / peak : 0.0);
      }
    }
    std::fclose(f);

    SweepResult com;
    com.axis_name = "z";
    Curve c{"com", {}}, wu{"upper_weight", {}}, wl{"lower_weight", {}};
    for (const auto& s : res.snapshots) {
      com.axis.push_back(s.z);
      c.values.push_back(waveguide::center_of_mass(s));
      const auto d = waveguide::band_decompose(s, w.ssh, s.z);
      wu.values.push_back(d.upper_weight);
      wl.values.push_back(d.lower_weight);
    }
    com.curves = {c, wu, wl};
    com.config_echo = cfg;
    write_csv(com, resolve_output_path(base + "_com.csv"));
    return 0;
  }

  if (mode == "sweep") {
    const double e_min = cfg.get_real("E_min", 0.03);
    const double e_max = cfg.get_real("E_max", 0.1);
    const long long n = cfg.get_int("n_points", 8);
    if (n < 2) throw ValidationError("waveguide: n_points must be at least 2");
    SweepResult out;
    out.axis_name = "E";
    out.axis.resize(n);
    Curve exact{"com_exact", std::vector<double>(n)};
    Curve analytic{"com_analytic", std::vector<double>(n)};
    Curve diff{"abs_diff", std::vector<double>(n)};
    for (long long i = 0; i < n; ++i) {
      out.axis[i] = e_min + (e_max - e_min) * i / static_cast<double>(n - 1);
    }
    std::vector<std::string> warnings(n);
    parallel_for(n, [&](std::size_t i) {
      waveguide::WaveguideConfig wi = w;
      wi.ssh.E_field = out.axis[i];
      wi.z_max = 2.0 * kPi / wi.ssh.E_field;
      wi.sample_every = wi.z_max;
      const auto res = waveguide::propagate(wi, waveguide::init_gaussian(wi));
      if (!res.warnings.empty()) warnings[i] = res.warnings.front();
      exact.values[i] = waveguide::center_of_mass(res.snapshots.back());
      analytic.values[i] =
          waveguide::analytic_com(wi.ssh, wi.x0, waveguide::ComTime::full_period);
      diff.values[i] = std::abs(exact.values[i] - analytic.values[i]);
    });
    for (const auto& warn : warnings) {
      if (warn.empty()) continue;
      std::fprintf(stderr, "warning: %s\n", warn.c_str());
      if (strict) throw ValidationError("strict mode: " + warn);
    }
    out.curves = {exact, analytic, diff};
    out.config_echo = cfg;
    write_csv(out, resolve_output_path(base + "_com_sweep.csv"));
    return 0;
  }
  throw ValidationError("waveguide: mode must be 'single' or 'sweep'");
}

int cmd_selftest(bool quick) {
  const auto rep = selftest::run(quick);
  for (const auto& c : rep.checks) {
    std::printf("[%s] %-40s residual %.3e (tol %.3e)\n", c.passed ? "PASS" : "FAIL",
                c.name.c_str(), c.residual, c.tolerance);
  }
  return rep.all_passed() ? 0 : 1;
}

RunConfig template_config(const std::string& command) {
  RunConfig cfg;
  cfg.command = command;
  if (command == "lz-populations") {
    cfg.parameters["delta"] = 9.0 / 32.0;
    cfg.parameters["delta_primes"] = std::vector<double>{0.0, 1.0, 1.5, 2.0};
    cfg.parameters["za_min"] = 1.0;
    cfg.parameters["za_max"] = 40.0;
    cfg.parameters["n_points"] = static_cast<long long>(80);
    cfg.output_path = "lz_populations.csv";
  } else if (command == "lzs-sweep") {
    cfg.parameters["J"] = 1.0;
    cfg.parameters["alpha"] = 0.2;
    cfg.parameters["gamma"] = 0.2;
    cfg.parameters["E_min"] = 0.01;
    cfg.parameters["E_max"] = 0.2;
    cfg.parameters["n_points"] = static_cast<long long>(30);
    cfg.output_path = "lzs_sweep.csv";
  } else if (command == "waveguide") {
    cfg.parameters["mode"] = std::string("single");
    cfg.parameters["J"] = 1.0;
    cfg.parameters["alpha"] = 0.1;
    cfg.parameters["gamma"] = 0.1;
    cfg.parameters["E"] = 0.05;
    cfg.parameters["sites"] = static_cast<long long>(160);
    cfg.parameters["x0"] = 40.0;
    cfg.parameters["width"] = 8.0;
    cfg.output_path = "waveguide";
  } else {
    throw ValidationError("emit-config: unknown command '" + command + "'");
  }
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lzslab: non-Hermitian Landau-Zener / LZS interferometry toolkit"};
  app.set_version_flag("--version", std::string(kVersion));
  std::string config_path, out_path;
  bool strict = false, quick = false;
  app.add_option("--config", config_path, "JSON run configuration");
  app.add_option("--out", out_path, "output path (overrides the config)");
  app.add_option("--jobs", g_jobs, "sweep worker count (default: cores)");
  app.add_flag("--strict", strict, "escalate warnings to errors");
  app.add_flag("--quick", quick, "selftest: fast subset");

  auto* lz = app.add_subcommand("lz-populations", "band-population curves vs z_a");
  auto* lzs_cmd = app.add_subcommand("lzs-sweep", "exact vs analytic interferometry sweep");
  auto* wg = app.add_subcommand("waveguide", "beam propagation / CoM");
  auto* st = app.add_subcommand("selftest", "run the invariant suite");
  auto* emit = app.add_subcommand("emit-config", "write a template config");
  for (auto* sub : {lz, lzs_cmd, wg, st, emit}) sub->fallthrough();
  std::string emit_for, emit_to = "config.json";
  emit->add_option("command", emit_for, "subcommand to template")->required();
  emit->add_option("--to", emit_to, "destination file");
  app.require_subcommand(1);

  CLI11_PARSE(app, argc, argv);

  try {
    RunConfig cfg;
    if (!config_path.empty()) {
      cfg = RunConfig::load(config_path);
    }
    if (!out_path.empty()) cfg.output_path = out_path;

    if (emit->parsed()) {
      template_config(emit_for).save(emit_to);
      std::printf("wrote %s\n", emit_to.c_str());
      return 0;
    }
    if (st->parsed()) return cmd_selftest(quick);
    if (lz->parsed()) {
      if (cfg.command.empty()) cfg = config_path.empty() ? template_config("lz-populations") : cfg;
      if (!out_path.empty()) cfg.output_path = out_path;
      return cmd_lz_populations(cfg);
    }
    if (lzs_cmd->parsed()) {
      if (cfg.command.empty()) cfg = config_path.empty() ? template_config("lzs-sweep") : cfg;
      if (!out_path.empty()) cfg.output_path = out_path;
      return cmd_lzs_sweep(cfg);
    }
    if (wg->parsed()) {
      if (cfg.command.empty()) cfg = config_path.empty() ? template_config("waveguide") : cfg;
      if (!out_path.empty()) cfg.output_path = out_path;
      return cmd_waveguide(cfg, strict);
    }
  } catch (const ValidationError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 1;
  }
  return 0;
}

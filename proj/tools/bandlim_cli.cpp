#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bandlim/config.hpp"
#include "bandlim/core.hpp"
#include "bandlim/csv.hpp"
#include "bandlim/derivative_frames.hpp"
#include "bandlim/errors.hpp"
#include "bandlim/gramian.hpp"
#include "bandlim/recovery.hpp"
#include "bandlim/sampling.hpp"

namespace {

using namespace bandlim;

struct Flags {
  std::string config_path;
  std::string out_dir;
  long long seed = -1;
  double grid_density = -1.0;
  int window_radius = -1;
};

Config load_config(const Flags& flags) {
  if (flags.config_path.empty())
    throw ConfigError("--config PATH is required for this command");
  return Config::load(flags.config_path);
}

FrameParams params_from(const Config& cfg) {
  const double omega = cfg.get_double("omega");
  const double t0 = cfg.get_double("t0");
  if (omega <= 0.0) throw ConfigError("key 'omega': must be positive");
  if (t0 <= 0.0) throw ConfigError("key 't0': must be positive");
  const FrameParams p =
      compute_params(omega, t0, cfg.get_double("endpoint_tol", 1e-12));
  if (cfg.has("length") && cfg.get_int("length") != p.length)
    throw ConfigError("key 'length': config declares L = " +
                      std::to_string(cfg.get_int("length")) +
                      " but the geometry gives L = " + std::to_string(p.length));
  return p;
}

DualSet make_duals(const GeneratorSet& gens, const FrameParams& p,
                   const Config& cfg) {
  const double cond_limit = cfg.get_double("cond_threshold", 1e12);
  if (p.length == 2) return closed_form_duals(p);
  return numeric_duals(gens, p, cfg.get_int("grid_points", 512), cond_limit);
}

std::ofstream open_out(const std::string& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  const std::string path = dir + "/" + name;
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  return out;
}

std::string out_dir_of(const Flags& flags, const Config& cfg) {
  if (!flags.out_dir.empty()) return flags.out_dir;
  return cfg.get_string("out_dir", ".");
}

int window_radius_of(const Flags& flags, const Config& cfg, int fallback) {
  if (flags.window_radius > 0) return flags.window_radius;
  const int r = cfg.get_int("window_radius", fallback);
  if (r < 1) throw ConfigError("key 'window_radius': must be >= 1");
  return r;
}

// Uniform [-1, 1] from the raw generator, bit-stable across standard
// libraries (std::uniform_real_distribution is not).
double uniform_pm1(std::mt19937_64& rng) {
  return 2.0 * ((rng() >> 11) * 0x1.0p-53) - 1.0;
}

Signal seeded_signal(double omega, long long seed) {
  std::mt19937_64 rng(static_cast<std::uint64_t>(seed));
  Signal f;
  f.omega = omega;
  for (int i = 0; i < 8; ++i) {
    const double w = uniform_pm1(rng);
    const double s = 5.0 * uniform_pm1(rng);
    f.terms.push_back({w, s});
  }
  return f;
}

int cmd_check_frame(const Flags& flags) {
  const Config cfg = load_config(flags);
  const double omega = cfg.get_double("omega");
  const double t0 = cfg.get_double("t0");
  if (omega <= 0.0) throw ConfigError("key 'omega': must be positive");
  if (t0 <= 0.0) throw ConfigError("key 't0': must be positive");
  FrameParams p;
  try {
    p = compute_params(omega, t0, cfg.get_double("endpoint_tol", 1e-12));
  } catch (const ConfigError& e) {
    // Geometry outside the supported range: the frame check is negative.
    std::cout << "is_frame: false\n" << e.what() << "\n";
    return 2;
  }
  if (cfg.has("length") && cfg.get_int("length") != p.length)
    throw ConfigError("key 'length': config declares L = " +
                      std::to_string(cfg.get_int("length")) +
                      " but the geometry gives L = " + std::to_string(p.length));
  const GeneratorSet gens = derivative_generators(p.length, p.omega);
  const double density =
      flags.grid_density > 0 ? flags.grid_density : cfg.get_double("grid_density", 0.0);
  const FrameReport rep = verify_frame(gens, p, density);

  std::cout << "regime: " << regime_name(p.regime) << "\n"
            << "channels: " << p.length << "\n"
            << "h: " << format_double(p.h) << "\n"
            << "is_frame: " << (rep.is_frame ? "true" : "false") << "\n"
            << "is_riesz_basis: " << (rep.is_riesz ? "true" : "false") << "\n"
            << "generator_energy_min: " << format_double(rep.delta) << "\n"
            << "generator_energy_max: " << format_double(rep.gamma) << "\n"
            << "minor_energy_min: " << format_double(rep.sigma) << "\n"
            << "determinant_min: " << format_double(rep.eta) << "\n"
            << "violations: " << rep.violations.size() << "\n";

  auto out = open_out(out_dir_of(flags, cfg), "frame_report.csv");
  write_csv_row(out, {"quantity", "value"});
  write_csv_row(out, {"regime", regime_name(p.regime)});
  write_csv_row(out, {"channels", std::to_string(p.length)});
  write_csv_row(out, {"h", format_double(p.h)});
  write_csv_row(out, {"is_frame", rep.is_frame ? "1" : "0"});
  write_csv_row(out, {"is_riesz_basis", rep.is_riesz ? "1" : "0"});
  write_csv_row(out, {"generator_energy_min", format_double(rep.delta)});
  write_csv_row(out, {"generator_energy_max", format_double(rep.gamma)});
  write_csv_row(out, {"minor_energy_min", format_double(rep.sigma)});
  write_csv_row(out, {"determinant_min", format_double(rep.eta)});
  write_csv_row(out, {"grid_density", format_double(rep.grid_density)});
  for (const FrameViolation& v : rep.violations)
    write_csv_row(out, {"violation_" + v.condition, format_double(v.x)});
  return rep.is_frame ? 0 : 2;
}

int cmd_duals(const Flags& flags) {
  const Config cfg = load_config(flags);
  const FrameParams p = params_from(cfg);
  const GeneratorSet gens = derivative_generators(p.length, p.omega);
  const DualSet duals = make_duals(gens, p, cfg);
  const std::string dir = out_dir_of(flags, cfg);

  const int freq_points = cfg.get_int("freq_points", 1024);
  if (freq_points < 2) throw ConfigError("key 'freq_points': must be >= 2");
  auto fout = open_out(dir, "duals_freq.csv");
  std::vector<std::string> header = {"frequency"};
  for (int l = 1; l <= p.length; ++l) {
    header.push_back("re_dual" + std::to_string(l));
    header.push_back("im_dual" + std::to_string(l));
  }
  write_csv_row(fout, header);
  for (int i = 0; i < freq_points; ++i) {
    const double xi = -p.omega + 2.0 * p.omega * i / (freq_points - 1);
    std::vector<std::string> row = {format_double(xi)};
    for (int l = 1; l <= p.length; ++l) {
      const cplx v = duals.hat(l, xi);
      row.push_back(format_double(v.real()));
      row.push_back(format_double(v.imag()));
    }
    write_csv_row(fout, row);
  }

  const double tlo = cfg.get_double("time_lo", -10.0);
  const double thi = cfg.get_double("time_hi", 10.0);
  const int tpts = cfg.get_int("time_points", 1001);
  if (!(thi > tlo) || tpts < 2)
    throw ConfigError("keys 'time_lo'/'time_hi'/'time_points': bad time grid");
  auto tout = open_out(dir, "duals_time.csv");
  std::vector<std::string> theader = {"t"};
  for (int l = 1; l <= p.length; ++l) theader.push_back("dual" + std::to_string(l));
  write_csv_row(tout, theader);
  for (int i = 0; i < tpts; ++i) {
    const double t = tlo + (thi - tlo) * i / (tpts - 1);
    std::vector<std::string> row = {format_double(t)};
    for (int l = 1; l <= p.length; ++l)
      row.push_back(format_double(duals.time_value(l, t)));
    write_csv_row(tout, row);
  }

  // Projection property of the mixed Gramian, logged as a self-check:
  // G = G* and G^2 = G at every frequency.
  const FrequencyPartition part = partition(p);
  const Interval* zones[3] = {&part.left, &part.middle, &part.right};
  double max_defect = 0.0;
  for (const Interval* z : zones) {
    if (z->empty()) continue;
    for (int i = 0; i < 32; ++i) {
      const double x = z->lo + z->length() * (i + 0.5) / 32.0;
      const Eigen::MatrixXcd G = mixed_gramian_at(gens, duals, p, x);
      max_defect = std::max(max_defect, (G - G.adjoint()).norm());
      max_defect = std::max(max_defect, (G * G - G).norm());
    }
  }
  std::cout << "dual_path: " << duals.path_name() << "\n"
            << "max_solve_condition: " << format_double(duals.max_condition) << "\n"
            << "projection_defect: " << format_double(max_defect) << "\n";
  return 0;
}

SampleSet truth_samples(const Config& cfg, const FrameParams& p, const Flags& flags,
                        int radius_fallback, Signal& f_out) {
  const long long seed =
      flags.seed >= 0 ? flags.seed : cfg.get_int("seed", -1);
  f_out = seed >= 0 ? seeded_signal(p.omega, seed)
                    : cfg.get_signal("signal", p.omega);
  const int R = window_radius_of(flags, cfg, radius_fallback);
  return take_samples(f_out, p, p.length, -R, R);
}

int cmd_sample(const Flags& flags) {
  const Config cfg = load_config(flags);
  const FrameParams p = params_from(cfg);
  Signal f;
  SampleSet s = truth_samples(cfg, p, flags, 60, f);
  const std::vector<int> missing = cfg.get_int_list("missing");
  if (!missing.empty()) mask_samples(s, missing, cfg.get_int("lambda", p.length));
  auto out = open_out(out_dir_of(flags, cfg), "samples.csv");
  write_samples(out, s);
  std::cout << "channels: " << s.channels << "\nwindow: [" << s.n_min << ", "
            << s.n_max << "]\nmasked: " << missing.size() << " x "
            << (missing.empty() ? 0 : cfg.get_int("lambda", p.length)) << "\n";
  return 0;
}

int cmd_reconstruct(const Flags& flags) {
  const Config cfg = load_config(flags);
  const FrameParams p = params_from(cfg);
  const GeneratorSet gens = derivative_generators(p.length, p.omega);
  const DualSet duals = make_duals(gens, p, cfg);
  Signal f;
  const SampleSet s = truth_samples(cfg, p, flags, 60, f);

  const double lo = cfg.get_double("eval_lo", -10.0);
  const double hi = cfg.get_double("eval_hi", 10.0);
  const int grid = cfg.get_int("eval_grid", 401);
  if (!(hi > lo) || grid < 2)
    throw ConfigError("keys 'eval_lo'/'eval_hi'/'eval_grid': bad evaluation grid");

  auto out = open_out(out_dir_of(flags, cfg), "reconstruction.csv");
  write_csv_row(out, {"x", "f_true", "f_recon", "abs_err"});
  double sup = 0.0, sq = 0.0;
  for (int i = 0; i < grid; ++i) {
    const double x = lo + (hi - lo) * i / (grid - 1);
    const double ft = eval_signal(f, x);
    const double fr = reconstruct(s, duals, x);
    const double err = std::abs(ft - fr);
    sup = std::max(sup, err);
    sq += err * err;
    write_csv_row(out, {format_double(x), format_double(ft), format_double(fr),
                        format_double(err)});
  }
  std::cout << "dual_path: " << duals.path_name() << "\n"
            << "sup_err: " << format_double(sup) << "\n"
            << "rms_err: " << format_double(std::sqrt(sq / grid)) << "\n";
  return 0;
}

int run_recovery(const Flags& flags, const Config& cfg, int radius_fallback) {
  const FrameParams p = params_from(cfg);
  const GeneratorSet gens = derivative_generators(p.length, p.omega);
  const DualSet duals = make_duals(gens, p, cfg);
  const std::string dir = out_dir_of(flags, cfg);

  Signal f;
  const SampleSet truth = truth_samples(cfg, p, flags, radius_fallback, f);
  MissingIndexSet miss;
  miss.indices = cfg.get_int_list("missing");
  miss.lambda = cfg.get_int("lambda", p.length);
  if (miss.indices.empty()) miss.lambda = std::min(miss.lambda, p.length);

  SampleSet repaired = truth;
  mask_samples(repaired, miss.indices, miss.lambda);
  SampleSet zeroed = repaired;
  for (int n : miss.indices)
    for (int j = 1; j <= miss.lambda; ++j) zeroed.set_missing(j, n, false);

  RecoverySystem sys;
  RecoveryResult res;
  try {
    sys = build_recovery_system(gens, duals, p, miss, repaired);
    const double cond_threshold = cfg.get_double("cond_threshold", 1e10);
    res = recover(sys, repaired, cond_threshold);
  } catch (const NotRecoverableError& e) {
    std::cout << "not recoverable: " << e.what() << "\n";
    try {
      const RecoverabilityCertificate cert = recoverable(gens, p, miss);
      std::cout << "certificate: " << cert.note << "\n";
      if (cert.spectral_bound >= 0.0)
        std::cout << "spectral_bound: " << format_double(cert.spectral_bound) << "\n";
    } catch (const UndecidableError& u) {
      std::cout << "certificate: " << u.what() << "\n";
    }
    return static_cast<int>(ExitCode::NotRecoverable);
  }
  if (!res.warning.empty()) std::cout << "warning: " << res.warning << "\n";

  // Optional spot check of the assembled operator against the normative
  // quadrature definition of the correlation kernel.
  if (cfg.get_int("verify_correlation", 0) != 0 && sys.N > 0) {
    QuadOptions opt;
    opt.abs_tol = cfg.get_double("quad_tol", 1e-10);
    double max_dev = 0.0;
    const int N = sys.N;
    for (int k = 1; k <= miss.lambda && k <= 2; ++k)
      for (int j = 1; j <= miss.lambda && j <= 2; ++j) {
        const double tau = (sys.miss.indices[N - 1] - sys.miss.indices[0]) * p.t0;
        const cplx slow = correlation(duals, gens, j, k, tau, opt);
        const cplx fast = sys.S((k - 1) * N + N - 1, (j - 1) * N);
        max_dev = std::max(max_dev, std::abs(slow - fast));
      }
    std::cout << "correlation_check: " << format_double(max_dev) << "\n";
  }

  double max_abs = 0.0, max_rel = 0.0;
  {
    auto out = open_out(dir, "recovery_report.csv");
    write_csv_row(out, {"channel", "index", "true", "recovered", "abs_err", "rel_err"});
    for (int j = 1; j <= miss.lambda; ++j)
      for (size_t m = 0; m < sys.miss.indices.size(); ++m) {
        const int n = sys.miss.indices[m];
        const double tv = truth.value(j, n);
        const double rv = repaired.value(j, n);
        const double abs_err = std::abs(tv - rv);
        const double rel_err = abs_err / std::abs(tv);
        max_abs = std::max(max_abs, abs_err);
        max_rel = std::max(max_rel, rel_err);
        write_csv_row(out, {std::to_string(j), std::to_string(n), format_double(tv),
                            format_double(rv), format_double(abs_err),
                            format_double(rel_err)});
      }
  }
  {
    auto out = open_out(dir, "recovery_metrics.csv");
    write_csv_row(out, {"metric", "value"});
    write_csv_row(out, {"cond", format_double(sys.cond)});
    write_csv_row(out, {"hermitian_defect", format_double(sys.hermitian_defect)});
    write_csv_row(out, {"s_norm", format_double(sys.s_norm)});
    write_csv_row(out, {"smin", format_double(sys.smin)});
    write_csv_row(out, {"residual", format_double(res.residual)});
    write_csv_row(out, {"max_imag", format_double(res.max_imag)});
    write_csv_row(out, {"max_abs_err", format_double(max_abs)});
    write_csv_row(out, {"max_rel_err", format_double(max_rel)});
  }

  const double lo = cfg.get_double("eval_lo", -10.0);
  const double hi = cfg.get_double("eval_hi", 10.0);
  const int grid = cfg.get_int("eval_grid", 401);
  if (!(hi > lo) || grid < 2)
    throw ConfigError("keys 'eval_lo'/'eval_hi'/'eval_grid': bad evaluation grid");
  {
    auto out = open_out(dir, "reconstruction.csv");
    write_csv_row(out, {"x", "f_true", "f_recon_zeroed", "f_recon_recovered",
                        "abs_err_zeroed", "abs_err_recovered"});
    for (int i = 0; i < grid; ++i) {
      const double x = lo + (hi - lo) * i / (grid - 1);
      const double ft = eval_signal(f, x);
      const double fz = reconstruct(zeroed, duals, x);
      const double fr = reconstruct(repaired, duals, x);
      write_csv_row(out, {format_double(x), format_double(ft), format_double(fz),
                          format_double(fr), format_double(std::abs(ft - fz)),
                          format_double(std::abs(ft - fr))});
    }
  }
  {
    auto out = open_out(dir, "samples_recovered.csv");
    write_samples(out, repaired);
  }

  std::cout << "missing: " << sys.N << " indices x " << miss.lambda << " channels\n"
            << "cond: " << format_double(sys.cond) << "\n"
            << "residual: " << format_double(res.residual) << "\n"
            << "max_abs_err: " << format_double(max_abs) << "\n"
            << "max_rel_err: " << format_double(max_rel) << "\n";
  return 0;
}

int cmd_recover(const Flags& flags) {
  const Config cfg = load_config(flags);
  return run_recovery(flags, cfg, 60);
}

int cmd_experiment(const Flags& flags) {
  // Two-channel recovery run with baked defaults; a config file and command
  // line flags can override any of them.
  Config cfg;
  if (!flags.config_path.empty()) cfg = Config::load(flags.config_path);
  if (!cfg.has("omega")) cfg.set("omega", "3.141592653589793");
  if (!cfg.has("t0")) cfg.set("t0", "1.25");
  if (!cfg.has("signal")) cfg.set("signal", "1@2.1, -0.7@-1.7");
  if (!cfg.has("missing")) cfg.set("missing", "-16,-13,-10,-7,-4,-1,2,5,8,11");
  if (!cfg.has("lambda")) cfg.set("lambda", "2");
  if (!cfg.has("window_radius")) cfg.set("window_radius", "35000");
  // The reconstruction sum visits the whole window per grid point, so the
  // default plot grid is kept modest.
  if (!cfg.has("eval_grid")) cfg.set("eval_grid", "121");
  return run_recovery(flags, cfg, 35000);
}

int dispatch(int (*fn)(const Flags&), const Flags& flags) {
  try {
    return fn(flags);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::Usage);
  } catch (const SampleConsistencyError& e) {
    std::cerr << "sample error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::Usage);
  } catch (const UnsupportedError& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return static_cast<int>(ExitCode::Usage);
  } catch (const NotRecoverableError& e) {
    std::cerr << "not recoverable: " << e.what() << "\n";
    return static_cast<int>(ExitCode::NotRecoverable);
  } catch (const IllConditionedError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return static_cast<int>(ExitCode::NumericFailure);
  } catch (const AccuracyError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return static_cast<int>(ExitCode::NumericFailure);
  } catch (const UndecidableError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return static_cast<int>(ExitCode::NumericFailure);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::Usage);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multichannel derivative sampling: frames, duals, reconstruction "
               "and missing-sample recovery"};
  app.require_subcommand(1);

  Flags flags;
  app.add_option("--config", flags.config_path, "Key=value config file")
      ->check(CLI::ExistingFile);
  app.add_option("--out", flags.out_dir, "Output directory for CSV artifacts");
  app.add_option("--seed", flags.seed, "Random test-signal seed (overrides 'signal')");
  app.add_option("--grid-density", flags.grid_density,
                 "Frame-check grid points per unit frequency");
  app.add_option("--window-radius", flags.window_radius,
                 "Lattice window half-width for sampling");
  app.fallthrough();

  int (*fn)(const Flags&) = nullptr;
  app.add_subcommand("check-frame", "Verify the frame conditions of the geometry")
      ->callback([&] { fn = cmd_check_frame; });
  app.add_subcommand("duals", "Emit dual generators in frequency and time")
      ->callback([&] { fn = cmd_duals; });
  app.add_subcommand("sample", "Sample a signal's derivative channels on the lattice")
      ->callback([&] { fn = cmd_sample; });
  app.add_subcommand("reconstruct", "Reconstruct a signal from its samples")
      ->callback([&] { fn = cmd_reconstruct; });
  app.add_subcommand("recover", "Recover masked samples, then reconstruct")
      ->callback([&] { fn = cmd_recover; });
  app.add_subcommand("experiment",
                     "Two-channel recovery demonstration with baked defaults")
      ->callback([&] { fn = cmd_experiment; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return static_cast<int>(bandlim::ExitCode::Usage);
  }
  return dispatch(fn, flags);
}

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include <wavebound/amplitude_bounds.hpp>
#include <wavebound/certify.hpp>
#include <wavebound/config.hpp>
#include <wavebound/errors.hpp>
#include <wavebound/scaling.hpp>
#include <wavebound/solver.hpp>
#include <wavebound/stream_flows.hpp>
#include <wavebound/wave_io.hpp>

namespace {

using namespace wavebound;

std::ostream& out17(std::ostream& os) { return os << std::setprecision(17); }

double auto_wavelength(const FluidParams& fp, double window_fraction) {
  StreamWindow w = stream_window(fp);
  double s_mid = w.s0 + window_fraction * (w.sc - w.s0);
  return wavelength_at(fp, s_mid);
}

int cmd_bounds(const RunConfig& cfg) {
  FluidParams fp = cfg.fluid();
  fp.validate();
  StreamWindow w = stream_window(fp);
  NondimParams nd = nondimensionalize(fp);
  AmplitudeBound ab = refined_bound(fp);

  out17(std::cout);
  std::cout << "g = " << fp.g << "  omega = " << fp.omega << "  m = " << fp.m << "\n"
            << "epsilon = " << nd.epsilon << "  lambda = " << nd.lambda << "\n"
            << "s0 = " << w.s0 << "  sc = " << w.sc << "\n"
            << "d0 = " << w.d0 << "  dc = " << w.dc << "\n"
            << "Q0 = " << w.Q0 << "  Qc = " << w.Qc << "\n"
            << "theorem_bound = " << ab.theorem_bound << "\n"
            << "refined_bound = " << ab.refined_bound << "  (" << to_string(ab.branch)
            << " branch, d_tilde_1 = " << ab.d_tilde_1 << ")\n";

  if (!cfg.out.empty()) {
    std::ostringstream js;
    js << std::setprecision(17);
    js << "{\n"
       << "  \"format\": \"wavebound-bounds-1\",\n"
       << "  \"params\": {\"g\": " << fp.g << ", \"omega\": " << fp.omega << ", \"m\": " << fp.m
       << "},\n"
       << "  \"epsilon\": " << nd.epsilon << ",\n"
       << "  \"lambda\": " << nd.lambda << ",\n"
       << "  \"s0\": " << w.s0 << ",\n"
       << "  \"sc\": " << w.sc << ",\n"
       << "  \"d0\": " << w.d0 << ",\n"
       << "  \"dc\": " << w.dc << ",\n"
       << "  \"Q0\": " << w.Q0 << ",\n"
       << "  \"Qc\": " << w.Qc << ",\n"
       << "  \"theorem_bound\": " << ab.theorem_bound << ",\n"
       << "  \"refined_bound\": " << ab.refined_bound << ",\n"
       << "  \"d_tilde_1\": " << ab.d_tilde_1 << ",\n"
       << "  \"branch\": \"" << to_string(ab.branch) << "\"\n"
       << "}\n";
    std::ofstream f(cfg.out);
    if (!f) throw std::runtime_error("cannot open for writing: " + cfg.out);
    f << js.str();
  }
  return 0;
}

int cmd_solve(const RunConfig& cfg) {
  FluidParams fp = cfg.fluid();
  fp.validate();
  if (!(cfg.amplitude >= 0.0)) throw std::invalid_argument("solve: amplitude must be >= 0");

  double L = cfg.L > 0.0 ? cfg.L : auto_wavelength(fp, cfg.window_fraction);
  WaveField wave = solve_periodic(fp, L, cfg.amplitude, cfg.solver());

  std::string path = cfg.out.empty() ? std::string("wave.json") : cfg.out;
  write_wave_json(wave, path);

  std::vector<double> eta = wave.eta();
  double lo = eta[0], hi = eta[0];
  for (double y : eta) {
    lo = std::min(lo, y);
    hi = std::max(hi, y);
  }
  out17(std::cout);
  std::cout << "L = " << wave.height.L << "  Q = " << wave.height.Q << "\n"
            << "crest-to-trough = " << hi - lo << "\n"
            << "residuals: interior = " << wave.residuals.interior
            << "  surface = " << wave.residuals.surface << "\n"
            << "newton iterations = " << wave.newton_iterations << "\n"
            << "wrote " << path << "\n";
  return 0;
}

int cmd_certify(const RunConfig& cfg, const std::string& wavefile) {
  WaveField wave = read_wave_json(wavefile);
  BoundCertificate cert = certify_wave(wave, wave.height.params);

  out17(std::cout);
  std::cout << "g = " << cert.params.g << "  omega = " << cert.params.omega
            << "  m = " << cert.params.m << "  L = " << cert.L << "\n"
            << "amplitude = " << cert.amplitude << (cert.is_stream ? "  (stream)" : "") << "\n"
            << "theorem_bound = " << cert.theorem_bound
            << "  refined_bound = " << cert.refined_bound << "\n"
            << "Q = " << cert.Q << "  window = (" << cert.Qc << ", " << cert.Q0 << ")\n";
  if (cert.d_minus) std::cout << "d_minus = " << *cert.d_minus;
  if (cert.d_plus) std::cout << "  d_plus = " << *cert.d_plus;
  if (cert.d_minus || cert.d_plus) std::cout << "\n";
  std::cout << "inf_eta = " << cert.inf_eta << "  sup_eta = " << cert.sup_eta
            << "  d0 = " << cert.d0 << "\n";
  for (const InequalityCheck& c : cert.checks) {
    std::cout << "  [" << check_letter(c.status) << "] " << c.name;
    if (c.margin) std::cout << "  margin = " << *c.margin;
    std::cout << "\n";
  }
  std::cout << "flags = " << cert.flags() << "\n"
            << (cert.all_pass ? "all checks passed" : "CHECK FAILED") << "\n";

  if (!cfg.out.empty()) write_certificate_json(cert, cfg.out);
  return cert.all_pass ? 0 : 1;
}

int cmd_sweep(const RunConfig& cfg) {
  if (cfg.omegas.size() < 2) {
    std::cerr << "sweep: need at least two --omegas values\n";
    return 2;
  }
  FluidParams base = cfg.fluid();
  base.omega = cfg.omegas.front();
  base.validate();

  SweepTable table = sweep_vorticity(cfg.omegas, base, cfg.sweep());

  if (!cfg.out.empty())
    write_sweep(table, cfg.out, cfg.format);
  else
    std::cout << sweep_to_csv(table);

  for (const SweepRow& r : table.rows)
    if (!r.ok) std::cerr << "omega = " << r.omega << " failed: " << r.error << "\n";

  if (table.succeeded() >= 4) {
    DecayReport rep = compare_decay_rates(table);
    out17(std::cout);
    std::cout << "decay of log(quantity) against log(omega) over " << rep.n_rows << " rows:\n"
              << "  theorem bound slope = " << rep.theorem_slope << "\n"
              << "  amplitude slope     = " << rep.amplitude_slope << " +- " << rep.amplitude_stderr
              << "\n"
              << "  refined bound slope = " << rep.refined_slope << "\n";
  }
  if (!cfg.out.empty()) std::cout << "wrote " << cfg.out << "\n";
  return table.succeeded() >= 1 ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"amplitude bounds and steady periodic waves for constant-vorticity flows"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string config_path;
  std::string wavefile;

  auto add_common = [&](CLI::App* c) {
    c->add_option("--config", config_path, "key=value config file; entries override flags");
    c->add_option("--out", cfg.out, "output file path");
  };
  auto add_params = [&](CLI::App* c) {
    c->add_option("--g", cfg.g, "gravitational acceleration")->required();
    c->add_option("--omega", cfg.omega, "constant vorticity")->required();
    c->add_option("--m", cfg.m, "relative mass flux")->required();
  };
  auto add_solver = [&](CLI::App* c) {
    c->add_option("--nx", cfg.n_x, "horizontal grid points");
    c->add_option("--np", cfg.n_p, "vertical grid intervals");
    c->add_option("--max-newton", cfg.max_newton_iter, "Newton iteration cap");
    c->add_option("--interior-threshold", cfg.interior_threshold, "interior residual gate");
    c->add_option("--surface-threshold", cfg.surface_threshold, "surface residual gate");
    c->add_option("--amplitude-step", cfg.amplitude_step, "continuation step (0 = target/10)");
    c->add_option("--max-steps", cfg.max_continuation_steps, "continuation step cap");
  };

  CLI::App* bounds = app.add_subcommand("bounds", "print the amplitude bounds and laminar window");
  add_params(bounds);
  add_common(bounds);

  CLI::App* solve = app.add_subcommand("solve", "compute one periodic wave and write it as JSON");
  add_params(solve);
  solve->add_option("--L", cfg.L, "wavelength (0 = mid-window automatic)");
  solve
      ->add_option("--amplitude", cfg.amplitude,
                   "target half-amplitude (h(0) - h(L/2))/2 at the surface")
      ->required();
  add_solver(solve);
  solve->add_option("--window-fraction", cfg.window_fraction,
                    "where in (s0, sc) the automatic wavelength sits");
  add_common(solve);

  CLI::App* certify = app.add_subcommand("certify", "check a stored wave against the bounds");
  certify->add_option("wavefile", wavefile, "wave JSON produced by solve")->required();
  add_common(certify);

  CLI::App* sweep = app.add_subcommand("sweep", "solve + certify across a vorticity list");
  sweep->add_option("--g", cfg.g, "gravitational acceleration")->required();
  sweep->add_option("--m", cfg.m, "relative mass flux")->required();
  sweep->add_option("--omegas", cfg.omegas, "comma-separated vorticity values")
      ->required()
      ->delimiter(',');
  sweep->add_option("--target-fraction", cfg.target_d0_fraction,
                    "crest-to-trough target as a fraction of d0");
  sweep->add_option("--window-fraction", cfg.window_fraction,
                    "where in (s0, sc) the base laminar flow sits");
  sweep->add_option("--format", cfg.format, "output format: csv or json");
  add_solver(sweep);
  add_common(sweep);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (!config_path.empty()) apply_config_file(config_path, cfg);
    if (bounds->parsed()) return cmd_bounds(cfg);
    if (solve->parsed()) return cmd_solve(cfg);
    if (certify->parsed()) return cmd_certify(cfg, wavefile);
    if (sweep->parsed()) return cmd_sweep(cfg);
    std::cerr << "no subcommand\n";
    return 2;
  } catch (const ConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const MonotonicityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const BifurcationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

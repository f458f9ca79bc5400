#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "dirac/commands.hpp"

namespace {

struct PairArgs {
  std::string c;
  std::string d;
};

void add_pair_options(CLI::App* sub, PairArgs& args) {
  sub->add_option("--C", args.c, "C as [[[re,im],[re,im]],[[re,im],[re,im]]]")->required();
  sub->add_option("--D", args.d, "D in the same encoding")->required();
}

dirac::BoundaryPair build_pair(const PairArgs& args, double mass) {
  return dirac::BoundaryPair::make(dirac::parse_matrix(args.c), dirac::parse_matrix(args.d), mass);
}

int emit(const dirac::CommandResult& r, const std::string& path) {
  if (path.empty()) {
    std::cout << r.text;
  } else {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write " << path << "\n";
      return dirac::exit_code::kInvalid;
    }
    out << r.text;
  }
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dirac operators with point interactions at the origin"};
  app.require_subcommand(1);
  app.fallthrough();

  std::optional<double> mass;
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_path;
  std::optional<std::string> format;
  std::optional<int> threads;
  app.add_option("--mass", mass, "mass m > 0");
  app.add_option("--config", config_path, "JSON run configuration");
  app.add_option("--seed", seed, "sweep seed");
  app.add_option("--out", out_path, "output file (default stdout)");
  app.add_option("--format", format, "json or csv");
  app.add_option("--threads", threads, "sweep worker threads (0 = all cores)");

  PairArgs adm_args, eig_args, sm_args, lev_args, wave_args, green_args;

  auto* adm = app.add_subcommand("admissible", "check admissibility and classify a pair");
  adm->add_option("--C", adm_args.c)->required();
  adm->add_option("--D", adm_args.d)->required();

  auto* eigs = app.add_subcommand("eigs", "bound states");
  add_pair_options(eigs, eig_args);
  bool verify = false;
  eigs->add_flag("--verify", verify, "cross-check against the singular-value scan");

  auto* sm = app.add_subcommand("smatrix", "T0 and S on both continuum branches");
  add_pair_options(sm, sm_args);
  int points = 33;
  sm->add_option("--points", points, "samples per branch in s, endpoints included");

  auto* lev = app.add_subcommand("levinson", "winding of det Gamma against the eigenvalue count");
  add_pair_options(lev, lev_args);

  auto* sweep = app.add_subcommand("sweep", "Levinson check over Haar-random pairs");
  std::optional<int> count;
  sweep->add_option("--count", count, "number of pairs");

  auto* wave = app.add_subcommand("waveop", "isometry defect of the wave operator on a Gaussian probe");
  add_pair_options(wave, wave_args);
  std::optional<double> grid_L;
  std::optional<int> grid_N;
  bool trace = false;
  wave->add_option("--L", grid_L, "box half width");
  wave->add_option("--N", grid_N, "grid points (power of two)");
  wave->add_flag("--trace", trace, "add the exploratory trace(1 - W W*) diagnostic");

  auto* green = app.add_subcommand("green", "perturbed and free Green kernels");
  add_pair_options(green, green_args);
  double gx = 0.0, gy = 0.0;
  std::string gz;
  green->add_option("--x", gx)->required();
  green->add_option("--y", gy)->required();
  green->add_option("--z", gz, "spectral parameter as [re, im]")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return dirac::exit_code::kParse;
  }

  std::string path;
  try {
    dirac::RunConfig cfg;
    if (!config_path.empty()) cfg = dirac::load_config(config_path);
    if (mass) cfg.mass = *mass;
    if (seed) cfg.sweep.seed = *seed;
    if (count) cfg.sweep.count = *count;
    if (out_path) cfg.output.path = *out_path;
    if (format) cfg.output.format = dirac::parse_format(*format);
    if (threads) cfg.threads = *threads;
    if (grid_L) cfg.grid.L = *grid_L;
    if (grid_N) cfg.grid.N = *grid_N;
    cfg.validate();
    path = cfg.output.path;

    dirac::CommandResult r;
    if (*adm) {
      r = dirac::cmd_admissible(dirac::parse_matrix(adm_args.c), dirac::parse_matrix(adm_args.d), cfg);
    } else if (*eigs) {
      r = dirac::cmd_eigs(build_pair(eig_args, cfg.mass), verify, cfg);
    } else if (*sm) {
      r = dirac::cmd_smatrix(build_pair(sm_args, cfg.mass), points, cfg);
    } else if (*lev) {
      r = dirac::cmd_levinson(build_pair(lev_args, cfg.mass), cfg);
    } else if (*sweep) {
      r = dirac::cmd_sweep(cfg);
    } else if (*wave) {
      r = dirac::cmd_waveop(build_pair(wave_args, cfg.mass), cfg, trace);
    } else if (*green) {
      const dirac::Complex z = dirac::complex_from_json(dirac::parse_json(gz), "--z");
      r = dirac::cmd_green(build_pair(green_args, cfg.mass), gx, gy, z, cfg);
    }
    return emit(r, path);
  } catch (const dirac::Error& e) {
    const auto r = dirac::error_result(e);
    std::cerr << r.text;
    return r.exit_code;
  }
}

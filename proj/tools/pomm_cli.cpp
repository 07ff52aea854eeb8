// pomm command-line driver: gen / solve / bench / poles
#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "pomm/dense_oracle.hpp"
#include "pomm/grid.hpp"
#include "pomm/hamiltonian.hpp"
#include "pomm/harness.hpp"
#include "pomm/poles.hpp"
#include "pomm/potential.hpp"

namespace {

struct CommonFlags {
  std::string config_path;
  std::optional<int> test;
  std::optional<int> ell;
  std::optional<int> N;
  std::optional<std::string> method;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config_path, "config file (key = value lines)");
  cmd->add_option("--test", f.test, "benchmark test id (1-3)");
  cmd->add_option("--ell", f.ell, "cells per dimension");
  cmd->add_option("--N", f.N, "occupied states (default: N = ell)");
  cmd->add_option("--method", f.method, "preconditioner (none|lap|tpa|gtpa|pp|spp)");
  cmd->add_option("--seed", f.seed, "base RNG seed");
  cmd->add_option("--out", f.out, "output path");
}

pomm::ExperimentConfig load_config(const CommonFlags& f) {
  pomm::ExperimentConfig cfg;
  if (!f.config_path.empty()) cfg = pomm::parse_config_file(f.config_path);
  if (f.test) cfg.test_id = *f.test;
  if (f.ell) cfg.ells = {*f.ell};
  if (f.N) {
    cfg.n_rule = pomm::NRule::explicit_list;
    cfg.Ns.assign(cfg.ells.size(), *f.N);
  }
  if (f.method) cfg.methods = {pomm::parse_method(*f.method)};
  if (f.seed) cfg.base_seed = *f.seed;
  if (f.out) cfg.output_path = *f.out;
  return cfg;
}

int pick_N(const pomm::ExperimentConfig& cfg, std::size_t ell_index) {
  return cfg.n_rule == pomm::NRule::equals_ell ? cfg.ells[ell_index]
                                               : cfg.Ns[ell_index];
}

int cmd_gen(const CommonFlags& f) {
  pomm::ExperimentConfig cfg = load_config(f);
  cfg.validate();
  const int ell = cfg.ells.front();
  pomm::SpectralGrid grid = pomm::build_grid(ell);
  pomm::PotentialSpec spec =
      cfg.test_id == 0 ? cfg.potential : pomm::test_potential(cfg.test_id, cfg.base_seed);
  pomm::RealField field = pomm::sample_potential(grid, spec);

  std::ostream* out = &std::cout;
  std::ofstream file;
  if (f.out) {
    file.open(*f.out);
    if (!file) throw std::runtime_error("cannot open " + *f.out);
    out = &file;
  }
  *out << "index,x,y,value\n";
  out->precision(12);
  for (int j1 = 0; j1 < grid.side; ++j1)
    for (int j2 = 0; j2 < grid.side; ++j2) {
      int idx = grid.index(j1, j2);
      *out << idx << ',' << static_cast<double>(j1) / grid.side << ','
           << static_cast<double>(j2) / grid.side << ',' << field.values[idx] << '\n';
    }
  return 0;
}

int run_and_report(pomm::ExperimentConfig cfg, bool to_stdout) {
  auto rows = pomm::run_experiment(cfg);
  if (to_stdout) {
    std::cout << "method,l,n,cond,iter,Tst,Tomm,Ttot,d,status\n";
    for (const auto& r : rows)
      std::printf("%s,%d,%d,%.6e,%d,%.6e,%.6e,%.6e,%.6e,%s\n", r.method.c_str(), r.l,
                  r.n, r.cond, r.iter, r.t_setup, r.t_omm, r.t_total, r.d,
                  r.status.c_str());
  } else {
    pomm::emit_report(rows, cfg.output_path);
  }
  for (const auto& r : rows)
    if (r.status != "ok" && r.status != "inaccurate" && r.status != "failed")
      return 1;  // a row errored out, not merely converged poorly
  return 0;
}

int cmd_solve(const CommonFlags& f) {
  pomm::ExperimentConfig cfg = load_config(f);
  cfg.repeats = 1;
  cfg.seeds.clear();
  return run_and_report(std::move(cfg), !f.out);
}

int cmd_bench(const CommonFlags& f) {
  return run_and_report(load_config(f), false);
}

int cmd_poles(const CommonFlags& f) {
  pomm::ExperimentConfig cfg = load_config(f);
  cfg.validate();
  const int ell = cfg.ells.front();
  const int N = pick_N(cfg, 0);
  pomm::SpectralGrid grid = pomm::build_grid(ell);
  pomm::PotentialSpec spec =
      cfg.test_id == 0 ? cfg.potential : pomm::test_potential(cfg.test_id, cfg.base_seed);
  pomm::HamiltonianOp h = pomm::make_hamiltonian(grid, pomm::sample_potential(grid, spec));
  pomm::SpectralData s = pomm::dense_eig(pomm::densify(h), N);
  double sigma = pomm::negative_definite_shift(s.lambdan());

  pomm::SpectralData shifted = s;
  shifted.eigenvalues.array() -= sigma;
  shifted.mu -= sigma;
  pomm::SpectralWindow w = pomm::make_window(shifted);
  pomm::PoleSet poles = pomm::build_poles(w, cfg.pole_count, cfg.contour, cfg.aspect);
  double err = pomm::indicator_error(poles, w);
  std::cout << "p=" << cfg.pole_count << " indicator_error=" << err << '\n';
  if (f.out) pomm::write_poles_csv(poles, *f.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"OMM preconditioning workbench"};
  app.require_subcommand(1);

  CommonFlags fg, fs, fb, fp;
  CLI::App* gen = app.add_subcommand("gen", "write the sampled potential as CSV");
  add_common(gen, fg);
  CLI::App* solve = app.add_subcommand("solve", "run one experiment cell");
  add_common(solve, fs);
  CLI::App* bench = app.add_subcommand("bench", "run the full benchmark table");
  add_common(bench, fb);
  CLI::App* poles = app.add_subcommand("poles", "export pole set and indicator error");
  add_common(poles, fp);

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_gen(fg);
    if (solve->parsed()) return cmd_solve(fs);
    if (bench->parsed()) return cmd_bench(fb);
    if (poles->parsed()) return cmd_poles(fp);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

// harness.hpp - benchmark experiments, CSV reports, config parsing
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pomm/dense_oracle.hpp"
#include "pomm/gmres.hpp"
#include "pomm/omm.hpp"
#include "pomm/poles.hpp"
#include "pomm/potential.hpp"
#include "pomm/types.hpp"

namespace pomm {

enum class Method { none, lap, tpa, gtpa, pp, spp };

std::string method_name(Method m);
Method parse_method(const std::string& name);

enum class NRule { equals_ell, explicit_list };

struct ExperimentConfig {
  int test_id = 1;                   // 1..3 presets, 0 = custom potential
  std::vector<int> ells = {2};
  NRule n_rule = NRule::equals_ell;
  std::vector<int> Ns;               // parallel to ells when explicit_list
  std::vector<Method> methods = {Method::tpa, Method::pp};
  int gtpa_order = 3;
  int repeats = 5;
  std::uint64_t base_seed = 1;
  std::vector<std::uint64_t> seeds;  // optional; size must equal repeats
  int pole_count = 30;
  ContourKind contour = ContourKind::ellipse;
  double aspect = 0.5;
  GmresConfig gmres;
  OmmConfig omm;
  PotentialSpec potential;           // used when test_id == 0
  std::string output_path = "report.csv";

  void validate() const;
};

struct TableRow {
  std::string method;
  int l = 0, n = 0;
  double cond = 0.0;
  int iter = 0;
  double t_setup = 0.0, t_omm = 0.0, t_total = 0.0;
  double d = 0.0;
  std::string status;  // "ok", "inaccurate", "failed", or an error note
};

/// Potential spec for one of the three benchmark tests at a given ell.
PotentialSpec test_potential(int test_id, std::uint64_t seed);

/// X0 + Gaussian noise, entrywise N(0, 0.1 M^2) with M = max |X0_ij|.
WaveBlock make_initial_guess(const SpectralData& s, std::uint64_t seed);

std::vector<TableRow> run_experiment(const ExperimentConfig& cfg);

void emit_report(const std::vector<TableRow>& rows, const std::string& path);
std::vector<TableRow> parse_report(const std::string& path);

/// flat "key = value" config text; '#' starts a comment
ExperimentConfig parse_config_file(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text);

}  // namespace pomm

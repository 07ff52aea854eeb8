#include "pomm/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "pomm/classic_precond.hpp"
#include "pomm/grid.hpp"
#include "pomm/hamiltonian.hpp"
#include "pomm/projection_precond.hpp"

namespace pomm {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d) {
  return splitmix64(splitmix64(splitmix64(splitmix64(a) ^ b) ^ c) ^ d);
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  std::size_t k = v.size() / 2;
  return v.size() % 2 ? v[k] : 0.5 * (v[k - 1] + v[k]);
}

int median_int(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  return v[(v.size() - 1) / 2];  // lower median
}

std::string sanitize(std::string s) {
  for (char& c : s)
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  return s;
}

}  // namespace

std::string method_name(Method m) {
  switch (m) {
    case Method::none: return "none";
    case Method::lap: return "lap";
    case Method::tpa: return "tpa";
    case Method::gtpa: return "gtpa";
    case Method::pp: return "pp";
    case Method::spp: return "spp";
  }
  return "?";
}

Method parse_method(const std::string& name) {
  if (name == "none") return Method::none;
  if (name == "lap") return Method::lap;
  if (name == "tpa") return Method::tpa;
  if (name == "gtpa") return Method::gtpa;
  if (name == "pp") return Method::pp;
  if (name == "spp") return Method::spp;
  throw std::invalid_argument("unknown method: " + name);
}

void ExperimentConfig::validate() const {
  if (test_id < 0 || test_id > 3) throw std::invalid_argument("config: test must be 0..3");
  if (ells.empty()) throw std::invalid_argument("config: ells must be nonempty");
  for (int l : ells)
    if (l < 1) throw std::invalid_argument("config: ells must be positive");
  if (n_rule == NRule::explicit_list && Ns.size() != ells.size())
    throw std::invalid_argument("config: Ns must match ells");
  if (methods.empty()) throw std::invalid_argument("config: methods must be nonempty");
  if (repeats < 1) throw std::invalid_argument("config: repeats must be >= 1");
  if (!seeds.empty() && static_cast<int>(seeds.size()) != repeats)
    throw std::invalid_argument("config: |seeds| must equal repeats");
  if (pole_count < 2) throw std::invalid_argument("config: poles must be >= 2");
  if (test_id == 0) potential.validate(*std::max_element(ells.begin(), ells.end()));
}

PotentialSpec test_potential(int test_id, std::uint64_t seed) {
  PotentialSpec spec;
  spec.rng_seed = seed;
  switch (test_id) {
    case 1:
      spec.global_scale = 0.01;
      break;
    case 2:
      spec.global_scale = 1.0;
      spec.vacancy_mode = VacancyMode::fixed_count;
      spec.fixed_count = 1;
      break;
    case 3:
      spec.global_scale = 100.0;
      spec.vacancy_mode = VacancyMode::fraction;
      spec.fraction = 0.25;
      break;
    default:
      throw std::invalid_argument("test_potential: test must be 1..3");
  }
  return spec;
}

WaveBlock make_initial_guess(const SpectralData& s, std::uint64_t seed) {
  const double m = s.X0.cwiseAbs().maxCoeff();
  const double sd = std::sqrt(0.1) * m;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, sd);
  WaveBlock x = s.X0;
  for (int j = 0; j < x.cols(); ++j)
    for (int i = 0; i < x.rows(); ++i) x(i, j) += gauss(rng);
  return x;
}

namespace {

struct CellResult {
  int iter;
  double d, t_setup, t_omm;
};

CellResult run_cell(const ExperimentConfig& cfg, const HamiltonianOp& hs,
                    const SpectralData& s, const SpectralWindow& window,
                    Method method, std::uint64_t seed) {
  using clock = std::chrono::steady_clock;
  CellResult res{};

  auto t0 = clock::now();
  std::unique_ptr<Preconditioner> precond;
  double setup_divisor = 1.0;
  switch (method) {
    case Method::none:
      precond = std::make_unique<IdentityPrecond>();
      break;
    case Method::lap:
    case Method::tpa:
    case Method::gtpa: {
      double tau = compute_tau(hs.grid, *hs.fft, s.X0);
      FilterKind kind = method == Method::lap   ? FilterKind::shifted_laplacian
                        : method == Method::tpa ? FilterKind::tpa
                                                : FilterKind::gtpa;
      precond = std::make_unique<KineticFilter>(hs.grid, hs.fft, kind, tau, cfg.gtpa_order);
      break;
    }
    case Method::pp:
    case Method::spp: {
      auto poles = std::make_shared<PoleSet>(
          build_poles(window, cfg.pole_count, cfg.contour, cfg.aspect));
      auto inner = method == Method::pp ? InnerPrecond::const_resolvent
                                        : InnerPrecond::sparsifying;
      auto solver = std::make_shared<IterativeResolventSolver>(hs, *poles, inner, cfg.gmres);
      precond = std::make_unique<ProjectionPrecond>(poles, solver);
      setup_divisor = cfg.pole_count;  // reported per pole
      break;
    }
  }
  res.t_setup =
      std::chrono::duration<double>(clock::now() - t0).count() / setup_divisor;

  WaveBlock x1 = make_initial_guess(s, seed);
  if (method == Method::pp || method == Method::spp) x1 = precond->apply(x1);

  OmmReport rep = pcg_minimize(hs, x1, *precond, cfg.omm);
  res.iter = rep.iterations;
  res.t_omm = rep.seconds;
  res.d = subspace_distance(rep.final_X, s.X0);
  return res;
}

}  // namespace

std::vector<TableRow> run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<TableRow> rows;

  for (std::size_t ei = 0; ei < cfg.ells.size(); ++ei) {
    const int ell = cfg.ells[ei];
    const int N = cfg.n_rule == NRule::equals_ell ? ell : cfg.Ns[ei];

    SpectralGrid grid = build_grid(ell);
    PotentialSpec spec = cfg.test_id == 0
                             ? cfg.potential
                             : test_potential(cfg.test_id, mix_seed(cfg.base_seed, ell, 0, 17));
    RealField field = sample_potential(grid, spec);
    HamiltonianOp h = make_hamiltonian(grid, field);

    SpectralData s;
    HamiltonianOp hs;
    SpectralWindow window;
    double cond = 0.0;
    std::string prep_error;
    try {
      s = dense_eig(densify(h), N);
      cond = omm_condition_bound(s);
      double sigma = negative_definite_shift(s.lambdan());
      hs = with_shift(h, sigma);
      window.lo = s.lambda1() - sigma;
      window.hi = s.lambdaN() - sigma;
      window.mu = s.mu - sigma;
      window.rest_lo = s.lambdaN1() - sigma;
      window.rest_hi = s.lambdan() - sigma;
    } catch (const std::exception& e) {
      prep_error = sanitize(e.what());
    }

    for (std::size_t mi = 0; mi < cfg.methods.size(); ++mi) {
      Method method = cfg.methods[mi];
      TableRow row;
      row.method = method == Method::gtpa
                       ? "gtpa" + std::to_string(cfg.gtpa_order)
                       : method_name(method);
      row.l = ell;
      row.n = grid.n;
      row.cond = cond;
      if (!prep_error.empty()) {
        row.status = prep_error;
        row.d = std::nan("");
        rows.push_back(row);
        continue;
      }

      std::vector<int> iters;
      std::vector<double> ds, tsetups, tomms;
      std::string err;
      for (int rep = 0; rep < cfg.repeats; ++rep) {
        std::uint64_t base = cfg.seeds.empty() ? cfg.base_seed : cfg.seeds[rep];
        std::uint64_t cell_seed = mix_seed(base, ell, mi + 1, rep + 1);
        try {
          CellResult r = run_cell(cfg, hs, s, window, method, cell_seed);
          iters.push_back(r.iter);
          ds.push_back(r.d);
          tsetups.push_back(r.t_setup);
          tomms.push_back(r.t_omm);
        } catch (const std::exception& e) {
          err = sanitize(e.what());
          break;
        }
      }

      if (!err.empty() || iters.empty()) {
        row.status = err.empty() ? "no data" : err;
        row.d = std::nan("");
      } else {
        row.iter = median_int(iters);
        row.d = median(ds);
        row.t_setup = median(tsetups);
        row.t_omm = median(tomms);
        row.t_total = row.t_setup + row.t_omm;
        row.status = row.d <= 1e-4 ? "ok" : row.d <= 1e-3 ? "inaccurate" : "failed";
      }
      rows.push_back(row);
    }
  }
  return rows;
}

void emit_report(const std::vector<TableRow>& rows, const std::string& path) {
  if (rows.empty()) throw std::invalid_argument("emit_report: no rows");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("emit_report: cannot open " + path);
  out << "method,l,n,cond,iter,Tst,Tomm,Ttot,d,status\n";
  out.precision(6);
  out << std::scientific;
  for (const TableRow& r : rows)
    out << r.method << ',' << r.l << ',' << r.n << ',' << r.cond << ',' << r.iter
        << ',' << r.t_setup << ',' << r.t_omm << ',' << r.t_total << ',' << r.d
        << ',' << r.status << '\n';
  if (!out) throw std::runtime_error("emit_report: write failed for " + path);
}

std::vector<TableRow> parse_report(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("parse_report: cannot open " + path);
  std::string line;
  if (!std::getline(in, line) || line != "method,l,n,cond,iter,Tst,Tomm,Ttot,d,status")
    throw std::runtime_error("parse_report: bad header in " + path);
  std::vector<TableRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string f[10];
    for (int i = 0; i < 10; ++i)
      if (!std::getline(ss, f[i], ',')) throw std::runtime_error("parse_report: short row");
    TableRow r;
    r.method = f[0];
    r.l = std::stoi(f[1]);
    r.n = std::stoi(f[2]);
    r.cond = std::stod(f[3]);
    r.iter = std::stoi(f[4]);
    r.t_setup = std::stod(f[5]);
    r.t_omm = std::stod(f[6]);
    r.t_total = std::stod(f[7]);
    r.d = std::stod(f[8]);
    r.status = f[9];
    rows.push_back(r);
  }
  return rows;
}

namespace {

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig cfg;
  std::stringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto eq = line.find('=');
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
    auto trim = [](std::string s) {
      s.erase(0, s.find_first_not_of(" \t\r"));
      s.erase(s.find_last_not_of(" \t\r") + 1);
      return s;
    };
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));

    if (key == "test") {
      if (val == "custom") cfg.test_id = 0;
      else cfg.test_id = std::stoi(val);
    } else if (key == "ells") {
      cfg.ells.clear();
      for (const auto& t : split_list(val)) cfg.ells.push_back(std::stoi(t));
    } else if (key == "N_rule") {
      if (val == "equals_ell") cfg.n_rule = NRule::equals_ell;
      else if (val == "explicit") cfg.n_rule = NRule::explicit_list;
      else throw std::invalid_argument("config: N_rule must be equals_ell or explicit");
    } else if (key == "Ns") {
      cfg.Ns.clear();
      for (const auto& t : split_list(val)) cfg.Ns.push_back(std::stoi(t));
    } else if (key == "methods") {
      cfg.methods.clear();
      for (const auto& t : split_list(val)) cfg.methods.push_back(parse_method(t));
    } else if (key == "gtpa_order") {
      cfg.gtpa_order = std::stoi(val);
    } else if (key == "repeats") {
      cfg.repeats = std::stoi(val);
    } else if (key == "seed") {
      cfg.base_seed = std::stoull(val);
    } else if (key == "seeds") {
      cfg.seeds.clear();
      for (const auto& t : split_list(val)) cfg.seeds.push_back(std::stoull(t));
    } else if (key == "poles") {
      cfg.pole_count = std::stoi(val);
    } else if (key == "contour") {
      if (val == "ellipse") cfg.contour = ContourKind::ellipse;
      else if (val == "circle") cfg.contour = ContourKind::circle;
      else throw std::invalid_argument("config: contour must be ellipse or circle");
    } else if (key == "aspect") {
      cfg.aspect = std::stod(val);
    } else if (key == "gmres_tol") {
      cfg.gmres.rel_tol = std::stod(val);
    } else if (key == "gmres_restart") {
      cfg.gmres.restart = std::stoi(val);
    } else if (key == "gmres_max_restarts") {
      cfg.gmres.max_restarts = std::stoi(val);
    } else if (key == "omm_tol") {
      cfg.omm.tol = std::stod(val);
    } else if (key == "omm_max_iter") {
      cfg.omm.max_iter = std::stoi(val);
    } else if (key == "out") {
      cfg.output_path = val;
    } else if (key == "well_depth") {
      cfg.potential.well_depth = std::stod(val);
    } else if (key == "well_width") {
      cfg.potential.well_width = std::stod(val);
    } else if (key == "scale") {
      cfg.potential.global_scale = std::stod(val);
    } else if (key == "vacancy_mode") {
      if (val == "none") cfg.potential.vacancy_mode = VacancyMode::none;
      else if (val == "count") cfg.potential.vacancy_mode = VacancyMode::fixed_count;
      else if (val == "fraction") cfg.potential.vacancy_mode = VacancyMode::fraction;
      else throw std::invalid_argument("config: vacancy_mode must be none, count, or fraction");
    } else if (key == "vacancy_count") {
      cfg.potential.fixed_count = std::stoi(val);
    } else if (key == "vacancy_fraction") {
      cfg.potential.fraction = std::stod(val);
    } else if (key == "potential_seed") {
      cfg.potential.rng_seed = std::stoull(val);
    } else {
      throw std::invalid_argument("config: unknown key '" + key + "'");
    }
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

}  // namespace pomm

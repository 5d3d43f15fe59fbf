#include "nlfp/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ios>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "nlfp/analysis.hpp"
#include "nlfp/clt.hpp"
#include "nlfp/csvio.hpp"
#include "nlfp/cumulant.hpp"
#include "nlfp/initial.hpp"
#include "nlfp/jump.hpp"
#include "nlfp/spectral.hpp"
#include "nlfp/svgplot.hpp"

namespace fs = std::filesystem;

namespace nlfp {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& v, const std::string& where) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing characters");
    return x;
  } catch (const std::exception&) {
    throw std::invalid_argument(where + ": cannot parse number '" + v + "'");
  }
}

std::vector<double> parse_list(const std::string& v, const std::string& where) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(parse_double(item, where));
  }
  return out;
}

bool parse_bool(const std::string& v, const std::string& where) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw std::invalid_argument(where + ": cannot parse boolean '" + v + "'");
}

std::string num_tag(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

const std::vector<std::string> kExperiments = {"solve",     "equilibrium", "rates",
                                               "clt",       "cumulants",   "lyapunov",
                                               "positivity", "tails",      "all"};

// Runs f(i) for i in [0, n) on up to `threads` workers.  Each cell writes its
// own slot, so the result does not depend on scheduling.
void parallel_cells(std::size_t n, int threads, const std::function<void(std::size_t)>& f) {
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      f(i);
    }
  };
  std::vector<std::thread> pool;
  const int nt = std::min<std::size_t>(threads, n);
  for (int w = 0; w < nt; ++w) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

}  // namespace

const char* library_version() { return "0.1.0"; }

void apply_config_entry(ExperimentConfig& cfg, const std::string& key, const std::string& value,
                        const std::string& where) {
  auto starts = [&](const char* prefix) { return key.rfind(prefix, 0) == 0; };
  if (key == "experiment") {
    cfg.experiment = value;
  } else if (key == "kernel.name") {
    cfg.kernel_name = value;
  } else if (key == "kernel.dim") {
    cfg.dim = static_cast<int>(parse_double(value, where));
    cfg.grid.dim = cfg.dim;
  } else if (starts("kernel.")) {
    cfg.kernel_params[key.substr(7)] = parse_double(value, where);
  } else if (key == "epsilons") {
    cfg.epsilons = parse_list(value, where);
  } else if (key == "times") {
    cfg.times = parse_list(value, where);
  } else if (key == "grid.half_width") {
    cfg.grid.half_width = parse_double(value, where);
  } else if (key == "grid.points") {
    cfg.grid.points = static_cast<int>(parse_double(value, where));
  } else if (key == "weight.kind") {
    if (value == "polynomial")
      cfg.weight.kind = Weight::Kind::polynomial;
    else if (value == "exponential")
      cfg.weight.kind = Weight::Kind::exponential;
    else if (value == "poisson")
      cfg.weight.kind = Weight::Kind::poisson;
    else
      throw std::invalid_argument(where + ": weight.kind must be polynomial|exponential|poisson");
  } else if (key == "weight.param") {
    cfg.weight.param = parse_double(value, where);
  } else if (key == "initial.name") {
    cfg.initial_name = value;
    cfg.initial_params.clear();
  } else if (starts("initial.")) {
    cfg.initial_params[key.substr(8)] = parse_double(value, where);
  } else if (key == "mc.particles") {
    cfg.mc_particles = static_cast<std::uint64_t>(parse_double(value, where));
  } else if (key == "mc.seed") {
    cfg.mc_seed = static_cast<std::uint64_t>(parse_double(value, where));
  } else if (key == "clt.n_list") {
    cfg.clt_n_list.clear();
    for (double v : parse_list(value, where)) cfg.clt_n_list.push_back(static_cast<int>(v));
  } else if (key == "positivity.r1") {
    cfg.positivity_r1 = parse_double(value, where);
  } else if (key == "positivity.r2") {
    cfg.positivity_r2 = parse_double(value, where);
  } else if (key == "tails.a") {
    cfg.tails_a = parse_double(value, where);
  } else if (key == "output.dir") {
    cfg.output_dir = value;
  } else if (key == "output.svg") {
    cfg.svg = parse_bool(value, where);
  } else if (key == "threads") {
    cfg.threads = static_cast<int>(parse_double(value, where));
  } else {
    throw std::invalid_argument(where + ": unknown key '" + key + "'");
  }
}

ExperimentConfig parse_config_text(const std::string& text, const std::string& origin) {
  ExperimentConfig cfg;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = origin + ":" + std::to_string(lineno);
    if (eq == std::string::npos)
      throw std::invalid_argument(where + ": expected 'key = value'");
    apply_config_entry(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)), where);
  }
  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::ios_base::failure("config: cannot open " + path);
  std::stringstream buf;
  buf << is.rdbuf();
  return parse_config_text(buf.str(), path);
}

void validate_config(const ExperimentConfig& cfg) {
  if (std::find(kExperiments.begin(), kExperiments.end(), cfg.experiment) == kExperiments.end())
    throw std::invalid_argument("config: unknown experiment '" + cfg.experiment + "'");
  if (cfg.epsilons.empty()) throw std::invalid_argument("config: 'epsilons' must not be empty");
  for (double e : cfg.epsilons)
    if (!(e > 0.0 && e <= 1.0))
      throw std::invalid_argument("config: 'epsilons' entries must lie in (0, 1]");
  if (cfg.times.empty()) throw std::invalid_argument("config: 'times' must not be empty");
  if (!cfg.grid.power_of_two())
    throw std::invalid_argument("config: 'grid.points' must be a power of two");
  if (!(cfg.grid.half_width > 0.0))
    throw std::invalid_argument("config: 'grid.half_width' must be positive");
  if (cfg.threads < 1) throw std::invalid_argument("config: 'threads' must be >= 1");
  if (cfg.experiment == "clt" || cfg.experiment == "all") {
    if (cfg.clt_n_list.size() < 2)
      throw std::invalid_argument("config: 'clt.n_list' needs at least two entries");
    for (std::size_t i = 0; i + 1 < cfg.clt_n_list.size(); ++i)
      if (cfg.clt_n_list[i + 1] <= cfg.clt_n_list[i])
        throw std::invalid_argument("config: 'clt.n_list' must increase");
  }
  // Catalog names must resolve; construction performs the detailed checks.
  (void)Kernel::make(cfg.kernel_name, cfg.dim, cfg.kernel_params);
  (void)InitialData::make(cfg.initial_name, cfg.dim, cfg.initial_params);
}

namespace {

std::string dump_config(const ExperimentConfig& cfg) {
  std::ostringstream os;
  os << "experiment = " << cfg.experiment << "\n";
  os << "kernel.name = " << cfg.kernel_name << "\n";
  os << "kernel.dim = " << cfg.dim << "\n";
  for (const auto& [k, v] : cfg.kernel_params) os << "kernel." << k << " = " << num_tag(v) << "\n";
  os << "epsilons = ";
  for (std::size_t i = 0; i < cfg.epsilons.size(); ++i)
    os << (i ? "," : "") << num_tag(cfg.epsilons[i]);
  os << "\ntimes = ";
  for (std::size_t i = 0; i < cfg.times.size(); ++i) os << (i ? "," : "") << num_tag(cfg.times[i]);
  os << "\ngrid.half_width = " << num_tag(cfg.grid.half_width) << "\n";
  os << "grid.points = " << cfg.grid.points << "\n";
  os << "weight.kind = "
     << (cfg.weight.kind == Weight::Kind::polynomial
             ? "polynomial"
             : cfg.weight.kind == Weight::Kind::exponential ? "exponential" : "poisson")
     << "\n";
  os << "weight.param = " << num_tag(cfg.weight.param) << "\n";
  os << "initial.name = " << cfg.initial_name << "\n";
  for (const auto& [k, v] : cfg.initial_params) os << "initial." << k << " = " << num_tag(v) << "\n";
  os << "mc.particles = " << cfg.mc_particles << "\n";
  os << "mc.seed = " << cfg.mc_seed << "\n";
  os << "clt.n_list = ";
  for (std::size_t i = 0; i < cfg.clt_n_list.size(); ++i)
    os << (i ? "," : "") << cfg.clt_n_list[i];
  os << "\npositivity.r1 = " << num_tag(cfg.positivity_r1) << "\n";
  os << "positivity.r2 = " << num_tag(cfg.positivity_r2) << "\n";
  os << "tails.a = " << num_tag(cfg.tails_a) << "\n";
  os << "output.svg = " << (cfg.svg ? "true" : "false") << "\n";
  os << "threads = " << cfg.threads << "\n";
  return os.str();
}

class Runner {
 public:
  Runner(const ExperimentConfig& cfg)
      : cfg_(cfg), kernel_(Kernel::make(cfg.kernel_name, cfg.dim, cfg.kernel_params)),
        u0_(InitialData::make(cfg.initial_name, cfg.dim, cfg.initial_params)) {}

  void run(const std::string& name) {
    if (name == "solve") return run_solve();
    if (name == "equilibrium") return run_equilibrium();
    if (name == "rates") return run_rates();
    if (name == "clt") return run_clt();
    if (name == "cumulants") return run_cumulants();
    if (name == "lyapunov") return run_lyapunov();
    if (name == "positivity") return run_positivity();
    if (name == "tails") return run_tails();
    if (name == "all") {
      run_solve();
      run_equilibrium();
      run_rates();
      run_clt();
      run_cumulants();
      run_lyapunov();
      run_positivity();
      run_tails();
      return;
    }
    throw std::invalid_argument("run_experiment: unknown experiment '" + name + "'");
  }

  std::vector<std::string> files;

 private:
  void save(const CsvTable& table, const std::string& rel) {
    table.write((fs::path(cfg_.output_dir) / rel).string());
    files.push_back(rel);
  }

  void save_plot(const std::vector<PlotSeries>& series, PlotOptions opts,
                 const std::string& rel) {
    if (!cfg_.svg) return;
    write_svg_lineplot((fs::path(cfg_.output_dir) / rel).string(), series, opts);
    files.push_back(rel);
  }

  void run_solve() {
    // Parameter cells solve independently (possibly in parallel); assembly
    // below is single-threaded in parameter order.
    struct Cell {
      double eps, t;
      GridDensity u;
      double l1_mc = -1.0;
    };
    std::vector<Cell> cells;
    for (double eps : cfg_.epsilons)
      for (double t : cfg_.times) cells.push_back({eps, t, GridDensity{}, -1.0});
    const int mc_threads = cells.size() == 1 ? cfg_.threads : 1;
    parallel_cells(cells.size(), cfg_.threads, [&](std::size_t i) {
      Cell& c = cells[i];
      c.u = solve_density(u0_, kernel_, c.eps, c.t, cfg_.grid);
      if (cfg_.mc_particles > 0) {
        const auto ens =
            simulate(kernel_, c.eps, u0_, c.t, cfg_.mc_particles, cfg_.mc_seed, mc_threads);
        c.l1_mc = l1_distance(c.u, empirical_density(ens, cfg_.grid).density);
      }
    });

    CsvTable summary({"epsilon", "t", "mass", "second_moment", "l1_to_mc"});
    std::vector<PlotSeries> series;
    for (const Cell& c : cells) {
      const std::string rel = "solve_eps" + num_tag(c.eps) + "_t" + num_tag(c.t) + ".csv";
      std::ofstream os((fs::path(cfg_.output_dir) / rel).string(), std::ios::binary);
      write_csv(c.u, os);
      files.push_back(rel);
      MultiIndex m2(cfg_.dim, 0);
      m2[0] = 2;
      summary.add_row({csv_format(c.eps), csv_format(c.t), csv_format(mass(c.u)),
                       csv_format(grid_moment(c.u, m2)), csv_format(c.l1_mc)});
      if (cfg_.dim == 1) {
        PlotSeries s;
        s.label = "eps=" + num_tag(c.eps) + " t=" + num_tag(c.t);
        for (int j = 0; j < cfg_.grid.points; j += 8) {
          s.x.push_back(cfg_.grid.coord(j));
          s.y.push_back(c.u[j]);
        }
        series.push_back(std::move(s));
      }
    }
    save(summary, "solve_summary.csv");
    save_plot(series, {"solution densities", "x", "u(t,x)"}, "solve_densities.svg");
  }

  void run_equilibrium() {
    std::vector<GridDensity> eq(cfg_.epsilons.size());
    parallel_cells(eq.size(), cfg_.threads, [&](std::size_t i) {
      eq[i] = equilibrium_density(kernel_, cfg_.epsilons[i], cfg_.grid);
    });

    CsvTable summary({"epsilon", "mass", "kappa2", "kappa4"});
    CsvTable decay({"epsilon", "fitted_exponent", "target_exponent"});
    std::vector<PlotSeries> series;
    for (std::size_t idx = 0; idx < cfg_.epsilons.size(); ++idx) {
      const double eps = cfg_.epsilons[idx];
      const GridDensity& f = eq[idx];
      const std::string rel = "equilibrium_eps" + num_tag(eps) + ".csv";
      std::ofstream os((fs::path(cfg_.output_dir) / rel).string(), std::ios::binary);
      write_csv(f, os);
      files.push_back(rel);
      const CumulantTable emp = empirical_cumulants(f, 4);
      MultiIndex a2(cfg_.dim, 0), a4(cfg_.dim, 0);
      a2[0] = 2;
      a4[0] = 4;
      summary.add_row({csv_format(eps), csv_format(mass(f)), csv_format(emp.at(a2)),
                       csv_format(emp.at(a4))});
      if (cfg_.dim == 1 && eps >= 0.2) {  // steeper exponents underflow the window
        const double lo = std::max(50.0, 20.0 / eps);
        const auto exponent = fourier_decay_exponent(kernel_, eps, lo, 10.0 * lo);
        decay.add_row({csv_format(eps), csv_format(exponent.fit.slope),
                       csv_format(-1.0 / (eps * eps))});
      }
      if (cfg_.dim == 1) {
        PlotSeries s;
        s.label = "eps=" + num_tag(eps);
        for (int j = 0; j < cfg_.grid.points; j += 8) {
          s.x.push_back(cfg_.grid.coord(j));
          s.y.push_back(f[j]);
        }
        series.push_back(std::move(s));
      }
    }
    save(summary, "equilibrium_summary.csv");
    if (decay.rows() > 0) save(decay, "equilibrium_fourier_decay.csv");
    save_plot(series, {"equilibria", "x", "F_eps(x)"}, "equilibrium_densities.svg");
  }

  void run_rates() {
    CsvTable fits({"experiment", "t", "slope", "intercept", "points_used"});
    std::vector<PlotSeries> series;
    std::vector<double> eps_sorted = cfg_.epsilons;
    std::sort(eps_sorted.begin(), eps_sorted.end(), std::greater<double>());
    for (double t : cfg_.times) {
      const RateFit fit = local_limit_rate(kernel_, u0_, eps_sorted, t, cfg_.weight, cfg_.grid);
      fits.add_row({"local_limit", csv_format(t), csv_format(fit.slope),
                    csv_format(fit.intercept), csv_format(fit.points_used)});
      CsvTable table({"epsilon", "distance"});
      PlotSeries s;
      s.label = "t=" + num_tag(t);
      for (std::size_t i = 0; i < fit.abscissae.size(); ++i) {
        table.add_row({csv_format(fit.abscissae[i]), csv_format(fit.ordinates[i])});
        s.x.push_back(fit.abscissae[i]);
        s.y.push_back(fit.ordinates[i]);
      }
      series.push_back(std::move(s));
      save(table, "rates_local_limit_t" + num_tag(t) + ".csv");
    }
    const RateFit gap = equilibria_gap(kernel_, eps_sorted, cfg_.weight, cfg_.grid);
    fits.add_row({"equilibria_gap", "", csv_format(gap.slope), csv_format(gap.intercept),
                  csv_format(gap.points_used)});
    CsvTable table({"epsilon", "distance"});
    PlotSeries s;
    s.label = "equilibria gap";
    for (std::size_t i = 0; i < gap.abscissae.size(); ++i) {
      table.add_row({csv_format(gap.abscissae[i]), csv_format(gap.ordinates[i])});
      s.x.push_back(gap.abscissae[i]);
      s.y.push_back(gap.ordinates[i]);
    }
    series.push_back(std::move(s));
    save(table, "rates_equilibria_gap.csv");
    save(fits, "rates_fits.csv");
    save_plot(series, {"nonlocal-to-local distances", "eps", "distance", true, true},
              "rates_loglog.svg");

    // Convergence to equilibrium: gamma_hat per epsilon over the config times.
    if (cfg_.times.size() >= 3) {
      CsvTable gamma({"epsilon", "gamma_hat", "points_used", "degenerate"});
      for (double eps : eps_sorted) {
        const auto fit = decay_rate_fit(kernel_, eps, u0_, cfg_.weight, cfg_.times, cfg_.grid);
        gamma.add_row({csv_format(eps), csv_format(-fit.slope), csv_format(fit.points_used),
                       fit.degenerate ? "1" : "0"});
      }
      save(gamma, "rates_equilibration.csv");
    }

    // Generator consistency residual on the standard gaussian test function
    // (pointwise kernel quadrature; kept to d = 1 where it is cheap).
    if (cfg_.dim == 1) {
      CsvTable consistency({"epsilon", "residual", "residual_over_eps2"});
      const AnalyticDensity g = analytic_gaussian(1, {0.0}, 1.0);
      for (double eps : eps_sorted) {
        const double r = consistency_residual(kernel_, eps, g, cfg_.weight, cfg_.grid);
        consistency.add_row({csv_format(eps), csv_format(r), csv_format(r / (eps * eps))});
      }
      save(consistency, "rates_consistency.csv");
    }
  }

  void run_clt() {
    const Kernel k1 = Kernel::make(cfg_.kernel_name, 1, cfg_.kernel_params);
    const CltDensity f = CltDensity::from_kernel(k1);
    const GridSpec grid{1, 10.0, 2048};
    const auto res = be_rate_experiment(f, default_sigma_rule, cfg_.clt_n_list, grid);
    CsvTable table({"n", "sup_distance"});
    PlotSeries s;
    s.label = cfg_.kernel_name;
    for (std::size_t i = 0; i < res.n_values.size(); ++i) {
      table.add_row({csv_format(res.n_values[i]), csv_format(res.sup_distances[i])});
      s.x.push_back(res.n_values[i]);
      s.y.push_back(res.sup_distances[i]);
    }
    save(table, "clt_sup_distances.csv");
    CsvTable fit({"slope", "intercept", "degenerate"});
    fit.add_row({csv_format(res.fit.slope), csv_format(res.fit.intercept),
                 res.fit.degenerate ? "1" : "0"});
    save(fit, "clt_fit.csv");
    const auto bounds = charfn_bounds(f, 1.0);
    CsvTable cb({"delta", "delta_star", "kappa"});
    cb.add_row({csv_format(1.0), csv_format(bounds.delta_star), csv_format(bounds.kappa)});
    save(cb, "clt_charfn_bounds.csv");
    CsvTable ps({"m", "s_m"});
    for (std::uint64_t m : {1ull, 2ull, 5ull, 10ull, 100ull, 1000ull, 10000ull})
      ps.add_row({csv_format(static_cast<double>(m)), csv_format(poisson_partial_sum(m))});
    save(ps, "clt_poisson_partial_sums.csv");
    save_plot({s}, {"sup-norm distance to the gaussian", "n", "sup distance", true, true},
              "clt_rate.svg");
  }

  void run_cumulants() {
    CsvTable table({"epsilon", "t", "order", "closed_form", "grid_value", "rel_error"});
    const CumulantTable k0 = initial_cumulants(u0_, 4);
    for (double eps : cfg_.epsilons) {
      for (double t : cfg_.times) {
        const GridDensity u = solve_density(u0_, kernel_, eps, t, cfg_.grid);
        const CumulantTable emp = empirical_cumulants(u, 4);
        for (int n = 1; n <= 4; ++n) {
          MultiIndex alpha(cfg_.dim, 0);
          alpha[0] = n;
          const double closed = evolve_cumulant(kernel_, eps, k0, t, alpha);
          const double measured = emp.at(alpha);
          const double rel =
              std::abs(closed) > 1e-12 ? std::abs(measured - closed) / std::abs(closed) : 0.0;
          table.add_row({csv_format(eps), csv_format(t), csv_format(n), csv_format(closed),
                         csv_format(measured), csv_format(rel)});
        }
      }
    }
    save(table, "cumulants_dynamics.csv");
  }

  void run_lyapunov() {
    CsvTable table({"epsilon", "weight", "lambda", "C", "margin"});
    const ProbeGrid probe{cfg_.dim, 10.0, cfg_.dim == 1 ? 201 : 41};
    for (double eps : cfg_.epsilons) {
      Weight w = cfg_.weight;
      if (w.kind == Weight::Kind::poisson && cfg_.tails_a <= 0.0)
        w.param = 1.0 / (eps * kernel_.support_radius());
      const auto cert = lyapunov_fit(kernel_, eps, w, probe);
      table.add_row({csv_format(eps), w.label(), csv_format(cert.lambda), csv_format(cert.C),
                     csv_format(cert.margin)});
    }
    save(table, "lyapunov_certificates.csv");
  }

  void run_positivity() {
    const auto res = positivity_probe(kernel_, cfg_.epsilons, cfg_.times.front(),
                                      cfg_.positivity_r1, cfg_.positivity_r2, u0_, cfg_.grid);
    CsvTable table({"epsilon", "alpha"});
    PlotSeries s;
    s.label = "alpha(eps)";
    for (std::size_t i = 0; i < res.epsilons.size(); ++i) {
      table.add_row({csv_format(res.epsilons[i]), csv_format(res.alphas[i])});
      s.x.push_back(res.epsilons[i]);
      s.y.push_back(res.alphas[i]);
    }
    save(table, "positivity_alphas.csv");
    CsvTable ratio({"min_over_max"});
    ratio.add_row({csv_format(res.min_over_max())});
    save(ratio, "positivity_ratio.csv");
    save_plot({s}, {"local lower bound", "eps", "alpha", false, false}, "positivity.svg");
  }

  void run_tails() {
    CsvTable table({"epsilon", "a", "integral", "max_shell_ratio", "geometric", "inconclusive"});
    for (double eps : cfg_.epsilons) {
      const double a =
          cfg_.tails_a > 0.0 ? cfg_.tails_a : 1.0 / (eps * kernel_.support_radius());
      const auto res = tail_probe(kernel_, eps, a, cfg_.grid);
      table.add_row({csv_format(eps), csv_format(a), csv_format(res.integral),
                     csv_format(res.max_shell_ratio), res.geometric_decay ? "1" : "0",
                     res.inconclusive ? "1" : "0"});
      CsvTable shells({"radius", "contribution"});
      for (std::size_t i = 0; i < res.shell_radii.size(); ++i)
        shells.add_row(
            {csv_format(res.shell_radii[i]), csv_format(res.shell_contributions[i])});
      save(shells, "tails_shells_eps" + num_tag(eps) + ".csv");
    }
    save(table, "tails_summary.csv");
  }

  const ExperimentConfig& cfg_;
  Kernel kernel_;
  InitialData u0_;
};

}  // namespace

RunResult run_experiment(const ExperimentConfig& cfg, bool overwrite) {
  validate_config(cfg);
  const fs::path dir(cfg.output_dir);
  const fs::path manifest = dir / "manifest.txt";
  if (fs::exists(manifest) && !overwrite)
    throw std::ios_base::failure("run_experiment: output directory already holds a run (" +
                             manifest.string() + "); pass overwrite to replace it");
  fs::create_directories(dir);

  Runner runner(cfg);
  runner.run(cfg.experiment);

  std::ostringstream os;
  os << "nlfp.version = " << library_version() << "\n";
  os << dump_config(cfg);
  os << "output.dir = " << cfg.output_dir << "\n";
  for (const auto& f : runner.files) os << "file = " << f << "\n";
  std::ofstream m(manifest, std::ios::binary);
  if (!m) throw std::ios_base::failure("run_experiment: cannot write manifest");
  m << os.str();

  RunResult res;
  res.files.push_back("manifest.txt");
  for (auto& f : runner.files) res.files.push_back(f);
  return res;
}

}  // namespace nlfp

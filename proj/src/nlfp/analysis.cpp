#include "nlfp/analysis.hpp"

#include <cmath>
#include <stdexcept>

#include "nlfp/quad.hpp"
#include "nlfp/spectral.hpp"

namespace nlfp {
namespace {

// int J(z) g(z) dz over the kernel's axis panels (tensor product, d <= 2).
double kernel_expectation(const Kernel& kernel,
                          const std::function<double(std::span<const double>)>& g, int gl_order) {
  const auto panels = kernel.axis_panels();
  const auto& xs = gl_nodes(gl_order);
  const auto& ws = gl_weights(gl_order);
  const int d = kernel.dim();
  double z[2];
  if (d == 1) {
    double acc = 0.0;
    for (const auto& p : panels) {
      const double mid = 0.5 * (p.a + p.b), half = 0.5 * (p.b - p.a);
      for (int q = 0; q < gl_order; ++q) {
        z[0] = mid + half * xs[q];
        acc += half * ws[q] * kernel.density1d(z[0]) * g(std::span<const double>(z, 1));
      }
    }
    return acc;
  }
  double acc = 0.0;
  for (const auto& px : panels) {
    const double midx = 0.5 * (px.a + px.b), halfx = 0.5 * (px.b - px.a);
    for (int qx = 0; qx < gl_order; ++qx) {
      z[0] = midx + halfx * xs[qx];
      const double wx = halfx * ws[qx] * kernel.density1d(z[0]);
      for (const auto& py : panels) {
        const double midy = 0.5 * (py.a + py.b), halfy = 0.5 * (py.b - py.a);
        for (int qy = 0; qy < gl_order; ++qy) {
          z[1] = midy + halfy * xs[qy];
          acc += wx * halfy * ws[qy] * kernel.density1d(z[1]) * g(std::span<const double>(z, 2));
        }
      }
    }
  }
  return acc;
}

double radius(std::span<const double> x) {
  double r2 = 0.0;
  for (double v : x) r2 += v * v;
  return std::sqrt(r2);
}

template <class F>
void for_each_probe_point(const ProbeGrid& probe, F&& f) {
  const double h = 2.0 * probe.half_width / (probe.points_per_axis - 1);
  double x[2];
  if (probe.dim == 1) {
    for (int j = 0; j < probe.points_per_axis; ++j) {
      x[0] = -probe.half_width + j * h;
      f(std::span<const double>(x, 1));
    }
  } else {
    for (int jx = 0; jx < probe.points_per_axis; ++jx) {
      x[0] = -probe.half_width + jx * h;
      for (int jy = 0; jy < probe.points_per_axis; ++jy) {
        x[1] = -probe.half_width + jy * h;
        f(std::span<const double>(x, 2));
      }
    }
  }
}

}  // namespace

double lyapunov_drift_at(const Kernel& kernel, double eps, const Weight& w,
                         std::span<const double> x) {
  const int d = kernel.dim();
  double shifted[2];
  const double conv = kernel_expectation(
      kernel,
      [&](std::span<const double> z) {
        for (int a = 0; a < d; ++a) shifted[a] = x[a] - eps * z[a];
        return w.value_r(radius(std::span<const double>(shifted, d)));
      },
      64);
  const double r = radius(x);
  const double wx = w.value_r(r);
  return (conv - wx) / (eps * eps) - w.drift_rate(r) * wx;
}

LyapunovCertificate lyapunov_fit(const Kernel& kernel, double eps, const Weight& w,
                                 const ProbeGrid& probe) {
  if (probe.dim != kernel.dim()) throw std::invalid_argument("lyapunov_fit: dimension mismatch");
  if (probe.points_per_axis < 3)
    throw std::invalid_argument("lyapunov_fit: probe grid too coarse");
  if (w.kind == Weight::Kind::exponential && !(w.param < kernel.exp_rate() / eps))
    throw std::domain_error("lyapunov_fit: exponential weight rate must be below exp_rate/eps");
  if (w.kind == Weight::Kind::poisson) {
    const double R = kernel.support_radius();
    if (!std::isfinite(R))
      throw std::domain_error("lyapunov_fit: poisson weight needs a compactly supported kernel");
    if (w.param > 1.0 / (eps * R) + 1e-12)
      throw std::domain_error("lyapunov_fit: poisson weight rate exceeds 1/(eps R)");
  }

  LyapunovCertificate cert;
  cert.weight = w;
  cert.epsilon = eps;
  // Polynomial weights relax at the asymptotic rate k (r/w -> -k at infinity);
  // for exponential and poisson weights the rate grows without bound, so use
  // half the drift rate at the probe boundary.
  cert.lambda = (w.kind == Weight::Kind::polynomial) ? w.param
                                                     : 0.5 * w.drift_rate(probe.half_width);
  if (!(cert.lambda > 0.0)) throw std::domain_error("lyapunov_fit: weight has no positive drift");

  for_each_probe_point(probe, [&](std::span<const double> x) {
    cert.probe_radii.push_back(radius(x));
    cert.drift_values.push_back(lyapunov_drift_at(kernel, eps, w, x));
  });

  // Smallest C with r <= C - lambda w on the probed grid.
  double C = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < cert.probe_radii.size(); ++i)
    C = std::max(C, cert.drift_values[i] + cert.lambda * w.value_r(cert.probe_radii[i]));
  cert.C = C;
  double margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < cert.probe_radii.size(); ++i) {
    margin = std::min(margin, C - cert.lambda * w.value_r(cert.probe_radii[i]) -
                                  cert.drift_values[i]);
  }
  cert.margin = margin;
  return cert;
}

double PositivityResult::min_over_max() const {
  if (alphas.empty()) return 0.0;
  double lo = alphas[0], hi = alphas[0];
  for (double a : alphas) {
    lo = std::min(lo, a);
    hi = std::max(hi, a);
  }
  return hi > 0.0 ? lo / hi : 0.0;
}

PositivityResult positivity_probe(const Kernel& kernel, std::span<const double> epsilons,
                                  double t, double R1, double R2, const InitialData& u0,
                                  const GridSpec& grid) {
  if (!(t > 0.0)) throw std::invalid_argument("positivity_probe: t must be positive");
  if (!(R1 > 0.0 && R2 > 0.0)) throw std::invalid_argument("positivity_probe: radii positive");
  if (2.0 * R1 < 4.0 * grid.spacing())
    throw std::invalid_argument("positivity_probe: grid does not resolve B_R1");

  // int_{B_R2} u0 by midpoint quadrature on the same grid.
  const GridDensity u0_grid = u0.discretize(grid);
  double denom = 0.0;
  double x[2];
  for (std::size_t i = 0; i < u0_grid.values().size(); ++i) {
    u0_grid.coords(i, std::span<double>(x, grid.dim));
    if (radius(std::span<const double>(x, grid.dim)) <= R2) denom += u0_grid[i];
  }
  denom *= grid.cell_volume();
  if (!(denom > 0.0))
    throw std::invalid_argument("positivity_probe: u0 carries no mass inside B_R2");

  PositivityResult res;
  for (double eps : epsilons) {
    const GridDensity u = solve_density(u0, kernel, eps, t, grid);
    double min_val = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < u.values().size(); ++i) {
      u.coords(i, std::span<double>(x, grid.dim));
      if (radius(std::span<const double>(x, grid.dim)) <= R1) min_val = std::min(min_val, u[i]);
    }
    if (min_val < -1e-6)
      throw std::runtime_error(
          "positivity_probe: negative spectral ripples inside B_R1 exceed tolerance; "
          "increase the grid resolution");
    res.epsilons.push_back(eps);
    res.alphas.push_back(min_val / denom);
  }
  return res;
}

RateFit decay_rate_fit(const Kernel& kernel, double eps, const InitialData& u0, const Weight& w,
                       std::span<const double> times, const GridSpec& grid) {
  for (std::size_t i = 0; i + 1 < times.size(); ++i)
    if (times[i + 1] <= times[i]) throw std::invalid_argument("decay_rate_fit: times increasing");
  const GridDensity eq = equilibrium_density(kernel, eps, grid);
  std::vector<double> ts, es;
  for (double t : times) {
    const GridDensity u = solve_density(u0, kernel, eps, t, grid);
    ts.push_back(t);
    es.push_back(weighted_norm(subtract(u, eq), w));
  }
  RateFit fit = semilog_fit(ts, es, 1e-12);
  bool all_tiny = true;
  for (double e : es) all_tiny = all_tiny && e <= 1e-8;
  if (all_tiny) fit.degenerate = true;
  return fit;
}

RateFit local_limit_rate(const Kernel& kernel, const InitialData& u0,
                         std::span<const double> epsilons, double t, const Weight& w,
                         const GridSpec& grid) {
  if (epsilons.size() < 3) throw std::invalid_argument("local_limit_rate: needs >= 3 epsilons");
  for (std::size_t i = 0; i + 1 < epsilons.size(); ++i)
    if (epsilons[i + 1] >= epsilons[i])
      throw std::invalid_argument("local_limit_rate: epsilons must decrease");
  for (double e : epsilons)
    if (!(e > 0.0 && e <= 1.0)) throw std::invalid_argument("local_limit_rate: eps in (0, 1]");

  const GridDensity v = local_fp_density(u0, t, grid);
  std::vector<double> es, ds;
  for (double eps : epsilons) {
    const GridDensity u = solve_density(u0, kernel, eps, t, grid);
    es.push_back(eps);
    ds.push_back(weighted_norm(subtract(u, v), w));
  }
  return loglog_fit(es, ds, 1e-12);
}

RateFit equilibria_gap(const Kernel& kernel, std::span<const double> epsilons, const Weight& w,
                       const GridSpec& grid) {
  if (epsilons.size() < 3) throw std::invalid_argument("equilibria_gap: needs >= 3 epsilons");
  const InitialData gauss =
      InitialData::gaussian(grid.dim, std::vector<double>(grid.dim, 0.0), 1.0);
  const GridDensity g = gauss.discretize(grid, /*normalize=*/false);
  std::vector<double> es, ds;
  for (double eps : epsilons) {
    if (!(eps > 0.0 && eps <= 1.0)) throw std::invalid_argument("equilibria_gap: eps in (0, 1]");
    const GridDensity feps = equilibrium_density(kernel, eps, grid);
    es.push_back(eps);
    ds.push_back(weighted_norm(subtract(feps, g), w));
  }
  return loglog_fit(es, ds, 1e-12);
}

AnalyticDensity analytic_gaussian(int dim, std::vector<double> mean, double var) {
  AnalyticDensity v;
  v.value = [dim, mean, var](std::span<const double> x) {
    double p = 1.0;
    for (int i = 0; i < dim; ++i) {
      const double z = x[i] - mean[i];
      p *= std::exp(-0.5 * z * z / var) / std::sqrt(2.0 * M_PI * var);
    }
    return p;
  };
  v.laplacian = [dim, mean, var, value = v.value](std::span<const double> x) {
    double acc = 0.0;
    for (int i = 0; i < dim; ++i) {
      const double z = x[i] - mean[i];
      acc += (z * z / (var * var) - 1.0 / var);
    }
    return acc * value(x);
  };
  return v;
}

GridDensity consistency_residual_field(const Kernel& kernel, double eps, const AnalyticDensity& v,
                                       const GridSpec& grid) {
  if (grid.dim != kernel.dim())
    throw std::invalid_argument("consistency_residual: dimension mismatch");
  GridDensity out(grid);
  const int d = grid.dim;
  double x[2], shifted[2];
  for (std::size_t i = 0; i < out.values().size(); ++i) {
    out.coords(i, std::span<double>(x, d));
    const double conv = kernel_expectation(
        kernel,
        [&](std::span<const double> z) {
          for (int a = 0; a < d; ++a) shifted[a] = x[a] - eps * z[a];
          return v.value(std::span<const double>(shifted, d));
        },
        64);
    out[i] = (conv - v.value(std::span<const double>(x, d))) / (eps * eps) -
             v.laplacian(std::span<const double>(x, d));
  }
  return out;
}

double consistency_residual(const Kernel& kernel, double eps, const AnalyticDensity& v,
                            const Weight& w, const GridSpec& grid) {
  return weighted_norm(consistency_residual_field(kernel, eps, v, grid), w);
}

DecayFitResult fourier_decay_exponent(const Kernel& kernel, double eps, double xi_lo,
                                      double xi_hi, int n_points) {
  if (kernel.dim() != 1)
    throw std::invalid_argument("fourier_decay_exponent: one-dimensional kernels only");
  if (!(xi_lo > 0.0 && xi_hi > xi_lo))
    throw std::invalid_argument("fourier_decay_exponent: bad range");
  if (n_points < 3) throw std::invalid_argument("fourier_decay_exponent: needs >= 3 points");

  DecayFitResult res;
  std::vector<double> xs, ys;
  const double step = std::log(xi_hi / xi_lo) / (n_points - 1);
  for (int i = 0; i < n_points; ++i) {
    const double xi = xi_lo * std::exp(i * step);
    const double re = phase_integral(kernel, eps, std::span<const double>(&xi, 1),
                                     kTimeInfinity)
                          .real();
    if (re < -690.0) {  // |Fhat| underflows; trim the window
      res.range_shrunk = true;
      break;
    }
    xs.push_back(xi);
    ys.push_back(std::exp(re));
  }
  if (xs.size() < 3)
    throw std::domain_error("fourier_decay_exponent: window collapsed under underflow");
  res.fit = loglog_fit(xs, ys, 0.0);
  return res;
}

TailProbeResult tail_probe_density(const GridDensity& density, double a) {
  if (a < 0.0) throw std::invalid_argument("tail_probe: a must be >= 0");
  const GridSpec& grid = density.spec();
  const Weight w = Weight::poisson(a);

  TailProbeResult res;
  const double X = grid.half_width;
  const int n_shells = 10;
  std::vector<double> edges(n_shells + 1);
  for (int s = 0; s <= n_shells; ++s)
    edges[s] = X * std::pow(10.0, -1.0 + static_cast<double>(s) / n_shells);
  std::vector<double> shells(n_shells, 0.0);
  std::vector<double> shell_weight(n_shells, 0.0);  // int_shell w, for the noise bound

  double total = 0.0;
  double ripple = 0.0;  // |most negative value|: pure numerical error for a density
  double x[2];
  for (std::size_t i = 0; i < density.values().size(); ++i) {
    density.coords(i, std::span<double>(x, grid.dim));
    const double r = radius(std::span<const double>(x, grid.dim));
    const double wr = w.value_r(r);
    total += wr * density[i];
    ripple = std::max(ripple, -density[i]);
    if (r >= edges[0] && r < edges[n_shells]) {
      const int s = std::min(
          n_shells - 1,
          static_cast<int>(std::floor(n_shells * (std::log10(r / X) + 1.0))));
      shells[s] += wr * density[i];
      shell_weight[s] += wr;
    }
  }
  res.integral = total * grid.cell_volume();
  for (int s = 0; s < n_shells; ++s) {
    res.shell_radii.push_back(edges[s + 1]);
    res.shell_contributions.push_back(shells[s] * grid.cell_volume());
  }

  // Shells dominated by spectral ripples carry no information; exclude them
  // from the decay verdict.
  std::vector<double> trusted;
  for (int s = 0; s < n_shells; ++s)
    if (shells[s] > 10.0 * ripple * shell_weight[s] && shells[s] > 0.0)
      trusted.push_back(shells[s]);
  if (trusted.size() < 3) {
    res.inconclusive = true;
    return res;
  }
  // The first shells of the decade may still sit inside the density core;
  // the decay verdict looks at the outer half of the trusted shells.
  const std::size_t start = trusted.size() / 2;
  for (std::size_t s = start; s + 1 < trusted.size(); ++s)
    res.max_shell_ratio = std::max(res.max_shell_ratio, trusted[s + 1] / trusted[s]);
  res.geometric_decay = res.max_shell_ratio > 0.0 && res.max_shell_ratio <= 0.95;
  res.inconclusive = res.max_shell_ratio >= 1.0;
  return res;
}

TailProbeResult tail_probe(const Kernel& kernel, double eps, double a, const GridSpec& grid) {
  const double R = kernel.support_radius();
  if (!std::isfinite(R))
    throw std::domain_error("tail_probe: needs a compactly supported kernel");
  return tail_probe_density(equilibrium_density(kernel, eps, grid), a);
}

}  // namespace nlfp

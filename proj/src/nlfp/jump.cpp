#include "nlfp/jump.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "nlfp/quad.hpp"
#include "nlfp/spectral.hpp"

namespace nlfp {

ParticleEnsemble simulate(const Kernel& kernel, double eps, const InitialData& u0, double t,
                          std::size_t n_particles, std::uint64_t seed, int threads) {
  if (!(t >= 0.0)) throw std::invalid_argument("simulate: t must be >= 0");
  if (!(eps > 0.0)) throw std::invalid_argument("simulate: eps must be positive");
  if (n_particles < 1) throw std::invalid_argument("simulate: n_particles must be >= 1");
  if (u0.dim() != kernel.dim()) throw std::invalid_argument("simulate: dimension mismatch");

  const int d = kernel.dim();
  ParticleEnsemble ens;
  ens.dim = d;
  ens.time = t;
  ens.seed = seed;
  ens.positions.resize(n_particles * d);

  const double mean_wait = eps * eps;
  auto worker = [&](std::size_t lo, std::size_t hi) {
    double x[3], z[3];
    for (std::size_t i = lo; i < hi; ++i) {
      RngStream rng(seed, i);
      u0.sample(rng, std::span<double>(x, d));
      double remaining = t;
      for (;;) {
        const double wait = rng.exponential(mean_wait);
        if (wait >= remaining) {
          const double decay = std::exp(-remaining);
          for (int a = 0; a < d; ++a) x[a] *= decay;
          break;
        }
        const double decay = std::exp(-wait);
        for (int a = 0; a < d; ++a) x[a] *= decay;
        kernel.sample(rng, std::span<double>(z, d));
        for (int a = 0; a < d; ++a) x[a] += eps * z[a];
        remaining -= wait;
      }
      for (int a = 0; a < d; ++a) ens.positions[i * d + a] = x[a];
    }
  };

  if (threads <= 1 || n_particles < 1024) {
    worker(0, n_particles);
  } else {
    const int nt = std::min<std::size_t>(threads, 64);
    std::vector<std::thread> pool;
    const std::size_t chunk = (n_particles + nt - 1) / nt;
    for (int w = 0; w < nt; ++w) {
      const std::size_t lo = w * chunk;
      const std::size_t hi = std::min(n_particles, lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back(worker, lo, hi);
    }
    for (auto& th : pool) th.join();
  }
  return ens;
}

HistogramResult empirical_density(const ParticleEnsemble& ensemble, const GridSpec& grid) {
  if (grid.dim != ensemble.dim) throw std::invalid_argument("empirical_density: dim mismatch");
  HistogramResult res;
  res.density = GridDensity(grid);
  const std::size_t n = ensemble.size();
  if (n == 0) return res;

  const double h = grid.spacing();
  std::size_t escaped = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t idx = 0;
    bool inside = true;
    for (int a = 0; a < grid.dim; ++a) {
      const double x = ensemble.positions[i * grid.dim + a];
      const int j = static_cast<int>(std::floor((x + grid.half_width) / h));
      if (j < 0 || j >= grid.points) {
        inside = false;
        break;
      }
      idx = idx * grid.points + j;
    }
    if (inside)
      res.density[idx] += 1.0;
    else
      ++escaped;
  }
  const double norm = 1.0 / (static_cast<double>(n) * grid.cell_volume());
  for (auto& v : res.density.values()) v *= norm;
  res.escaped_fraction = static_cast<double>(escaped) / static_cast<double>(n);
  res.warning = res.escaped_fraction > 1e-3;
  return res;
}

void write_csv(const ParticleEnsemble& ensemble, std::ostream& os) {
  char buf[64];
  os << "particle";
  for (int a = 0; a < ensemble.dim; ++a) os << ",x" << (a + 1);
  os << "\n";
  for (std::size_t i = 0; i < ensemble.size(); ++i) {
    os << i;
    for (int a = 0; a < ensemble.dim; ++a) {
      std::snprintf(buf, sizeof(buf), ",%.16e", ensemble.positions[i * ensemble.dim + a]);
      os << buf;
    }
    os << "\n";
  }
}

WildResult wild_sum_truncated(const GridDensity& u0, const Kernel& kernel, double eps, double t,
                              int n_max, int quad_nodes) {
  if (n_max < 0) throw std::invalid_argument("wild_sum_truncated: n_max must be >= 0");
  if (!(t > 0.0)) throw std::invalid_argument("wild_sum_truncated: t must be positive");
  if (quad_nodes < 2) throw std::invalid_argument("wild_sum_truncated: quad_nodes must be >= 2");
  const double rate = t / (eps * eps);
  if (rate > 15.0)
    throw std::domain_error(
        "wild_sum_truncated: t/eps^2 > 15 spreads the Poisson mass over too many terms; "
        "use the spectral solver instead");

  const GridSpec& spec = u0.spec();
  if (spec.dim != kernel.dim()) throw std::invalid_argument("wild_sum_truncated: dim mismatch");

  // Gauss-Legendre nodes on [0, t] for Q(eta) = int_0^t Jhat(eps e^s eta) ds.
  const auto& xs = gl_nodes(quad_nodes);
  const auto& ws = gl_weights(quad_nodes);
  std::vector<double> s_nodes(quad_nodes), s_weights(quad_nodes), growth(quad_nodes);
  for (int q = 0; q < quad_nodes; ++q) {
    s_nodes[q] = 0.5 * t * (1.0 + xs[q]);
    s_weights[q] = 0.5 * t * ws[q];
    growth[q] = std::exp(s_nodes[q]);
  }

  const SpectralField u0_hat = transform(u0);
  const auto signed_data = to_signed_order(u0_hat);
  const int n = spec.points;
  const double shrink = std::exp(-t);
  const double inv_eps2 = 1.0 / (eps * eps);

  SpectralField out_hat(spec);
  double xi[2], eta[2], sxi[2];
  for (std::size_t i = 0; i < out_hat.values().size(); ++i) {
    out_hat.freqs(i, std::span<double>(xi, spec.dim));
    std::complex<double> u0v;
    if (spec.dim == 1) {
      const double kidx = shrink * spec.signed_index(static_cast<int>(i)) + n / 2;
      u0v = cubic_sample(std::span<const std::complex<double>>(signed_data), kidx);
    } else {
      const double kx = shrink * spec.signed_index(static_cast<int>(i) / n) + n / 2;
      const double ky = shrink * spec.signed_index(static_cast<int>(i) % n) + n / 2;
      u0v = cubic_sample_2d(std::span<const std::complex<double>>(signed_data), n, kx, ky);
    }
    for (int a = 0; a < spec.dim; ++a) eta[a] = shrink * xi[a];

    std::complex<double> q_agg = 0.0;
    for (int q = 0; q < quad_nodes; ++q) {
      for (int a = 0; a < spec.dim; ++a) sxi[a] = eps * growth[q] * eta[a];
      q_agg += s_weights[q] * kernel.fourier(std::span<const double>(sxi, spec.dim));
    }

    std::complex<double> sum = 1.0;   // n = 0 term
    std::complex<double> term = 1.0;
    for (int m = 1; m <= n_max; ++m) {
      term *= q_agg * inv_eps2 / static_cast<double>(m);
      sum += term;
    }
    out_hat[i] = std::exp(-rate) * u0v * sum;
  }

  WildResult res;
  res.density = inverse_transform(out_hat);
  double cdf = 0.0, pois = std::exp(-rate);
  for (int m = 0; m <= n_max; ++m) {
    cdf += pois;
    pois *= rate / (m + 1.0);
  }
  res.truncation_deficit = 1.0 - cdf;
  res.warning = res.truncation_deficit > 1e-3;
  return res;
}

namespace {

std::vector<GridDensity> picard_iterates(const GridDensity& u0, const Kernel& kernel, double eps,
                                         double t, double dt, int iters,
                                         std::vector<double>* gaps) {
  if (!(t > 0.0)) throw std::invalid_argument("duhamel_picard: t must be positive");
  if (!(dt > 0.0)) throw std::invalid_argument("duhamel_picard: dt must be positive");
  if (iters < 0) throw std::invalid_argument("duhamel_picard: iters must be >= 0");
  const double steps_real = t / dt;
  const int steps = static_cast<int>(std::llround(steps_real));
  if (steps < 1 || std::abs(steps_real - steps) > 1e-9)
    throw std::invalid_argument("duhamel_picard: dt must divide t");

  const double inv_eps2 = 1.0 / (eps * eps);

  // Iterate 0: u(t_j) = T_{t_j} u0 on the time grid.
  std::vector<GridDensity> cur(steps + 1);
  cur[0] = u0;
  for (int j = 1; j <= steps; ++j) cur[j] = dilate_semigroup(u0, j * dt, eps);

  std::vector<GridDensity> conv(steps + 1);
  for (int m = 0; m < iters; ++m) {
    for (int j = 0; j <= steps; ++j) conv[j] = convolve(kernel, eps, cur[j]);
    std::vector<GridDensity> next(steps + 1);
    next[0] = u0;
    for (int j = 1; j <= steps; ++j) {
      GridDensity acc = dilate_semigroup(u0, j * dt, eps);
      for (int s = 0; s <= j; ++s) {
        const double w = (s == 0 || s == j) ? 0.5 * dt : dt;  // trapezoid
        const GridDensity term =
            (s == j) ? conv[s] : dilate_semigroup(conv[s], (j - s) * dt, eps);
        acc = add_scaled(acc, 1.0, term, w * inv_eps2);
      }
      next[j] = std::move(acc);
    }
    if (gaps) gaps->push_back(l1_distance(next[steps], cur[steps]));
    cur = std::move(next);
  }
  return cur;
}

}  // namespace

GridDensity duhamel_picard(const GridDensity& u0, const Kernel& kernel, double eps, double t,
                           double dt, int iters) {
  auto states = picard_iterates(u0, kernel, eps, t, dt, iters, nullptr);
  return std::move(states.back());
}

std::vector<double> duhamel_picard_gaps(const GridDensity& u0, const Kernel& kernel, double eps,
                                        double t, double dt, int iters) {
  std::vector<double> gaps;
  picard_iterates(u0, kernel, eps, t, dt, iters, &gaps);
  return gaps;
}

}  // namespace nlfp

#include "nlfp/spectral.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

#include "nlfp/quad.hpp"

namespace nlfp {
namespace {

constexpr double kYMin = 1e-9;

// Composite Gauss-Legendre over [lo, 1] on geometric panels (ratio 2), each
// split further so that no sub-panel spans more than a few oscillation
// periods of the kernel transform.  osc is the total phase swept over [0, 1],
// i.e. (per-axis scale) * eps * |xi|_1.
template <class F>
std::complex<double> flow_quadrature(const F& f, double lo, double osc) {
  const auto& xs = gl_nodes(16);
  const auto& ws = gl_weights(16);
  std::complex<double> acc = 0.0;
  double hi = 1.0;
  while (hi > lo + 1e-300) {
    const double next = (hi <= 2.0 * lo && lo > 0.0) ? lo : std::max(lo, 0.5 * hi);
    const double width = hi - next;
    if (width <= 0.0) break;
    const int sub = std::max(1, static_cast<int>(std::ceil(width * osc / (4.0 * M_PI))));
    const double dw = width / sub;
    for (int p = 0; p < sub; ++p) {
      const double a = next + p * dw;
      const double mid = a + 0.5 * dw;
      std::complex<double> panel = 0.0;
      for (int q = 0; q < 16; ++q) panel += ws[q] * f(mid + 0.5 * dw * xs[q]);
      acc += 0.5 * dw * panel;
    }
    hi = next;
  }
  return acc;
}

double l1_norm(std::span<const double> xi) {
  double s = 0.0;
  for (double v : xi) s += std::abs(v);
  return s;
}

double sq_norm(std::span<const double> xi) {
  double s = 0.0;
  for (double v : xi) s += v * v;
  return s;
}

// Per-axis oscillation scale of the transform argument: compact kernels
// oscillate with period 2 pi / half-width, the gaussian just decays.
double osc_scale(const Kernel& kernel) {
  const double a = kernel.axis_support();
  return std::isfinite(a) ? a : 3.0;
}

}  // namespace

std::complex<double> phase_integral(const Kernel& kernel, double eps, std::span<const double> xi,
                                    double t) {
  if (!(eps > 0.0)) throw std::invalid_argument("phase_integral: eps must be positive");
  if (!(t >= 0.0)) throw std::invalid_argument("phase_integral: t must be >= 0");
  const int d = kernel.dim();
  const double lo_exact = std::isinf(t) ? 0.0 : std::exp(-t);
  const double lo = std::max(lo_exact, kYMin);

  double sxi[3];
  auto zeta_over_y = [&](double y) {
    for (int i = 0; i < d; ++i) sxi[i] = eps * y * xi[i];
    return (kernel.fourier(std::span<const double>(sxi, d)) - 1.0) / y;
  };

  const double osc = osc_scale(kernel) * eps * l1_norm(xi);
  std::complex<double> acc = flow_quadrature(zeta_over_y, lo, osc);
  if (lo_exact < kYMin) {
    // Closure over [lo_exact, y_min] from zeta_eps(y xi) ~= -(eps y)^2 |xi|^2.
    acc += -eps * eps * sq_norm(xi) * 0.5 * (kYMin * kYMin - lo_exact * lo_exact);
  }
  return acc / (eps * eps);
}

double mgf_flow_integral(const Kernel& kernel, double eps, std::span<const double> xi, double t) {
  if (!(eps > 0.0)) throw std::invalid_argument("mgf_flow_integral: eps must be positive");
  if (!(t >= 0.0)) throw std::invalid_argument("mgf_flow_integral: t must be >= 0");
  const int d = kernel.dim();
  const double lo_exact = std::isinf(t) ? 0.0 : std::exp(-t);
  const double lo = std::max(lo_exact, kYMin);

  double sxi[3];
  auto zeta_over_y = [&](double y) -> std::complex<double> {
    for (int i = 0; i < d; ++i) sxi[i] = eps * y * xi[i];
    const double m = kernel.mgf(std::span<const double>(sxi, d));
    if (!std::isfinite(m))
      throw std::domain_error("mgf_flow_integral: kernel MGF diverges at the requested point");
    return (m - 1.0) / y;
  };

  std::complex<double> acc = flow_quadrature(zeta_over_y, lo, 0.0);
  if (lo_exact < kYMin) {
    acc += eps * eps * sq_norm(xi) * 0.5 * (kYMin * kYMin - lo_exact * lo_exact);
  }
  return acc.real() / (eps * eps);
}

std::complex<double> evolve_hat_at(const FourierFn& u0_hat, const Kernel& kernel, double eps,
                                   double t, std::span<const double> xi) {
  const int d = kernel.dim();
  double shrunk[3] = {0.0, 0.0, 0.0};
  if (!std::isinf(t)) {
    const double et = std::exp(-t);
    for (int i = 0; i < d; ++i) shrunk[i] = et * xi[i];
  }
  return u0_hat(std::span<const double>(shrunk, d)) *
         std::exp(phase_integral(kernel, eps, xi, t));
}

std::complex<double> evolve_hat_at(const InitialData& u0, const Kernel& kernel, double eps,
                                   double t, std::span<const double> xi) {
  return evolve_hat_at(
      FourierFn([&u0](std::span<const double> z) { return u0.fourier(z); }), kernel, eps, t, xi);
}

SpectralField evolve_hat(const FourierFn& u0_hat, const Kernel& kernel, double eps, double t,
                         const GridSpec& grid) {
  if (grid.dim != kernel.dim()) throw std::invalid_argument("evolve_hat: dimension mismatch");
  SpectralField out(grid);
  double xi[2];
  for (std::size_t i = 0; i < out.values().size(); ++i) {
    out.freqs(i, std::span<double>(xi, grid.dim));
    out[i] = evolve_hat_at(u0_hat, kernel, eps, t, std::span<const double>(xi, grid.dim));
  }
  return out;
}

SpectralField evolve_hat(const InitialData& u0, const Kernel& kernel, double eps, double t,
                         const GridSpec& grid) {
  if (u0.dim() != kernel.dim()) throw std::invalid_argument("evolve_hat: dimension mismatch");
  return evolve_hat(FourierFn([&u0](std::span<const double> z) { return u0.fourier(z); }), kernel,
                    eps, t, grid);
}

std::vector<std::complex<double>> to_signed_order(const SpectralField& f) {
  const GridSpec& spec = f.spec();
  const int n = spec.points;
  std::vector<std::complex<double>> out(f.values().size());
  auto signed_pos = [&](int bin) { return spec.signed_index(bin) + n / 2; };
  if (spec.dim == 1) {
    for (int m = 0; m < n; ++m) out[signed_pos(m)] = f[m];
  } else {
    for (int mx = 0; mx < n; ++mx)
      for (int my = 0; my < n; ++my)
        out[static_cast<std::size_t>(signed_pos(mx)) * n + signed_pos(my)] =
            f[static_cast<std::size_t>(mx) * n + my];
  }
  return out;
}

SpectralField evolve_hat(const SpectralField& u0_hat, const Kernel& kernel, double eps, double t) {
  const GridSpec& spec = u0_hat.spec();
  if (spec.dim != kernel.dim()) throw std::invalid_argument("evolve_hat: dimension mismatch");
  const auto signed_data = to_signed_order(u0_hat);
  const int n = spec.points;
  const double shrink = std::isinf(t) ? 0.0 : std::exp(-t);
  SpectralField out(spec);
  double xi[2];
  for (std::size_t i = 0; i < out.values().size(); ++i) {
    out.freqs(i, std::span<double>(xi, spec.dim));
    std::complex<double> u0v;
    if (spec.dim == 1) {
      const double kidx = shrink * spec.signed_index(static_cast<int>(i)) + n / 2;
      u0v = cubic_sample(std::span<const std::complex<double>>(signed_data), kidx);
    } else {
      const double kx = shrink * spec.signed_index(static_cast<int>(i) / n) + n / 2;
      const double ky = shrink * spec.signed_index(static_cast<int>(i) % n) + n / 2;
      u0v = cubic_sample_2d(std::span<const std::complex<double>>(signed_data), n, kx, ky);
    }
    out[i] = u0v * std::exp(phase_integral(kernel, eps, std::span<const double>(xi, spec.dim), t));
  }
  return out;
}

std::complex<double> equilibrium_hat_at(const Kernel& kernel, double eps,
                                        std::span<const double> xi) {
  return std::exp(phase_integral(kernel, eps, xi, kTimeInfinity));
}

SpectralField equilibrium_hat(const Kernel& kernel, double eps, const GridSpec& grid) {
  if (grid.dim != kernel.dim()) throw std::invalid_argument("equilibrium_hat: dimension mismatch");
  SpectralField out(grid);
  double xi[2];
  for (std::size_t i = 0; i < out.values().size(); ++i) {
    out.freqs(i, std::span<double>(xi, grid.dim));
    out[i] = equilibrium_hat_at(kernel, eps, std::span<const double>(xi, grid.dim));
  }
  return out;
}

std::complex<double> local_fp_hat_at(const InitialData& u0, double t, std::span<const double> xi) {
  const int d = u0.dim();
  double shrunk[3] = {0.0, 0.0, 0.0};
  const double et = std::isinf(t) ? 0.0 : std::exp(-t);
  for (int i = 0; i < d; ++i) shrunk[i] = et * xi[i];
  const double damp = std::isinf(t) ? 1.0 : 1.0 - std::exp(-2.0 * t);
  return u0.fourier(std::span<const double>(shrunk, d)) * std::exp(-0.5 * damp * sq_norm(xi));
}

SpectralField local_fp_hat(const InitialData& u0, double t, const GridSpec& grid) {
  if (!(t >= 0.0)) throw std::invalid_argument("local_fp_hat: t must be >= 0");
  SpectralField out(grid);
  double xi[2];
  for (std::size_t i = 0; i < out.values().size(); ++i) {
    out.freqs(i, std::span<double>(xi, grid.dim));
    out[i] = local_fp_hat_at(u0, t, std::span<const double>(xi, grid.dim));
  }
  return out;
}

SpectralField local_fp_hat(const SpectralField& u0_hat, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("local_fp_hat: t must be >= 0");
  const GridSpec& spec = u0_hat.spec();
  const auto signed_data = to_signed_order(u0_hat);
  const int n = spec.points;
  const double shrink = std::isinf(t) ? 0.0 : std::exp(-t);
  const double damp = std::isinf(t) ? 1.0 : 1.0 - std::exp(-2.0 * t);
  SpectralField out(spec);
  double xi[2];
  for (std::size_t i = 0; i < out.values().size(); ++i) {
    out.freqs(i, std::span<double>(xi, spec.dim));
    std::complex<double> u0v;
    if (spec.dim == 1) {
      const double kidx = shrink * spec.signed_index(static_cast<int>(i)) + n / 2;
      u0v = cubic_sample(std::span<const std::complex<double>>(signed_data), kidx);
    } else {
      const double kx = shrink * spec.signed_index(static_cast<int>(i) / n) + n / 2;
      const double ky = shrink * spec.signed_index(static_cast<int>(i) % n) + n / 2;
      u0v = cubic_sample_2d(std::span<const std::complex<double>>(signed_data), n, kx, ky);
    }
    out[i] = u0v * std::exp(-0.5 * damp * sq_norm(std::span<const double>(xi, spec.dim)));
  }
  return out;
}

GridDensity solve_density(const InitialData& u0, const Kernel& kernel, double eps, double t,
                          const GridSpec& grid) {
  return inverse_transform(evolve_hat(u0, kernel, eps, t, grid));
}

GridDensity equilibrium_density(const Kernel& kernel, double eps, const GridSpec& grid) {
  return inverse_transform(equilibrium_hat(kernel, eps, grid));
}

GridDensity local_fp_density(const InitialData& u0, double t, const GridSpec& grid) {
  return inverse_transform(local_fp_hat(u0, t, grid));
}

}  // namespace nlfp

#pragma once

#include <complex>
#include <functional>
#include <span>

#include "nlfp/grid.hpp"
#include "nlfp/initial.hpp"
#include "nlfp/kernel.hpp"

namespace nlfp {

// Exact-in-Fourier solver.  With zeta_eps(xi) = Jhat(eps xi) - 1 the solution
// transform is
//   uhat(t, xi) = u0hat(e^-t xi) exp( (1/eps^2) int_0^t zeta_eps(e^-s xi) ds ),
// and the equilibrium is the t -> infinity limit with unit prefactor.  The
// s-integral is evaluated after the substitution y = e^-s as
//   (1/eps^2) int_{e^-t}^1 zeta_eps(y xi) / y dy,
// where the integrand vanishes linearly at y = 0, so t = infinity poses no
// singularity.  Pass t = kTimeInfinity for the equilibrium case.

// (1/eps^2) int_0^t zeta_eps(e^-s xi) ds; complex for skewed kernels.
std::complex<double> phase_integral(const Kernel& kernel, double eps,
                                    std::span<const double> xi, double t);

// Same flow integral with the kernel MGF in place of the Fourier transform:
// (1/eps^2) int_0^t [M_J(eps e^-s xi) - 1] ds.  Backs the cumulant module.
double mgf_flow_integral(const Kernel& kernel, double eps, std::span<const double> xi, double t);

// Analytic transform of the initial datum, evaluable at any frequency.
using FourierFn = std::function<std::complex<double>(std::span<const double>)>;

// Pointwise closed form uhat(t, xi); u0 enters analytically.
std::complex<double> evolve_hat_at(const InitialData& u0, const Kernel& kernel, double eps,
                                   double t, std::span<const double> xi);
std::complex<double> evolve_hat_at(const FourierFn& u0_hat, const Kernel& kernel, double eps,
                                   double t, std::span<const double> xi);

SpectralField evolve_hat(const InitialData& u0, const Kernel& kernel, double eps, double t,
                         const GridSpec& grid);
SpectralField evolve_hat(const FourierFn& u0_hat, const Kernel& kernel, double eps, double t,
                         const GridSpec& grid);

// Tabulated variant: u0hat(e^-t xi) is read by cubic interpolation on the
// frequency grid.
SpectralField evolve_hat(const SpectralField& u0_hat, const Kernel& kernel, double eps, double t);

std::complex<double> equilibrium_hat_at(const Kernel& kernel, double eps,
                                        std::span<const double> xi);
SpectralField equilibrium_hat(const Kernel& kernel, double eps, const GridSpec& grid);

// Fourier solution of the local equation du/dt = Lap u + div(x u):
// uhat(t, xi) = u0hat(e^-t xi) exp(-(1 - e^-2t) |xi|^2 / 2).
std::complex<double> local_fp_hat_at(const InitialData& u0, double t, std::span<const double> xi);
SpectralField local_fp_hat(const InitialData& u0, double t, const GridSpec& grid);
SpectralField local_fp_hat(const SpectralField& u0_hat, double t);

// Real-space wrappers (inverse transform of the closed forms).
GridDensity solve_density(const InitialData& u0, const Kernel& kernel, double eps, double t,
                          const GridSpec& grid);
GridDensity equilibrium_density(const Kernel& kernel, double eps, const GridSpec& grid);
GridDensity local_fp_density(const InitialData& u0, double t, const GridSpec& grid);

// Reorder a spectral field between DFT bin order and signed-frequency
// ascending order (used for interpolation in frequency).
std::vector<std::complex<double>> to_signed_order(const SpectralField& f);

}  // namespace nlfp

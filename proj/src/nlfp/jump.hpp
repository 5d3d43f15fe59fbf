#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "nlfp/grid.hpp"
#include "nlfp/initial.hpp"
#include "nlfp/kernel.hpp"

namespace nlfp {

// Empirical law of the jump process behind the equation: particles flow along
// dx/dt = -x and jump at rate 1/eps^2 with increments eps * Z, Z ~ J.
struct ParticleEnsemble {
  int dim = 1;
  double time = 0.0;
  std::uint64_t seed = 0;
  std::vector<double> positions;  // n * dim, row-major per particle

  std::size_t size() const { return dim > 0 ? positions.size() / dim : 0; }
};

// Bit-reproducible for fixed (seed, n_particles, parameters); particle i uses
// stream i of the master seed regardless of the thread count.
ParticleEnsemble simulate(const Kernel& kernel, double eps, const InitialData& u0, double t,
                          std::size_t n_particles, std::uint64_t seed, int threads = 1);

struct HistogramResult {
  GridDensity density;
  double escaped_fraction = 0.0;
  bool warning = false;  // set when more than 0.1% of particles fall outside the box
};
HistogramResult empirical_density(const ParticleEnsemble& ensemble, const GridSpec& grid);

void write_csv(const ParticleEnsemble& ensemble, std::ostream& os);

// Truncated Wild sum.  The time-simplex integrals reduce, by symmetry of the
// iterated convolution under permutations of (t_1, ..., t_n), to powers of a
// single Gauss-Legendre aggregate in frequency space:
//   uhat = e^{-t/eps^2} u0hat(e^-t xi) sum_{n<=n_max} (Q(e^-t xi)/eps^2)^n / n!
// with Q(eta) = int_0^t Jhat(eps e^s eta) ds.  The n = 0 term reproduces the
// pure dilation T_t u0.  Truncation leaves out exactly the Poisson tail
// beyond n_max, reported as truncation_deficit.
struct WildResult {
  GridDensity density;
  double truncation_deficit = 0.0;  // 1 - e^{-r} sum_{n<=n_max} r^n/n!,  r = t/eps^2
  bool warning = false;             // deficit above 1e-3
};
WildResult wild_sum_truncated(const GridDensity& u0, const Kernel& kernel, double eps, double t,
                              int n_max, int quad_nodes = 24);

// Picard iteration of the mild formulation
//   u(t) = T_t u0 + eps^-2 int_0^t T_{t-s} [J_eps * u(s)] ds
// with composite-trapezoid time integrals at step dt (dt must divide t).
// iters = 0 returns T_t u0.
GridDensity duhamel_picard(const GridDensity& u0, const Kernel& kernel, double eps, double t,
                           double dt, int iters);

// Successive L1 gaps ||u^(m) - u^(m-1)||(t) for m = 1..iters; contraction
// diagnostics for the fixed-point iteration.
std::vector<double> duhamel_picard_gaps(const GridDensity& u0, const Kernel& kernel, double eps,
                                        double t, double dt, int iters);

}  // namespace nlfp

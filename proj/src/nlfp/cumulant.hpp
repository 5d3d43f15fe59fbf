#pragma once

#include <functional>
#include <iosfwd>
#include <map>
#include <span>

#include "nlfp/common.hpp"
#include "nlfp/grid.hpp"
#include "nlfp/jump.hpp"
#include "nlfp/kernel.hpp"

namespace nlfp {

// Cumulants kappa_alpha = D^alpha log M[f](xi) at xi = 0.  They evolve by the
// closed linear law
//   kappa_alpha(u(t)) = e^{-|alpha| t} kappa_alpha(u0)
//                       + (1 - e^{-|alpha| t}) m_alpha(J_eps) / (|alpha| eps^2),
// so the equilibrium cumulants are m_alpha(J_eps) / (|alpha| eps^2).
struct CumulantTable {
  int dim = 1;
  int max_order = 4;
  std::map<MultiIndex, double> entries;

  double at(const MultiIndex& alpha) const;
  void set(const MultiIndex& alpha, double value);
};

// Cumulant table of analytic initial data (cross entries vanish).
CumulantTable initial_cumulants(const InitialData& u0, int max_order = 4);

// C(t, xi) = C0(e^-t xi) + (1/eps^2) int_0^t [M_J(eps e^-s xi) - 1] ds.
// Requires the kernel MGF finite along the flow; u0_cgf is the caller's
// cumulant generating function (its own domain is the caller's concern).
double cgf_eval(const Kernel& kernel, double eps,
                const std::function<double(std::span<const double>)>& u0_cgf, double t,
                std::span<const double> xi);

// Closed-form cumulant evolution; t = kTimeInfinity gives the equilibrium.
double evolve_cumulant(const Kernel& kernel, double eps, const CumulantTable& kappa0, double t,
                       const MultiIndex& alpha);

// Complete Bell polynomials: m_n = B_n(kappa_1, ..., kappa_n), d = 1.
// Refuses n > 20 (binomial overflow guard).
std::vector<double> bell_moments(std::span<const double> kappas);

// Partial Bell polynomial B_{n,k}(x_1, ..., x_{n-k+1}).
double partial_bell(int n, int k, std::span<const double> x);

// Moment recursion m_alpha(t) = gamma_alpha (1 - e^{-nt}) + e^{-nt} m_alpha(u0)
// with gamma built from kernel moments and lower-order *steady-state* moments
// (the internally consistent reading; it matches the Bell reconstruction at
// t = infinity).
double moment_recursion(const Kernel& kernel, double eps, const CumulantTable& m0, double t,
                        const MultiIndex& alpha);

// Per-coordinate empirical cumulants up to order 4 (kappa4 = mu4 - 3 mu2^2).
CumulantTable empirical_cumulants(const ParticleEnsemble& ensemble, int max_order = 4);
CumulantTable empirical_cumulants(const GridDensity& u, int max_order = 4);

void write_csv(const CumulantTable& table, std::ostream& os);

}  // namespace nlfp

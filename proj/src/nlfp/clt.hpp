#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <span>

#include "nlfp/fitting.hpp"
#include "nlfp/grid.hpp"
#include "nlfp/kernel.hpp"

namespace nlfp {

// One-dimensional probability density with zero mean and unit variance (the
// probabilist's normalization, second moment 1 rather than the kernel
// catalog's 2).  Obtained from a kernel by the exact rescaling x -> x/sqrt(2).
class CltDensity {
 public:
  static CltDensity from_kernel(const Kernel& kernel);
  static CltDensity standard_gaussian();

  const std::string& name() const { return name_; }
  double density(double x) const;
  std::complex<double> fourier(double xi) const;
  double fourier_envelope(double xi) const;  // monotone upper bound on |fhat|
  double rho3() const;                       // int |x|^3 f dx
  bool is_gaussian() const;

 private:
  explicit CltDensity(Kernel k);
  Kernel kernel_;
  std::string name_;
  double scale_ = 1.0;  // x -> x/scale with density scale * J(scale x)
};

// f_n(x) = (sbar^2 n)^{d/2} (f_{s1} * ... * f_{sn})(sqrt(n) sbar x),
// computed as the inverse transform of prod_i fhat(s_i xi / (sqrt(n) sbar)).
// The output has zero mean and unit variance up to quadrature tolerance.
GridDensity rescaled_convolution(const CltDensity& f, std::span<const double> sigmas,
                                 const GridSpec& grid);

// Deterministic spread sigma_i = exp((i mod 17)/17) in [1, e].
double default_sigma_rule(int i);

struct BeRateResult {
  std::vector<double> n_values;
  std::vector<double> sup_distances;  // sup_x |f_n(x) - G(x)| on the grid
  RateFit fit;                        // log-log fit of distance against n
  bool monotone = true;               // nonincreasing along n_values
  double worst_monotone_violation = 0.0;  // relative, 0 when monotone
};
BeRateResult be_rate_experiment(const CltDensity& f, const std::function<double(int)>& sigma_rule,
                                std::span<const int> n_list, const GridSpec& grid);

// delta_star: largest radius on which |fhat(xi)| <= exp(-|xi|^2/4) holds
// (+infinity when it holds globally on the probed range and beyond, by the
// envelope).  kappa: sup of |fhat| over |xi| >= delta, using the analytic
// envelope past the probed window.
struct CharfnBounds {
  double delta_star = 0.0;
  double kappa = 1.0;
};
CharfnBounds charfn_bounds(const CltDensity& f, double delta);

// s_m = e^-m sum_{n=m}^{2m} m^n/n!, computed from the log of the anchor term
// t_m (the largest) and downward term ratios, so it neither overflows nor
// underflows up to m ~ 1e6.
double poisson_partial_sum(std::uint64_t m);

// |prod a_i - prod b_i - sum_i (a_i - b_i) prod_{j<i} b_j prod_{j>i} a_j|.
double product_factorization_check(std::span<const double> a, std::span<const double> b);

}  // namespace nlfp

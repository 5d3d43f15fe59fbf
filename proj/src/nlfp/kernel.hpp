#pragma once

#include <complex>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "nlfp/common.hpp"
#include "nlfp/quad.hpp"
#include "nlfp/rng.hpp"

namespace nlfp {

// Jump-kernel catalog.  Every entry is a probability density on R^d with zero
// mean and second moments equal to 2 on the diagonal (so the nonlocal operator
// eps^-2 (J_eps * u - u) approaches the Laplacian as eps -> 0).  Densities are
// products of identical one-dimensional factors, which keeps moments, Fourier
// transforms and MGFs in closed form.
//
// Families:
//   uniform     box on [-sqrt(6), sqrt(6)]
//   triangular  tent on [-2 sqrt(3), 2 sqrt(3)]
//   gaussian    N(0, 2)
//   skew_step   two unequal rectangles with m1 = 0, m2 = 2, m3 != 0
class Kernel {
 public:
  enum class Family { uniform, triangular, gaussian, skew_step };

  static Kernel make(const std::string& name, int dim,
                     const std::map<std::string, double>& params = {});

  const std::string& name() const { return name_; }
  Family family() const { return family_; }
  int dim() const { return dim_; }
  bool symmetric() const { return family_ != Family::skew_step; }

  // Per-axis half-width of the support (the widest side for skew_step);
  // infinity for the gaussian family.
  double axis_support() const;
  // Euclidean radius R of the smallest ball containing the support.
  double support_radius() const;
  // Largest rate with a finite exponential moment (infinite for the catalog).
  double exp_rate() const;

  // One-dimensional factor: density, CDF, transforms and raw moments.
  double density1d(double x) const;
  double cdf1d(double x) const;
  std::complex<double> fourier1d(double r) const;
  double mgf1d(double s) const;
  double moment1d(int n) const;
  // Monotone envelope bounding |fourier1d| from above.
  double fourier_envelope1d(double r) const;

  // Product-structure evaluations on R^d.
  double density(std::span<const double> x) const;
  std::complex<double> fourier(std::span<const double> xi) const;
  double mgf(std::span<const double> xi) const;
  void sample(RngStream& rng, std::span<double> out) const;

  // m_alpha(J_eps) = eps^|alpha| prod_i m_{alpha_i}(J_1); exact closed forms.
  double moment(const MultiIndex& alpha, double eps = 1.0) const;

  // rho_{2+s} = int |x|^{2+s} J(x) dx with the declared exponent s.
  double s_exponent() const { return 1.0; }
  double rho_2s() const;

  // Piecewise-smooth panels of the one-dimensional factor, for real-space
  // quadrature against the density.
  std::span<const Panel> axis_panels() const { return axis_panels_; }

 private:
  Kernel() = default;

  Family family_ = Family::uniform;
  std::string name_;
  int dim_ = 1;
  // Family geometry: half-widths (a_, b_) and left-rectangle mass w_ for
  // skew_step; a_ is the half-width for uniform/triangular.
  double a_ = 0.0;
  double b_ = 0.0;
  double w_ = 0.0;
  std::vector<Panel> axis_panels_;
  mutable double rho3_cache_ = -1.0;
};

}  // namespace nlfp

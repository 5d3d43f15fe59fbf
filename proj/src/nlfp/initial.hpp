#pragma once

#include <complex>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "nlfp/grid.hpp"
#include "nlfp/rng.hpp"

namespace nlfp {

// Analytic initial data.  Solvers read the transform directly (no tabulation
// error), the jump simulator draws exact samples, and cumulant checks read
// closed-form cumulants.  Catalog: isotropic gaussian bumps, box indicators,
// point masses and two-component gaussian mixtures (mixtures are 1-D).
class InitialData {
 public:
  static InitialData gaussian(int dim, std::vector<double> mean, double var);
  static InitialData box(int dim, std::vector<double> center, double half_width);
  static InitialData point_mass(std::vector<double> x0);
  // w * N(mean1, var1) + (1 - w) * N(mean2, var2), d = 1.
  static InitialData gaussian_mixture(double w, double mean1, double var1, double mean2,
                                      double var2);

  // Config-driven construction; name in {gaussian, box, point, mixture}.
  static InitialData make(const std::string& name, int dim,
                          const std::map<std::string, double>& params);

  int dim() const { return dim_; }
  bool has_density() const { return kind_ != Kind::point; }

  double density(std::span<const double> x) const;
  std::complex<double> fourier(std::span<const double> xi) const;
  double cgf(std::span<const double> xi) const;  // log int exp(x.xi) u0(x) dx
  void sample(RngStream& rng, std::span<double> out) const;

  // kappa_n per axis, n = 1..4 (cross cumulants vanish for the catalog).
  double cumulant1d(int n, int axis = 0) const;

  // Sample the density at cell centers; point masses land in one cell.
  // normalize renormalizes the result to unit mass.
  GridDensity discretize(const GridSpec& spec, bool normalize = true) const;

 private:
  enum class Kind { gaussian, box, point, mixture };

  InitialData() = default;

  Kind kind_ = Kind::gaussian;
  int dim_ = 1;
  std::vector<double> center_;
  double var_ = 1.0;        // gaussian variance / box half-width
  double w1_ = 0.5;         // mixture weight of component 1
  double mean2_ = 0.0;
  double var2_ = 1.0;
};

}  // namespace nlfp

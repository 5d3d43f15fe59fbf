#pragma once

#include <complex>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "nlfp/kernel.hpp"

namespace nlfp {

// Uniform tensor grid over the centered box [-X, X]^d, sampled at cell
// centers x_j = -X + (j + 1/2) h with h = 2X/N.  The dual frequency grid is
// xi_k = pi k / X for signed k in [-N/2, N/2).
struct GridSpec {
  int dim = 1;
  double half_width = 12.0;
  int points = 4096;

  double spacing() const { return 2.0 * half_width / points; }
  std::size_t size() const {
    std::size_t n = 1;
    for (int i = 0; i < dim; ++i) n *= points;
    return n;
  }
  double coord(int j) const { return -half_width + (j + 0.5) * spacing(); }
  double freq(int k_signed) const { return M_PI * k_signed / half_width; }
  int signed_index(int bin) const { return bin < points / 2 ? bin : bin - points; }
  double cell_volume() const {
    double v = 1.0;
    for (int i = 0; i < dim; ++i) v *= spacing();
    return v;
  }
  bool power_of_two() const { return points > 0 && (points & (points - 1)) == 0; }
  bool operator==(const GridSpec&) const = default;
};

class GridDensity {
 public:
  GridDensity() = default;
  explicit GridDensity(const GridSpec& spec) : spec_(spec), v_(spec.size(), 0.0) {}
  GridDensity(const GridSpec& spec, std::vector<double> values);

  const GridSpec& spec() const { return spec_; }
  std::span<const double> values() const { return v_; }
  std::span<double> values() { return v_; }
  double operator[](std::size_t i) const { return v_[i]; }
  double& operator[](std::size_t i) { return v_[i]; }

  // Coordinates of the flattened cell index (row-major).
  void coords(std::size_t i, std::span<double> out) const;

 private:
  GridSpec spec_;
  std::vector<double> v_;
};

class SpectralField {
 public:
  SpectralField() = default;
  explicit SpectralField(const GridSpec& spec) : spec_(spec), v_(spec.size(), 0.0) {}
  SpectralField(const GridSpec& spec, std::vector<std::complex<double>> values);

  const GridSpec& spec() const { return spec_; }
  std::span<const std::complex<double>> values() const { return v_; }
  std::span<std::complex<double>> values() { return v_; }
  std::complex<double> operator[](std::size_t i) const { return v_[i]; }
  std::complex<double>& operator[](std::size_t i) { return v_[i]; }

  // Frequency coordinates of the flattened bin (DFT storage order).
  void freqs(std::size_t i, std::span<double> out) const;

 private:
  GridSpec spec_;
  std::vector<std::complex<double>> v_;
};

// Weight functions w(x) >= 1 on R^d.
//   polynomial k : <x>^k = (1 + |x|^2)^(k/2)
//   exponential a: exp(a <x>)
//   poisson a    : exp(a |x| log(1 + |x|))
struct Weight {
  enum class Kind { polynomial, exponential, poisson };
  Kind kind = Kind::polynomial;
  double param = 0.0;

  static Weight polynomial(double k) { return {Kind::polynomial, k}; }
  static Weight exponential(double a) { return {Kind::exponential, a}; }
  static Weight poisson(double a) { return {Kind::poisson, a}; }

  double value_r(double r) const;      // weight at |x| = r
  double drift_rate(double r) const;   // x . grad w / w at |x| = r
  std::string label() const;
};

double mass(const GridDensity& u);
double weighted_norm(const GridDensity& u, const Weight& w);

struct NormReport {
  double value = 0.0;
  double boundary_fraction = 0.0;  // weighted share of the outermost 5% of cells
  bool boundary_warning = false;   // set when that share exceeds 1e-6
};
NormReport weighted_norm_checked(const GridDensity& u, const Weight& w);

// Raw grid moments (midpoint quadrature, signed values).
double grid_moment(const GridDensity& u, const MultiIndex& alpha);

double l1_distance(const GridDensity& a, const GridDensity& b);
double linf_distance(const GridDensity& a, const GridDensity& b);

GridDensity subtract(const GridDensity& a, const GridDensity& b);
GridDensity add_scaled(const GridDensity& a, double ca, const GridDensity& b, double cb);

// Continuum-normalized discrete transforms:
//   forward  u |-> uhat(xi) ~ int exp(-i x.xi) u(x) dx
//   inverse  uhat |-> u(x) ~ (2 pi)^-d int exp(i x.xi) uhat(xi) dxi
// The pair is exactly inverse up to rounding.
SpectralField transform(const GridDensity& u);
GridDensity inverse_transform(const SpectralField& f);

// J_eps * u by pointwise spectral multiplication with Jhat(eps xi).
// Compactly supported kernels require eps * support_radius < half_width.
GridDensity convolve(const Kernel& kernel, double eps, const GridDensity& u);

// (T_t u)(x) = exp((d - 1/eps^2) t) u(e^t x), cubic interpolation at the
// stretched points; reads outside the box are zero.
GridDensity dilate_semigroup(const GridDensity& u, double t, double eps);

// Catmull-Rom interpolation of uniformly indexed samples; out-of-range
// stencil entries read as zero.
double cubic_sample(std::span<const double> v, double idx);
std::complex<double> cubic_sample(std::span<const std::complex<double>> v, double idx);
std::complex<double> cubic_sample_2d(std::span<const std::complex<double>> v, int n, double ix,
                                     double iy);
double cubic_sample_2d(std::span<const double> v, int n, double ix, double iy);

void write_csv(const GridDensity& u, std::ostream& os);
void write_cache(const GridDensity& u, const std::string& path);
GridDensity read_cache(const std::string& path, const GridSpec& expected);

}  // namespace nlfp

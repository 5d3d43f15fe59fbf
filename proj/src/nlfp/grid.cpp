#include "nlfp/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <mutex>
#include <ostream>
#include <stdexcept>

namespace nlfp {
namespace {

std::mutex& fftw_mutex() {
  static std::mutex m;
  return m;
}

// Complex DFT with FFTW; the planner is not thread-safe, execution is.
void run_dft(const GridSpec& spec, std::vector<std::complex<double>>& data, int sign) {
  fftw_complex* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(fftw_mutex());
    if (spec.dim == 1) {
      plan = fftw_plan_dft_1d(spec.points, buf, buf, sign, FFTW_ESTIMATE);
    } else if (spec.dim == 2) {
      plan = fftw_plan_dft_2d(spec.points, spec.points, buf, buf, sign, FFTW_ESTIMATE);
    } else {
      throw std::invalid_argument("transform: grids support dim in {1,2}");
    }
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(fftw_mutex());
    fftw_destroy_plan(plan);
  }
}

// Per-axis phase factors relating cell-centered samples to the continuum
// transform: exp(-i x_j xi_k) = (-1)^k exp(-i pi k / N) exp(-2 pi i j k / N).
std::vector<std::complex<double>> forward_phases(const GridSpec& spec) {
  std::vector<std::complex<double>> ph(spec.points);
  for (int bin = 0; bin < spec.points; ++bin) {
    const int k = spec.signed_index(bin);
    const double sgn = (k % 2 == 0) ? 1.0 : -1.0;
    ph[bin] = sgn * std::exp(std::complex<double>(0.0, -M_PI * k / spec.points));
  }
  return ph;
}

void check_fft_grid(const GridSpec& spec) {
  if (!spec.power_of_two()) throw std::invalid_argument("transform: points must be a power of two");
  if (spec.dim < 1 || spec.dim > 2)
    throw std::invalid_argument("transform: grids support dim in {1,2}");
}

}  // namespace

GridDensity::GridDensity(const GridSpec& spec, std::vector<double> values)
    : spec_(spec), v_(std::move(values)) {
  if (v_.size() != spec_.size()) throw std::invalid_argument("GridDensity: value count mismatch");
}

void GridDensity::coords(std::size_t i, std::span<double> out) const {
  if (spec_.dim == 1) {
    out[0] = spec_.coord(static_cast<int>(i));
  } else {
    out[0] = spec_.coord(static_cast<int>(i) / spec_.points);
    out[1] = spec_.coord(static_cast<int>(i) % spec_.points);
  }
}

SpectralField::SpectralField(const GridSpec& spec, std::vector<std::complex<double>> values)
    : spec_(spec), v_(std::move(values)) {
  if (v_.size() != spec_.size()) throw std::invalid_argument("SpectralField: value count mismatch");
}

void SpectralField::freqs(std::size_t i, std::span<double> out) const {
  if (spec_.dim == 1) {
    out[0] = spec_.freq(spec_.signed_index(static_cast<int>(i)));
  } else {
    out[0] = spec_.freq(spec_.signed_index(static_cast<int>(i) / spec_.points));
    out[1] = spec_.freq(spec_.signed_index(static_cast<int>(i) % spec_.points));
  }
}

double Weight::value_r(double r) const {
  switch (kind) {
    case Kind::polynomial:
      return std::pow(1.0 + r * r, 0.5 * param);
    case Kind::exponential:
      return std::exp(param * std::sqrt(1.0 + r * r));
    case Kind::poisson:
      return std::exp(param * r * std::log1p(r));
  }
  return 1.0;
}

double Weight::drift_rate(double r) const {
  switch (kind) {
    case Kind::polynomial:
      return param * r * r / (1.0 + r * r);
    case Kind::exponential:
      return param * r * r / std::sqrt(1.0 + r * r);
    case Kind::poisson:
      return param * r * (std::log1p(r) + r / (1.0 + r));
  }
  return 0.0;
}

std::string Weight::label() const {
  char buf[64];
  const char* name = kind == Kind::polynomial    ? "polynomial"
                     : kind == Kind::exponential ? "exponential"
                                                 : "poisson";
  std::snprintf(buf, sizeof(buf), "%s(%g)", name, param);
  return buf;
}

double mass(const GridDensity& u) {
  double s = 0.0;
  for (double v : u.values()) s += v;
  return s * u.spec().cell_volume();
}

namespace {

template <class F>
void for_each_cell(const GridSpec& spec, F&& f) {
  if (spec.dim == 1) {
    for (int j = 0; j < spec.points; ++j) f(static_cast<std::size_t>(j), spec.coord(j), 0.0);
  } else {
    std::size_t i = 0;
    for (int jx = 0; jx < spec.points; ++jx) {
      const double x = spec.coord(jx);
      for (int jy = 0; jy < spec.points; ++jy, ++i) f(i, x, spec.coord(jy));
    }
  }
}

}  // namespace

double weighted_norm(const GridDensity& u, const Weight& w) {
  double s = 0.0;
  const auto vals = u.values();
  for_each_cell(u.spec(), [&](std::size_t i, double x, double y) {
    const double r = u.spec().dim == 1 ? std::abs(x) : std::sqrt(x * x + y * y);
    s += w.value_r(r) * std::abs(vals[i]);
  });
  return s * u.spec().cell_volume();
}

NormReport weighted_norm_checked(const GridDensity& u, const Weight& w) {
  const auto& spec = u.spec();
  const int band = std::max(1, static_cast<int>(std::ceil(0.05 * spec.points)));
  const auto vals = u.values();
  double total = 0.0, outer = 0.0;
  std::size_t i = 0;
  if (spec.dim == 1) {
    for (int j = 0; j < spec.points; ++j, ++i) {
      const double c = w.value_r(std::abs(spec.coord(j))) * std::abs(vals[i]);
      total += c;
      if (j < band || j >= spec.points - band) outer += c;
    }
  } else {
    for (int jx = 0; jx < spec.points; ++jx) {
      for (int jy = 0; jy < spec.points; ++jy, ++i) {
        const double x = spec.coord(jx), y = spec.coord(jy);
        const double c = w.value_r(std::sqrt(x * x + y * y)) * std::abs(vals[i]);
        total += c;
        if (jx < band || jx >= spec.points - band || jy < band || jy >= spec.points - band)
          outer += c;
      }
    }
  }
  NormReport rep;
  rep.value = total * spec.cell_volume();
  rep.boundary_fraction = total > 0.0 ? outer / total : 0.0;
  rep.boundary_warning = rep.boundary_fraction > 1e-6;
  return rep;
}

double grid_moment(const GridDensity& u, const MultiIndex& alpha) {
  if (static_cast<int>(alpha.size()) != u.spec().dim)
    throw std::invalid_argument("grid_moment: multi-index length != dim");
  double s = 0.0;
  const auto vals = u.values();
  for_each_cell(u.spec(), [&](std::size_t i, double x, double y) {
    double m = 1.0;
    for (int p = 0; p < alpha[0]; ++p) m *= x;
    if (u.spec().dim == 2)
      for (int p = 0; p < alpha[1]; ++p) m *= y;
    s += m * vals[i];
  });
  return s * u.spec().cell_volume();
}

double l1_distance(const GridDensity& a, const GridDensity& b) {
  if (!(a.spec() == b.spec())) throw std::invalid_argument("l1_distance: grid mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.values().size(); ++i) s += std::abs(a[i] - b[i]);
  return s * a.spec().cell_volume();
}

double linf_distance(const GridDensity& a, const GridDensity& b) {
  if (!(a.spec() == b.spec())) throw std::invalid_argument("linf_distance: grid mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.values().size(); ++i) s = std::max(s, std::abs(a[i] - b[i]));
  return s;
}

GridDensity subtract(const GridDensity& a, const GridDensity& b) {
  return add_scaled(a, 1.0, b, -1.0);
}

GridDensity add_scaled(const GridDensity& a, double ca, const GridDensity& b, double cb) {
  if (!(a.spec() == b.spec())) throw std::invalid_argument("add_scaled: grid mismatch");
  GridDensity out(a.spec());
  for (std::size_t i = 0; i < a.values().size(); ++i) out[i] = ca * a[i] + cb * b[i];
  return out;
}

SpectralField transform(const GridDensity& u) {
  check_fft_grid(u.spec());
  const GridSpec& spec = u.spec();
  std::vector<std::complex<double>> data(u.values().begin(), u.values().end());
  run_dft(spec, data, FFTW_FORWARD);
  const auto ph = forward_phases(spec);
  const double scale1 = spec.spacing();
  if (spec.dim == 1) {
    for (int m = 0; m < spec.points; ++m) data[m] *= scale1 * ph[m];
  } else {
    std::size_t i = 0;
    for (int mx = 0; mx < spec.points; ++mx)
      for (int my = 0; my < spec.points; ++my, ++i)
        data[i] *= scale1 * scale1 * ph[mx] * ph[my];
  }
  return SpectralField(spec, std::move(data));
}

GridDensity inverse_transform(const SpectralField& f) {
  check_fft_grid(f.spec());
  const GridSpec& spec = f.spec();
  std::vector<std::complex<double>> data(f.values().begin(), f.values().end());
  const auto ph = forward_phases(spec);
  if (spec.dim == 1) {
    for (int m = 0; m < spec.points; ++m) data[m] *= std::conj(ph[m]);
  } else {
    std::size_t i = 0;
    for (int mx = 0; mx < spec.points; ++mx)
      for (int my = 0; my < spec.points; ++my, ++i) data[i] *= std::conj(ph[mx] * ph[my]);
  }
  run_dft(spec, data, FFTW_BACKWARD);
  GridDensity out(spec);
  const double scale = std::pow(1.0 / (2.0 * spec.half_width), spec.dim);
  for (std::size_t i = 0; i < data.size(); ++i) out[i] = data[i].real() * scale;
  return out;
}

GridDensity convolve(const Kernel& kernel, double eps, const GridDensity& u) {
  if (kernel.dim() != u.spec().dim) throw std::invalid_argument("convolve: dimension mismatch");
  if (!(eps > 0.0)) throw std::invalid_argument("convolve: eps must be positive");
  const double R = kernel.support_radius();
  if (std::isfinite(R) && !(eps * R < u.spec().half_width))
    throw std::domain_error("convolve: domain too small, eps * support_radius >= half_width");
  SpectralField f = transform(u);
  double xi[2];
  double sxi[2];
  for (std::size_t i = 0; i < f.values().size(); ++i) {
    f.freqs(i, std::span<double>(xi, u.spec().dim));
    for (int d = 0; d < u.spec().dim; ++d) sxi[d] = eps * xi[d];
    f[i] *= kernel.fourier(std::span<const double>(sxi, u.spec().dim));
  }
  return inverse_transform(f);
}

double cubic_sample(std::span<const double> v, double idx) {
  const int n = static_cast<int>(v.size());
  const double fl = std::floor(idx);
  const int i1 = static_cast<int>(fl);
  const double s = idx - fl;
  auto at = [&](int i) { return (i >= 0 && i < n) ? v[i] : 0.0; };
  const double p0 = at(i1 - 1), p1 = at(i1), p2 = at(i1 + 1), p3 = at(i1 + 2);
  return 0.5 * (2.0 * p1 + s * (-p0 + p2) + s * s * (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3) +
                s * s * s * (-p0 + 3.0 * p1 - 3.0 * p2 + p3));
}

std::complex<double> cubic_sample(std::span<const std::complex<double>> v, double idx) {
  const int n = static_cast<int>(v.size());
  const double fl = std::floor(idx);
  const int i1 = static_cast<int>(fl);
  const double s = idx - fl;
  auto at = [&](int i) { return (i >= 0 && i < n) ? v[i] : std::complex<double>(0.0); };
  const auto p0 = at(i1 - 1), p1 = at(i1), p2 = at(i1 + 1), p3 = at(i1 + 2);
  return 0.5 * (2.0 * p1 + s * (-p0 + p2) + s * s * (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3) +
                s * s * s * (-p0 + 3.0 * p1 - 3.0 * p2 + p3));
}

namespace {

template <class T>
T cubic2d_impl(std::span<const T> v, int n, double ix, double iy) {
  const double fl = std::floor(ix);
  const int i1 = static_cast<int>(fl);
  const double s = ix - fl;
  T rows[4];
  for (int r = 0; r < 4; ++r) {
    const int i = i1 - 1 + r;
    if (i < 0 || i >= n) {
      rows[r] = T{};
    } else {
      rows[r] = cubic_sample(v.subspan(static_cast<std::size_t>(i) * n, n), iy);
    }
  }
  return 0.5 * (2.0 * rows[1] + s * (-rows[0] + rows[2]) +
                s * s * (2.0 * rows[0] - 5.0 * rows[1] + 4.0 * rows[2] - rows[3]) +
                s * s * s * (-rows[0] + 3.0 * rows[1] - 3.0 * rows[2] + rows[3]));
}

}  // namespace

std::complex<double> cubic_sample_2d(std::span<const std::complex<double>> v, int n, double ix,
                                     double iy) {
  return cubic2d_impl(v, n, ix, iy);
}

double cubic_sample_2d(std::span<const double> v, int n, double ix, double iy) {
  return cubic2d_impl(v, n, ix, iy);
}

GridDensity dilate_semigroup(const GridDensity& u, double t, double eps) {
  if (!(t >= 0.0)) throw std::invalid_argument("dilate_semigroup: t must be >= 0");
  if (!(eps > 0.0)) throw std::invalid_argument("dilate_semigroup: eps must be positive");
  const GridSpec& spec = u.spec();
  const double et = std::exp(t);
  const double amp = std::exp((spec.dim - 1.0 / (eps * eps)) * t);
  const double h = spec.spacing();
  GridDensity out(spec);
  if (spec.dim == 1) {
    for (int j = 0; j < spec.points; ++j) {
      const double y = et * spec.coord(j);
      const double idx = (y + spec.half_width) / h - 0.5;
      out[j] = amp * cubic_sample(u.values(), idx);
    }
  } else {
    std::size_t i = 0;
    for (int jx = 0; jx < spec.points; ++jx) {
      const double ix = (et * spec.coord(jx) + spec.half_width) / h - 0.5;
      for (int jy = 0; jy < spec.points; ++jy, ++i) {
        const double iy = (et * spec.coord(jy) + spec.half_width) / h - 0.5;
        out[i] = amp * cubic_sample_2d(u.values(), spec.points, ix, iy);
      }
    }
  }
  return out;
}

void write_csv(const GridDensity& u, std::ostream& os) {
  const auto& spec = u.spec();
  char buf[96];
  if (spec.dim == 1) {
    os << "x,value\n";
    for (int j = 0; j < spec.points; ++j) {
      std::snprintf(buf, sizeof(buf), "%.16e,%.16e\n", spec.coord(j), u[j]);
      os << buf;
    }
  } else {
    os << "x1,x2,value\n";
    std::size_t i = 0;
    for (int jx = 0; jx < spec.points; ++jx)
      for (int jy = 0; jy < spec.points; ++jy, ++i) {
        std::snprintf(buf, sizeof(buf), "%.16e,%.16e,%.16e\n", spec.coord(jx), spec.coord(jy),
                      u[i]);
        os << buf;
      }
  }
}

namespace {
constexpr char kCacheMagic[8] = {'N', 'L', 'F', 'P', 'G', 'R', 'D', '1'};
}

void write_cache(const GridDensity& u, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::ios_base::failure("write_cache: cannot open " + path);
  os.write(kCacheMagic, sizeof(kCacheMagic));
  const std::int64_t dim = u.spec().dim, pts = u.spec().points;
  const double hw = u.spec().half_width;
  os.write(reinterpret_cast<const char*>(&dim), sizeof(dim));
  os.write(reinterpret_cast<const char*>(&pts), sizeof(pts));
  os.write(reinterpret_cast<const char*>(&hw), sizeof(hw));
  os.write(reinterpret_cast<const char*>(u.values().data()),
           static_cast<std::streamsize>(u.values().size() * sizeof(double)));
}

GridDensity read_cache(const std::string& path, const GridSpec& expected) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::ios_base::failure("read_cache: cannot open " + path);
  char magic[8];
  is.read(magic, sizeof(magic));
  if (std::memcmp(magic, kCacheMagic, sizeof(magic)) != 0)
    throw std::runtime_error("read_cache: bad magic in " + path);
  std::int64_t dim = 0, pts = 0;
  double hw = 0.0;
  is.read(reinterpret_cast<char*>(&dim), sizeof(dim));
  is.read(reinterpret_cast<char*>(&pts), sizeof(pts));
  is.read(reinterpret_cast<char*>(&hw), sizeof(hw));
  if (dim != expected.dim || pts != expected.points || hw != expected.half_width)
    throw std::runtime_error("read_cache: grid metadata mismatch in " + path);
  GridDensity out(expected);
  is.read(reinterpret_cast<char*>(out.values().data()),
          static_cast<std::streamsize>(out.values().size() * sizeof(double)));
  if (!is) throw std::ios_base::failure("read_cache: truncated file " + path);
  return out;
}

}  // namespace nlfp

#include "nlfp/initial.hpp"

#include <cmath>
#include <stdexcept>

namespace nlfp {
namespace {

double sinc(double u) {
  if (std::abs(u) < 1e-4) {
    const double u2 = u * u;
    return 1.0 - u2 / 6.0 + u2 * u2 / 120.0;
  }
  return std::sin(u) / u;
}

double log_sinhc(double u) {
  const double au = std::abs(u);
  if (au < 1e-4) return au * au / 6.0;
  // log(sinh u / u), overflow-safe for large u.
  return au - std::log(2.0 * au) + std::log1p(-std::exp(-2.0 * au));
}

// Raw moments of N(mu, v) up to order 4.
double gauss_raw_moment(int n, double mu, double v) {
  switch (n) {
    case 0: return 1.0;
    case 1: return mu;
    case 2: return mu * mu + v;
    case 3: return mu * mu * mu + 3.0 * mu * v;
    case 4: return std::pow(mu, 4) + 6.0 * mu * mu * v + 3.0 * v * v;
  }
  throw std::invalid_argument("gauss_raw_moment: order > 4");
}

}  // namespace

InitialData InitialData::gaussian(int dim, std::vector<double> mean, double var) {
  if (static_cast<int>(mean.size()) != dim)
    throw std::invalid_argument("initial gaussian: mean length != dim");
  if (!(var > 0.0)) throw std::invalid_argument("initial gaussian: var must be positive");
  InitialData u;
  u.kind_ = Kind::gaussian;
  u.dim_ = dim;
  u.center_ = std::move(mean);
  u.var_ = var;
  return u;
}

InitialData InitialData::box(int dim, std::vector<double> center, double half_width) {
  if (static_cast<int>(center.size()) != dim)
    throw std::invalid_argument("initial box: center length != dim");
  if (!(half_width > 0.0)) throw std::invalid_argument("initial box: half_width must be positive");
  InitialData u;
  u.kind_ = Kind::box;
  u.dim_ = dim;
  u.center_ = std::move(center);
  u.var_ = half_width;
  return u;
}

InitialData InitialData::point_mass(std::vector<double> x0) {
  InitialData u;
  u.kind_ = Kind::point;
  u.dim_ = static_cast<int>(x0.size());
  u.center_ = std::move(x0);
  return u;
}

InitialData InitialData::gaussian_mixture(double w, double mean1, double var1, double mean2,
                                          double var2) {
  if (!(w > 0.0 && w < 1.0)) throw std::invalid_argument("initial mixture: weight not in (0,1)");
  if (!(var1 > 0.0 && var2 > 0.0))
    throw std::invalid_argument("initial mixture: variances must be positive");
  InitialData u;
  u.kind_ = Kind::mixture;
  u.dim_ = 1;
  u.center_ = {mean1};
  u.var_ = var1;
  u.w1_ = w;
  u.mean2_ = mean2;
  u.var2_ = var2;
  return u;
}

InitialData InitialData::make(const std::string& name, int dim,
                              const std::map<std::string, double>& params) {
  auto get = [&](const char* key, double dflt) {
    auto it = params.find(key);
    return it == params.end() ? dflt : it->second;
  };
  if (name == "gaussian") {
    std::vector<double> mean(dim, 0.0);
    mean[0] = get("mean", 0.0);
    return gaussian(dim, std::move(mean), get("var", 1.0));
  }
  if (name == "box") {
    std::vector<double> center(dim, 0.0);
    center[0] = get("center", 0.0);
    return box(dim, std::move(center), get("half", 1.0));
  }
  if (name == "point") {
    std::vector<double> x0(dim, 0.0);
    x0[0] = get("x0", 0.0);
    return point_mass(std::move(x0));
  }
  if (name == "mixture") {
    if (dim != 1) throw std::invalid_argument("initial mixture: only d = 1");
    return gaussian_mixture(get("w1", 0.5), get("mean1", 0.0), get("var1", 1.0),
                            get("mean2", 0.0), get("var2", 1.0));
  }
  throw std::invalid_argument("initial: unknown name '" + name +
                              "' (catalog: gaussian, box, point, mixture)");
}

double InitialData::density(std::span<const double> x) const {
  switch (kind_) {
    case Kind::gaussian: {
      double p = 1.0;
      for (int i = 0; i < dim_; ++i) {
        const double z = x[i] - center_[i];
        p *= std::exp(-0.5 * z * z / var_) / std::sqrt(2.0 * M_PI * var_);
      }
      return p;
    }
    case Kind::box: {
      double p = 1.0;
      for (int i = 0; i < dim_; ++i)
        p *= (std::abs(x[i] - center_[i]) <= var_) ? 1.0 / (2.0 * var_) : 0.0;
      return p;
    }
    case Kind::mixture: {
      const double z1 = x[0] - center_[0], z2 = x[0] - mean2_;
      return w1_ * std::exp(-0.5 * z1 * z1 / var_) / std::sqrt(2.0 * M_PI * var_) +
             (1.0 - w1_) * std::exp(-0.5 * z2 * z2 / var2_) / std::sqrt(2.0 * M_PI * var2_);
    }
    case Kind::point:
      throw std::domain_error("point mass has no density");
  }
  return 0.0;
}

std::complex<double> InitialData::fourier(std::span<const double> xi) const {
  const std::complex<double> i(0.0, 1.0);
  switch (kind_) {
    case Kind::gaussian: {
      std::complex<double> p = 1.0;
      for (int d = 0; d < dim_; ++d)
        p *= std::exp(-i * (center_[d] * xi[d]) - 0.5 * var_ * xi[d] * xi[d]);
      return p;
    }
    case Kind::box: {
      std::complex<double> p = 1.0;
      for (int d = 0; d < dim_; ++d) p *= std::exp(-i * (center_[d] * xi[d])) * sinc(var_ * xi[d]);
      return p;
    }
    case Kind::point: {
      double dot = 0.0;
      for (int d = 0; d < dim_; ++d) dot += center_[d] * xi[d];
      return std::exp(-i * dot);
    }
    case Kind::mixture:
      return w1_ * std::exp(-i * (center_[0] * xi[0]) - 0.5 * var_ * xi[0] * xi[0]) +
             (1.0 - w1_) * std::exp(-i * (mean2_ * xi[0]) - 0.5 * var2_ * xi[0] * xi[0]);
  }
  return 0.0;
}

double InitialData::cgf(std::span<const double> xi) const {
  switch (kind_) {
    case Kind::gaussian: {
      double s = 0.0;
      for (int d = 0; d < dim_; ++d) s += center_[d] * xi[d] + 0.5 * var_ * xi[d] * xi[d];
      return s;
    }
    case Kind::box: {
      double s = 0.0;
      for (int d = 0; d < dim_; ++d) s += center_[d] * xi[d] + log_sinhc(var_ * xi[d]);
      return s;
    }
    case Kind::point: {
      double s = 0.0;
      for (int d = 0; d < dim_; ++d) s += center_[d] * xi[d];
      return s;
    }
    case Kind::mixture: {
      const double e1 = center_[0] * xi[0] + 0.5 * var_ * xi[0] * xi[0];
      const double e2 = mean2_ * xi[0] + 0.5 * var2_ * xi[0] * xi[0];
      const double m = std::max(e1, e2);
      return m + std::log(w1_ * std::exp(e1 - m) + (1.0 - w1_) * std::exp(e2 - m));
    }
  }
  return 0.0;
}

void InitialData::sample(RngStream& rng, std::span<double> out) const {
  switch (kind_) {
    case Kind::gaussian:
      for (int d = 0; d < dim_; ++d) out[d] = center_[d] + std::sqrt(var_) * rng.normal();
      return;
    case Kind::box:
      for (int d = 0; d < dim_; ++d) out[d] = center_[d] + var_ * (2.0 * rng.uniform01() - 1.0);
      return;
    case Kind::point:
      for (int d = 0; d < dim_; ++d) out[d] = center_[d];
      return;
    case Kind::mixture: {
      const bool first = rng.uniform01() < w1_;
      out[0] = (first ? center_[0] : mean2_) + std::sqrt(first ? var_ : var2_) * rng.normal();
      return;
    }
  }
}

double InitialData::cumulant1d(int n, int axis) const {
  if (n < 1 || n > 4) throw std::invalid_argument("cumulant1d: order must be 1..4");
  switch (kind_) {
    case Kind::gaussian:
      if (n == 1) return center_[axis];
      if (n == 2) return var_;
      return 0.0;
    case Kind::box:
      if (n == 1) return center_[axis];
      if (n == 2) return var_ * var_ / 3.0;
      if (n == 3) return 0.0;
      return -2.0 * std::pow(var_, 4) / 15.0;
    case Kind::point:
      return n == 1 ? center_[axis] : 0.0;
    case Kind::mixture: {
      double m[5];
      for (int k = 0; k <= 4; ++k)
        m[k] = w1_ * gauss_raw_moment(k, center_[0], var_) +
               (1.0 - w1_) * gauss_raw_moment(k, mean2_, var2_);
      const double mu = m[1];
      const double c2 = m[2] - mu * mu;
      const double c3 = m[3] - 3.0 * mu * m[2] + 2.0 * mu * mu * mu;
      const double c4 = m[4] - 4.0 * mu * m[3] + 6.0 * mu * mu * m[2] - 3.0 * std::pow(mu, 4);
      switch (n) {
        case 1: return mu;
        case 2: return c2;
        case 3: return c3;
        default: return c4 - 3.0 * c2 * c2;
      }
    }
  }
  return 0.0;
}

GridDensity InitialData::discretize(const GridSpec& spec, bool normalize) const {
  if (spec.dim != dim_) throw std::invalid_argument("discretize: dimension mismatch");
  GridDensity out(spec);
  if (kind_ == Kind::point) {
    // All mass in the containing cell.
    std::size_t idx = 0;
    for (int d = 0; d < dim_; ++d) {
      int j = static_cast<int>(std::floor((center_[d] + spec.half_width) / spec.spacing()));
      j = std::max(0, std::min(spec.points - 1, j));
      idx = idx * spec.points + j;
    }
    out[idx] = 1.0 / spec.cell_volume();
    return out;
  }
  double x[2];
  for (std::size_t i = 0; i < out.values().size(); ++i) {
    out.coords(i, std::span<double>(x, dim_));
    out[i] = density(std::span<const double>(x, dim_));
  }
  if (normalize) {
    const double m = mass(out);
    if (m > 0.0)
      for (auto& v : out.values()) v /= m;
  }
  return out;
}

}  // namespace nlfp

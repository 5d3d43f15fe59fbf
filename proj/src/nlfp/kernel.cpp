#include "nlfp/kernel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace nlfp {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double sinc(double u) {
  if (std::abs(u) < 1e-4) {
    const double u2 = u * u;
    return 1.0 - u2 / 6.0 + u2 * u2 / 120.0;
  }
  return std::sin(u) / u;
}

double sinhc(double u) {
  if (std::abs(u) < 1e-4) {
    const double u2 = u * u;
    return 1.0 + u2 / 6.0 + u2 * u2 / 120.0;
  }
  return std::sinh(u) / u;
}

double dfact_odd(int n) {  // (n-1)!! for even n
  double r = 1.0;
  for (int k = n - 1; k > 1; k -= 2) r *= k;
  return r;
}

}  // namespace

Kernel Kernel::make(const std::string& name, int dim,
                    const std::map<std::string, double>& params) {
  if (dim < 1 || dim > 3) throw std::invalid_argument("kernel: dim must be in {1,2,3}");

  auto require_positive = [&](const char* key, double v) {
    if (!(v > 0.0))
      throw std::invalid_argument(std::string("kernel ") + name + ": parameter '" + key +
                                  "' must be positive (normalization impossible)");
  };
  auto reject_unknown = [&](std::initializer_list<const char*> allowed) {
    for (const auto& [k, v] : params) {
      bool ok = false;
      for (const char* key : allowed)
        if (k == key) ok = true;
      if (!ok)
        throw std::invalid_argument(std::string("kernel ") + name + ": unknown parameter '" + k +
                                    "'");
    }
  };

  Kernel k;
  k.name_ = name;
  k.dim_ = dim;

  if (name == "uniform") {
    reject_unknown({"half_width"});
    k.family_ = Family::uniform;
    k.a_ = std::sqrt(6.0);  // a^2/3 = 2
    if (auto it = params.find("half_width"); it != params.end()) {
      require_positive("half_width", it->second);
      if (std::abs(it->second * it->second / 3.0 - 2.0) > 1e-9)
        throw std::invalid_argument(
            "kernel uniform: half_width violates the second-moment normalization "
            "(int J x^2 dx must equal 2)");
      k.a_ = it->second;
    }
    k.axis_panels_ = {{-k.a_, k.a_}};
  } else if (name == "triangular") {
    reject_unknown({"half_width"});
    k.family_ = Family::triangular;
    k.a_ = 2.0 * std::sqrt(3.0);  // a^2/6 = 2
    if (auto it = params.find("half_width"); it != params.end()) {
      require_positive("half_width", it->second);
      if (std::abs(it->second * it->second / 6.0 - 2.0) > 1e-9)
        throw std::invalid_argument(
            "kernel triangular: half_width violates the second-moment normalization "
            "(int J x^2 dx must equal 2)");
      k.a_ = it->second;
    }
    k.axis_panels_ = {{-k.a_, 0.0}, {0.0, k.a_}};
  } else if (name == "gaussian") {
    reject_unknown({"variance"});
    k.family_ = Family::gaussian;
    if (auto it = params.find("variance"); it != params.end()) {
      require_positive("variance", it->second);
      if (std::abs(it->second - 2.0) > 1e-9)
        throw std::invalid_argument(
            "kernel gaussian: variance violates the second-moment normalization "
            "(int J x^2 dx must equal 2)");
    }
    // Quadrature range: the density below ~1e-30 beyond |x| = 16.
    k.axis_panels_ = {{-16.0, -4.0}, {-4.0, 4.0}, {4.0, 16.0}};
  } else if (name == "skew_step") {
    reject_unknown({"skew"});
    k.family_ = Family::skew_step;
    double theta = 2.0;
    if (auto it = params.find("skew"); it != params.end()) theta = it->second;
    require_positive("skew", theta);
    if (std::abs(theta - 1.0) < 1e-9)
      throw std::invalid_argument(
          "kernel skew_step: skew = 1 makes the third moment vanish; use 'uniform' instead");
    // Left rectangle on [-a, 0) with mass w, right on [0, b) with mass 1 - w.
    // Solving m1 = 0 and m2 = 2 with b = theta * a gives the closed form below.
    k.w_ = theta / (1.0 + theta);
    k.a_ = std::sqrt(6.0 / theta);
    k.b_ = std::sqrt(6.0 * theta);
    k.axis_panels_ = {{-k.a_, 0.0}, {0.0, k.b_}};
  } else {
    throw std::invalid_argument("kernel: unknown family '" + name +
                                "' (catalog: uniform, triangular, gaussian, skew_step)");
  }
  return k;
}

double Kernel::axis_support() const {
  switch (family_) {
    case Family::uniform:
    case Family::triangular:
      return a_;
    case Family::gaussian:
      return kInf;
    case Family::skew_step:
      return std::max(a_, b_);
  }
  return kInf;
}

double Kernel::support_radius() const {
  const double a = axis_support();
  return std::isinf(a) ? kInf : a * std::sqrt(static_cast<double>(dim_));
}

double Kernel::exp_rate() const { return kInf; }

double Kernel::density1d(double x) const {
  switch (family_) {
    case Family::uniform:
      return std::abs(x) <= a_ ? 1.0 / (2.0 * a_) : 0.0;
    case Family::triangular:
      return std::abs(x) <= a_ ? (1.0 - std::abs(x) / a_) / a_ : 0.0;
    case Family::gaussian:
      return std::exp(-0.25 * x * x) / std::sqrt(4.0 * M_PI);
    case Family::skew_step:
      if (x >= -a_ && x < 0.0) return w_ / a_;
      if (x >= 0.0 && x <= b_) return (1.0 - w_) / b_;
      return 0.0;
  }
  return 0.0;
}

double Kernel::cdf1d(double x) const {
  switch (family_) {
    case Family::uniform:
      if (x <= -a_) return 0.0;
      if (x >= a_) return 1.0;
      return (x + a_) / (2.0 * a_);
    case Family::triangular: {
      if (x <= -a_) return 0.0;
      if (x >= a_) return 1.0;
      if (x < 0.0) {
        const double u = (x + a_) / a_;
        return 0.5 * u * u;
      }
      const double u = (a_ - x) / a_;
      return 1.0 - 0.5 * u * u;
    }
    case Family::gaussian:
      return 0.5 * std::erfc(-x / 2.0);  // sigma = sqrt(2)
    case Family::skew_step:
      if (x <= -a_) return 0.0;
      if (x < 0.0) return w_ * (x + a_) / a_;
      if (x < b_) return w_ + (1.0 - w_) * x / b_;
      return 1.0;
  }
  return 0.0;
}

std::complex<double> Kernel::fourier1d(double r) const {
  switch (family_) {
    case Family::uniform:
      return sinc(a_ * r);
    case Family::triangular: {
      const double s = sinc(0.5 * a_ * r);
      return s * s;
    }
    case Family::gaussian:
      return std::exp(-r * r);
    case Family::skew_step: {
      if (std::abs(r) < 1e-6) {
        // 1 - i m1 r - m2 r^2/2 + i m3 r^3/6 with m1 = 0, m2 = 2.
        const double m3 = moment1d(3);
        return {1.0 - r * r, m3 * r * r * r / 6.0};
      }
      const std::complex<double> i(0.0, 1.0);
      const std::complex<double> left = (std::exp(i * (a_ * r)) - 1.0) / (i * r) * (w_ / a_);
      const std::complex<double> right =
          (1.0 - std::exp(-i * (b_ * r))) / (i * r) * ((1.0 - w_) / b_);
      return left + right;
    }
  }
  return 0.0;
}

double Kernel::mgf1d(double s) const {
  switch (family_) {
    case Family::uniform:
      return sinhc(a_ * s);
    case Family::triangular: {
      const double v = sinhc(0.5 * a_ * s);
      return v * v;
    }
    case Family::gaussian:
      return std::exp(s * s);
    case Family::skew_step: {
      if (std::abs(s) < 1e-6) return 1.0 + s * s + moment1d(3) * s * s * s / 6.0;
      const double left = (w_ / a_) * (1.0 - std::exp(-a_ * s)) / s;
      const double right = ((1.0 - w_) / b_) * (std::exp(b_ * s) - 1.0) / s;
      return left + right;
    }
  }
  return 0.0;
}

double Kernel::moment1d(int n) const {
  if (n < 0) throw std::invalid_argument("kernel moment: negative order");
  if (n == 0) return 1.0;
  switch (family_) {
    case Family::uniform:
      return (n % 2 == 0) ? std::pow(a_, n) / (n + 1.0) : 0.0;
    case Family::triangular:
      return (n % 2 == 0) ? 2.0 * std::pow(a_, n) / ((n + 1.0) * (n + 2.0)) : 0.0;
    case Family::gaussian:
      return (n % 2 == 0) ? dfact_odd(n) * std::pow(2.0, n / 2) : 0.0;
    case Family::skew_step: {
      const double left = w_ * std::pow(-a_, n) / (n + 1.0);
      const double right = (1.0 - w_) * std::pow(b_, n) / (n + 1.0);
      return left + right;
    }
  }
  return 0.0;
}

double Kernel::fourier_envelope1d(double r) const {
  const double ar = std::abs(r);
  switch (family_) {
    case Family::uniform:
      return ar > 0.0 ? std::min(1.0, 1.0 / (a_ * ar)) : 1.0;
    case Family::triangular: {
      if (ar == 0.0) return 1.0;
      const double u = 0.5 * a_ * ar;
      return std::min(1.0, 1.0 / (u * u));
    }
    case Family::gaussian:
      return std::exp(-r * r);
    case Family::skew_step: {
      if (ar == 0.0) return 1.0;
      const double c = 2.0 * (w_ / a_ + (1.0 - w_) / b_);
      return std::min(1.0, c / ar);
    }
  }
  return 1.0;
}

double Kernel::density(std::span<const double> x) const {
  double p = 1.0;
  for (double xi : x) p *= density1d(xi);
  return p;
}

std::complex<double> Kernel::fourier(std::span<const double> xi) const {
  std::complex<double> p = 1.0;
  for (double r : xi) p *= fourier1d(r);
  return p;
}

double Kernel::mgf(std::span<const double> xi) const {
  double p = 1.0;
  for (double s : xi) p *= mgf1d(s);
  return p;
}

void Kernel::sample(RngStream& rng, std::span<double> out) const {
  for (auto& x : out) {
    switch (family_) {
      case Family::uniform:
        x = a_ * (2.0 * rng.uniform01() - 1.0);
        break;
      case Family::triangular: {
        const double u = rng.uniform01();
        x = (u < 0.5) ? a_ * (std::sqrt(2.0 * u) - 1.0) : a_ * (1.0 - std::sqrt(2.0 * (1.0 - u)));
        break;
      }
      case Family::gaussian:
        x = rng.normal() * std::sqrt(2.0);
        break;
      case Family::skew_step: {
        const double u = rng.uniform01();
        x = (u < w_) ? a_ * (u / w_ - 1.0) : b_ * (u - w_) / (1.0 - w_);
        break;
      }
    }
  }
}

double Kernel::moment(const MultiIndex& alpha, double eps) const {
  if (static_cast<int>(alpha.size()) != dim_)
    throw std::invalid_argument("kernel moment: multi-index length != dim");
  double m = 1.0;
  for (int ai : alpha) m *= moment1d(ai);
  return std::pow(eps, order(alpha)) * m;
}

double Kernel::rho_2s() const {
  if (rho3_cache_ >= 0.0) return rho3_cache_;
  double rho;
  if (dim_ == 1) {
    switch (family_) {
      case Family::uniform:
        rho = std::pow(a_, 3) / 4.0;
        break;
      case Family::triangular:
        rho = std::pow(a_, 3) / 10.0;
        break;
      case Family::gaussian:
        rho = 2.0 * std::sqrt(2.0 / M_PI) * std::pow(std::sqrt(2.0), 3);
        break;
      case Family::skew_step:
        rho = (w_ * std::pow(a_, 3) + (1.0 - w_) * std::pow(b_, 3)) / 4.0;
        break;
      default:
        rho = 0.0;
    }
  } else {
    // int |x|^3 prod J1(x_i) dx by tensor quadrature over the axis panels.
    auto convolve_axis = [&](const std::function<double(std::vector<double>&)>& f) {
      std::vector<double> pt(dim_, 0.0);
      std::function<double(int)> rec = [&](int axis) -> double {
        if (axis == dim_) return f(pt);
        double acc = 0.0;
        for (const auto& p : axis_panels_) {
          acc += gl_integrate(
              [&](double z) {
                pt[axis] = z;
                return density1d(z) * rec(axis + 1);
              },
              p.a, p.b, 64);
        }
        return acc;
      };
      return rec(0);
    };
    rho = convolve_axis([](std::vector<double>& pt) {
      double r2 = 0.0;
      for (double v : pt) r2 += v * v;
      return std::pow(r2, 1.5);
    });
  }
  rho3_cache_ = rho;
  return rho;
}

}  // namespace nlfp

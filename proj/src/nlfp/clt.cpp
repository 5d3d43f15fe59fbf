#include "nlfp/clt.hpp"

#include <cmath>
#include <stdexcept>

namespace nlfp {

CltDensity::CltDensity(Kernel k) : kernel_(std::move(k)), name_(kernel_.name()) {
  scale_ = std::sqrt(2.0);  // kernel second moment is 2; rescale to 1
}

CltDensity CltDensity::from_kernel(const Kernel& kernel) {
  if (kernel.dim() != 1)
    throw std::invalid_argument("CltDensity: built from one-dimensional kernels");
  return CltDensity(kernel);
}

CltDensity CltDensity::standard_gaussian() {
  return CltDensity(Kernel::make("gaussian", 1));
}

double CltDensity::density(double x) const { return scale_ * kernel_.density1d(scale_ * x); }

std::complex<double> CltDensity::fourier(double xi) const {
  return kernel_.fourier1d(xi / scale_);
}

double CltDensity::fourier_envelope(double xi) const {
  return kernel_.fourier_envelope1d(xi / scale_);
}

double CltDensity::rho3() const {
  return kernel_.rho_2s() / std::pow(scale_, 3);
}

bool CltDensity::is_gaussian() const { return kernel_.family() == Kernel::Family::gaussian; }

GridDensity rescaled_convolution(const CltDensity& f, std::span<const double> sigmas,
                                 const GridSpec& grid) {
  const int n = static_cast<int>(sigmas.size());
  if (n < 1) throw std::invalid_argument("rescaled_convolution: needs n >= 1");
  if (grid.dim != 1) throw std::invalid_argument("rescaled_convolution: d = 1 only");
  if (grid.half_width < 6.0)
    throw std::domain_error("rescaled_convolution: grid too narrow for a unit-variance result");
  double sbar2 = 0.0;
  for (double s : sigmas) {
    if (!(s > 0.0)) throw std::invalid_argument("rescaled_convolution: sigmas must be positive");
    sbar2 += s * s;
  }
  sbar2 /= n;
  const double denom = std::sqrt(static_cast<double>(n) * sbar2);

  SpectralField hat(grid);
  for (std::size_t i = 0; i < hat.values().size(); ++i) {
    const double xi = grid.freq(grid.signed_index(static_cast<int>(i)));
    std::complex<double> p = 1.0;
    for (double s : sigmas) p *= f.fourier(s * xi / denom);
    hat[i] = p;
  }
  // The output has unit variance by construction, so the half_width >= 6
  // precondition above is what rules out wrap-around; truncation ringing of
  // discontinuous inputs is harmless and must not trip a guard here.
  return inverse_transform(hat);
}

double default_sigma_rule(int i) { return std::exp(static_cast<double>(i % 17) / 17.0); }

namespace {

double standard_normal(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI); }

}  // namespace

BeRateResult be_rate_experiment(const CltDensity& f, const std::function<double(int)>& sigma_rule,
                                std::span<const int> n_list, const GridSpec& grid) {
  if (n_list.size() < 2) throw std::invalid_argument("be_rate_experiment: needs several n");
  BeRateResult res;
  for (std::size_t k = 0; k + 1 < n_list.size(); ++k)
    if (n_list[k + 1] <= n_list[k])
      throw std::invalid_argument("be_rate_experiment: n_list must increase");

  for (int n : n_list) {
    std::vector<double> sigmas(n);
    for (int i = 0; i < n; ++i) {
      sigmas[i] = sigma_rule(i);
      if (!(sigmas[i] > 0.0)) throw std::invalid_argument("be_rate_experiment: sigma <= 0");
    }
    const GridDensity fn = rescaled_convolution(f, sigmas, grid);
    double sup = 0.0;
    for (int j = 0; j < grid.points; ++j)
      sup = std::max(sup, std::abs(fn[j] - standard_normal(grid.coord(j))));
    res.n_values.push_back(n);
    res.sup_distances.push_back(sup);
  }

  for (std::size_t k = 0; k + 1 < res.sup_distances.size(); ++k) {
    const double prev = res.sup_distances[k], next = res.sup_distances[k + 1];
    if (next > prev) {
      res.monotone = false;
      res.worst_monotone_violation =
          std::max(res.worst_monotone_violation, (next - prev) / std::max(prev, 1e-300));
    }
  }

  res.fit = loglog_fit(res.n_values, res.sup_distances, 1e-9);
  return res;
}

CharfnBounds charfn_bounds(const CltDensity& f, double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("charfn_bounds: delta must be positive");
  constexpr double kXiMax = 200.0;
  constexpr double kStep = 5e-4;

  CharfnBounds out;

  // delta_star by scan + bisection refinement of the first violation of
  // |fhat| <= exp(-xi^2/4).
  double violation = -1.0;
  double prev = 0.0;
  for (double xi = kStep; xi <= kXiMax; xi += kStep) {
    if (std::abs(f.fourier(xi)) > std::exp(-0.25 * xi * xi) + 1e-13) {
      violation = xi;
      break;
    }
    prev = xi;
  }
  if (violation < 0.0 && f.fourier_envelope(kXiMax) <= std::exp(-0.25 * kXiMax * kXiMax)) {
    out.delta_star = std::numeric_limits<double>::infinity();
  } else if (violation < 0.0) {
    out.delta_star = kXiMax;  // holds on the probed window only
  } else {
    double lo = prev, hi = violation;
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (std::abs(f.fourier(mid)) > std::exp(-0.25 * mid * mid) + 1e-13)
        hi = mid;
      else
        lo = mid;
    }
    out.delta_star = lo;
  }

  double kappa = f.fourier_envelope(std::max(delta, kXiMax));
  for (double xi = delta; xi <= kXiMax; xi += kStep)
    kappa = std::max(kappa, std::abs(f.fourier(xi)));
  out.kappa = kappa;
  return out;
}

double poisson_partial_sum(std::uint64_t m) {
  if (m < 1) throw std::invalid_argument("poisson_partial_sum: m must be >= 1");
  const double md = static_cast<double>(m);
  // Anchor at n = m (the largest term on [m, 2m]); downward ratios stay in
  // (0, 1], so the sum is computed entirely in well-scaled arithmetic.
  const double log_tm = md * std::log(md) - std::lgamma(md + 1.0) - md;
  double acc = 1.0;
  double ratio = 1.0;
  for (std::uint64_t n = m + 1; n <= 2 * m; ++n) {
    ratio *= md / static_cast<double>(n);
    acc += ratio;
  }
  return std::exp(log_tm) * acc;
}

double product_factorization_check(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size())
    throw std::invalid_argument("product_factorization_check: unequal lengths");
  const int n = static_cast<int>(a.size());
  double pa = 1.0, pb = 1.0;
  for (int i = 0; i < n; ++i) {
    pa *= a[i];
    pb *= b[i];
  }
  double rhs = 0.0;
  for (int i = 0; i < n; ++i) {
    double prefix = 1.0, suffix = 1.0;
    for (int j = 0; j < i; ++j) prefix *= b[j];
    for (int j = i + 1; j < n; ++j) suffix *= a[j];
    rhs += (a[i] - b[i]) * prefix * suffix;
  }
  return std::abs((pa - pb) - rhs);
}

}  // namespace nlfp

#include "nlfp/fitting.hpp"

#include <cmath>
#include <stdexcept>

namespace nlfp {
namespace {

RateFit fit_impl(std::span<const double> xs, std::span<const double> ys, double floor,
                 bool log_abscissa) {
  if (xs.size() != ys.size()) throw std::invalid_argument("fit: size mismatch");
  if (xs.size() < 3) throw std::invalid_argument("fit: needs at least 3 points");

  RateFit fit;
  fit.abscissae.assign(xs.begin(), xs.end());
  fit.ordinates.assign(ys.begin(), ys.end());

  std::vector<double> u, v;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(ys[i] > floor)) continue;  // noise-floor points are excluded
    if (log_abscissa && !(xs[i] > 0.0)) throw std::invalid_argument("fit: abscissa must be > 0");
    u.push_back(log_abscissa ? std::log(xs[i]) : xs[i]);
    v.push_back(std::log(ys[i]));
  }
  fit.points_used = static_cast<int>(u.size());
  if (u.size() < 3) {
    fit.degenerate = true;
    return fit;
  }

  double su = 0.0, sv = 0.0, suu = 0.0, suv = 0.0;
  const double n = static_cast<double>(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    su += u[i];
    sv += v[i];
    suu += u[i] * u[i];
    suv += u[i] * v[i];
  }
  const double denom = n * suu - su * su;
  if (std::abs(denom) < 1e-30) {
    fit.degenerate = true;
    return fit;
  }
  fit.slope = (n * suv - su * sv) / denom;
  fit.intercept = (sv - fit.slope * su) / n;
  for (std::size_t i = 0; i < u.size(); ++i) {
    fit.max_residual = std::max(fit.max_residual,
                                std::abs(v[i] - fit.slope * u[i] - fit.intercept));
  }
  return fit;
}

}  // namespace

RateFit loglog_fit(std::span<const double> xs, std::span<const double> ys, double floor) {
  return fit_impl(xs, ys, floor, true);
}

RateFit semilog_fit(std::span<const double> ts, std::span<const double> ys, double floor) {
  return fit_impl(ts, ys, floor, false);
}

}  // namespace nlfp

#include "nlfp/cumulant.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "nlfp/spectral.hpp"

namespace nlfp {
namespace {

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Iterate beta <= alpha componentwise (odometer), beta != 0.
template <class F>
void for_each_sub_index(const MultiIndex& alpha, F&& f) {
  MultiIndex beta(alpha.size(), 0);
  for (;;) {
    int axis = 0;
    while (axis < static_cast<int>(alpha.size())) {
      if (beta[axis] < alpha[axis]) {
        ++beta[axis];
        break;
      }
      beta[axis] = 0;
      ++axis;
    }
    if (axis == static_cast<int>(alpha.size())) return;  // wrapped: done
    f(beta);
  }
}

}  // namespace

double CumulantTable::at(const MultiIndex& alpha) const {
  auto it = entries.find(alpha);
  return it == entries.end() ? 0.0 : it->second;
}

void CumulantTable::set(const MultiIndex& alpha, double value) {
  if (static_cast<int>(alpha.size()) != dim)
    throw std::invalid_argument("CumulantTable: multi-index length != dim");
  entries[alpha] = value;
}

CumulantTable initial_cumulants(const InitialData& u0, int max_order) {
  CumulantTable table;
  table.dim = u0.dim();
  table.max_order = max_order;
  for (int axis = 0; axis < u0.dim(); ++axis) {
    for (int n = 1; n <= std::min(max_order, 4); ++n) {
      MultiIndex alpha(u0.dim(), 0);
      alpha[axis] = n;
      table.set(alpha, u0.cumulant1d(n, axis));
    }
  }
  return table;
}

double cgf_eval(const Kernel& kernel, double eps,
                const std::function<double(std::span<const double>)>& u0_cgf, double t,
                std::span<const double> xi) {
  if (!(t >= 0.0)) throw std::invalid_argument("cgf_eval: t must be >= 0");
  double shrunk[3] = {0.0, 0.0, 0.0};
  if (!std::isinf(t)) {
    const double et = std::exp(-t);
    for (int i = 0; i < kernel.dim(); ++i) shrunk[i] = et * xi[i];
  }
  const double c0 = u0_cgf(std::span<const double>(shrunk, kernel.dim()));
  return c0 + mgf_flow_integral(kernel, eps, xi, t);
}

double evolve_cumulant(const Kernel& kernel, double eps, const CumulantTable& kappa0, double t,
                       const MultiIndex& alpha) {
  const int n = order(alpha);
  if (n < 1) throw std::invalid_argument("evolve_cumulant: |alpha| must be >= 1");
  if (n > kappa0.max_order)
    throw std::invalid_argument("evolve_cumulant: |alpha| exceeds the table's max_order");
  const double source = kernel.moment(alpha, eps) / (n * eps * eps);
  if (std::isinf(t)) return source;
  const double decay = std::exp(-n * t);
  return decay * kappa0.at(alpha) + (1.0 - decay) * source;
}

std::vector<double> bell_moments(std::span<const double> kappas) {
  const int n = static_cast<int>(kappas.size());
  if (n > 20) throw std::invalid_argument("bell_moments: order > 20 refused (overflow guard)");
  // B_{m+1} = sum_{k=0}^{m} C(m,k) kappa_{k+1} B_{m-k}, B_0 = 1.
  std::vector<double> bell(n + 1, 0.0);
  bell[0] = 1.0;
  for (int m = 0; m < n; ++m) {
    double acc = 0.0;
    for (int k = 0; k <= m; ++k) acc += binomial(m, k) * kappas[k] * bell[m - k];
    bell[m + 1] = acc;
  }
  return {bell.begin() + 1, bell.end()};
}

double partial_bell(int n, int k, std::span<const double> x) {
  if (n < 0 || k < 0) throw std::invalid_argument("partial_bell: negative index");
  if (n > 20) throw std::invalid_argument("partial_bell: order > 20 refused (overflow guard)");
  if (n == 0 && k == 0) return 1.0;
  if (n == 0 || k == 0) return 0.0;
  if (static_cast<int>(x.size()) < n - k + 1)
    throw std::invalid_argument("partial_bell: needs x_1..x_{n-k+1}");
  // B_{n,k} = sum_{i=1}^{n-k+1} C(n-1, i-1) x_i B_{n-i,k-1}.
  double acc = 0.0;
  for (int i = 1; i <= n - k + 1; ++i)
    acc += binomial(n - 1, i - 1) * x[i - 1] * partial_bell(n - i, k - 1, x);
  return acc;
}

namespace {

double equilibrium_moment(const Kernel& kernel, double eps, const MultiIndex& alpha,
                          std::map<MultiIndex, double>& memo) {
  if (order(alpha) == 0) return 1.0;
  if (auto it = memo.find(alpha); it != memo.end()) return it->second;
  const int n = order(alpha);
  double gamma = 0.0;
  for_each_sub_index(alpha, [&](const MultiIndex& beta) {
    double binom = 1.0;
    MultiIndex rest(alpha.size());
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      binom *= binomial(alpha[i], beta[i]);
      rest[i] = alpha[i] - beta[i];
    }
    gamma += binom * kernel.moment(beta, eps) * equilibrium_moment(kernel, eps, rest, memo);
  });
  gamma /= n * eps * eps;
  memo[alpha] = gamma;
  return gamma;
}

}  // namespace

double moment_recursion(const Kernel& kernel, double eps, const CumulantTable& m0, double t,
                        const MultiIndex& alpha) {
  const int n = order(alpha);
  if (n < 1) throw std::invalid_argument("moment_recursion: |alpha| must be >= 1");
  std::map<MultiIndex, double> memo;
  const double gamma = equilibrium_moment(kernel, eps, alpha, memo);
  if (std::isinf(t)) return gamma;
  const double decay = std::exp(-n * t);
  return gamma * (1.0 - decay) + decay * m0.at(alpha);
}

namespace {

CumulantTable cumulants_from_axis_moments(
    int dim, int max_order,
    const std::function<void(int axis, double out[5])>& central_moments) {
  if (max_order > 4)
    throw std::invalid_argument("empirical_cumulants: orders above 4 are refused");
  if (max_order < 1) throw std::invalid_argument("empirical_cumulants: max_order must be >= 1");
  CumulantTable table;
  table.dim = dim;
  table.max_order = max_order;
  for (int axis = 0; axis < dim; ++axis) {
    double m[5];  // m[0] unused; m[1] = mean, m[k>=2] = central moments
    central_moments(axis, m);
    const double kappa[5] = {0.0, m[1], m[2], m[3], m[4] - 3.0 * m[2] * m[2]};
    for (int k = 1; k <= max_order; ++k) {
      MultiIndex alpha(dim, 0);
      alpha[axis] = k;
      table.set(alpha, kappa[k]);
    }
  }
  return table;
}

}  // namespace

CumulantTable empirical_cumulants(const ParticleEnsemble& ensemble, int max_order) {
  const std::size_t n = ensemble.size();
  if (n == 0) throw std::invalid_argument("empirical_cumulants: empty ensemble");
  return cumulants_from_axis_moments(ensemble.dim, max_order, [&](int axis, double m[5]) {
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += ensemble.positions[i * ensemble.dim + axis];
    mean /= static_cast<double>(n);
    double c2 = 0.0, c3 = 0.0, c4 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double z = ensemble.positions[i * ensemble.dim + axis] - mean;
      const double z2 = z * z;
      c2 += z2;
      c3 += z2 * z;
      c4 += z2 * z2;
    }
    m[1] = mean;
    m[2] = c2 / n;
    m[3] = c3 / n;
    m[4] = c4 / n;
  });
}

CumulantTable empirical_cumulants(const GridDensity& u, int max_order) {
  const int dim = u.spec().dim;
  return cumulants_from_axis_moments(dim, max_order, [&](int axis, double m[5]) {
    MultiIndex e(dim, 0);
    const double total = mass(u);
    if (!(std::abs(total) > 0.0))
      throw std::invalid_argument("empirical_cumulants: zero-mass density");
    e[axis] = 1;
    const double mean = grid_moment(u, e) / total;
    // Central moments by shifted quadrature.
    double acc[3] = {0.0, 0.0, 0.0};
    const auto vals = u.values();
    const auto& spec = u.spec();
    for (std::size_t i = 0; i < vals.size(); ++i) {
      double x[2];
      u.coords(i, std::span<double>(x, dim));
      const double z = x[axis] - mean;
      const double z2 = z * z;
      acc[0] += z2 * vals[i];
      acc[1] += z2 * z * vals[i];
      acc[2] += z2 * z2 * vals[i];
    }
    const double vol = spec.cell_volume();
    m[1] = mean;
    m[2] = acc[0] * vol / total;
    m[3] = acc[1] * vol / total;
    m[4] = acc[2] * vol / total;
  });
}

void write_csv(const CumulantTable& table, std::ostream& os) {
  os << "alpha,value\n";
  char buf[64];
  for (const auto& [alpha, value] : table.entries) {
    os << "\"(";
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      if (i) os << " ";
      os << alpha[i];
    }
    std::snprintf(buf, sizeof(buf), ")\",%.16e\n", value);
    os << buf;
  }
}

}  // namespace nlfp

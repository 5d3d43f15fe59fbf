#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "nlfp/kernel.hpp"
#include "nlfp/quad.hpp"
#include "nlfp/rng.hpp"

using namespace nlfp;

namespace {

// Independent oracle: moments of J_eps by adaptive quadrature of the scaled
// density over its (scaled) smooth pieces.
double quad_moment(const Kernel& k, int n, double eps) {
  double acc = 0.0;
  for (const auto& p : k.axis_panels()) {
    acc += adaptive_integrate(
        [&](double x) { return (1.0 / eps) * k.density1d(x / eps) * std::pow(x, n); },
        eps * p.a, eps * p.b, 1e-13);
  }
  return acc;
}

std::complex<double> quad_fourier(const Kernel& k, double xi) {
  double re = 0.0, im = 0.0;
  for (const auto& p : k.axis_panels()) {
    re += adaptive_integrate([&](double x) { return k.density1d(x) * std::cos(x * xi); }, p.a,
                             p.b, 1e-13);
    im += adaptive_integrate([&](double x) { return -k.density1d(x) * std::sin(x * xi); }, p.a,
                             p.b, 1e-13);
  }
  return {re, im};
}

const char* kCatalog[] = {"uniform", "triangular", "gaussian", "skew_step"};

}  // namespace

TEST_CASE("uniform catalog entry solves the half-width from the moment normalization") {
  const Kernel k = Kernel::make("uniform", 1);
  const double a = std::sqrt(6.0);  // a^2/3 = 2
  CHECK(k.axis_support() == doctest::Approx(a).epsilon(1e-15));
  CHECK(k.density1d(0.0) == doctest::Approx(1.0 / (2.0 * a)).epsilon(1e-15));
  CHECK(k.density1d(a + 1e-9) == 0.0);
  CHECK(k.support_radius() == doctest::Approx(a));
}

TEST_CASE("gaussian catalog entry is N(0,2)") {
  const Kernel k = Kernel::make("gaussian", 1);
  CHECK(k.density1d(0.0) == doctest::Approx(1.0 / std::sqrt(4.0 * M_PI)).epsilon(1e-15));
  CHECK(k.fourier1d(1.0).real() == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  CHECK(std::isinf(k.exp_rate()));
}

TEST_CASE("construction errors name the violated invariant") {
  CHECK_THROWS_WITH_AS(Kernel::make("uniform", 1, {{"half_width", 1.0}}),
                       doctest::Contains("second-moment"), std::invalid_argument);
  CHECK_THROWS_AS(Kernel::make("uniform", 1, {{"half_width", 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(Kernel::make("laplace", 1), std::invalid_argument);
  CHECK_THROWS_AS(Kernel::make("skew_step", 1, {{"skew", 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(Kernel::make("uniform", 4), std::invalid_argument);
  CHECK_THROWS_AS(Kernel::make("uniform", 1, {{"width", 2.0}}), std::invalid_argument);
}

TEST_CASE("moments: closed forms match quadrature and the eps-scaling law") {
  for (const char* name : kCatalog) {
    const Kernel k = Kernel::make(name, 1);
    for (int n = 0; n <= 6; ++n) {
      CAPTURE(name);
      CAPTURE(n);
      CHECK(k.moment({n}, 1.0) == doctest::Approx(quad_moment(k, n, 1.0)).epsilon(1e-10));
      // m_alpha(J_eps) = eps^|alpha| m_alpha(J)
      CHECK(k.moment({n}, 0.5) ==
            doctest::Approx(std::pow(0.5, n) * k.moment({n}, 1.0)).epsilon(1e-13));
    }
  }
}

TEST_CASE("moment examples: uniform fourth moment is 7.2") {
  const Kernel k = Kernel::make("uniform", 1);
  CHECK(k.moment({2}, 1.0) == doctest::Approx(2.0).epsilon(1e-14));
  // a^4/5 with a = sqrt(6)
  CHECK(k.moment({4}, 1.0) == doctest::Approx(36.0 / 5.0).epsilon(1e-14));
  CHECK(k.moment({4}, 1.0) == doctest::Approx(quad_moment(k, 4, 1.0)).epsilon(1e-11));
  // odd moments of symmetric densities vanish at any eps
  for (const char* name : {"uniform", "triangular", "gaussian"})
    CHECK(Kernel::make(name, 1).moment({3}, 0.5) == 0.0);
}

TEST_CASE("normalization invariants hold under scaling for every catalog entry") {
  for (const char* name : kCatalog) {
    const Kernel k = Kernel::make(name, 1);
    for (double eps : {1.0, 0.5, 0.1}) {
      CAPTURE(name);
      CAPTURE(eps);
      CHECK(quad_moment(k, 0, eps) == doctest::Approx(1.0).epsilon(1e-8));
      CHECK(quad_moment(k, 1, eps) == doctest::Approx(0.0).scale(1.0).epsilon(1e-8));
      CHECK(quad_moment(k, 2, eps) == doctest::Approx(2.0 * eps * eps).epsilon(1e-8));
    }
  }
}

TEST_CASE("skew_step has zero mean, second moment 2 and a nonzero third moment") {
  const Kernel k = Kernel::make("skew_step", 1);
  CHECK(k.moment({1}, 1.0) == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
  CHECK(k.moment({2}, 1.0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(std::abs(k.moment({3}, 1.0)) > 1.0);
  CHECK(k.moment({3}, 1.0) == doctest::Approx(quad_moment(k, 3, 1.0)).epsilon(1e-11));
  CHECK_FALSE(k.symmetric());
}

TEST_CASE("product kernels in d = 2: diagonal second moments and vanishing cross terms") {
  const Kernel k = Kernel::make("uniform", 2);
  CHECK(k.moment({2, 0}, 1.0) == doctest::Approx(2.0));
  CHECK(k.moment({0, 2}, 1.0) == doctest::Approx(2.0));
  CHECK(k.moment({1, 1}, 1.0) == 0.0);
  CHECK(k.moment({2, 1}, 1.0) == 0.0);  // |alpha| = 3 for the symmetric family
  CHECK(k.support_radius() == doctest::Approx(std::sqrt(6.0) * std::sqrt(2.0)));
}

TEST_CASE("fourier transform: exact values and quadrature cross-check") {
  const Kernel uni = Kernel::make("uniform", 1);
  CHECK(uni.fourier1d(0.0).real() == doctest::Approx(1.0));
  // first zero of sin(sqrt(6) xi)/(sqrt(6) xi)
  CHECK(std::abs(uni.fourier1d(M_PI / std::sqrt(6.0))) < 1e-14);
  const Kernel gau = Kernel::make("gaussian", 1);
  CHECK(gau.fourier1d(1.0).real() == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));

  RngStream rng(123);
  for (const char* name : kCatalog) {
    const Kernel k = Kernel::make(name, 1);
    for (int i = 0; i < 50; ++i) {
      const double xi = 40.0 * (rng.uniform01() - 0.5);
      const auto expect = quad_fourier(k, xi);
      const auto got = k.fourier1d(xi);
      CAPTURE(name);
      CAPTURE(xi);
      CHECK(std::abs(got - expect) < 1e-8);
    }
  }
}

TEST_CASE("fourier bounds: unit value at zero, modulus below one, envelope valid") {
  RngStream rng(7);
  for (const char* name : kCatalog) {
    const Kernel k = Kernel::make(name, 1);
    CHECK(std::abs(k.fourier1d(0.0) - 1.0) < 1e-15);
    for (int i = 0; i < 200; ++i) {
      const double xi = 200.0 * (rng.uniform01() - 0.5);
      const double mod = std::abs(k.fourier1d(xi));
      CAPTURE(name);
      CAPTURE(xi);
      CHECK(mod <= 1.0 + 1e-12);
      CHECK(mod <= k.fourier_envelope1d(xi) + 1e-12);
    }
  }
}

TEST_CASE("mgf: one at zero, matches quadrature, finite for the catalog") {
  for (const char* name : kCatalog) {
    const Kernel k = Kernel::make(name, 1);
    CHECK(k.mgf1d(0.0) == doctest::Approx(1.0).epsilon(1e-12));
    for (double s : {-1.3, 0.4, 2.0}) {
      double expect = 0.0;
      for (const auto& p : k.axis_panels())
        expect += adaptive_integrate(
            [&](double x) { return k.density1d(x) * std::exp(s * x); }, p.a, p.b, 1e-13);
      CAPTURE(name);
      CAPTURE(s);
      CHECK(k.mgf1d(s) == doctest::Approx(expect).epsilon(1e-10));
    }
  }
}

TEST_CASE("sampling: CLT band for the mean, 1% band for the second moment, support") {
  const Kernel k = Kernel::make("uniform", 1);
  const std::size_t n = 1000000;
  RngStream rng(20240801);
  double sum = 0.0, sum2 = 0.0;
  double x;
  for (std::size_t i = 0; i < n; ++i) {
    k.sample(rng, std::span<double>(&x, 1));
    REQUIRE(std::abs(x) <= std::sqrt(6.0) + 1e-12);
    sum += x;
    sum2 += x * x;
  }
  const double mean = sum / n;
  const double m2 = sum2 / n;
  CHECK(std::abs(mean) < 4.0 * std::sqrt(2.0 / n));  // 4 sigma on a variance-2 mean
  CHECK(std::abs(m2 - 2.0) < 0.02);
}

TEST_CASE("sampling matches the analytic CDF in Kolmogorov distance") {
  const std::size_t n = 100000;
  for (const char* name : kCatalog) {
    const Kernel k = Kernel::make(name, 1);
    std::vector<double> xs(n);
    RngStream rng(99);
    for (auto& x : xs) k.sample(rng, std::span<double>(&x, 1));
    std::sort(xs.begin(), xs.end());
    double dist = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double f = k.cdf1d(xs[i]);
      dist = std::max(dist, std::abs(f - static_cast<double>(i) / n));
      dist = std::max(dist, std::abs(f - static_cast<double>(i + 1) / n));
    }
    CAPTURE(name);
    CHECK(dist < 0.01);
  }
}

TEST_CASE("rho_{2+s} closed forms agree with quadrature") {
  for (const char* name : kCatalog) {
    const Kernel k = Kernel::make(name, 1);
    double expect = 0.0;
    for (const auto& p : k.axis_panels())
      expect += adaptive_integrate(
          [&](double x) { return k.density1d(x) * std::pow(std::abs(x), 3); }, p.a, p.b, 1e-13);
    CAPTURE(name);
    CHECK(k.rho_2s() == doctest::Approx(expect).epsilon(1e-9));
    CHECK(k.s_exponent() == 1.0);
  }
}

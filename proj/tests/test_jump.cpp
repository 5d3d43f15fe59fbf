#include <doctest.h>

#include <cmath>
#include <sstream>

#include "nlfp/cumulant.hpp"
#include "nlfp/grid.hpp"
#include "nlfp/initial.hpp"
#include "nlfp/jump.hpp"
#include "nlfp/kernel.hpp"
#include "nlfp/spectral.hpp"

using namespace nlfp;

namespace {
const GridSpec kGrid{1, 12.0, 4096};
}

TEST_CASE("t = 0 reproduces exact initial draws") {
  const Kernel k = Kernel::make("uniform", 1);
  const InitialData u0 = InitialData::point_mass({1.5});
  const auto ens = simulate(k, 0.5, u0, 0.0, 100, 7);
  for (std::size_t i = 0; i < ens.size(); ++i) REQUIRE(ens.positions[i] == 1.5);
}

TEST_CASE("ensemble mean follows e^{-t} x0 within a 4-sigma band") {
  const Kernel k = Kernel::make("uniform", 1);
  const InitialData u0 = InitialData::point_mass({2.0});
  const double t = 1.0, eps = 0.5;
  const std::size_t n = 200000;
  const auto ens = simulate(k, eps, u0, t, n, 123, 2);
  double sum = 0.0, sum2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sum += ens.positions[i];
    sum2 += ens.positions[i] * ens.positions[i];
  }
  const double mean = sum / n;
  const double var = sum2 / n - mean * mean;
  const double expect_mean = std::exp(-t) * 2.0;
  CHECK(std::abs(mean - expect_mean) < 4.0 * std::sqrt(var / n));
}

TEST_CASE("long-run variance settles at 1 per coordinate") {
  const Kernel k = Kernel::make("triangular", 1);
  const InitialData u0 = InitialData::gaussian(1, {0.0}, 4.0);
  const std::size_t n = 200000;
  const auto ens = simulate(k, 0.7, u0, 10.0, n, 2024, 2);
  double sum = 0.0, sum2 = 0.0, sum4 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = ens.positions[i];
    sum += x;
    sum2 += x * x;
    sum4 += x * x * x * x;
  }
  const double mean = sum / n;
  const double m2 = sum2 / n;
  const double var = m2 - mean * mean;
  // 4-sigma band on the second-moment estimator
  const double sigma_m2 = std::sqrt((sum4 / n - m2 * m2) / n);
  CHECK(std::abs(var - 1.0) < 4.0 * sigma_m2);
}

TEST_CASE("simulation is bit-reproducible and independent of the thread count") {
  const Kernel k = Kernel::make("skew_step", 1);
  const InitialData u0 = InitialData::gaussian(1, {0.5}, 1.0);
  const auto a = simulate(k, 0.6, u0, 1.3, 5000, 99, 1);
  const auto b = simulate(k, 0.6, u0, 1.3, 5000, 99, 2);
  REQUIRE(a.positions.size() == b.positions.size());
  for (std::size_t i = 0; i < a.positions.size(); ++i) REQUIRE(a.positions[i] == b.positions[i]);
}

TEST_CASE("histogram of gaussian draws recovers the density in L1") {
  const InitialData g = InitialData::gaussian(1, {0.0}, 1.0);
  const Kernel k = Kernel::make("uniform", 1);
  const auto ens = simulate(k, 1.0, g, 0.0, 1000000, 4242, 2);  // t = 0: plain draws
  const auto hist = empirical_density(ens, GridSpec{1, 12.0, 256});
  CHECK_FALSE(hist.warning);
  const GridDensity expect = g.discretize(GridSpec{1, 12.0, 256}, false);
  CHECK(l1_distance(hist.density, expect) < 0.01);
  CHECK(mass(hist.density) <= 1.0 + 1e-12);
}

TEST_CASE("empty ensemble yields a zero histogram; escapes are reported") {
  ParticleEnsemble empty;
  empty.dim = 1;
  const auto hist = empirical_density(empty, GridSpec{1, 4.0, 64});
  CHECK(mass(hist.density) == 0.0);

  ParticleEnsemble far;
  far.dim = 1;
  far.positions = {0.0, 100.0, 0.5, -0.5};
  const auto rep = empirical_density(far, GridSpec{1, 4.0, 64});
  CHECK(rep.escaped_fraction == doctest::Approx(0.25));
  CHECK(rep.warning);
}

TEST_CASE("ensemble csv has one row per particle") {
  ParticleEnsemble ens;
  ens.dim = 1;
  ens.positions = {1.0, 2.0, 3.0};
  std::ostringstream os;
  write_csv(ens, os);
  const std::string text = os.str();
  CHECK(std::count(text.begin(), text.end(), '\n') == 4);
}

TEST_CASE("wild sum: truncated mass equals the Poisson partial sum to 1e-10") {
  const Kernel k = Kernel::make("uniform", 1);
  const GridDensity u0 = InitialData::gaussian(1, {1.0}, 0.5).discretize(kGrid);
  const double eps = 1.0, t = 0.5;
  double expected_cdf = 0.0, term = std::exp(-t);
  double prev_mass = -1.0;
  for (int n_max = 0; n_max <= 8; ++n_max) {
    expected_cdf += term;
    term *= t / (n_max + 1.0);
    const auto res = wild_sum_truncated(u0, k, eps, t, n_max);
    CAPTURE(n_max);
    CHECK(mass(res.density) == doctest::Approx(expected_cdf).epsilon(1e-10));
    CHECK(res.truncation_deficit == doctest::Approx(1.0 - expected_cdf).epsilon(1e-9));
    // monotone in n_max and bounded by 1
    CHECK(mass(res.density) > prev_mass);
    CHECK(mass(res.density) <= 1.0 + 1e-12);
    prev_mass = mass(res.density);
  }
}

TEST_CASE("wild sum with n_max = 0 is the pure dilation term") {
  // Same operator realized through the frequency domain; agreement is limited
  // by the two discretizations (real-space vs frequency interpolation).
  const Kernel k = Kernel::make("uniform", 1);
  const GridDensity u0 = InitialData::gaussian(1, {1.0}, 0.5).discretize(kGrid);
  const auto res = wild_sum_truncated(u0, k, 1.0, 0.7, 0);
  const GridDensity expect = dilate_semigroup(u0, 0.7, 1.0);
  CHECK(l1_distance(res.density, expect) < 1e-3);
}

TEST_CASE("wild sum converges to the spectral solution") {
  const Kernel k = Kernel::make("uniform", 1);
  const InitialData init = InitialData::gaussian(1, {1.0}, 0.5);
  const GridDensity u0 = init.discretize(kGrid);
  const auto res = wild_sum_truncated(u0, k, 1.0, 0.5, 8);
  // Oracle: the closed-form flow evolution of the same tabulated transform
  // (shared input path, so the comparison isolates the series machinery).
  const GridDensity spect = inverse_transform(evolve_hat(transform(u0), k, 1.0, 0.5));
  CHECK(l1_distance(res.density, spect) < 1e-4);
  // and the analytic-input solution is itself nearby
  const GridDensity analytic = solve_density(init, k, 1.0, 0.5, kGrid);
  CHECK(l1_distance(res.density, analytic) < 5e-3);
}

TEST_CASE("wild sum refuses rate regimes that spread the Poisson mass too wide") {
  const Kernel k = Kernel::make("uniform", 1);
  const GridDensity u0 = InitialData::gaussian(1, {0.0}, 0.5).discretize(kGrid);
  CHECK_THROWS_WITH_AS(wild_sum_truncated(u0, k, 0.1, 0.5, 8), doctest::Contains("spectral"),
                       std::domain_error);
}

TEST_CASE("picard iteration: zeroth iterate is the dilation of the initial datum") {
  const Kernel k = Kernel::make("uniform", 1);
  const GridDensity u0 = InitialData::gaussian(1, {0.5}, 0.5).discretize(kGrid);
  const GridDensity zeroth = duhamel_picard(u0, k, 1.0, 0.5, 1.0 / 64, 0);
  CHECK(l1_distance(zeroth, dilate_semigroup(u0, 0.5, 1.0)) == 0.0);
  CHECK_THROWS_AS(duhamel_picard(u0, k, 1.0, 0.5, 0.3, 2), std::invalid_argument);
}

TEST_CASE("picard iterates contract with a factorial envelope") {
  const Kernel k = Kernel::make("uniform", 1);
  const GridDensity u0 = InitialData::gaussian(1, {0.5}, 0.5).discretize(kGrid);
  const double eps = 1.0, t = 0.5;
  const auto gaps = duhamel_picard_gaps(u0, k, eps, t, 1.0 / 64, 8);
  REQUIRE(gaps.size() == 8);
  // ||u^(m+1) - u^(m)|| <= (c t / eps^2)^m / m! * C with c = 2^0 ||J|| = 1:
  // successive ratios must fall like (t/eps^2)/m.
  for (std::size_t m = 1; m < gaps.size(); ++m) {
    if (gaps[m - 1] < 1e-14) break;
    const double ratio = gaps[m] / gaps[m - 1];
    CAPTURE(m);
    CHECK(ratio <= 2.0 * (t / (eps * eps)) / static_cast<double>(m) + 1e-9);
  }
}

TEST_CASE("picard iteration converges to the spectral solution") {
  const Kernel k = Kernel::make("uniform", 1);
  const InitialData init = InitialData::gaussian(1, {1.0}, 0.5);
  const GridDensity u0 = init.discretize(kGrid);
  const GridDensity picard = duhamel_picard(u0, k, 1.0, 0.5, 1.0 / 256, 12);
  const GridDensity spect = solve_density(init, k, 1.0, 0.5, kGrid);
  CHECK(l1_distance(picard, spect) < 5e-3);
}

TEST_CASE("three-dimensional particles follow the per-coordinate law") {
  const Kernel k = Kernel::make("gaussian", 3);
  const InitialData u0 = InitialData::gaussian(3, {1.0, 0.0, -2.0}, 0.25);
  const std::size_t n = 100000;
  const auto ens = simulate(k, 0.8, u0, 8.0, n, 5150, 2);
  REQUIRE(ens.dim == 3);
  REQUIRE(ens.positions.size() == 3 * n);
  const CumulantTable emp = empirical_cumulants(ens, 2);
  for (int axis = 0; axis < 3; ++axis) {
    MultiIndex a1(3, 0), a2(3, 0);
    a1[axis] = 1;
    a2[axis] = 2;
    CAPTURE(axis);
    CHECK(std::abs(emp.at(a1)) < 0.02);       // means relax to 0
    CHECK(emp.at(a2) == doctest::Approx(1.0).epsilon(0.05));  // variances relax to 1
  }
}

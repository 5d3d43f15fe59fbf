#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "nlfp/grid.hpp"
#include "nlfp/initial.hpp"
#include "nlfp/kernel.hpp"
#include "nlfp/quad.hpp"
#include "nlfp/rng.hpp"

using namespace nlfp;

namespace {

const GridSpec kGrid{1, 12.0, 4096};

GridDensity standard_gaussian_grid() {
  return InitialData::gaussian(1, {0.0}, 1.0).discretize(kGrid, /*normalize=*/false);
}

// Random positive gaussian mixtures for the property tests.
GridDensity random_mixture(RngStream& rng) {
  GridDensity u(kGrid);
  const int comps = 1 + static_cast<int>(rng.uniform01() * 3);
  std::vector<double> w(comps), mu(comps), sig(comps);
  for (int c = 0; c < comps; ++c) {
    w[c] = 0.2 + rng.uniform01();
    mu[c] = 6.0 * (rng.uniform01() - 0.5);
    sig[c] = 0.3 + 1.2 * rng.uniform01();
  }
  for (int j = 0; j < kGrid.points; ++j) {
    const double x = kGrid.coord(j);
    double v = 0.0;
    for (int c = 0; c < comps; ++c) {
      const double z = (x - mu[c]) / sig[c];
      v += w[c] * std::exp(-0.5 * z * z) / (sig[c] * std::sqrt(2.0 * M_PI));
    }
    u[j] = v;
  }
  return u;
}

// || J_eps ||_{<x>^k} by adaptive quadrature (for the Young constant).
double kernel_weighted_l1(const Kernel& k, double eps, double kk) {
  double acc = 0.0;
  for (const auto& p : k.axis_panels())
    acc += adaptive_integrate(
        [&](double z) {
          const double x = eps * z;
          return k.density1d(z) * std::pow(1.0 + x * x, 0.5 * kk);
        },
        p.a, p.b, 1e-12);
  return acc;
}

}  // namespace

TEST_CASE("weighted norms of the standard gaussian") {
  const GridDensity g = standard_gaussian_grid();
  CHECK(weighted_norm(g, Weight::polynomial(0)) == doctest::Approx(1.0).epsilon(1e-8));
  // 1 + int x^2 G = 2 with the smoothed weight <x>^2 = 1 + x^2
  CHECK(weighted_norm(g, Weight::polynomial(2)) == doctest::Approx(2.0).epsilon(1e-6));
  const GridDensity zero(kGrid);
  CHECK(weighted_norm(zero, Weight::poisson(1.0)) == 0.0);
}

TEST_CASE("boundary-mass report flags densities leaning on the box edge") {
  const GridDensity g = standard_gaussian_grid();
  CHECK_FALSE(weighted_norm_checked(g, Weight::polynomial(2)).boundary_warning);
  const GridDensity shifted =
      InitialData::gaussian(1, {10.5}, 1.0).discretize(kGrid, false);
  const auto rep = weighted_norm_checked(shifted, Weight::polynomial(0));
  CHECK(rep.boundary_warning);
  CHECK(rep.boundary_fraction > 1e-6);
}

TEST_CASE("transform pair: round trip, gaussian transform, mass at zero frequency") {
  RngStream rng(5);
  const GridDensity u = random_mixture(rng);
  const GridDensity back = inverse_transform(transform(u));
  CHECK(linf_distance(u, back) < 1e-12);

  const GridDensity g = standard_gaussian_grid();
  const SpectralField ghat = transform(g);
  const double xi_max_half = 0.5 * M_PI / kGrid.spacing();
  for (std::size_t i = 0; i < ghat.values().size(); ++i) {
    double xi;
    ghat.freqs(i, std::span<double>(&xi, 1));
    if (std::abs(xi) > xi_max_half) continue;
    CHECK(std::abs(ghat[i] - std::exp(-0.5 * xi * xi)) < 1e-8);
  }
  CHECK(ghat[0].real() == doctest::Approx(mass(g)).epsilon(1e-12));
}

TEST_CASE("convolution preserves mass and reproduces gaussian variance addition") {
  const Kernel k = Kernel::make("gaussian", 1);
  const GridDensity g = standard_gaussian_grid();
  const GridDensity conv = convolve(k, 1.0, g);
  CHECK(mass(conv) == doctest::Approx(mass(g)).epsilon(1e-10));
  // N(0,1) * N(0,2) = N(0,3)
  for (int j = 0; j < kGrid.points; j += 7) {
    const double x = kGrid.coord(j);
    const double expect = std::exp(-x * x / 6.0) / std::sqrt(6.0 * M_PI);
    REQUIRE(std::abs(conv[j] - expect) < 1e-8);
  }
}

TEST_CASE("convolution wrap-around guard") {
  const Kernel k = Kernel::make("uniform", 1);
  const GridSpec tiny{1, 2.0, 256};
  const GridDensity u = InitialData::gaussian(1, {0.0}, 0.1).discretize(tiny);
  CHECK_THROWS_AS(convolve(k, 1.0, u), std::domain_error);
}

TEST_CASE("weighted Young inequality on random densities") {
  RngStream rng(42);
  const Kernel k = Kernel::make("triangular", 1);
  const double eps = 0.8;
  for (int kk : {0, 1, 2}) {
    const double jnorm = kernel_weighted_l1(k, eps, kk);
    for (int rep = 0; rep < 34; ++rep) {
      const GridDensity u = random_mixture(rng);
      const double lhs = weighted_norm(convolve(k, eps, u), Weight::polynomial(kk));
      const double rhs = std::pow(2.0, kk) * jnorm * weighted_norm(u, Weight::polynomial(kk));
      CAPTURE(kk);
      CAPTURE(rep);
      CHECK(lhs <= rhs * (1.0 + 1e-9));
    }
  }
}

TEST_CASE("dilation semigroup: identity at t = 0 and exact mass decay") {
  const GridDensity g = standard_gaussian_grid();
  const GridDensity same = dilate_semigroup(g, 0.0, 0.7);
  CHECK(linf_distance(g, same) < 1e-13);
  for (double eps : {1.0, 0.5}) {
    for (double t : {0.1, 1.0}) {
      const GridDensity moved = dilate_semigroup(g, t, eps);
      CAPTURE(eps);
      CAPTURE(t);
      CHECK(mass(moved) ==
            doctest::Approx(std::exp(-t / (eps * eps)) * mass(g)).epsilon(1e-6));
    }
  }
}

TEST_CASE("dilation contracts every weighted norm at rate exp(-t/eps^2)") {
  RngStream rng(11);
  for (int rep = 0; rep < 25; ++rep) {
    const GridDensity u = random_mixture(rng);
    for (double t : {0.1, 1.0}) {
      for (int kk : {0, 2}) {
        const double eps = 0.9;
        const double lhs = weighted_norm(dilate_semigroup(u, t, eps), Weight::polynomial(kk));
        const double rhs = std::exp(-t / (eps * eps)) * weighted_norm(u, Weight::polynomial(kk));
        CAPTURE(rep);
        CAPTURE(t);
        CAPTURE(kk);
        CHECK(lhs <= rhs + 1e-6);
      }
    }
  }
}

TEST_CASE("dilation commutes with convolution after rescaling the kernel") {
  // J_eps * (T_t f) = T_t [J_{eps e^t} * f].  The right-hand side convolves
  // with the stretched kernel J_{eps e^t}, so the box must hold its reach.
  const GridSpec wide{1, 24.0, 4096};
  const InitialData bump = InitialData::gaussian(1, {0.3}, 0.25);
  const GridDensity f = bump.discretize(wide);
  for (const char* name : {"uniform", "triangular", "gaussian", "skew_step"}) {
    const Kernel k = Kernel::make(name, 1);
    for (double eps : {0.5, 1.0}) {
      for (double t : {0.3, 1.0}) {
        const GridDensity lhs = convolve(k, eps, dilate_semigroup(f, t, eps));
        const GridDensity rhs = dilate_semigroup(convolve(k, eps * std::exp(t), f), t, eps);
        CAPTURE(name);
        CAPTURE(eps);
        CAPTURE(t);
        CHECK(l1_distance(lhs, rhs) < 1e-6);
      }
    }
  }
}

TEST_CASE("csv serialization carries coordinates and values") {
  const GridSpec small{1, 2.0, 8};
  GridDensity u(small);
  for (int j = 0; j < 8; ++j) u[j] = j;
  std::ostringstream os;
  write_csv(u, os);
  const std::string text = os.str();
  CHECK(text.rfind("x,value\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 9);
}

TEST_CASE("binary cache round-trips and validates grid metadata") {
  const GridDensity g = standard_gaussian_grid();
  const std::string path = "/tmp/nlfp_test_cache.bin";
  write_cache(g, path);
  const GridDensity back = read_cache(path, kGrid);
  CHECK(linf_distance(g, back) == 0.0);
  CHECK_THROWS_AS(read_cache(path, GridSpec{1, 10.0, 4096}), std::runtime_error);
}

TEST_CASE("two-dimensional transforms round-trip and convolve correctly") {
  const GridSpec grid2{2, 8.0, 128};
  GridDensity u(grid2);
  // anisotropic, off-center gaussian
  for (int jx = 0; jx < grid2.points; ++jx) {
    for (int jy = 0; jy < grid2.points; ++jy) {
      const double x = grid2.coord(jx), y = grid2.coord(jy);
      u[static_cast<std::size_t>(jx) * grid2.points + jy] =
          std::exp(-0.5 * ((x - 0.4) * (x - 0.4) / 0.8 + (y + 0.3) * (y + 0.3) / 0.5)) /
          (2.0 * M_PI * std::sqrt(0.8 * 0.5));
    }
  }
  const GridDensity back = inverse_transform(transform(u));
  CHECK(linf_distance(u, back) < 1e-12);
  CHECK(transform(u)[0].real() == doctest::Approx(mass(u)).epsilon(1e-12));

  // gaussian kernel convolution adds eps^2 * 2 per-axis variance
  const Kernel k = Kernel::make("gaussian", 2);
  const double eps = 0.5;
  const GridDensity conv = convolve(k, eps, u);
  CHECK(mass(conv) == doctest::Approx(mass(u)).epsilon(1e-10));
  const double vx = 0.8 + 2.0 * eps * eps, vy = 0.5 + 2.0 * eps * eps;
  double worst = 0.0;
  for (int jx = 0; jx < grid2.points; ++jx) {
    for (int jy = 0; jy < grid2.points; ++jy) {
      const double x = grid2.coord(jx), y = grid2.coord(jy);
      const double expect =
          std::exp(-0.5 * ((x - 0.4) * (x - 0.4) / vx + (y + 0.3) * (y + 0.3) / vy)) /
          (2.0 * M_PI * std::sqrt(vx * vy));
      worst = std::max(
          worst, std::abs(conv[static_cast<std::size_t>(jx) * grid2.points + jy] - expect));
    }
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("transforms of real densities are hermitian") {
  RngStream rng(31);
  const GridDensity u = random_mixture(rng);
  const SpectralField f = transform(u);
  const int n = kGrid.points;
  // bin of -k is (n - m) mod n
  for (int m = 1; m < n; m += 5) {
    const auto a = f[m];
    const auto b = f[(n - m) % n];
    REQUIRE(std::abs(a - std::conj(b)) < 1e-12);
  }
}

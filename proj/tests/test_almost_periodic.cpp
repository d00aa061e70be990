#include "doctest.h"

#include "tempered/almost_periodic.hpp"
#include "tempered/gallery.hpp"

#include <cmath>
#include <sstream>

using namespace tempered;

namespace {

// Direct periodization sum_n e^{-pi (n - t)^2 / s^2}.
double periodized(double t, double period, double s = 1.0) {
  double v = 0.0;
  for (int n = -60; n <= 60; ++n) {
    const double x = n * period - t;
    v += std::exp(-kPi * x * x / (s * s));
  }
  return v;
}

}  // namespace

TEST_CASE("sampled comb convolution is the periodized Gaussian") {
  const auto f = GeneratorSum::comb(Lattice::identity(1), zero_point(1));
  const auto psi = TestFunction::gaussian(zero_point(1));
  const auto g = sample_convolution(f, psi, Window::ball(1, 4.0), 1.0 / 16);
  REQUIRE(g.size() == 129);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(std::abs(g.values[i] - periodized(g.node(i)[0], 1.0)) < 1e-12);
  CHECK(std::abs(g.values[64] - pair(f, psi, auto_window(f, psi))) < 1e-12);
}

TEST_CASE("two-comb sum adds two periodizations") {
  const auto f = *gallery("incommensurate-pair").distribution;
  const auto psi = TestFunction::gaussian(zero_point(1));
  const auto g = sample_convolution(f, psi, Window::ball(1, 3.0), 1.0 / 8);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double t = g.node(i)[0];
    CHECK(std::abs(g.values[i] - (periodized(t, 1.0) + periodized(t, std::sqrt(2.0)))) < 1e-10);
  }
}

TEST_CASE("almost periods of the periodized Gaussian") {
  const auto f = GeneratorSum::comb(Lattice::identity(1), zero_point(1));
  const auto g = sample_convolution(f, TestFunction::gaussian(zero_point(1)), Window::ball(1, 10.0), 1.0 / 64);
  const auto rep = almost_periods(g, 1e-9 * g.max_abs(), 5.0);
  REQUIRE(rep.taus.size() == 11);
  for (const auto& t : rep.taus) CHECK(std::abs(t[0] - std::round(t[0])) < 1e-12);
  CHECK(rep.overlap_radius == doctest::Approx(7.5));
  CHECK(max_gap(rep.taus, Window::ball(1, 5.0), 1.0 / 64) == doctest::Approx(0.5).epsilon(1e-9));

  // tau = 1/2 moves the peak onto the trough.
  const double sup_half = std::abs(periodized(0.5, 1.0) - periodized(0.0, 1.0));
  const auto loose = almost_periods(g, 0.5 * sup_half, 5.0);
  for (const auto& t : loose.taus) CHECK(std::abs(t[0] - 0.5) > 1e-9);
  CHECK_THROWS_AS(almost_periods(g, 1e-17), ContractError);
}

TEST_CASE("almost period set properties") {
  const auto f = *gallery("incommensurate-pair").distribution;
  const auto g = sample_convolution(f, TestFunction::gaussian(zero_point(1)), Window::ball(1, 30.0), 1.0 / 32);
  const auto small = almost_periods(g, 0.05, 15.0);
  const auto big = almost_periods(g, 0.1, 15.0);
  // Symmetry and monotonicity in eps.
  for (const auto& t : big.taus) {
    bool mirrored = false;
    for (const auto& u : big.taus) mirrored = mirrored || (u + t).norm() < 1e-12;
    CHECK(mirrored);
  }
  for (const auto& t : small.taus) {
    bool found = false;
    for (const auto& u : big.taus) found = found || (u - t).norm() < 1e-12;
    CHECK(found);
  }
  CHECK(big.taus.size() > 1);
}

TEST_CASE("max_gap examples") {
  std::vector<Point> integers;
  for (int n = -10; n <= 10; ++n) integers.push_back(make_point({double(n)}));
  CHECK(std::abs(max_gap(integers, Window::ball(1, 10.0), 1.0 / 64) - 0.5) <= 1.0 / 64);
  CHECK(max_gap({make_point({0})}, Window::ball(1, 10.0), 1.0 / 64) == doctest::Approx(10.0));
  std::vector<Point> dense;
  for (int n = -400; n <= 400; ++n) dense.push_back(make_point({n / 32.0}));
  CHECK(max_gap(dense, Window::ball(1, 10.0), 1.0 / 64) <= 1.0 / 64);
  CHECK_THROWS_AS(max_gap({}, Window::ball(1, 1.0), 0.1), ContractError);
}

TEST_CASE("2-d sampling and csv round trip") {
  const auto f = GeneratorSum::comb(Lattice::identity(2), zero_point(2));
  const auto g = sample_convolution(f, TestFunction::gaussian(zero_point(2)), Window::ball(2, 1.0), 0.25);
  CHECK(g.size() == 81);
  std::stringstream a;
  write_csv(a, g);
  const auto back = read_csv(a);
  std::stringstream b;
  write_csv(b, back);
  CHECK(a.str() == b.str());
  REQUIRE(back.size() == g.size());
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(back.values[i] == g.values[i]);
  const auto rep = almost_periods(g, 1e-9, 1.0);
  CHECK(rep.taus.size() == 5);
}

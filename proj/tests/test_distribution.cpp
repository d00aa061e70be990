#include "doctest.h"
#include "oracles.hpp"

#include "tempered/distribution.hpp"

#include <cmath>
#include <random>

using namespace tempered;

namespace {

GeneratorSum moment_comb(int alpha) {
  GeneratorSum f(1);
  f.add(CombGenerator(Lattice::identity(1), make_point({0}), MultiIndex{0}, MultiIndex{alpha}, 1.0));
  return f;
}

GeneratorSum derivative_delta() {
  GeneratorSum f(1);
  Atom a;
  a.point = make_point({0});
  a.terms[MultiIndex{1}] = 1.0;
  f.add(a);
  return f;
}

GeneratorSum delta0(int d) {
  GeneratorSum f(d);
  Atom a;
  a.point = zero_point(d);
  a.terms[MultiIndex(d)] = 1.0;
  f.add(a);
  return f;
}

// Remark series paired with e^{-pi x^2}, summed with expm1 so the tiny
// differences are exact to rounding.
double remark_gaussian_oracle(int big_j) {
  double s = 0.0;
  for (int j = 1; j <= big_j; ++j) {
    const double d = std::ldexp(1.0, -2 * j);
    s += std::ldexp(1.0, j) * std::exp(-kPi * j * j) * std::expm1(-kPi * (2.0 * j * d + d * d));
  }
  return s;
}

}  // namespace

TEST_CASE("expand examples") {
  const auto z2 = GeneratorSum::comb(Lattice::identity(2), zero_point(2));
  const auto atoms = expand(z2, Window::ball(2, 1.5));
  CHECK(atoms.size() == 9);
  for (const auto& a : atoms) CHECK(a.terms.at(MultiIndex(2)) == Complex(1.0));
  CHECK(atoms.front().point.norm() == 0.0);

  const auto m = expand(moment_comb(1), Window::ball(1, 2.5));
  // The atom at 0 carries coefficient 0 and is not part of the support.
  REQUIRE(m.size() == 4);
  std::vector<double> coeffs;
  for (const auto& a : m) {
    CHECK(a.terms.at(MultiIndex{0}).real() == a.point[0]);
    coeffs.push_back(a.point[0]);
  }
  CHECK(coeffs == std::vector<double>{-1, 1, -2, 2});

  const auto r = expand(GeneratorSum::remark(5), Window::ball(1, 6));
  REQUIRE(r.size() == 10);
  for (int j = 1; j <= 5; ++j) {
    CHECK(kappa(GeneratorSum::remark(5), make_point({double(j)})) == std::ldexp(1.0, j));
  }
  for (const auto& a : r) {
    const double x = a.point[0];
    const int j = static_cast<int>(std::floor(x));
    const double c = a.terms.at(MultiIndex{0}).real();
    if (x == j)
      CHECK(c == -std::ldexp(1.0, j));
    else {
      CHECK(x == j + std::ldexp(1.0, -2 * j));
      CHECK(c == std::ldexp(1.0, j));
    }
  }
}

TEST_CASE("expand merges coincident generators and is deterministic") {
  auto f = GeneratorSum::comb(Lattice::identity(1), make_point({0}));
  f += GeneratorSum::comb(Lattice::identity(1, 2.0), make_point({0}), 2.0);
  const auto a = expand(f, Window::ball(1, 4.5));
  const auto b = expand(f, Window::ball(1, 4.5));
  REQUIRE(a.size() == 9);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].point == b[i].point);
    CHECK(a[i].terms == b[i].terms);
    const bool even = std::fmod(std::abs(a[i].point[0]), 2.0) == 0.0;
    CHECK(a[i].kappa() == (even ? 3.0 : 1.0));
  }
  CHECK_THROWS_AS(expand(f, Window::ball(2, 1.0)), ContractError);
}

TEST_CASE("pair examples") {
  const auto g = TestFunction::gaussian(zero_point(1));
  CHECK(std::abs(pair(delta0(1), g, Window::ball(1, 1.0)) - 1.0) < 1e-15);
  CHECK(std::abs(pair(delta0(2), TestFunction::gaussian(zero_point(2)), Window::ball(2, 1.0)) - 1.0) < 1e-15);

  const auto shifted = TestFunction::gaussian(make_point({1.0}));
  const Complex v = pair(derivative_delta(), shifted, Window::ball(1, 1.0));
  CHECK(std::abs(v - (-2 * kPi * std::exp(-kPi))) < 1e-14);
}

TEST_CASE("pair on the remark series") {
  const auto f = GeneratorSum::remark(30);
  const auto psi = TestFunction::gaussian(zero_point(1));
  const PairResult r = pair_detailed(f, psi, Window::ball(1, 40));
  CHECK(std::abs(r.value.real() - remark_gaussian_oracle(30)) < 1e-15);
  CHECK(std::abs(r.value.imag()) < 1e-15);
  const double sup_dpsi = std::sqrt(2 * kPi) * std::exp(-0.5);
  CHECK(std::abs(r.value) <= sup_dpsi);
  CHECK(r.series_tail == doctest::Approx(std::ldexp(sup_dpsi, -30)).epsilon(1e-3));

  // A wider test function probes many terms of the series.
  const auto wide = TestFunction::gaussian(make_point({6.0}), 4.0);
  const PairResult w = pair_detailed(f, wide, Window::ball(1, 60));
  double oracle_sum = 0.0;
  for (int j = 1; j <= 30; ++j) {
    const double d = std::ldexp(1.0, -2 * j);
    const double u = (j - 6.0) / 4.0;
    const double du = d / 4.0;
    oracle_sum += std::ldexp(1.0, j) * std::exp(-kPi * u * u) * std::expm1(-kPi * (2.0 * u * du + du * du));
  }
  CHECK(std::abs(w.value.real() - oracle_sum) < 1e-12);
}

TEST_CASE("pair reports windows that are too small") {
  const auto comb = GeneratorSum::comb(Lattice::identity(1), make_point({0}));
  const auto g = TestFunction::gaussian(zero_point(1));
  CHECK_THROWS_WITH_AS(pair(comb, g, Window::ball(1, 1.5)), doctest::Contains("tail bound"), ContractError);
  const Window w = auto_window(comb, g);
  double theta = 0.0;
  for (int n = -10; n <= 10; ++n) theta += std::exp(-kPi * n * n);
  CHECK(std::abs(pair(comb, g, w) - theta) < 1e-14);
  CHECK_THROWS_AS(pair(comb, TestFunction::gaussian(zero_point(2)), w), ContractError);
}

TEST_CASE("pair is linear") {
  std::mt19937_64 rng(41);
  const auto f1 = GeneratorSum::comb(Lattice::identity(1, 0.7), make_point({0.2}), Complex(1, 2));
  const auto f2 = moment_comb(2);
  for (int trial = 0; trial < 5; ++trial) {
    const auto phi = oracle::random_function(rng, 1, 2);
    const Window w = Window::ball(1, 14);
    const Complex lhs = pair(f1 + f2, phi, w);
    const Complex rhs = pair(f1, phi, w) + pair(f2, phi, w);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)));
  }
}

TEST_CASE("translate agrees with translated test functions") {
  std::mt19937_64 rng(43);
  auto f = moment_comb(2);
  f += GeneratorSum::comb(Lattice::identity(1, 0.5), make_point({0.1}));
  const Point t = make_point({0.35});
  const auto ft = translate(f, t);
  for (int trial = 0; trial < 3; ++trial) {
    const auto phi = oracle::random_function(rng, 1);
    const Window w = Window::ball(1, 16);
    const Complex a = pair(ft, phi, w);
    const Complex b = pair(f, translate(phi, -t), w);
    CHECK(std::abs(a - b) < 1e-10 * std::max(1.0, std::abs(a)));
  }
}

TEST_CASE("kappa, rho and order") {
  const auto z = GeneratorSum::comb(Lattice::identity(1), make_point({0}));
  CHECK(kappa(z, make_point({3})) == 1.0);
  CHECK(kappa(z, make_point({0.5})) == 0.0);
  CHECK(kappa(GeneratorSum::remark(8), make_point({3 + std::ldexp(1.0, -6)})) == 8.0);

  CHECK(rho(z, 2.5) == 5.0);
  CHECK(rho(z, 2.0) == 3.0);
  CHECK(rho(GeneratorSum::comb(Lattice::identity(2), zero_point(2)), 1.5) == 9.0);
  CHECK(rho(moment_comb(1), 3.5) == 12.0);

  const auto f = moment_comb(1) + GeneratorSum::comb(Lattice::identity(1, 0.5), make_point({0.25}));
  double prev = 0.0;
  for (double r = 0.3; r < 6.0; r += 0.37) {
    const double v = rho(f, r);
    CHECK(v >= prev);
    prev = v;
    double s = 0.0;
    for (const auto& a : expand(f, Window::ball(1, r))) s += kappa(f, a.point);
    CHECK(v == s);
  }

  CHECK(order(z) == 0);
  GeneratorSum dcomb(1);
  dcomb.add(CombGenerator(Lattice::identity(1), make_point({0}), MultiIndex{1}, MultiIndex{0}, 1.0));
  CHECK(order(dcomb) == 1);
  GeneratorSum mixed(2);
  mixed.add(CombGenerator(Lattice::identity(2), zero_point(2), MultiIndex{1, 1}, MultiIndex{0, 0}, 1.0));
  mixed.add(CombGenerator(Lattice::identity(2), make_point({0.5, 0.5}), MultiIndex{1, 0}, MultiIndex{0, 0}, 1.0));
  CHECK(order(mixed) == 2);
}

TEST_CASE("continuity_ratio") {
  const auto g = TestFunction::gaussian(zero_point(1));
  CHECK(continuity_ratio(delta0(1), {g}, 0, 0, Window::ball(1, 1)) == doctest::Approx(1.0).epsilon(1e-6));

  const auto shifted = TestFunction::gaussian(make_point({1.0}));
  const double n01 = oracle::grid_max(
      [](double x) {
        const double e = std::exp(-kPi * (x - 1) * (x - 1));
        return std::max(e, std::abs(2 * kPi * (x - 1) * e));
      },
      -6, 8, 1400000);
  CHECK(continuity_ratio(derivative_delta(), {shifted}, 0, 1, Window::ball(1, 1)) ==
        doctest::Approx(2 * kPi * std::exp(-kPi) / n01).epsilon(1e-3));

  std::vector<TestFunction> suite;
  for (int i = 0; i < 6; ++i) suite.push_back(TestFunction::gaussian(make_point({0.5 + i}), 0.5 + 0.3 * i));
  const auto remark = GeneratorSum::remark(30);
  CHECK(continuity_ratio(remark, suite, 0, 1, Window::ball(1, 60)) <= 1.0 + 1e-6);

  CHECK_THROWS_AS(continuity_ratio(delta0(1), {}, 0, 0, Window::ball(1, 1)), ContractError);
}

#include "doctest.h"
#include "oracles.hpp"

#include "tempered/spectrum.hpp"

#include <cmath>
#include <random>

using namespace tempered;

namespace {

GeneratorSum moment_comb(int alpha) {
  GeneratorSum f(1);
  f.add(CombGenerator(Lattice::identity(1), make_point({0}), MultiIndex{0}, MultiIndex{alpha}, 1.0));
  return f;
}

GeneratorSum derivative_comb() {
  GeneratorSum f(1);
  f.add(CombGenerator(Lattice::identity(1), make_point({0}), MultiIndex{1}, MultiIndex{0}, 1.0));
  return f;
}

// Two-coset 2-d crystal with derivative and moment parts.
GeneratorSum mixed_crystal() {
  Matrix t(2, 2);
  t << 1.0, 0.3, 0.1, 1.2;
  const Lattice l(t);
  GeneratorSum f(2);
  f.add(CombGenerator(l, make_point({0, 0}), MultiIndex{0, 0}, MultiIndex{0, 0}, Complex(1.0, 0.5)));
  f.add(CombGenerator(l, make_point({0.4, 0.3}), MultiIndex{1, 0}, MultiIndex{0, 0}, Complex(-0.7, 0.0)));
  f.add(CombGenerator(l, make_point({0.4, 0.3}), MultiIndex{0, 0}, MultiIndex{0, 1}, Complex(0.2, 0.1)));
  return f;
}

}  // namespace

TEST_CASE("spectrum of simple combs") {
  const auto fz = spectrum(GeneratorSum::comb(Lattice::identity(1), make_point({0})));
  CHECK(fz.order() == 0);
  CHECK(std::abs(fz.coefficient(make_point({3}), MultiIndex{0}) - 1.0) < 1e-15);
  CHECK(lattices_equal(fz.dual_lattice(), Lattice::identity(1)));

  const auto fc = spectrum(GeneratorSum::comb(Lattice::identity(1), make_point({1.0 / 3.0})));
  for (int g = -3; g <= 3; ++g) {
    const Complex want = std::polar(1.0, -2.0 * kPi * g / 3.0);
    CHECK(std::abs(fc.coefficient(make_point({double(g)}), MultiIndex{0}) - want) < 1e-14);
  }

  const auto f2 = spectrum(GeneratorSum::comb(Lattice::identity(1, 2.0), make_point({0})));
  CHECK(lattices_equal(f2.dual_lattice(), Lattice::identity(1, 0.5)));
  CHECK(std::abs(f2.coefficient(make_point({1.5}), MultiIndex{0}) - 0.5) < 1e-15);
}

TEST_CASE("moment comb spectrum is order one with constant coefficient") {
  const auto F = spectrum(moment_comb(1));
  CHECK(F.order() == 1);
  const Complex want(0.0, 1.0 / (2.0 * kPi));
  for (int g = -50; g <= 50; ++g) {
    const auto q = F.coefficients(make_point({double(g)}));
    CHECK(std::abs(q.at(MultiIndex{1}) - want) < 1e-15);
    CHECK(std::abs(F.coefficient(make_point({double(g)}), MultiIndex{0})) < 1e-15);
  }
}

TEST_CASE("derivative comb coefficients grow linearly") {
  const auto F = spectrum(derivative_comb());
  CHECK(F.order() == 0);
  CHECK(F.growth_degree() == 1);
  for (int g = 1; g <= 5; ++g) CHECK(std::abs(F.kappa(make_point({double(g)})) - 2.0 * kPi * g) < 1e-12);
}

TEST_CASE("theta identity on both sides") {
  const auto f = GeneratorSum::comb(Lattice::identity(1), make_point({0}));
  const auto phi = TestFunction::gaussian(make_point({0}));
  double theta = 0.0;
  for (int n = -20; n <= 20; ++n) theta += std::exp(-kPi * n * n);
  CHECK(std::abs(spectral_pair(spectrum(f), phi, 10.0) - theta) < 1e-14);
  const auto far = TestFunction::gaussian(make_point({1e3}));
  const auto r = spectral_pair_detailed(spectrum(f), far, 10.0);
  CHECK(std::abs(r.value) < 1e-12);
  CHECK(r.tail > 0.1);
}

TEST_CASE("defining identity against direct pairing") {
  std::mt19937_64 rng(11);
  for (const auto& f : {moment_comb(1), moment_comb(2), derivative_comb()}) {
    const auto F = spectrum(f);
    for (int i = 0; i < 10; ++i) {
      const auto phi = oracle::random_function(rng, 1, 2);
      const Complex lhs = spectral_pair(F, phi, spectral_radius(F, phi));
      const auto fphi = fourier(phi);
      const Complex rhs = pair(f, fphi, auto_window(f, fphi));
      CHECK(std::abs(lhs - rhs) <= 1e-8 * (1.0 + std::abs(rhs)));
    }
  }
  const auto f = mixed_crystal();
  const auto F = spectrum(f);
  for (int i = 0; i < 5; ++i) {
    const auto phi = oracle::random_function(rng, 2, 1, 2);
    const Complex lhs = spectral_pair(F, phi, spectral_radius(F, phi));
    const auto fphi = fourier(phi);
    const Complex rhs = pair(f, fphi, auto_window(f, fphi));
    CHECK(std::abs(lhs - rhs) <= 1e-8 * (1.0 + std::abs(rhs)));
  }
}

TEST_CASE("commensurable generators share the intersection dual") {
  auto f = GeneratorSum::comb(Lattice::identity(1), make_point({0}));
  f += GeneratorSum::comb(Lattice::identity(1, 1.5), make_point({0.25}));
  const auto F = spectrum(f);
  CHECK(lattices_equal(F.dual_lattice(), Lattice::identity(1, 1.0 / 3.0)));
  const auto phi = TestFunction::gaussian(make_point({0.2}), 0.8);
  const auto fphi = fourier(phi);
  const Complex lhs = spectral_pair(F, phi, spectral_radius(F, phi));
  const Complex rhs = pair(f, fphi, auto_window(f, fphi));
  CHECK(std::abs(lhs - rhs) < 1e-10);

  auto g = GeneratorSum::comb(Lattice::identity(1), make_point({0}));
  g += GeneratorSum::comb(Lattice::identity(1, std::sqrt(2.0)), make_point({0}));
  CHECK_THROWS_AS(spectrum(g), ContractError);
  CHECK_THROWS_AS(spectrum(GeneratorSum::remark(3)), ContractError);
}

// Pointwise phase covariance holds for order-0 spectra; with derivative
// terms the phase factor mixes j-indices through the Leibniz rule.
TEST_CASE("translation covariance") {
  Matrix t(2, 2);
  t << 1.0, 0.3, 0.1, 1.2;
  GeneratorSum f(2);
  f.add(CombGenerator(Lattice(t), make_point({0, 0}), MultiIndex{0, 0}, MultiIndex{0, 0}, Complex(1.0, 0.5)));
  f.add(CombGenerator(Lattice(t), make_point({0.4, 0.3}), MultiIndex{1, 1}, MultiIndex{0, 0}, Complex(-0.7, 0.0)));
  const Point a = make_point({0.17, -0.4});
  const auto F = spectrum(f);
  const auto Ft = spectrum(translate(f, a));
  for (const auto& g : F.support_points(3.0)) {
    const Complex phase = std::polar(1.0, -2.0 * kPi * a.dot(g));
    const auto q = F.coefficients(g);
    const auto qt = Ft.coefficients(g);
    for (const auto& [j, v] : q) {
      const auto it = qt.find(j);
      const Complex w = it == qt.end() ? Complex(0.0) : it->second;
      CHECK(std::abs(w - v * phase) < 1e-10);
    }
  }
}

TEST_CASE("spectral pair contract") {
  const auto F = spectrum(GeneratorSum::comb(Lattice::identity(1), make_point({0})));
  CHECK_THROWS_AS(spectral_pair(F, TestFunction::gaussian(make_point({0}), 3.0), 2.0), ContractError);
}

TEST_CASE("convolution two sides") {
  const auto f = GeneratorSum::comb(Lattice::identity(1), make_point({0}));
  const auto psi = TestFunction::gaussian(make_point({0}));
  const auto s = conv_transform(f, psi, make_point({0.3}));
  double want = 0.0;
  for (int n = -20; n <= 20; ++n) want += std::exp(-kPi * (n - 0.3) * (n - 0.3));
  CHECK(std::abs(s.direct - want) < 1e-12);
  CHECK(std::abs(s.spectral - want) < 1e-10);

  const auto g = GeneratorSum::comb(Lattice::identity(1), make_point({1.0 / 3.0}));
  for (double t : {0.0, 0.21, -0.77}) {
    const auto r = conv_transform(g, psi, make_point({t}));
    CHECK(std::abs(r.direct - r.spectral) < 1e-8);
  }
}

TEST_CASE("coefficient probe") {
  GeneratorSum d(1);
  Atom a;
  a.point = make_point({0});
  a.terms[MultiIndex{1}] = 1.0;
  d.add(a);
  CHECK(coefficient_probe(d, make_point({0}), MultiIndex{1}, 0.4) == Complex(1.0));
  CHECK(coefficient_probe(d, make_point({0}), MultiIndex{2}, 0.4) == Complex(0.0));

  const auto f = mixed_crystal();
  for (const auto& at : expand(f, Window::ball(2, 3.0)))
    for (const auto& [k, p] : at.terms) CHECK(std::abs(coefficient_probe(f, at.point, k, 0.2) - p) < 1e-12);

  CHECK_THROWS_AS(coefficient_probe(GeneratorSum::comb(Lattice::identity(1), make_point({0})), make_point({0}),
                                    MultiIndex{0}, 0.9),
                  ContractError);
}

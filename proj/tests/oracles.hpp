#pragma once
// Test-only reference computations, independent of the library's closed forms.

#include "tempered/test_function.hpp"

#include <cmath>
#include <functional>
#include <random>

namespace oracle {

using tempered::Complex;
using tempered::kPi;

/// Trapezoid rule on [a, b] with n panels.
inline Complex trapezoid(const std::function<Complex(double)>& g, double a, double b, int n) {
  const double h = (b - a) / n;
  Complex s = 0.5 * (g(a) + g(b));
  for (int i = 1; i < n; ++i) s += g(a + i * h);
  return s * h;
}

/// Dense-grid maximum of g on [a, b].
inline double grid_max(const std::function<double(double)>& g, double a, double b, int n) {
  double m = 0.0;
  for (int i = 0; i <= n; ++i) m = std::max(m, g(a + (b - a) * i / n));
  return m;
}

/// Random 1-d Gauss-Hermite atom with moderate parameters.
inline tempered::GaussHermiteAtom random_atom(std::mt19937_64& rng, int dim, int max_degree = 3) {
  std::uniform_real_distribution<double> scale(0.6, 1.5), shift(-1.0, 1.0), mod(-0.7, 0.7), c(-1.0, 1.0);
  std::uniform_int_distribution<int> deg(0, max_degree);
  tempered::GaussHermiteAtom a;
  a.scale = tempered::Point(dim);
  a.shift = tempered::Point(dim);
  a.modulation = tempered::Point(dim);
  a.hermite = tempered::MultiIndex(dim);
  for (int i = 0; i < dim; ++i) {
    a.scale[i] = scale(rng);
    a.shift[i] = shift(rng);
    a.modulation[i] = mod(rng);
    a.hermite[i] = deg(rng);
  }
  a.coeff = Complex(c(rng), c(rng));
  return a;
}

inline tempered::TestFunction random_function(std::mt19937_64& rng, int dim, int atoms = 1, int max_degree = 3) {
  std::vector<tempered::GaussHermiteAtom> v;
  for (int i = 0; i < atoms; ++i) v.push_back(random_atom(rng, dim, max_degree));
  return tempered::TestFunction(dim, v);
}

}  // namespace oracle

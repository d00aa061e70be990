#pragma once

#include "tempered/distribution.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace tempered {

/// Values of a function on the uniform grid origin + step * i,
/// 0 <= i_a < counts[a], stored with the first axis varying fastest.
struct SampledFunction {
  int dim = 1;
  Point origin;
  double step = 0.0;
  std::vector<int> counts;
  std::vector<Complex> values;
  /// Bound on the evaluation error of every stored value.
  double tail_bound = 0.0;

  std::size_t size() const { return values.size(); }
  Point node(std::size_t flat) const;
  double max_abs() const;
  void validate() const;
};

/// Grid of step h covering the box around w (nodes w.center + h * j with
/// |j_a| <= floor(w.radius / h)).
SampledFunction make_grid(int dim, const Window& w, double h);

/// g(t) = f(psi(. - t)) on the grid. Crystal-supported f is evaluated on the
/// spectral side, everything else on the direct side.
SampledFunction sample_convolution(const GeneratorSum& f, const TestFunction& psi, const Window& w, double h);

struct AlmostPeriodReport {
  std::vector<Point> taus;
  double eps = 0.0;
  double step = 0.0;
  /// Candidates are the grid vectors with |tau| <= shift_radius.
  double shift_radius = 0.0;
  /// Every comparison ran over an overlap of at least this half-width.
  double overlap_radius = 0.0;
};

/// Grid vectors tau with max over the overlap of |g(t + tau) - g(t)| < eps.
/// shift_radius defaults to half the sampled half-width. Throws
/// "uncertifiable" when eps is below twice the evaluation error.
AlmostPeriodReport almost_periods(const SampledFunction& g, double eps, double shift_radius = 0.0);

/// Largest distance from a node of the grid of step h over w to the nearest
/// tau (the relative-denseness radius witnessed on w).
double max_gap(const std::vector<Point>& taus, const Window& w, double h);

void write_csv(std::ostream& out, const SampledFunction& g);
SampledFunction read_csv(std::istream& in);

}  // namespace tempered

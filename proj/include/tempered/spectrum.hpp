#pragma once

#include "tempered/distribution.hpp"
#include "tempered/lattice.hpp"

#include <map>
#include <vector>

namespace tempered {

/// One symbolic contribution coeff * gamma^monomial * e^{-2 pi i <phase, gamma>}
/// to the coefficient q_{gamma, j} of D^j delta_gamma.
struct SpectralTerm {
  Point phase;
  MultiIndex j;
  MultiIndex monomial;
  Complex coeff;
};

/// sum_{gamma in L*} sum_j q_{gamma,j} D^j delta_gamma with q given by a
/// finite table of SpectralTerms.
class SpectralDistribution {
 public:
  SpectralDistribution(Lattice dual_lattice, std::vector<SpectralTerm> terms, double det_factor);

  int dim() const { return dual_lattice_.dim(); }
  const Lattice& dual_lattice() const { return dual_lattice_; }
  const std::vector<SpectralTerm>& terms() const { return terms_; }
  /// Maximal |j| with a nonzero coefficient.
  int order() const { return order_; }
  /// |det T|^{-1} of the lattice the input combs were summed over.
  double det_factor() const { return det_factor_; }

  /// q_{gamma, j} for every j with a symbolic term.
  std::map<MultiIndex, Complex> coefficients(const Point& gamma) const;
  Complex coefficient(const Point& gamma, const MultiIndex& j) const;
  /// kappa of the transform at gamma: max_j |q_{gamma,j}|.
  double kappa(const Point& gamma) const;
  /// Points of L* in B(0, radius), sorted by (|gamma|, lexicographic).
  std::vector<Point> support_points(double radius) const;
  /// Largest |monomial| over the terms (polynomial growth degree of q).
  int growth_degree() const;

 private:
  Lattice dual_lattice_;
  std::vector<SpectralTerm> terms_;
  double det_factor_;
  int order_ = 0;
};

/// Closed-form Fourier transform of a crystal-supported GeneratorSum by
/// Poisson summation. Errors: "non-crystal", "incommensurable".
SpectralDistribution spectrum(const GeneratorSum& f);

struct SpectralPairResult {
  Complex value;
  double tail = 0.0;
};

inline constexpr double kSpectralTolerance = 1e-12;

SpectralPairResult spectral_pair_detailed(const SpectralDistribution& F, const TestFunction& phi, double radius);

/// sum_{|gamma| < radius} sum_j q_{gamma,j} (-1)^{|j|} D^j phi(gamma). Throws
/// "tail-bound" when the certified tail exceeds kSpectralTolerance times the
/// accumulated magnitude.
Complex spectral_pair(const SpectralDistribution& F, const TestFunction& phi, double radius);

/// Smallest tried radius meeting the spectral_pair contract.
double spectral_radius(const SpectralDistribution& F, const TestFunction& phi);

/// Both sides of f(psi(. - t)) = F(psi^(-y) e^{2 pi i <y, t>}).
struct ConvolutionSides {
  Complex direct;
  Complex spectral;
};

ConvolutionSides conv_transform(const GeneratorSum& f, const TestFunction& psi, const Point& t);
ConvolutionSides conv_transform(const GeneratorSum& f, const SpectralDistribution& F, const TestFunction& psi,
                                const Point& t);

/// The test function y -> psi^(-y) e^{2 pi i <y, t>} whose transform is psi(. - t).
TestFunction spectral_probe(const TestFunction& psi, const Point& t);

/// p_{lambda,k}, recovered by pairing f with the bump probe at lambda.
/// Throws "probe-precondition" when another support point lies within 2 eps.
Complex coefficient_probe(const GeneratorSum& f, const Point& lambda, const MultiIndex& k, double eps);

}  // namespace tempered

#include "tempered/spectrum.hpp"

#include "tempered/summation.hpp"

#include <algorithm>
#include <cmath>

namespace tempered {

namespace {

// k! / (k - mu)!, or 0 when mu is not dominated by k.
double falling_factorial(const MultiIndex& k, const MultiIndex& mu) {
  double r = 1.0;
  for (int i = 0; i < k.dim(); ++i) {
    if (mu[i] > k[i]) return 0.0;
    for (int p = 0; p < mu[i]; ++p) r *= static_cast<double>(k[i] - p);
  }
  return r;
}

Complex ipow(Complex z, int n) {
  Complex r{1.0, 0.0};
  for (int i = 0; i < n; ++i) r *= z;
  return r;
}

Lattice common_lattice(const GeneratorSum& f) {
  Lattice common = f.generators().front().lattice;
  for (std::size_t i = 1; i < f.generators().size(); ++i) {
    const Lattice& next = f.generators()[i].lattice;
    if (lattices_equal(common, next)) continue;
    try {
      common = lattice_intersection(common, next);
    } catch (const ContractError& e) {
      throw ContractError("incommensurable", std::string("generator lattices are incommensurable: ") + e.what());
    }
  }
  return common;
}

}  // namespace

SpectralDistribution::SpectralDistribution(Lattice dual_lattice, std::vector<SpectralTerm> terms, double det_factor)
    : dual_lattice_(std::move(dual_lattice)), terms_(std::move(terms)), det_factor_(det_factor) {
  for (const auto& t : terms_) {
    require_dim(dim(), static_cast<int>(t.phase.size()), "spectral term phase");
    require_dim(dim(), t.j.dim(), "spectral term index");
    require_dim(dim(), t.monomial.dim(), "spectral term monomial");
    if (t.coeff != Complex(0.0, 0.0)) order_ = std::max(order_, t.j.total());
  }
}

std::map<MultiIndex, Complex> SpectralDistribution::coefficients(const Point& gamma) const {
  std::map<MultiIndex, ComplexCompensatedSum> acc;
  for (const auto& t : terms_)
    acc[t.j].add(t.coeff * monomial(gamma, t.monomial) * std::polar(1.0, -2.0 * kPi * t.phase.dot(gamma)));
  std::map<MultiIndex, Complex> out;
  for (const auto& [j, s] : acc) out[j] = s.value();
  return out;
}

Complex SpectralDistribution::coefficient(const Point& gamma, const MultiIndex& j) const {
  const auto q = coefficients(gamma);
  const auto it = q.find(j);
  return it == q.end() ? Complex(0.0, 0.0) : it->second;
}

double SpectralDistribution::kappa(const Point& gamma) const {
  double k = 0.0;
  for (const auto& [j, q] : coefficients(gamma)) k = std::max(k, std::abs(q));
  return k;
}

std::vector<Point> SpectralDistribution::support_points(double radius) const {
  auto pts = dual_lattice_.points_in_ball(zero_point(dim()), zero_point(dim()), radius);
  std::sort(pts.begin(), pts.end(), norm_lex_less);
  return pts;
}

int SpectralDistribution::growth_degree() const {
  int g = 0;
  for (const auto& t : terms_) g = std::max(g, t.monomial.total());
  return g;
}

SpectralDistribution spectrum(const GeneratorSum& f) {
  if (!f.crystal_supported() || f.generators().empty())
    throw ContractError("non-crystal", "spectrum needs a distribution made of lattice generators only");
  const int d = f.dim();
  const Lattice common = common_lattice(f);
  const double det = common.abs_det();

  struct Key {
    Point phase;
    MultiIndex j;
    MultiIndex monomial;
  };
  std::vector<Key> keys;
  std::vector<ComplexCompensatedSum> sums;
  auto accumulate = [&](const Point& phase, const MultiIndex& j, const MultiIndex& mono, Complex c) {
    for (std::size_t i = 0; i < keys.size(); ++i) {
      if (keys[i].j == j && keys[i].monomial == mono && member(common, keys[i].phase - phase).is_member) {
        sums[i].add(c);
        return;
      }
    }
    keys.push_back({phase, j, mono});
    sums.emplace_back();
    sums.back().add(c);
  };

  const Complex two_pi_i{0.0, 2.0 * kPi};
  for (const auto& g : f.generators()) {
    // Split the coset of g.lattice into cosets of the common sublattice.
    for (const auto& r : quotient_representatives(g.lattice, common)) {
      const Point phase = common.reduce(g.coset + r);
      // F[c lambda^alpha D^k delta] summed over phase + common:
      // c |det|^{-1} (2 pi i y)^k ((-2 pi i)^{-1} D)^alpha [e^{-2 pi i <phase, y>} comb(common*)],
      // with the multiplier moved through D^alpha by the Leibniz rule.
      const Complex scale = g.coeff / det * ipow(-1.0 / two_pi_i, g.moment.total()) * ipow(two_pi_i, g.deriv.total());
      for (const auto& beta : multi_indices_below(g.moment)) {
        const MultiIndex mu = g.moment - beta;
        const double ff = falling_factorial(g.deriv, mu);
        if (ff == 0.0) continue;
        const double sign = mu.total() % 2 == 0 ? 1.0 : -1.0;
        accumulate(phase, beta, g.deriv - mu, scale * binomial(g.moment, beta) * sign * ff);
      }
    }
  }

  std::vector<SpectralTerm> terms;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    const Complex c = sums[i].value();
    if (c != Complex(0.0, 0.0)) terms.push_back({keys[i].phase, keys[i].j, keys[i].monomial, c});
  }
  (void)d;
  return SpectralDistribution(dual(common), std::move(terms), 1.0 / det);
}

SpectralPairResult spectral_pair_detailed(const SpectralDistribution& F, const TestFunction& phi, double radius) {
  require_dim(F.dim(), phi.dim(), "test function");
  if (!(radius > 0.0)) throw ContractError("invalid-argument", "spectral radius must be positive");
  std::map<MultiIndex, TestFunction> derivs;
  for (const auto& t : F.terms())
    if (!derivs.count(t.j)) derivs.emplace(t.j, differentiate(phi, t.j));

  const auto gammas = F.support_points(radius);
  std::vector<Complex> values(gammas.size());
  parallel_for(gammas.size(), [&](std::size_t i) {
    Complex s{0.0, 0.0};
    for (const auto& [j, q] : F.coefficients(gammas[i])) {
      const double sign = j.total() % 2 == 0 ? 1.0 : -1.0;
      s += q * sign * derivs.at(j).eval(gammas[i]);
    }
    values[i] = s;
  });
  SpectralPairResult r;
  ComplexCompensatedSum total;
  for (const auto& v : values) total.add(v);
  r.value = total.value();
  const Window w = Window::ball(F.dim(), radius);
  for (const auto& t : F.terms())
    r.tail += lattice_tail_bound(F.dual_lattice(), std::abs(t.coeff), t.monomial.total(), derivs.at(t.j), w);
  return r;
}

Complex spectral_pair(const SpectralDistribution& F, const TestFunction& phi, double radius) {
  const auto r = spectral_pair_detailed(F, phi, radius);
  if (r.tail > kSpectralTolerance * std::max(1.0, std::abs(r.value)))
    throw ContractError("tail-bound", "spectral radius " + std::to_string(radius) + " leaves a tail bound of " +
                                          std::to_string(r.tail));
  return r.value;
}

double spectral_radius(const SpectralDistribution& F, const TestFunction& phi) {
  double max_scale = 0.0;
  double reach = 0.0;
  for (const auto& a : phi.atoms()) {
    max_scale = std::max(max_scale, a.scale.maxCoeff());
    reach = std::max(reach, a.shift.norm());
  }
  double radius = std::max(1.0, reach + 4.0 * max_scale);
  for (int i = 0; i < 80; ++i, radius *= 1.25) {
    const auto r = spectral_pair_detailed(F, phi, radius);
    if (r.tail <= kSpectralTolerance * std::max(1.0, std::abs(r.value))) return radius;
  }
  throw ContractError("tail-bound", "no spectral radius meets the tail contract");
}

TestFunction spectral_probe(const TestFunction& psi, const Point& t) { return modulate(reflect(fourier(psi)), t); }

ConvolutionSides conv_transform(const GeneratorSum& f, const SpectralDistribution& F, const TestFunction& psi,
                                const Point& t) {
  ConvolutionSides s;
  const TestFunction moved = translate(psi, t);
  s.direct = pair(f, moved, auto_window(f, moved));
  const TestFunction chi = spectral_probe(psi, t);
  s.spectral = spectral_pair(F, chi, spectral_radius(F, chi));
  return s;
}

ConvolutionSides conv_transform(const GeneratorSum& f, const TestFunction& psi, const Point& t) {
  return conv_transform(f, spectrum(f), psi, t);
}

Complex coefficient_probe(const GeneratorSum& f, const Point& lambda, const MultiIndex& k, double eps) {
  require_dim(f.dim(), static_cast<int>(lambda.size()), "probe center");
  require_dim(f.dim(), k.dim(), "probe index");
  if (!(eps > 0.0 && eps < 0.5)) throw ContractError("probe-precondition", "probe radius must lie in (0, 1/2)");
  const BumpProbe probe(lambda, k, eps);
  Complex paired{0.0, 0.0};
  for (const auto& a : expand(f, Window(lambda, 2.0 * eps))) {
    if ((a.point - lambda).norm() >= f.tolerance())
      throw ContractError("probe-precondition", "another support point lies within twice the probe radius");
    // Only lambda meets the probe support, where the probe is exactly
    // (x - lambda)^k / k!.
    for (const auto& [kp, c] : a.terms) {
      const double sign = kp.total() % 2 == 0 ? 1.0 : -1.0;
      paired += c * sign * probe_derivative(probe, kp);
    }
  }
  const double sign = k.total() % 2 == 0 ? 1.0 : -1.0;
  return sign * paired;
}

}  // namespace tempered

#pragma once

#include "tempered/lattice.hpp"
#include "tempered/test_function.hpp"
#include "tempered/types.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tempered {

/// Point mass with its derivative coefficients: sum_k p_k D^k delta_point.
struct Atom {
  Point point;
  std::map<MultiIndex, Complex> terms;

  /// sup_k |p_k|
  double kappa() const;
  int order() const;
};

/// c * sum_{lambda in coset + L} lambda^moment D^deriv delta_lambda.
struct CombGenerator {
  Lattice lattice;
  Point coset;
  MultiIndex deriv;
  MultiIndex moment;
  Complex coeff{1.0, 0.0};

  CombGenerator(Lattice l, Point a, MultiIndex k, MultiIndex alpha, Complex c);
  int dim() const { return lattice.dim(); }
};

/// Built-in parametric series with an explicit truncation index. The only
/// one provided is "remark": sum_{j=1}^{J} 2^j (delta_{j + 4^{-j}} - delta_j).
struct NamedSeries {
  std::string name;
  int truncation = 0;
};

class GeneratorSum {
 public:
  GeneratorSum() = default;
  explicit GeneratorSum(int dim, double tolerance = kDefaultTolerance);

  static GeneratorSum comb(const Lattice& lattice, const Point& coset, Complex c = 1.0);
  static GeneratorSum remark(int truncation);

  int dim() const { return dim_; }
  double tolerance() const { return tolerance_; }
  const std::vector<CombGenerator>& generators() const { return generators_; }
  const std::vector<Atom>& free_atoms() const { return free_atoms_; }
  const std::optional<NamedSeries>& series() const { return series_; }

  GeneratorSum& add(CombGenerator g);
  GeneratorSum& add(Atom a);
  GeneratorSum& set_series(NamedSeries s);

  /// True when only lattice generators are present.
  bool crystal_supported() const { return free_atoms_.empty() && !series_; }

  GeneratorSum& operator+=(const GeneratorSum& other);

 private:
  int dim_ = 0;
  double tolerance_ = kDefaultTolerance;
  std::vector<CombGenerator> generators_;
  std::vector<Atom> free_atoms_;
  std::optional<NamedSeries> series_;
};

GeneratorSum operator+(GeneratorSum a, const GeneratorSum& b);

/// x -> f(x - t), kept in generator form (moments are re-expanded).
GeneratorSum translate(const GeneratorSum& f, const Point& t);

/// Atoms of f with |lambda - w.center| < w.radius, coincident points merged,
/// sorted by (|lambda|, lexicographic).
std::vector<Atom> expand(const GeneratorSum& f, const Window& w);

/// Like expand(), but series points stay separate atoms even when they lie
/// closer than the tolerance (the series support is known exactly).
std::vector<Atom> support_atoms(const GeneratorSum& f, const Window& w);

/// Certified bound on sum over lambda in a coset of the lattice with
/// |lambda - w.center| >= w.radius of coeff_abs |lambda|^degree |dphi(lambda)|.
double lattice_tail_bound(const Lattice& lattice, double coeff_abs, int degree, const TestFunction& dphi,
                          const Window& w);

/// Relative accuracy the window must certify in pair().
inline constexpr double kPairTolerance = 1e-10;

struct PairResult {
  Complex value;
  /// Certified bound on the contribution of atoms outside the window.
  double window_tail = 0.0;
  /// Analytic truncation bound of a named series (0 when none).
  double series_tail = 0.0;
};

/// f(phi) summed over the window, with the tail certificate. Does not
/// enforce the contract.
PairResult pair_detailed(const GeneratorSum& f, const TestFunction& phi, const Window& w);

/// f(phi). Throws "window-too-small" when the window tail exceeds
/// kPairTolerance * max(1, |value|).
Complex pair(const GeneratorSum& f, const TestFunction& phi, const Window& w);

/// Smallest tried window radius (centred at the origin) satisfying the
/// pairing contract.
Window auto_window(const GeneratorSum& f, const TestFunction& phi);

/// kappa_f(lambda) = sup_k |p_{lambda,k}| over support atoms within the
/// tolerance of lambda, 0 off the support.
double kappa(const GeneratorSum& f, const Point& lambda);

/// rho_f(r) = sum_{|lambda| < r} kappa_f(lambda).
double rho(const GeneratorSum& f, double r);

int order(const GeneratorSum& f);

/// max over phis of |f(phi)| / N_{n,m}(phi).
double continuity_ratio(const GeneratorSum& f, const std::vector<TestFunction>& phis, int n, int m,
                        const Window& w);

}  // namespace tempered

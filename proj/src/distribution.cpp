#include "tempered/distribution.hpp"

#include "tempered/summation.hpp"

#include <algorithm>
#include <cmath>

namespace tempered {

namespace {

double unit_ball_volume(int d) {
  switch (d) {
    case 1: return 2.0;
    case 2: return kPi;
    default: return 4.0 * kPi / 3.0;
  }
}

// Remark series support: lambda_j = j, lambda'_j = j + 2^{-2j}.
double remark_shift(int j) { return std::ldexp(1.0, -2 * j); }
double remark_weight(int j) { return std::ldexp(1.0, j); }

std::vector<Atom> merge_and_sort(std::vector<Atom> raw, double tol) {
  std::sort(raw.begin(), raw.end(), [](const Atom& a, const Atom& b) {
    if (a.point[0] != b.point[0]) return a.point[0] < b.point[0];
    for (int i = 1; i < a.point.size(); ++i)
      if (a.point[i] != b.point[i]) return a.point[i] < b.point[i];
    return false;
  });
  std::vector<bool> absorbed(raw.size(), false);
  std::vector<Atom> out;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (absorbed[i]) continue;
    Atom acc = raw[i];
    for (std::size_t j = i + 1; j < raw.size() && raw[j].point[0] - raw[i].point[0] < tol; ++j) {
      if (absorbed[j] || (raw[j].point - raw[i].point).norm() >= tol) continue;
      for (const auto& [k, c] : raw[j].terms) acc.terms[k] += c;
      absorbed[j] = true;
    }
    std::erase_if(acc.terms, [](const auto& kv) { return kv.second == Complex(0.0, 0.0); });
    if (!acc.terms.empty()) out.push_back(std::move(acc));
  }
  std::stable_sort(out.begin(), out.end(), [](const Atom& a, const Atom& b) { return norm_lex_less(a.point, b.point); });
  return out;
}

std::vector<Atom> raw_generator_atoms(const GeneratorSum& f, const Window& w) {
  std::vector<Atom> raw;
  for (const auto& g : f.generators()) {
    for (auto& p : g.lattice.points_in_ball(g.coset, w.center, w.radius)) {
      const Complex c = g.coeff * monomial(p, g.moment);
      if (c == Complex(0.0, 0.0)) continue;
      Atom a;
      a.point = std::move(p);
      a.terms[g.deriv] = c;
      raw.push_back(std::move(a));
    }
  }
  for (const auto& a : f.free_atoms())
    if ((a.point - w.center).norm() < w.radius) raw.push_back(a);
  return raw;
}

void append_series_atoms(const GeneratorSum& f, const Window& w, std::vector<Atom>& raw) {
  if (!f.series()) return;
  const MultiIndex zero(1);
  for (int j = 1; j <= f.series()->truncation; ++j) {
    for (const auto& [x, c] : {std::pair{static_cast<double>(j), -remark_weight(j)},
                               std::pair{j + remark_shift(j), remark_weight(j)}}) {
      if (std::abs(x - w.center[0]) >= w.radius) continue;
      Atom a;
      a.point = make_point({x});
      a.terms[zero] = c;
      raw.push_back(std::move(a));
    }
  }
}


Complex remark_term(const TestFunction& psi, const std::vector<TestFunction>& derivs, int j) {
  const double x = static_cast<double>(j);
  const double delta = remark_shift(j);
  if (delta >= 1e-3) return remark_weight(j) * (psi.eval(make_point({x + delta})) - psi.eval(make_point({x})));
  // Taylor expansion of psi(j + delta) - psi(j); the omitted remainder is
  // below delta^9 / 9! times sup |psi^(9)|.
  Complex s{0.0, 0.0};
  double power = 1.0;
  for (std::size_t n = 1; n <= derivs.size(); ++n) {
    power *= delta / static_cast<double>(n);
    s += derivs[n - 1].eval(make_point({x})) * power;
  }
  return remark_weight(j) * s;
}

}  // namespace

double lattice_tail_bound(const Lattice& lattice, double coeff_abs, int degree, const TestFunction& dphi,
                          const Window& w) {
  const int d = lattice.dim();
  double diam = 0.0;
  for (int i = 0; i < d; ++i) diam += lattice.column(i).norm();
  const double step = std::max(1.0, diam);
  const double base = w.center.norm();
  double total = 0.0;
  for (int s = 0; s < 100000; ++s) {
    const double inner = w.radius + s * step;
    const double env = dphi.tail_bound(w.center, inner);
    if (env == 0.0) break;
    // Points of a coset in B(center, inner + step) number at most
    // vol(B(inner + step + diam)) / |det T|.
    const double count = unit_ball_volume(d) * std::pow(inner + step + diam, d) / lattice.abs_det();
    const double weight = coeff_abs * std::pow(base + inner + step, degree);
    const double term = count * weight * env;
    total += term;
    if (s > 8 && term < 1e-18 * std::max(total, 1e-300)) break;
  }
  return total;
}

double Atom::kappa() const {
  double k = 0.0;
  for (const auto& [idx, c] : terms) k = std::max(k, std::abs(c));
  return k;
}

int Atom::order() const {
  int m = 0;
  for (const auto& [idx, c] : terms)
    if (c != Complex(0.0, 0.0)) m = std::max(m, idx.total());
  return m;
}

CombGenerator::CombGenerator(Lattice l, Point a, MultiIndex k, MultiIndex alpha, Complex c)
    : lattice(std::move(l)), coset(std::move(a)), deriv(std::move(k)), moment(std::move(alpha)), coeff(c) {
  require_dim(lattice.dim(), static_cast<int>(coset.size()), "generator coset");
  require_dim(lattice.dim(), deriv.dim(), "generator derivative index");
  require_dim(lattice.dim(), moment.dim(), "generator moment index");
  coset = lattice.reduce(coset);
}

GeneratorSum::GeneratorSum(int dim, double tolerance) : dim_(dim), tolerance_(tolerance) {
  if (dim < 1 || dim > kMaxDim) throw ContractError("invalid-dimension", "dimension must be 1, 2 or 3");
}

GeneratorSum GeneratorSum::comb(const Lattice& lattice, const Point& coset, Complex c) {
  GeneratorSum f(lattice.dim());
  f.add(CombGenerator(lattice, coset, MultiIndex(lattice.dim()), MultiIndex(lattice.dim()), c));
  return f;
}

GeneratorSum GeneratorSum::remark(int truncation) {
  if (truncation < 1) throw ContractError("invalid-series", "series truncation index must be >= 1");
  GeneratorSum f(1);
  f.set_series({"remark", truncation});
  return f;
}

GeneratorSum& GeneratorSum::add(CombGenerator g) {
  require_dim(dim_, g.dim(), "generator");
  generators_.push_back(std::move(g));
  return *this;
}

GeneratorSum& GeneratorSum::add(Atom a) {
  require_dim(dim_, static_cast<int>(a.point.size()), "free atom");
  for (const auto& [k, c] : a.terms) require_dim(dim_, k.dim(), "free atom term");
  if (a.kappa() == 0.0) throw ContractError("invalid-atom", "atom needs at least one nonzero coefficient");
  free_atoms_.push_back(std::move(a));
  return *this;
}

GeneratorSum& GeneratorSum::set_series(NamedSeries s) {
  if (s.name != "remark") throw ContractError("unknown-series", "unknown named series '" + s.name + "'");
  if (dim_ != 1) throw ContractError("dimension-mismatch", "the remark series lives in dimension 1");
  if (s.truncation < 1) throw ContractError("invalid-series", "series truncation index must be >= 1");
  series_ = std::move(s);
  return *this;
}

GeneratorSum& GeneratorSum::operator+=(const GeneratorSum& other) {
  require_dim(dim_, other.dim_, "distribution sum");
  for (const auto& g : other.generators_) generators_.push_back(g);
  for (const auto& a : other.free_atoms_) free_atoms_.push_back(a);
  if (other.series_) {
    if (series_) throw ContractError("invalid-series", "at most one named series per distribution");
    series_ = other.series_;
  }
  return *this;
}

GeneratorSum operator+(GeneratorSum a, const GeneratorSum& b) {
  a += b;
  return a;
}

GeneratorSum translate(const GeneratorSum& f, const Point& t) {
  require_dim(f.dim(), static_cast<int>(t.size()), "translation");
  if (f.series()) throw ContractError("unsupported", "named series cannot be translated");
  GeneratorSum out(f.dim(), f.tolerance());
  for (const auto& g : f.generators()) {
    // c (mu - t)^alpha = c sum_beta binom(alpha, beta) mu^beta (-t)^{alpha - beta}
    for (const auto& beta : multi_indices_below(g.moment)) {
      const Complex c = g.coeff * binomial(g.moment, beta) * monomial(Point(-t), g.moment - beta);
      if (c == Complex(0.0, 0.0)) continue;
      out.add(CombGenerator(g.lattice, g.coset + t, g.deriv, beta, c));
    }
  }
  for (const auto& a : f.free_atoms()) {
    Atom moved = a;
    moved.point += t;
    out.add(std::move(moved));
  }
  return out;
}

std::vector<Atom> expand(const GeneratorSum& f, const Window& w) {
  require_dim(f.dim(), w.dim(), "window");
  auto raw = raw_generator_atoms(f, w);
  append_series_atoms(f, w, raw);
  return merge_and_sort(std::move(raw), f.tolerance());
}

std::vector<Atom> support_atoms(const GeneratorSum& f, const Window& w) {
  require_dim(f.dim(), w.dim(), "window");
  auto out = merge_and_sort(raw_generator_atoms(f, w), f.tolerance());
  if (!f.series()) return out;
  append_series_atoms(f, w, out);
  std::stable_sort(out.begin(), out.end(), [](const Atom& a, const Atom& b) { return norm_lex_less(a.point, b.point); });
  return out;
}

PairResult pair_detailed(const GeneratorSum& f, const TestFunction& phi, const Window& w) {
  require_dim(f.dim(), phi.dim(), "test function");
  require_dim(f.dim(), w.dim(), "window");
  const auto atoms = merge_and_sort(raw_generator_atoms(f, w), f.tolerance());

  std::map<MultiIndex, TestFunction> derivs;
  auto deriv = [&](const MultiIndex& k) -> const TestFunction& {
    auto it = derivs.find(k);
    if (it == derivs.end()) it = derivs.emplace(k, differentiate(phi, k)).first;
    return it->second;
  };
  for (const auto& a : atoms)
    for (const auto& [k, c] : a.terms) deriv(k);
  for (const auto& g : f.generators()) deriv(g.deriv);

  std::vector<Complex> terms(atoms.size());
  parallel_for(atoms.size(), [&](std::size_t i) {
    Complex s{0.0, 0.0};
    for (const auto& [k, c] : atoms[i].terms) {
      const double sign = k.total() % 2 == 0 ? 1.0 : -1.0;
      s += c * sign * derivs.at(k).eval(atoms[i].point);
    }
    terms[i] = s;
  });

  PairResult r;
  ComplexCompensatedSum total;
  for (const auto& t : terms) total.add(t);

  for (const auto& g : f.generators()) r.window_tail += lattice_tail_bound(g.lattice, std::abs(g.coeff), g.moment.total(), derivs.at(g.deriv), w);
  for (const auto& a : f.free_atoms()) {
    if ((a.point - w.center).norm() < w.radius) continue;
    for (const auto& [k, c] : a.terms) r.window_tail += std::abs(c) * std::abs(deriv(k).eval(a.point));
  }

  if (f.series()) {
    const int big_j = f.series()->truncation;
    const TestFunction dpsi = differentiate(phi, MultiIndex{1});
    std::vector<TestFunction> taylor;
    for (int n = 1; n <= 8; ++n) taylor.push_back(differentiate(phi, MultiIndex{n}));
    for (int j = 1; j <= big_j; ++j) {
      const double dist = std::abs(j - w.center[0]);
      if (dist < w.radius)
        total.add(remark_term(phi, taylor, j));
      else
        r.window_tail += std::ldexp(1.0, -j) * dpsi.tail_bound(w.center, std::max(0.0, dist - 1.0));
    }
    r.series_tail = std::ldexp(1.0, -big_j) * schwartz_norm(dpsi, 0, 0);
  }
  r.value = total.value();
  return r;
}

Complex pair(const GeneratorSum& f, const TestFunction& phi, const Window& w) {
  const PairResult r = pair_detailed(f, phi, w);
  if (r.window_tail > kPairTolerance * std::max(1.0, std::abs(r.value)))
    throw ContractError("window-too-small", "window radius " + std::to_string(w.radius) +
                                                " leaves a tail bound of " + std::to_string(r.window_tail));
  return r.value;
}

Window auto_window(const GeneratorSum& f, const TestFunction& phi) {
  double max_scale = 0.0;
  double reach = 0.0;
  for (const auto& a : phi.atoms()) {
    max_scale = std::max(max_scale, a.scale.maxCoeff());
    reach = std::max(reach, a.shift.norm());
  }
  double radius = std::max(1.0, reach + 4.0 * max_scale);
  for (int i = 0; i < 80; ++i, radius *= 1.25) {
    const Window w = Window::ball(f.dim(), radius);
    const PairResult r = pair_detailed(f, phi, w);
    if (r.window_tail <= kPairTolerance * std::max(1.0, std::abs(r.value))) return w;
  }
  throw ContractError("window-too-small", "no window up to radius " + std::to_string(radius) + " meets the tail contract");
}

double kappa(const GeneratorSum& f, const Point& lambda) {
  require_dim(f.dim(), static_cast<int>(lambda.size()), "kappa argument");
  double best = 0.0;
  for (const auto& a : support_atoms(f, Window(lambda, 2.0 * f.tolerance())))
    if ((a.point - lambda).norm() < f.tolerance()) best = std::max(best, a.kappa());
  return best;
}

double rho(const GeneratorSum& f, double r) {
  if (!(r > 0.0)) throw ContractError("invalid-argument", "rho radius must be positive");
  CompensatedSum s;
  for (const auto& a : support_atoms(f, Window::ball(f.dim(), r))) s.add(a.kappa());
  return s.value();
}

int order(const GeneratorSum& f) {
  int m = 0;
  for (const auto& g : f.generators())
    if (g.coeff != Complex(0.0, 0.0)) m = std::max(m, g.deriv.total());
  for (const auto& a : f.free_atoms()) m = std::max(m, a.order());
  return m;
}

double continuity_ratio(const GeneratorSum& f, const std::vector<TestFunction>& phis, int n, int m,
                        const Window& w) {
  if (phis.empty()) throw ContractError("invalid-argument", "continuity_ratio needs at least one test function");
  double best = 0.0;
  for (const auto& phi : phis) {
    const double norm = schwartz_norm(phi, n, m);
    if (norm == 0.0) throw ContractError("degenerate-test-function", "test function has zero norm");
    best = std::max(best, std::abs(pair(f, phi, w)) / norm);
  }
  return best;
}

}  // namespace tempered

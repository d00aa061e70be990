#include "tempered/almost_periodic.hpp"

#include "tempered/pointset.hpp"
#include "tempered/spectrum.hpp"
#include "tempered/summation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

namespace tempered {

namespace {

std::vector<int> unflatten(std::size_t flat, const std::vector<int>& counts) {
  std::vector<int> idx(counts.size());
  for (std::size_t a = 0; a < counts.size(); ++a) {
    idx[a] = static_cast<int>(flat % static_cast<std::size_t>(counts[a]));
    flat /= static_cast<std::size_t>(counts[a]);
  }
  return idx;
}

std::size_t flatten(const std::vector<int>& idx, const std::vector<int>& counts) {
  std::size_t flat = 0;
  for (std::size_t a = counts.size(); a-- > 0;) flat = flat * static_cast<std::size_t>(counts[a]) + idx[a];
  return flat;
}

std::size_t product(const std::vector<int>& counts) {
  std::size_t n = 1;
  for (int c : counts) n *= static_cast<std::size_t>(c);
  return n;
}

}  // namespace

Point SampledFunction::node(std::size_t flat) const {
  const auto idx = unflatten(flat, counts);
  Point x = origin;
  for (int a = 0; a < dim; ++a) x[a] += step * idx[static_cast<std::size_t>(a)];
  return x;
}

double SampledFunction::max_abs() const {
  double m = 0.0;
  for (const auto& v : values) m = std::max(m, std::abs(v));
  return m;
}

void SampledFunction::validate() const {
  if (dim < 1 || dim > 2) throw ContractError("invalid-argument", "sampled functions are 1-d or 2-d");
  if (!(step > 0.0)) throw ContractError("invalid-argument", "grid step must be positive");
  if (static_cast<int>(counts.size()) != dim || origin.size() != dim)
    throw ContractError("dimension-mismatch", "grid shape does not match the dimension");
  if (values.size() != product(counts)) throw ContractError("invalid-argument", "value count does not match the grid");
  for (const auto& v : values)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw ContractError("invalid-argument", "sampled values must be finite");
}

SampledFunction make_grid(int dim, const Window& w, double h) {
  require_dim(dim, w.dim(), "window");
  if (!(h > 0.0)) throw ContractError("invalid-argument", "grid step must be positive");
  const long half = static_cast<long>(std::floor(w.radius / h + 1e-9));
  if (2 * half + 1 > 1000000) throw ContractError("invalid-argument", "grid too fine for the window");
  SampledFunction g;
  g.dim = dim;
  g.step = h;
  g.origin = w.center;
  for (int a = 0; a < dim; ++a) g.origin[a] -= h * static_cast<double>(half);
  g.counts.assign(static_cast<std::size_t>(dim), static_cast<int>(2 * half + 1));
  g.values.assign(product(g.counts), Complex(0.0, 0.0));
  return g;
}

SampledFunction sample_convolution(const GeneratorSum& f, const TestFunction& psi, const Window& w, double h) {
  require_dim(f.dim(), psi.dim(), "test function");
  SampledFunction g = make_grid(f.dim(), w, h);
  std::vector<double> tails(g.size(), 0.0);
  std::optional<SpectralDistribution> spec;
  if (f.crystal_supported()) {
    // Generators on incommensurable lattices have no closed-form spectrum;
    // those fall back to the direct side.
    try {
      spec.emplace(spectrum(f));
    } catch (const ContractError& e) {
      if (e.code() != "incommensurable") throw;
    }
  }
  if (spec) {
    const SpectralDistribution& F = *spec;
    // The farthest node has the largest modulation, hence the largest tail;
    // its radius serves every node.
    Point corner = g.node(g.size() - 1);
    const double radius = spectral_radius(F, spectral_probe(psi, corner));
    parallel_for(g.size(), [&](std::size_t i) {
      const auto r = spectral_pair_detailed(F, spectral_probe(psi, g.node(i)), radius);
      g.values[i] = r.value;
      tails[i] = r.tail;
    });
  } else {
    const Window w0 = auto_window(f, psi);
    const double reach = w0.radius + (psi.centroid() - w0.center).norm();
    parallel_for(g.size(), [&](std::size_t i) {
      const Point t = g.node(i);
      const auto r = pair_detailed(f, translate(psi, t), Window(t, reach));
      g.values[i] = r.value;
      tails[i] = r.window_tail + r.series_tail;
    });
  }
  for (double t : tails) g.tail_bound = std::max(g.tail_bound, t);
  return g;
}

AlmostPeriodReport almost_periods(const SampledFunction& g, double eps, double shift_radius) {
  g.validate();
  if (!(eps > 0.0)) throw ContractError("invalid-argument", "eps must be positive");
  const double noise = 2.0 * (g.tail_bound + 1e-14 * g.max_abs());
  if (eps < noise)
    throw ContractError("uncertifiable", "eps " + std::to_string(eps) + " is below twice the evaluation error " +
                                             std::to_string(noise));
  const int n = *std::min_element(g.counts.begin(), g.counts.end());
  const double half_width = g.step * (n - 1) / 2.0;
  if (shift_radius <= 0.0) shift_radius = half_width / 2.0;
  const int max_shift = std::min(n - 1, static_cast<int>(std::floor(shift_radius / g.step + 1e-9)));

  AlmostPeriodReport rep;
  rep.eps = eps;
  rep.step = g.step;
  rep.shift_radius = shift_radius;
  rep.overlap_radius = g.step * (n - 1 - max_shift) / 2.0;

  // Candidate shifts in grid units with |s| h <= shift_radius.
  std::vector<std::vector<int>> shifts;
  const int side = 2 * max_shift + 1;
  std::vector<int> side_counts(static_cast<std::size_t>(g.dim), side);
  for (std::size_t flat = 0; flat < product(side_counts); ++flat) {
    auto s = unflatten(flat, side_counts);
    double n2 = 0.0;
    for (auto& c : s) {
      c -= max_shift;
      n2 += double(c) * c;
    }
    if (std::sqrt(n2) * g.step <= shift_radius + 1e-12) shifts.push_back(std::move(s));
  }

  std::vector<char> accepted(shifts.size(), 0);
  parallel_for(shifts.size(), [&](std::size_t k) {
    const auto& s = shifts[k];
    std::vector<int> lo(s.size()), hi(s.size());
    for (std::size_t a = 0; a < s.size(); ++a) {
      lo[a] = std::max(0, -s[a]);
      hi[a] = std::min(g.counts[a], g.counts[a] - s[a]);
    }
    std::vector<int> span(s.size());
    for (std::size_t a = 0; a < s.size(); ++a) span[a] = hi[a] - lo[a];
    std::vector<int> idx(s.size()), moved(s.size());
    for (std::size_t flat = 0; flat < product(span); ++flat) {
      const auto local = unflatten(flat, span);
      for (std::size_t a = 0; a < s.size(); ++a) {
        idx[a] = local[a] + lo[a];
        moved[a] = idx[a] + s[a];
      }
      if (std::abs(g.values[flatten(moved, g.counts)] - g.values[flatten(idx, g.counts)]) >= eps) return;
    }
    accepted[k] = 1;
  });

  for (std::size_t k = 0; k < shifts.size(); ++k) {
    if (!accepted[k]) continue;
    Point tau(g.dim);
    for (int a = 0; a < g.dim; ++a) tau[a] = g.step * shifts[k][static_cast<std::size_t>(a)];
    rep.taus.push_back(tau);
  }
  std::sort(rep.taus.begin(), rep.taus.end(), norm_lex_less);
  return rep;
}

double max_gap(const std::vector<Point>& taus, const Window& w, double h) {
  if (taus.empty()) throw ContractError("empty-input", "max_gap needs at least one almost period");
  const int d = w.dim();
  const SpatialIndex index(taus, std::max(h, w.radius / 64.0));
  const long half = static_cast<long>(std::floor(w.radius / h + 1e-9));
  const std::vector<int> counts(static_cast<std::size_t>(d), static_cast<int>(2 * half + 1));
  double gap = 0.0;
  for (std::size_t flat = 0; flat < product(counts); ++flat) {
    const auto idx = unflatten(flat, counts);
    Point x = w.center;
    for (int a = 0; a < d; ++a) x[a] += h * (idx[static_cast<std::size_t>(a)] - half);
    if ((x - w.center).norm() > w.radius + 1e-12) continue;
    gap = std::max(gap, index.nearest_distance(x));
  }
  return gap;
}

void write_csv(std::ostream& out, const SampledFunction& g) {
  g.validate();
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.17g", g.tail_bound);
  out << "# tail_bound=" << buf << "\n";
  for (int a = 0; a < g.dim; ++a) out << "t" << a << ",";
  out << "re,im\n";
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Point x = g.node(i);
    for (int a = 0; a < g.dim; ++a) {
      std::snprintf(buf, sizeof buf, "%.17g,", x[a]);
      out << buf;
    }
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", g.values[i].real(), g.values[i].imag());
    out << buf;
  }
}

SampledFunction read_csv(std::istream& in) {
  std::string line;
  double tail = 0.0;
  int dim = 0;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto pos = line.find("tail_bound=");
      if (pos != std::string::npos) tail = std::stod(line.substr(pos + 11));
      continue;
    }
    if (line[0] == 't') {
      dim = static_cast<int>(std::count(line.begin(), line.end(), ',')) - 1;
      continue;
    }
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(std::move(row));
  }
  if (dim < 1 || dim > 2) throw ContractError("parse-error", "missing or invalid CSV header");
  if (rows.empty()) throw ContractError("parse-error", "no samples in CSV");
  SampledFunction g;
  g.dim = dim;
  g.tail_bound = tail;
  g.origin = Point(dim);
  g.counts.assign(static_cast<std::size_t>(dim), 0);
  for (int a = 0; a < dim; ++a) {
    std::vector<double> coords;
    for (const auto& r : rows) {
      if (static_cast<int>(r.size()) != dim + 2) throw ContractError("parse-error", "wrong column count in CSV");
      coords.push_back(r[static_cast<std::size_t>(a)]);
    }
    std::sort(coords.begin(), coords.end());
    coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
    g.origin[a] = coords.front();
    g.counts[static_cast<std::size_t>(a)] = static_cast<int>(coords.size());
    if (coords.size() > 1 && a == 0) g.step = (coords.back() - coords.front()) / double(coords.size() - 1);
  }
  if (g.step == 0.0) g.step = 1.0;
  g.values.assign(product(g.counts), Complex(0.0, 0.0));
  if (rows.size() != g.values.size()) throw ContractError("parse-error", "CSV samples do not fill a grid");
  for (const auto& r : rows) {
    std::vector<int> idx(static_cast<std::size_t>(dim));
    for (int a = 0; a < dim; ++a) idx[static_cast<std::size_t>(a)] = static_cast<int>(std::lround((r[static_cast<std::size_t>(a)] - g.origin[a]) / g.step));
    g.values[flatten(idx, g.counts)] = Complex(r[static_cast<std::size_t>(dim)], r[static_cast<std::size_t>(dim) + 1]);
  }
  g.validate();
  return g;
}

}  // namespace tempered

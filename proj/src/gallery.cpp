#include "tempered/gallery.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace tempered {

namespace {

const double kGolden = (1.0 + std::sqrt(5.0)) / 2.0;

double param(const GalleryParams& given, const GalleryParams& defaults, const std::string& key) {
  const auto it = given.find(key);
  return it != given.end() ? it->second : defaults.at(key);
}

int int_param(const GalleryParams& p, const GalleryParams& d, const std::string& key, int lo, int hi) {
  const double v = param(p, d, key);
  if (v != std::floor(v) || v < lo || v > hi)
    throw ContractError("invalid-argument", key + " must be an integer in [" + std::to_string(lo) + ", " +
                                                std::to_string(hi) + "]");
  return static_cast<int>(v);
}

double positive_param(const GalleryParams& p, const GalleryParams& d, const std::string& key) {
  const double v = param(p, d, key);
  if (!(v > 0.0) || !std::isfinite(v)) throw ContractError("invalid-argument", key + " must be positive");
  return v;
}

double mod_lattice_distance(const Lattice& l, const Point& x) {
  const Point r = l.reduce(x);
  double best = r.norm();
  for (const auto& p : l.points_in_ball(zero_point(l.dim()), r, 2.0 * l.max_basis_norm() + r.norm()))
    best = std::min(best, (r - p).norm());
  return best;
}

}  // namespace

std::vector<std::string> gallery_names() {
  return {"zd-comb", "shifted-crystal", "moment-comb", "remark", "fibonacci-window", "incommensurate-pair"};
}

GalleryParams gallery_defaults(const std::string& name) {
  if (name == "zd-comb") return {{"d", 1}, {"scale", 1}, {"window", 20}};
  if (name == "shifted-crystal") return {{"d", 2}, {"cosets", 3}, {"degree", 1}, {"window", 0}};
  if (name == "moment-comb") return {{"alpha", 1}, {"window", 20}};
  if (name == "remark") return {{"J", 5}};
  if (name == "fibonacci-window") return {{"radius", 50}};
  if (name == "incommensurate-pair") return {{"ratio", std::sqrt(2.0)}, {"window", 50}};
  throw ContractError("invalid-argument", "unknown gallery entry '" + name + "'");
}

Lattice random_lattice(std::uint64_t seed, int dim, double max_cond) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n01(0.0, 1.0);
  for (;;) {
    Matrix t(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) t(i, j) = n01(rng);
    const Eigen::JacobiSVD<Matrix> svd(t);
    const auto& s = svd.singularValues();
    if (s(dim - 1) <= 0.0 || s(0) / s(dim - 1) > max_cond) continue;
    t /= std::pow(std::abs(t.determinant()), 1.0 / dim);
    return Lattice(t);
  }
}

SeededCrystal seeded_crystal(std::uint64_t seed, int dim, int cosets, int degree, double min_separation) {
  if (dim < 1 || dim > kMaxDim) throw ContractError("invalid-argument", "dimension must be 1, 2 or 3");
  if (cosets < 1 || cosets > 8) throw ContractError("invalid-argument", "coset count must lie in [1, 8]");
  if (degree < 0 || degree > 4) throw ContractError("invalid-argument", "degree must lie in [0, 4]");
  const Lattice l = random_lattice(seed, dim);
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> u01(0.0, 1.0), coef(-1.0, 1.0);
  double shortest = l.column(0).norm();
  for (int i = 1; i < dim; ++i) shortest = std::min(shortest, l.column(i).norm());

  std::vector<Point> reps{zero_point(dim)};
  for (int attempt = 0; static_cast<int>(reps.size()) < cosets; ++attempt) {
    if (attempt > 10000) throw ContractError("invalid-argument", "cannot place that many separated cosets");
    Point u(dim);
    for (int i = 0; i < dim; ++i) u[i] = u01(rng);
    const Point a = l.reduce(l.basis() * u);
    bool ok = true;
    for (const auto& r : reps) ok = ok && mod_lattice_distance(l, a - r) >= min_separation * shortest;
    if (ok) reps.push_back(a);
  }

  GeneratorSum f(dim);
  for (const auto& a : reps) {
    for (const auto& k : multi_indices_up_to(dim, degree)) {
      Complex c(coef(rng), coef(rng));
      // Keep the order-zero part away from 0 so kappa stays bounded below.
      if (k.total() == 0) c = std::polar(0.5 + 0.5 * u01(rng), 2.0 * kPi * u01(rng));
      f.add(CombGenerator(l, a, k, MultiIndex(dim), c));
    }
  }
  return {Crystal{l, reps}, f};
}

PointSet crystal_points(const Crystal& c, double radius, double tolerance) {
  const int d = c.lattice.dim();
  std::vector<Point> pts;
  for (const auto& a : c.cosets) {
    const auto v = c.lattice.points_in_ball(a, zero_point(d), radius);
    pts.insert(pts.end(), v.begin(), v.end());
  }
  return PointSet(d, std::move(pts), radius, tolerance);
}

PointSet support_points(const GeneratorSum& f, double radius) {
  std::vector<Point> pts;
  for (const auto& a : expand(f, Window::ball(f.dim(), radius))) pts.push_back(a.point);
  return PointSet(f.dim(), std::move(pts), radius, f.tolerance());
}

std::vector<double> fibonacci_points(double radius) {
  const double conj = -1.0 / kGolden;
  std::vector<double> pts;
  const long nmax = static_cast<long>(std::ceil(radius)) + 4;
  for (long n = -nmax; n <= nmax; ++n) {
    // The strip [-1, phi - 1) has length phi, so one or two integers m fit.
    // Only (0, -1) lands on the open end, where rounding would admit it.
    for (double m = std::ceil(-1.0 - n * conj);; m += 1.0) {
      const double star = m + n * conj;
      if (star >= kGolden - 1.0 - 1e-12) break;
      if (star < -1.0) continue;
      const double x = m + n * kGolden;
      if (std::abs(x) < radius) pts.push_back(x);
    }
  }
  std::sort(pts.begin(), pts.end());
  return pts;
}

GalleryEntry gallery(const std::string& name, const GalleryParams& params, std::uint64_t seed) {
  const GalleryParams defaults = gallery_defaults(name);
  for (const auto& [k, v] : params)
    if (!defaults.count(k)) throw ContractError("invalid-argument", "unknown parameter '" + k + "' for " + name);
  GalleryEntry e;
  e.name = name;
  e.params = defaults;
  for (const auto& [k, v] : params) e.params[k] = v;

  if (name == "zd-comb") {
    const int d = int_param(params, defaults, "d", 1, kMaxDim);
    const double scale = positive_param(params, defaults, "scale");
    const Lattice l = Lattice::identity(d, scale);
    e.distribution = GeneratorSum::comb(l, zero_point(d));
    e.crystal = Crystal{l, {zero_point(d)}};
    e.points = crystal_points(*e.crystal, positive_param(params, defaults, "window"));
  } else if (name == "shifted-crystal") {
    const int d = int_param(params, defaults, "d", 1, kMaxDim);
    auto sc = seeded_crystal(seed, d, int_param(params, defaults, "cosets", 1, 8),
                             int_param(params, defaults, "degree", 0, 4));
    double w = param(params, defaults, "window");
    // Default window: twenty covering radii, at least ten basis lengths.
    if (w <= 0.0) w = std::max(20.0 * sc.crystal.lattice.covering_radius(), 10.0 * sc.crystal.lattice.max_basis_norm());
    e.params["window"] = w;
    e.points = crystal_points(sc.crystal, w);
    e.distribution = std::move(sc.distribution);
    e.crystal = std::move(sc.crystal);
  } else if (name == "moment-comb") {
    const int alpha = int_param(params, defaults, "alpha", 0, 4);
    GeneratorSum f(1);
    f.add(CombGenerator(Lattice::identity(1), zero_point(1), MultiIndex{0}, MultiIndex{alpha}, 1.0));
    e.distribution = f;
    e.points = support_points(f, positive_param(params, defaults, "window"));
  } else if (name == "remark") {
    const int j = int_param(params, defaults, "J", 1, 60);
    e.distribution = GeneratorSum::remark(j);
    e.points = support_points(*e.distribution, j + 1.0);
  } else if (name == "fibonacci-window") {
    const double r = positive_param(params, defaults, "radius");
    GeneratorSum f(1);
    std::vector<Point> pts;
    for (double x : fibonacci_points(r)) {
      Atom a;
      a.point = make_point({x});
      a.terms[MultiIndex{0}] = 1.0;
      f.add(a);
      pts.push_back(a.point);
    }
    e.distribution = f;
    e.points = PointSet(1, std::move(pts), r);
  } else if (name == "incommensurate-pair") {
    const double ratio = positive_param(params, defaults, "ratio");
    e.distribution = GeneratorSum::comb(Lattice::identity(1), zero_point(1)) +
                     GeneratorSum::comb(Lattice::identity(1, ratio), zero_point(1));
    e.points = support_points(*e.distribution, positive_param(params, defaults, "window"));
  }
  return e;
}

}  // namespace tempered

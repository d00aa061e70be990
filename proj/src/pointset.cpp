#include "tempered/pointset.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tempered {

namespace {

// Leader clustering on a tolerance-sized grid; a final pass merges leaders
// that ended up within tolerance of each other.
class ClusterAccumulator {
 public:
  ClusterAccumulator(int dim, double tol) : dim_(dim), tol_(tol) {}

  void add(const Point& x) {
    const Key k = key_of(x);
    Key off{};
    for (int n = 0; n < ipow3(dim_); ++n) {
      int m = n;
      for (int i = 0; i < dim_; ++i) {
        off[i] = k[i] + (m % 3) - 1;
        m /= 3;
      }
      auto it = cells_.find(off);
      if (it == cells_.end()) continue;
      for (std::size_t c : it->second) {
        if ((leaders_[c] - x).norm() < tol_) {
          sums_[c] += x;
          ++counts_[c];
          return;
        }
      }
    }
    cells_[k].push_back(leaders_.size());
    leaders_.push_back(x);
    sums_.push_back(x);
    counts_.push_back(1);
  }

  Clusters finish() const {
    const std::size_t n = leaders_.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t i) {
      while (parent[i] != i) i = parent[i] = parent[parent[i]];
      return i;
    };
    std::vector<Point> centroids(n);
    for (std::size_t i = 0; i < n; ++i) centroids[i] = sums_[i] / static_cast<double>(counts_[i]);
    SpatialIndex index(centroids, std::max(tol_, 1e-300));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j : index.within(centroids[i], tol_))
        if (j != i) parent[find(i)] = find(j);

    std::vector<Point> sum(n, Point::Zero(dim_));
    std::vector<std::size_t> cnt(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      sum[find(i)] += sums_[i];
      cnt[find(i)] += counts_[i];
    }
    std::vector<std::pair<Point, std::size_t>> merged;
    for (std::size_t i = 0; i < n; ++i)
      if (cnt[i] > 0) merged.emplace_back(sum[i] / static_cast<double>(cnt[i]), cnt[i]);
    std::sort(merged.begin(), merged.end(), [](const auto& a, const auto& b) { return norm_lex_less(a.first, b.first); });
    Clusters out;
    for (auto& [c, k] : merged) {
      out.centroids.push_back(c);
      out.counts.push_back(k);
    }
    return out;
  }

 private:
  using Key = std::array<long long, kMaxDim>;
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
      std::size_t h = 1469598103934665603ull;
      for (long long v : k) h = (h ^ static_cast<std::size_t>(v)) * 1099511628211ull;
      return h;
    }
  };
  static int ipow3(int d) { return d == 1 ? 3 : (d == 2 ? 9 : 27); }
  Key key_of(const Point& x) const {
    Key k{};
    for (int i = 0; i < dim_; ++i) k[i] = static_cast<long long>(std::floor(x[i] / tol_));
    return k;
  }

  int dim_;
  double tol_;
  std::unordered_map<Key, std::vector<std::size_t>, KeyHash> cells_;
  std::vector<Point> leaders_;
  std::vector<Point> sums_;
  std::vector<std::size_t> counts_;
};

}  // namespace

PointSet::PointSet(int dim, std::vector<Point> points, double window_radius, double tolerance)
    : dim_(dim), window_radius_(window_radius), tolerance_(tolerance) {
  if (dim < 1 || dim > kMaxDim) throw ContractError("invalid-dimension", "dimension must be 1, 2 or 3");
  if (!(window_radius > 0.0)) throw ContractError("invalid-window", "window radius must be positive");
  if (!(tolerance > 0.0)) throw ContractError("invalid-tolerance", "tolerance must be positive");
  for (const auto& p : points) {
    require_dim(dim, static_cast<int>(p.size()), "point");
    if (p.norm() > window_radius + tolerance)
      throw ContractError("outside-window", "point lies outside the declared window");
  }
  // Duplicates within tolerance collapse onto the first occurrence.
  std::vector<Point> kept;
  if (!points.empty()) {
    SpatialIndex index(points, std::max(tolerance, 1e-300));
    std::vector<bool> dropped(points.size(), false);
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (dropped[i]) continue;
      kept.push_back(points[i]);
      for (std::size_t j : index.within(points[i], tolerance))
        if (j > i) dropped[j] = true;
    }
  }
  std::sort(kept.begin(), kept.end(), norm_lex_less);
  points_ = std::move(kept);
}

PointSet PointSet::restricted(double radius) const {
  std::vector<Point> sub;
  for (const auto& p : points_)
    if (p.norm() < radius) sub.push_back(p);
  return PointSet(dim_, std::move(sub), std::min(radius, window_radius_), tolerance_);
}

std::size_t SpatialIndex::KeyHash::operator()(const Key& k) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (long long v : k) h = (h ^ static_cast<std::size_t>(v)) * 1099511628211ull;
  return h;
}

SpatialIndex::Key SpatialIndex::key_of(const Point& x) const {
  Key k{};
  for (int i = 0; i < dim_; ++i) k[i] = static_cast<long long>(std::floor(x[i] / cell_));
  return k;
}

SpatialIndex::SpatialIndex(const std::vector<Point>& points, double cell)
    : points_(&points), cell_(cell), dim_(points.empty() ? 1 : static_cast<int>(points.front().size())) {
  if (!(cell > 0.0)) throw ContractError("invalid-argument", "spatial index cell must be positive");
  for (int i = 0; i < kMaxDim; ++i) {
    lo_[i] = std::numeric_limits<long long>::max();
    hi_[i] = std::numeric_limits<long long>::min();
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Key k = key_of(points[i]);
    for (int a = 0; a < dim_; ++a) {
      lo_[a] = std::min(lo_[a], k[a]);
      hi_[a] = std::max(hi_[a], k[a]);
    }
    buckets_[k].push_back(i);
  }
}

std::vector<std::size_t> SpatialIndex::within(const Point& x, double r) const {
  std::vector<std::size_t> out;
  if (buckets_.empty()) return out;
  Key lo{}, hi{};
  for (int i = 0; i < dim_; ++i) {
    lo[i] = std::max(lo_[i], static_cast<long long>(std::floor((x[i] - r) / cell_)));
    hi[i] = std::min(hi_[i], static_cast<long long>(std::floor((x[i] + r) / cell_)));
    if (lo[i] > hi[i]) return out;
  }
  Key k = lo;
  while (true) {
    auto it = buckets_.find(k);
    if (it != buckets_.end())
      for (std::size_t idx : it->second)
        if (((*points_)[idx] - x).norm() < r) out.push_back(idx);
    int a = 0;
    while (a < dim_) {
      if (++k[a] <= hi[a]) break;
      k[a] = lo[a];
      ++a;
    }
    if (a == dim_) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<std::size_t> SpatialIndex::find_near(const Point& x, double tol) const {
  const auto hits = within(x, tol);
  if (hits.empty()) return std::nullopt;
  return hits.front();
}

double SpatialIndex::nearest_distance(const Point& x) const {
  double best = std::numeric_limits<double>::infinity();
  if (buckets_.empty()) return best;
  const Key c = key_of(x);
  long long max_ring = 0;
  for (int i = 0; i < dim_; ++i) max_ring = std::max({max_ring, std::llabs(c[i] - lo_[i]), std::llabs(hi_[i] - c[i])});
  for (long long s = 0; s <= max_ring; ++s) {
    Key off{};
    for (int i = 0; i < dim_; ++i) off[i] = -s;
    while (true) {
      long long cheb = 0;
      for (int i = 0; i < dim_; ++i) cheb = std::max(cheb, std::llabs(off[i]));
      if (cheb == s) {
        Key k{};
        for (int i = 0; i < dim_; ++i) k[i] = c[i] + off[i];
        auto it = buckets_.find(k);
        if (it != buckets_.end())
          for (std::size_t idx : it->second) best = std::min(best, ((*points_)[idx] - x).norm());
      }
      int a = 0;
      while (a < dim_) {
        if (++off[a] <= s) break;
        off[a] = -s;
        ++a;
      }
      if (a == dim_) break;
    }
    if (best <= static_cast<double>(s) * cell_) break;
  }
  return best;
}

double min_pairwise_distance(const std::vector<Point>& points) {
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return points[a][0] < points[b][0]; });
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      const Point& p = points[order[i]];
      const Point& q = points[order[j]];
      if (q[0] - p[0] >= best) break;
      best = std::min(best, (p - q).norm());
    }
  return best;
}

Clusters cluster_points(const std::vector<Point>& points, double tol) {
  ClusterAccumulator acc(points.empty() ? 1 : static_cast<int>(points.front().size()), tol);
  for (const auto& p : points) acc.add(p);
  return acc.finish();
}

double separating_constant(const PointSet& a) {
  if (a.size() < 2) throw ContractError("too-few-points", "separating constant needs at least two points");
  return min_pairwise_distance(a.points());
}

std::size_t counting(const PointSet& a, double r) {
  if (r > a.window_radius())
    throw ContractError("outside-certified-window", "counting radius exceeds the certified window");
  return static_cast<std::size_t>(
      std::count_if(a.points().begin(), a.points().end(), [r](const Point& p) { return p.norm() < r; }));
}

namespace {

Clusters difference_clusters(const PointSet& a, double range) {
  ClusterAccumulator acc(a.dim(), a.tolerance());
  acc.add(zero_point(a.dim()));
  if (!a.points().empty()) {
    SpatialIndex index(a.points(), range);
    for (const auto& p : a.points())
      for (std::size_t j : index.within(p, range)) acc.add(a.points()[j] - p);
  }
  return acc.finish();
}

}  // namespace

PointSet difference_set(const PointSet& a, double range) {
  if (!(range > 0.0) || range > a.window_radius())
    throw ContractError("outside-certified-window", "difference range must lie in (0, windowRadius]");
  auto c = difference_clusters(a, range);
  return PointSet(a.dim(), std::move(c.centroids), a.window_radius(), a.tolerance());
}

FiniteTypeCertificate finite_type_certificate(const PointSet& a, double range) {
  if (!(range > 0.0) || range > a.window_radius())
    throw ContractError("outside-certified-window", "difference range must lie in (0, windowRadius]");
  FiniteTypeCertificate r;
  r.cert = {a.window_radius(), range, a.tolerance()};
  const auto full = difference_clusters(a, range);
  r.cluster_count = full.centroids.size();
  r.min_gap = min_pairwise_distance(full.centroids);
  const auto half = difference_clusters(a.restricted(0.5 * a.window_radius()), range);
  r.half_window_min_gap = min_pairwise_distance(half.centroids);
  r.half_window_cluster_count = half.centroids.size();
  const bool separated = r.min_gap > 10.0 * a.tolerance();
  // A finite-type set shows every difference below the range already on the
  // half window; new clusters appearing with the window mean accumulation.
  const bool stable = r.cluster_count == r.half_window_cluster_count;
  r.certified = separated && stable;
  return r;
}

DensityReport bounded_density(const PointSet& a, double probe_radius) {
  if (!(probe_radius > 0.0)) throw ContractError("invalid-argument", "probe radius must be positive");
  DensityReport r;
  r.probe_radius = probe_radius;
  r.cert = {a.window_radius(), probe_radius, a.tolerance()};
  if (a.points().empty()) return r;
  SpatialIndex index(a.points(), probe_radius);
  for (const auto& p : a.points()) {
    if (p.norm() > a.window_radius() - probe_radius) continue;
    r.max_count = std::max(r.max_count, index.within(p, probe_radius).size());
  }
  return r;
}

CoveringReport covering_radius_estimate(const PointSet& a) {
  if (a.size() < 1) throw ContractError("too-few-points", "covering radius needs at least one point");
  const int d = a.dim();
  const double w = a.window_radius();
  const int per_side = d == 1 ? 512 : (d == 2 ? 160 : 40);
  const double h = w / per_side;
  const double spacing = 2.0 * w / std::pow(static_cast<double>(a.size()), 1.0 / d);
  SpatialIndex index(a.points(), std::max(h, spacing));

  // Distances at every node of the box grid, computed once.
  std::vector<std::pair<double, double>> nodes;  // (|x|, distance)
  std::vector<int> idx(static_cast<std::size_t>(d), -per_side);
  Point x(d);
  while (true) {
    for (int i = 0; i < d; ++i) x[i] = idx[static_cast<std::size_t>(i)] * h;
    const double nx = x.norm();
    if (nx <= w) nodes.emplace_back(nx, index.nearest_distance(x));
    int axis = 0;
    while (axis < d) {
      auto& v = idx[static_cast<std::size_t>(axis)];
      if (++v <= per_side) break;
      v = -per_side;
      ++axis;
    }
    if (axis == d) break;
  }
  auto worst_within = [&](double interior) {
    double e = 0.0;
    for (const auto& [nx, dist] : nodes)
      if (nx <= interior) e = std::max(e, dist);
    return e;
  };

  CoveringReport r;
  r.grid_step = h;
  r.cert = {w, 0.0, a.tolerance()};
  double estimate = worst_within(w);
  for (int iter = 0; iter < 64; ++iter) {
    const double interior = w - estimate;
    if (interior <= estimate)
      throw ContractError("window-too-small", "window too small to certify any interior for the covering radius");
    const double next = worst_within(interior);
    r.interior_radius = interior;
    if (next == estimate) break;
    estimate = next;
  }
  r.radius = estimate;
  r.cert.range = r.interior_radius;
  return r;
}

}  // namespace tempered

#pragma once

#include "tempered/types.hpp"

#include <array>
#include <limits>
#include <optional>
#include <unordered_map>
#include <vector>

namespace tempered {

/// Finite sample of a discrete set: every point lies in the closed ball of
/// radius window_radius about the origin; points closer than tolerance are
/// merged on construction.
class PointSet {
 public:
  PointSet() = default;
  PointSet(int dim, std::vector<Point> points, double window_radius, double tolerance = kDefaultTolerance);

  int dim() const { return dim_; }
  const std::vector<Point>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  double window_radius() const { return window_radius_; }
  double tolerance() const { return tolerance_; }

  /// Subset with |a| < radius, certified on that smaller window.
  PointSet restricted(double radius) const;

 private:
  int dim_ = 1;
  std::vector<Point> points_;
  double window_radius_ = 1.0;
  double tolerance_ = kDefaultTolerance;
};

/// Uniform-grid bucket index for neighbour queries.
class SpatialIndex {
 public:
  SpatialIndex(const std::vector<Point>& points, double cell);

  /// Indices of points with |p - x| < r.
  std::vector<std::size_t> within(const Point& x, double r) const;
  /// Some point with |p - x| < tol, if any.
  std::optional<std::size_t> find_near(const Point& x, double tol) const;
  /// Distance to the nearest point (infinity for an empty index).
  double nearest_distance(const Point& x) const;

 private:
  using Key = std::array<long long, kMaxDim>;
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept;
  };
  Key key_of(const Point& x) const;

  const std::vector<Point>* points_;
  double cell_;
  int dim_;
  std::unordered_map<Key, std::vector<std::size_t>, KeyHash> buckets_;
  Key lo_{};
  Key hi_{};
};

/// Window, range and tolerance a verdict was certified at.
struct Certification {
  double window_radius = 0.0;
  double range = 0.0;
  double tolerance = 0.0;
};

double separating_constant(const PointSet& a);

/// #{a : |a| < r}; r must not exceed the certified window.
std::size_t counting(const PointSet& a, double r);

/// Pairwise differences with |x - x'| < range, clustered at the tolerance.
PointSet difference_set(const PointSet& a, double range);

struct FiniteTypeCertificate {
  bool certified = false;
  /// Smallest distance between distinct difference clusters (infinity when
  /// only the zero cluster exists).
  double min_gap = std::numeric_limits<double>::infinity();
  std::size_t cluster_count = 0;
  /// The same quantities on the half-radius window. Certification requires
  /// the cluster count to be unchanged between the two windows.
  double half_window_min_gap = std::numeric_limits<double>::infinity();
  std::size_t half_window_cluster_count = 0;
  Certification cert;
};

FiniteTypeCertificate finite_type_certificate(const PointSet& a, double range);

inline constexpr double kDensityProbeRadius = 0.5;

struct DensityReport {
  std::size_t max_count = 0;
  double probe_radius = kDensityProbeRadius;
  Certification cert;
};

/// max over centres x in A (away from the rim) of #(A ∩ B(x, probe_radius)).
DensityReport bounded_density(const PointSet& a, double probe_radius = kDensityProbeRadius);

struct CoveringReport {
  double radius = 0.0;
  double interior_radius = 0.0;
  double grid_step = 0.0;
  Certification cert;
};

/// Largest distance from an interior grid node to the nearest point of A,
/// with the interior shrunk by the estimate until it stabilizes.
CoveringReport covering_radius_estimate(const PointSet& a);

/// Greedy clustering at tolerance tol; returns centroids and member counts.
struct Clusters {
  std::vector<Point> centroids;
  std::vector<std::size_t> counts;
};
Clusters cluster_points(const std::vector<Point>& points, double tol);

/// Minimum pairwise distance (infinity for fewer than two points).
double min_pairwise_distance(const std::vector<Point>& points);

}  // namespace tempered

#pragma once

#include "tempered/lattice.hpp"
#include "tempered/pointset.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tempered {

/// Translations tau with |tau| <= max_norm such that every point a of A with
/// |a| <= windowRadius - |tau| has a partner of A within tolerance of a + tau.
/// max_norm defaults to windowRadius / 4. Sorted by (|tau|, lexicographic).
std::vector<Point> detect_periods(const PointSet& a, std::optional<double> max_norm = std::nullopt);

struct CrystalDetection {
  std::optional<Crystal> crystal;
  /// Empty on success; otherwise "no-full-rank-periods" or "coset-mismatch".
  std::string reason;
  std::vector<Point> periods;
  Certification cert;

  bool found() const { return crystal.has_value(); }
};

CrystalDetection detect_crystal(const PointSet& a, std::optional<double> max_period_norm = std::nullopt);

}  // namespace tempered

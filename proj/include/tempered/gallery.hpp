#pragma once

#include "tempered/distribution.hpp"
#include "tempered/lattice.hpp"
#include "tempered/pointset.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tempered {

inline constexpr std::uint64_t kDefaultSeed = 20240611;

using GalleryParams = std::map<std::string, double>;

struct GalleryEntry {
  std::string name;
  GalleryParams params;
  std::optional<GeneratorSum> distribution;
  /// Support sample on a window; always present.
  PointSet points;
  /// Ground-truth crystal when the entry is one.
  std::optional<Crystal> crystal;
};

/// Names accepted by gallery(), in listing order.
std::vector<std::string> gallery_names();
/// Default parameters of an entry.
GalleryParams gallery_defaults(const std::string& name);

/// Deterministic given name, params and seed. Unknown names or parameters
/// throw "invalid-argument".
GalleryEntry gallery(const std::string& name, const GalleryParams& params = {}, std::uint64_t seed = kDefaultSeed);

/// Random lattice with cond(T) <= max_cond and |det T| = 1.
Lattice random_lattice(std::uint64_t seed, int dim, double max_cond = 10.0);

/// Random crystal: coset representatives pairwise at least
/// min_separation * (shortest basis norm) apart modulo the lattice, and a
/// comb generator with a random coefficient for every |k| <= degree.
struct SeededCrystal {
  Crystal crystal;
  GeneratorSum distribution;
};
SeededCrystal seeded_crystal(std::uint64_t seed, int dim, int cosets, int degree, double min_separation = 0.2);

/// Points of the crystal inside the open ball of the given radius.
PointSet crystal_points(const Crystal& c, double radius, double tolerance = kDefaultTolerance);

/// Support of f in the open ball of the given radius.
PointSet support_points(const GeneratorSum& f, double radius);

/// Cut-and-project points x = m + n phi with m + n phi' in [-1, phi - 1),
/// |x| < radius, where phi' = -1/phi.
std::vector<double> fibonacci_points(double radius);

}  // namespace tempered

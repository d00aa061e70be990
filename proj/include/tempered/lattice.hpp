#pragma once

#include "tempered/types.hpp"

#include <vector>

namespace tempered {

/// Full-rank lattice L = T Z^d; the columns of T are the basis vectors,
/// kept in a canonical reduced form (shortest first, ties broken
/// lexicographically, first significant coordinate positive).
class Lattice {
 public:
  Lattice() = default;
  explicit Lattice(Matrix basis, double tolerance = kDefaultTolerance);

  static Lattice identity(int dim, double scale = 1.0);

  int dim() const { return static_cast<int>(basis_.cols()); }
  const Matrix& basis() const { return basis_; }
  const Matrix& inverse() const { return inverse_; }
  double tolerance() const { return tolerance_; }
  double abs_det() const { return std::abs(basis_.determinant()); }
  double max_basis_norm() const;
  Point column(int i) const { return basis_.col(i); }

  /// T^{-1} x
  Point coordinates(const Point& x) const { return inverse_ * x; }
  /// Representative of x + L in the half-open fundamental parallelepiped.
  Point reduce(const Point& x) const;
  /// Covering radius, estimated on a grid over the fundamental cell.
  double covering_radius() const;

  /// Points of coset + L inside the open ball B(center, radius).
  std::vector<Point> points_in_ball(const Point& coset, const Point& center, double radius) const;

 private:
  Matrix basis_;
  Matrix inverse_;
  double tolerance_ = kDefaultTolerance;
};

struct Membership {
  bool is_member = false;
  Point nearest;
  double residual = 0.0;
};

Membership member(const Lattice& lattice, const Point& x);

/// Conjugate lattice (T^t)^{-1} Z^d.
Lattice dual(const Lattice& lattice);

bool lattices_equal(const Lattice& a, const Lattice& b);

inline constexpr int kMaxDenominator = 64;

/// Lattice generated by the given periods. Greedy shortest independent
/// selection, then refinement by every period that is not yet a member.
/// Throws "rank-deficient" if the periods do not span R^d and
/// "incommensurable" if a period is not rational in the current basis with
/// denominator <= kMaxDenominator.
Lattice lattice_from_periods(const std::vector<Point>& periods, int dim, double tolerance = kDefaultTolerance);

/// L1 + L2 and L1 ∩ L2 for commensurable lattices.
Lattice lattice_sum(const Lattice& a, const Lattice& b);
Lattice lattice_intersection(const Lattice& a, const Lattice& b);

/// Representatives of the finite quotient fine / coarse (coarse ⊂ fine).
std::vector<Point> quotient_representatives(const Lattice& fine, const Lattice& coarse);

/// Finite union of cosets of one full-rank lattice.
struct Crystal {
  Lattice lattice;
  std::vector<Point> cosets;
};

}  // namespace tempered

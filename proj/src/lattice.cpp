#include "tempered/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tempered {

namespace {

bool basis_vector_less(const Point& a, const Point& b) {
  const double na = a.norm();
  const double nb = b.norm();
  if (std::abs(na - nb) > 1e-12 * std::max(1.0, std::max(na, nb))) return na < nb;
  for (int i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > 1e-12) return a[i] < b[i];
  return false;
}

Point sign_normalized(Point v, double tol) {
  for (int i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > tol) {
      if (v[i] < 0) v = -v;
      break;
    }
  }
  return v;
}

Matrix canonical_basis(Matrix b, double tol) {
  const int d = static_cast<int>(b.cols());
  std::vector<Point> cols;
  for (int i = 0; i < d; ++i) cols.push_back(b.col(i));
  // Pairwise size reduction until nothing changes (Lagrange-Gauss for d = 2).
  for (int iter = 0; iter < 1000; ++iter) {
    std::sort(cols.begin(), cols.end(), [](const Point& x, const Point& y) { return x.squaredNorm() < y.squaredNorm(); });
    bool changed = false;
    for (int i = 1; i < d; ++i) {
      for (int j = 0; j < i; ++j) {
        const double mu = std::round(cols[i].dot(cols[j]) / cols[j].squaredNorm());
        if (mu != 0.0) {
          const Point candidate = cols[i] - mu * cols[j];
          if (candidate.squaredNorm() < cols[i].squaredNorm() * (1.0 - 1e-14)) {
            cols[i] = candidate;
            changed = true;
          }
        }
      }
    }
    if (!changed) break;
  }
  for (auto& c : cols) c = sign_normalized(c, tol);
  std::stable_sort(cols.begin(), cols.end(), basis_vector_less);
  Matrix out(d, d);
  for (int i = 0; i < d; ++i) out.col(i) = cols[i];
  return out;
}

long long floor_div(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// Column basis of the integer lattice spanned by gens (full rank d assumed).
std::vector<IntVector> integer_column_basis(std::vector<IntVector> gens, int d) {
  std::vector<IntVector> basis;
  for (int row = 0; row < d; ++row) {
    while (true) {
      // Column with the smallest nonzero |entry| in this row.
      int pivot = -1;
      for (int c = 0; c < static_cast<int>(gens.size()); ++c) {
        if (gens[c][row] == 0) continue;
        if (pivot < 0 || std::llabs(gens[c][row]) < std::llabs(gens[pivot][row])) pivot = c;
      }
      if (pivot < 0) throw ContractError("rank-deficient", "periods do not span the space");
      bool reduced = true;
      for (int c = 0; c < static_cast<int>(gens.size()); ++c) {
        if (c == pivot || gens[c][row] == 0) continue;
        const long long q = floor_div(gens[c][row], gens[pivot][row]);
        gens[c] -= q * gens[pivot];
        if (gens[c][row] != 0) reduced = false;
      }
      if (reduced) {
        basis.push_back(gens[pivot]);
        gens.erase(gens.begin() + pivot);
        break;
      }
    }
  }
  return basis;
}

}  // namespace

Lattice::Lattice(Matrix basis, double tolerance) : tolerance_(tolerance) {
  const int d = static_cast<int>(basis.rows());
  if (d < 1 || d > kMaxDim || basis.cols() != d)
    throw ContractError("invalid-lattice", "lattice basis must be a square matrix of size 1..3");
  if (!(std::abs(basis.determinant()) > 10.0 * tolerance))
    throw ContractError("degenerate-lattice", "lattice basis is degenerate");
  basis_ = canonical_basis(std::move(basis), tolerance);
  inverse_ = basis_.inverse();
}

Lattice Lattice::identity(int dim, double scale) {
  return Lattice(Matrix::Identity(dim, dim) * scale);
}

double Lattice::max_basis_norm() const {
  double m = 0.0;
  for (int i = 0; i < dim(); ++i) m = std::max(m, basis_.col(i).norm());
  return m;
}

Point Lattice::reduce(const Point& x) const {
  require_dim(dim(), static_cast<int>(x.size()), "lattice reduction");
  Point u = inverse_ * x;
  bool inside = true;
  for (int i = 0; i < dim(); ++i) {
    const double shift = std::floor(u[i] + 1e-9);
    inside = inside && shift == 0.0;
    u[i] -= shift;
  }
  // Representatives already in the cell come back unchanged, bit for bit.
  if (inside) return x;
  Point r = basis_ * u;
  for (int i = 0; i < dim(); ++i)
    if (std::abs(r[i]) < 1e-15) r[i] = 0.0;
  return r;
}

double Lattice::covering_radius() const {
  const int d = dim();
  const int per_axis = d == 1 ? 256 : (d == 2 ? 64 : 24);
  std::vector<int> idx(static_cast<std::size_t>(d), 0);
  double worst = 0.0;
  Point u(d);
  while (true) {
    for (int i = 0; i < d; ++i) u[i] = (idx[static_cast<std::size_t>(i)] + 0.5) / per_axis;
    const Point y = basis_ * u;
    double nearest = std::numeric_limits<double>::infinity();
    std::vector<int> off(static_cast<std::size_t>(d), -1);
    while (true) {
      Point n(d);
      for (int i = 0; i < d; ++i) n[i] = off[static_cast<std::size_t>(i)];
      nearest = std::min(nearest, (y - basis_ * n).norm());
      int a = 0;
      while (a < d && ++off[static_cast<std::size_t>(a)] > 2) off[static_cast<std::size_t>(a++)] = -1;
      if (a == d) break;
    }
    worst = std::max(worst, nearest);
    int a = 0;
    while (a < d && ++idx[static_cast<std::size_t>(a)] >= per_axis) idx[static_cast<std::size_t>(a++)] = 0;
    if (a == d) break;
  }
  return worst;
}

std::vector<Point> Lattice::points_in_ball(const Point& coset, const Point& center, double radius) const {
  const int d = dim();
  require_dim(d, static_cast<int>(coset.size()), "coset");
  require_dim(d, static_cast<int>(center.size()), "ball center");
  const Point u = inverse_ * (center - coset);
  std::vector<long long> lo(static_cast<std::size_t>(d)), hi(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    const double reach = inverse_.row(i).norm() * radius;
    lo[static_cast<std::size_t>(i)] = static_cast<long long>(std::floor(u[i] - reach));
    hi[static_cast<std::size_t>(i)] = static_cast<long long>(std::ceil(u[i] + reach));
  }
  std::vector<Point> out;
  std::vector<long long> n = lo;
  Point nv(d);
  while (true) {
    for (int i = 0; i < d; ++i) nv[i] = static_cast<double>(n[static_cast<std::size_t>(i)]);
    Point p = coset + basis_ * nv;
    if ((p - center).norm() < radius) out.push_back(std::move(p));
    int a = 0;
    while (a < d) {
      auto& k = n[static_cast<std::size_t>(a)];
      if (++k <= hi[static_cast<std::size_t>(a)]) break;
      k = lo[static_cast<std::size_t>(a)];
      ++a;
    }
    if (a == d) break;
  }
  return out;
}

Membership member(const Lattice& lattice, const Point& x) {
  require_dim(lattice.dim(), static_cast<int>(x.size()), "membership query");
  Membership m;
  Point u = lattice.coordinates(x);
  for (int i = 0; i < u.size(); ++i) u[i] = std::round(u[i]);
  m.nearest = lattice.basis() * u;
  m.residual = (x - m.nearest).norm();
  m.is_member = m.residual < lattice.tolerance();
  return m;
}

Lattice dual(const Lattice& lattice) {
  Eigen::JacobiSVD<Matrix> svd(lattice.basis());
  const auto& s = svd.singularValues();
  const double cond = s(0) / s(s.size() - 1);
  if (!(cond <= 1e8)) throw ContractError("ill-conditioned", "lattice basis condition number exceeds 1e8");
  return Lattice(lattice.basis().transpose().inverse(), lattice.tolerance());
}

bool lattices_equal(const Lattice& a, const Lattice& b) {
  if (a.dim() != b.dim()) return false;
  for (int i = 0; i < a.dim(); ++i) {
    if (!member(b, a.column(i)).is_member) return false;
    if (!member(a, b.column(i)).is_member) return false;
  }
  return true;
}

Lattice lattice_from_periods(const std::vector<Point>& periods, int dim, double tolerance) {
  std::vector<Point> sorted;
  for (const auto& p : periods) {
    require_dim(dim, static_cast<int>(p.size()), "period");
    if (p.norm() >= tolerance) sorted.push_back(p);
  }
  std::sort(sorted.begin(), sorted.end(), norm_lex_less);

  // Greedy shortest independent selection.
  std::vector<Point> chosen;
  std::vector<Point> ortho;
  for (const auto& p : sorted) {
    Point r = p;
    for (const auto& q : ortho) r -= r.dot(q) * q;
    if (r.norm() > 1e-6 * std::max(1.0, p.norm())) {
      chosen.push_back(p);
      ortho.push_back(r.normalized());
      if (static_cast<int>(chosen.size()) == dim) break;
    }
  }
  if (static_cast<int>(chosen.size()) < dim)
    throw ContractError("rank-deficient", "periods do not span R^" + std::to_string(dim));

  Matrix basis(dim, dim);
  for (int i = 0; i < dim; ++i) basis.col(i) = chosen[static_cast<std::size_t>(i)];

  // Refinement: fold in every period that is not yet an integer combination.
  for (int sweep = 0; sweep < 16; ++sweep) {
    bool changed = false;
    for (const auto& p : sorted) {
      const Matrix inv = basis.inverse();
      const Point c = inv * p;
      Point rounded = c;
      for (int i = 0; i < dim; ++i) rounded[i] = std::round(c[i]);
      if ((basis * (c - rounded)).norm() < tolerance) continue;
      int q = 0;
      for (int den = 2; den <= kMaxDenominator; ++den) {
        const Point qc = den * c;
        Point qr = qc;
        for (int i = 0; i < dim; ++i) qr[i] = std::round(qc[i]);
        if ((basis * (qc - qr)).norm() / den < tolerance) {
          q = den;
          break;
        }
      }
      if (q == 0)
        throw ContractError("incommensurable", "periods are not commensurable within denominator " +
                                                   std::to_string(kMaxDenominator));
      std::vector<IntVector> gens;
      for (int i = 0; i < dim; ++i) {
        IntVector e = IntVector::Zero(dim);
        e[i] = q;
        gens.push_back(e);
      }
      IntVector extra(dim);
      for (int i = 0; i < dim; ++i) extra[i] = std::llround(q * c[i]);
      gens.push_back(extra);
      const auto h = integer_column_basis(gens, dim);
      Matrix hm(dim, dim);
      for (int i = 0; i < dim; ++i)
        for (int r = 0; r < dim; ++r) hm(r, i) = static_cast<double>(h[static_cast<std::size_t>(i)][r]) / q;
      basis = basis * hm;
      basis = canonical_basis(basis, tolerance);
      changed = true;
    }
    if (!changed) break;
  }
  return Lattice(basis, tolerance);
}

Lattice lattice_sum(const Lattice& a, const Lattice& b) {
  require_dim(a.dim(), b.dim(), "lattice sum");
  std::vector<Point> gens;
  for (int i = 0; i < a.dim(); ++i) {
    gens.push_back(a.column(i));
    gens.push_back(b.column(i));
  }
  return lattice_from_periods(gens, a.dim(), std::min(a.tolerance(), b.tolerance()));
}

Lattice lattice_intersection(const Lattice& a, const Lattice& b) {
  return dual(lattice_sum(dual(a), dual(b)));
}

std::vector<Point> quotient_representatives(const Lattice& fine, const Lattice& coarse) {
  const int d = fine.dim();
  require_dim(d, coarse.dim(), "quotient");
  const double index_real = coarse.abs_det() / fine.abs_det();
  const long long index = std::llround(index_real);
  if (index < 1 || std::abs(index_real - static_cast<double>(index)) > 1e-6 * index_real)
    throw ContractError("not-a-sublattice", "coarse lattice is not a sublattice of the fine one");
  std::vector<Point> reps;
  std::vector<long long> n(static_cast<std::size_t>(d), 0);
  Point nv(d);
  while (static_cast<long long>(reps.size()) < index) {
    for (int i = 0; i < d; ++i) nv[i] = static_cast<double>(n[static_cast<std::size_t>(i)]);
    const Point r = coarse.reduce(fine.basis() * nv);
    bool fresh = true;
    for (const auto& q : reps)
      if (member(coarse, r - q).is_member) fresh = false;
    if (fresh) reps.push_back(r);
    int a = 0;
    while (a < d && ++n[static_cast<std::size_t>(a)] >= index) n[static_cast<std::size_t>(a++)] = 0;
    if (a == d) break;
  }
  if (static_cast<long long>(reps.size()) != index)
    throw ContractError("not-a-sublattice", "could not enumerate the quotient");
  std::sort(reps.begin(), reps.end(), norm_lex_less);
  return reps;
}

}  // namespace tempered

#include "tempered/types.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace tempered {

MultiIndex::MultiIndex(std::initializer_list<int> entries) : entries_(entries) {
  for (int e : entries_)
    if (e < 0) throw ContractError("invalid-multi-index", "multi-index entries must be non-negative");
}

MultiIndex::MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {
  for (int e : entries_)
    if (e < 0) throw ContractError("invalid-multi-index", "multi-index entries must be non-negative");
}

int MultiIndex::total() const { return std::accumulate(entries_.begin(), entries_.end(), 0); }

bool MultiIndex::dominated_by(const MultiIndex& other) const {
  for (int i = 0; i < dim(); ++i)
    if (entries_[i] > other[i]) return false;
  return true;
}

MultiIndex operator+(const MultiIndex& a, const MultiIndex& b) {
  require_dim(a.dim(), b.dim(), "multi-index sum");
  MultiIndex r(a.dim());
  for (int i = 0; i < a.dim(); ++i) r[i] = a[i] + b[i];
  return r;
}

MultiIndex operator-(const MultiIndex& a, const MultiIndex& b) {
  require_dim(a.dim(), b.dim(), "multi-index difference");
  MultiIndex r(a.dim());
  for (int i = 0; i < a.dim(); ++i) {
    if (a[i] < b[i]) throw ContractError("invalid-multi-index", "negative multi-index entry");
    r[i] = a[i] - b[i];
  }
  return r;
}

std::vector<MultiIndex> multi_indices_up_to(int dim, int max_total) {
  std::vector<MultiIndex> out;
  MultiIndex k(dim);
  std::function<void(int, int)> rec = [&](int axis, int remaining) {
    if (axis == dim) {
      out.push_back(k);
      return;
    }
    for (int v = 0; v <= remaining; ++v) {
      k[axis] = v;
      rec(axis + 1, remaining - v);
    }
    k[axis] = 0;
  };
  rec(0, max_total);
  std::stable_sort(out.begin(), out.end(), [](const MultiIndex& a, const MultiIndex& b) {
    if (a.total() != b.total()) return a.total() < b.total();
    return a < b;
  });
  return out;
}

std::vector<MultiIndex> multi_indices_below(const MultiIndex& k) {
  std::vector<MultiIndex> out;
  for (auto& j : multi_indices_up_to(k.dim(), k.total()))
    if (j.dominated_by(k)) out.push_back(j);
  return out;
}

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

double factorial(const MultiIndex& k) {
  double r = 1.0;
  for (int e : k.entries()) r *= factorial(e);
  return r;
}

double binomial(const MultiIndex& k, const MultiIndex& j) {
  double r = 1.0;
  for (int i = 0; i < k.dim(); ++i) {
    if (j[i] > k[i]) return 0.0;
    r *= factorial(k[i]) / (factorial(j[i]) * factorial(k[i] - j[i]));
  }
  return r;
}

double monomial(const Point& x, const MultiIndex& k) {
  double r = 1.0;
  for (int i = 0; i < k.dim(); ++i)
    for (int p = 0; p < k[i]; ++p) r *= x[i];
  return r;
}

Window::Window(Point c, double r) : center(std::move(c)), radius(r) {
  if (!(r > 0.0)) throw ContractError("invalid-window", "window radius must be positive");
}

Window Window::ball(int dim, double r) { return Window(zero_point(dim), r); }

Point zero_point(int dim) { return Point::Zero(dim); }

Point make_point(std::initializer_list<double> coords) {
  Point p(static_cast<Eigen::Index>(coords.size()));
  int i = 0;
  for (double c : coords) p[i++] = c;
  return p;
}

bool norm_lex_less(const Point& a, const Point& b) {
  const double na = a.norm();
  const double nb = b.norm();
  if (na != nb) return na < nb;
  for (int i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

void require_dim(int expected, int actual, const char* what) {
  if (expected != actual)
    throw ContractError("dimension-mismatch", std::string(what) + ": dimension " + std::to_string(actual) +
                                                  " does not match " + std::to_string(expected));
}

}  // namespace tempered

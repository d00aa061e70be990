#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace tempered {

inline constexpr int kMaxDim = 3;
inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kDefaultTolerance = 1e-9;

using Complex = std::complex<double>;

// Points and small matrices live on the stack: d <= 3 everywhere.
using Point = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxDim, 1>;
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxDim, kMaxDim>;
using IntVector = Eigen::Matrix<long long, Eigen::Dynamic, 1, 0, kMaxDim, 1>;

/// Error raised when an operation's contract is violated. The code is a
/// short machine-readable tag ("dimension-mismatch", "window-too-small", ...).
class ContractError : public std::runtime_error {
 public:
  ContractError(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

/// Multi-index k = (k_1, ..., k_d) of non-negative integers.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(int dim) : entries_(static_cast<std::size_t>(dim), 0) {}
  MultiIndex(std::initializer_list<int> entries);
  explicit MultiIndex(std::vector<int> entries);

  int dim() const { return static_cast<int>(entries_.size()); }
  int total() const;
  int operator[](int i) const { return entries_[static_cast<std::size_t>(i)]; }
  int& operator[](int i) { return entries_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& entries() const { return entries_; }

  /// True when every entry of this is <= the matching entry of other.
  bool dominated_by(const MultiIndex& other) const;

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  friend auto operator<=>(const MultiIndex& a, const MultiIndex& b) {
    return a.entries_ <=> b.entries_;
  }

 private:
  std::vector<int> entries_;
};

MultiIndex operator+(const MultiIndex& a, const MultiIndex& b);
MultiIndex operator-(const MultiIndex& a, const MultiIndex& b);

/// All multi-indices of dimension dim with total order <= max_total, in
/// graded lexicographic order.
std::vector<MultiIndex> multi_indices_up_to(int dim, int max_total);

/// All multi-indices dominated by k (componentwise <=).
std::vector<MultiIndex> multi_indices_below(const MultiIndex& k);

/// k! = k_1! ... k_d!
double factorial(const MultiIndex& k);
double factorial(int n);
/// Product of binomial coefficients binom(k_i, j_i).
double binomial(const MultiIndex& k, const MultiIndex& j);
/// x^k = x_1^k_1 ... x_d^k_d
double monomial(const Point& x, const MultiIndex& k);

/// Ball B(center, radius); every asymptotic statement is certified on one.
struct Window {
  Point center;
  double radius = 0.0;

  Window() = default;
  Window(Point c, double r);
  static Window ball(int dim, double r);
  int dim() const { return static_cast<int>(center.size()); }
};

Point zero_point(int dim);
Point make_point(std::initializer_list<double> coords);

/// Ordering used for every deterministic traversal: (|x|, lexicographic).
bool norm_lex_less(const Point& a, const Point& b);

void require_dim(int expected, int actual, const char* what);

}  // namespace tempered

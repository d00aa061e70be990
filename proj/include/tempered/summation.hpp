#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace tempered {

// Neumaier's variant of Kahan summation; handles addends larger than the
// running sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class ComplexCompensatedSum {
 public:
  void add(std::complex<double> z) {
    re_.add(z.real());
    im_.add(z.imag());
  }
  std::complex<double> value() const { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum re_;
  CompensatedSum im_;
};

inline std::complex<double> compensated_total(std::span<const std::complex<double>> terms) {
  ComplexCompensatedSum s;
  for (const auto& z : terms) s.add(z);
  return s.value();
}

/// Number of worker threads used by term evaluation (default 1).
void set_thread_count(int n);
int thread_count();

/// Calls fn(i) for i in [0, n), splitting the range over thread_count()
/// workers. fn must only write to slot i of its output.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace tempered

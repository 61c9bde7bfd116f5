#pragma once

#include <cmath>
#include <limits>

namespace conflate::internal {

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void Add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

template <typename Range, typename Proj>
double AccurateSum(const Range& range, Proj proj) {
  CompensatedSum s;
  for (const auto& x : range) s.Add(proj(x));
  return s.value();
}

template <typename Range>
double AccurateSum(const Range& range) {
  return AccurateSum(range, [](double x) { return x; });
}

// A total computed from n nonnegative terms that sits this close to 1 is
// indistinguishable from 1 given the rounding in the terms themselves.
inline bool EqualsOneWithinRounding(double total, std::size_t n) {
  return std::abs(total - 1.0) <=
         4.0 * static_cast<double>(n + 1) * std::numeric_limits<double>::epsilon();
}

}  // namespace conflate::internal

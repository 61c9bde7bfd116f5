#pragma once

#include <compare>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace conflate {

// Exact decimal label for a parameter value theta.
//
// A key is stored as mantissa * 10^-scale with the mantissa carrying no
// trailing decimal zeros, which makes the rendered text canonical: "1.50",
// "+1.5" and "15e-1" all become "1.5", and negative zero becomes "0".
// Two atoms denote the same theta iff their keys compare equal.
class AtomKey {
 public:
  AtomKey() = default;

  // Accepts [+-]digits[.digits][(e|E)[+-]digits]. Throws Error(kBadKey).
  static AtomKey Parse(std::string_view text);
  static AtomKey FromInteger(long long value);

  // Exact (a + b) / 2; always representable as a finite decimal.
  static AtomKey Midpoint(const AtomKey& a, const AtomKey& b);

  const std::string& str() const noexcept { return text_; }
  double value() const;

  friend bool operator==(const AtomKey& a, const AtomKey& b) {
    return a.scale_ == b.scale_ && a.mantissa_ == b.mantissa_;
  }
  // Numeric order.
  friend std::strong_ordering operator<=>(const AtomKey& a, const AtomKey& b);

 private:
  using Int = boost::multiprecision::cpp_int;

  AtomKey(Int mantissa, int scale);
  void Canonicalize();

  Int mantissa_ = 0;
  int scale_ = 0;
  std::string text_ = "0";
};

}  // namespace conflate

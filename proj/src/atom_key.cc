#include "conflate/atom_key.h"

#include <cctype>
#include <charconv>
#include <cstdlib>

#include "conflate/error.h"

namespace conflate {
namespace {

// Keeps pathological inputs like "1e999999" from allocating huge integers.
constexpr int kMaxExponent = 400;

[[noreturn]] void BadKey(std::string_view text, const char* why) {
  throw Error(ErrorCode::kBadKey,
              "bad atom key '" + std::string(text) + "': " + why);
}

boost::multiprecision::cpp_int Pow10(int n) {
  boost::multiprecision::cpp_int p = 1;
  for (int i = 0; i < n; ++i) p *= 10;
  return p;
}

}  // namespace

AtomKey::AtomKey(Int mantissa, int scale)
    : mantissa_(std::move(mantissa)), scale_(scale) {
  Canonicalize();
}

AtomKey AtomKey::Parse(std::string_view text) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  std::string digits;
  int scale = 0;
  bool seen_digit = false;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
    digits.push_back(text[pos++]);
    seen_digit = true;
  }
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    while (pos < text.size() &&
           std::isdigit(static_cast<unsigned char>(text[pos]))) {
      digits.push_back(text[pos++]);
      ++scale;
      seen_digit = true;
    }
  }
  if (!seen_digit) BadKey(text, "no digits");
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    ++pos;
    int exponent = 0;
    const char* first = text.data() + pos;
    const char* last = text.data() + text.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, exponent);
    if (ec != std::errc() || ptr == first) BadKey(text, "bad exponent");
    if (exponent > kMaxExponent || exponent < -kMaxExponent) {
      BadKey(text, "exponent out of range");
    }
    pos = static_cast<std::size_t>(ptr - text.data());
    scale -= exponent;
  }
  if (pos != text.size()) BadKey(text, "trailing characters");
  if (digits.size() > static_cast<std::size_t>(kMaxExponent)) {
    BadKey(text, "too many digits");
  }

  // cpp_int reads a leading zero as an octal prefix.
  const std::size_t nonzero = digits.find_first_not_of('0');
  Int mantissa(nonzero == std::string::npos ? std::string("0") : digits.substr(nonzero));
  if (scale < 0) {
    mantissa *= Pow10(-scale);
    scale = 0;
  }
  if (negative) mantissa = -mantissa;
  return AtomKey(std::move(mantissa), scale);
}

AtomKey AtomKey::FromInteger(long long value) { return AtomKey(Int(value), 0); }

AtomKey AtomKey::Midpoint(const AtomKey& a, const AtomKey& b) {
  const int scale = std::max(a.scale_, b.scale_);
  Int sum = a.mantissa_ * Pow10(scale - a.scale_) +
            b.mantissa_ * Pow10(scale - b.scale_);
  // x/2 == 5x/10
  return AtomKey(sum * 5, scale + 1);
}

void AtomKey::Canonicalize() {
  while (scale_ > 0 && mantissa_ != 0 && mantissa_ % 10 == 0) {
    mantissa_ /= 10;
    --scale_;
  }
  if (mantissa_ == 0) scale_ = 0;

  std::string digits = Int(boost::multiprecision::abs(mantissa_)).str();
  if (scale_ > 0) {
    if (digits.size() <= static_cast<std::size_t>(scale_)) {
      digits.insert(0, static_cast<std::size_t>(scale_) - digits.size() + 1, '0');
    }
    digits.insert(digits.size() - static_cast<std::size_t>(scale_), ".");
  }
  text_ = mantissa_ < 0 ? "-" + digits : digits;
}

double AtomKey::value() const { return std::strtod(text_.c_str(), nullptr); }

std::strong_ordering operator<=>(const AtomKey& a, const AtomKey& b) {
  const int scale = std::max(a.scale_, b.scale_);
  const AtomKey::Int lhs = a.mantissa_ * Pow10(scale - a.scale_);
  const AtomKey::Int rhs = b.mantissa_ * Pow10(scale - b.scale_);
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace conflate

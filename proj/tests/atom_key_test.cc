#include <doctest.h>

#include <random>

#include "conflate/atom_key.h"
#include "conflate/error.h"

namespace conflate {
namespace {

TEST_CASE("keys are rendered canonically") {
  CHECK(AtomKey::Parse("1.50").str() == "1.5");
  CHECK(AtomKey::Parse("+1.5").str() == "1.5");
  CHECK(AtomKey::Parse("15e-1").str() == "1.5");
  CHECK(AtomKey::Parse("1.5E1").str() == "15");
  CHECK(AtomKey::Parse("-0").str() == "0");
  CHECK(AtomKey::Parse("-0.000").str() == "0");
  CHECK(AtomKey::Parse("007").str() == "7");
  CHECK(AtomKey::Parse(".25").str() == "0.25");
  CHECK(AtomKey::Parse("-.25").str() == "-0.25");
  CHECK(AtomKey::Parse("3.").str() == "3");
  CHECK(AtomKey::Parse("1e-3").str() == "0.001");
}

TEST_CASE("equal values give equal keys") {
  CHECK(AtomKey::Parse("0.10") == AtomKey::Parse("1e-1"));
  CHECK(AtomKey::Parse("2") == AtomKey::FromInteger(2));
  CHECK_FALSE(AtomKey::Parse("0.1") == AtomKey::Parse("0.10000000000000001"));
}

TEST_CASE("ordering is numeric, not lexicographic") {
  CHECK(AtomKey::Parse("2") < AtomKey::Parse("10"));
  CHECK(AtomKey::Parse("-10") < AtomKey::Parse("-2"));
  CHECK(AtomKey::Parse("0.09") < AtomKey::Parse("0.1"));
  CHECK(AtomKey::Parse("-0.5") < AtomKey::Parse("0"));
}

TEST_CASE("malformed keys are rejected") {
  for (const char* bad : {"", "-", ".", "abc", "1.2.3", "1e", "1e+", "0x10", "1 ", "nan",
                          "inf", "1e999"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(AtomKey::Parse(bad), Error);
  }
}

TEST_CASE("midpoints are exact") {
  CHECK(AtomKey::Midpoint(AtomKey::Parse("0"), AtomKey::Parse("1")).str() == "0.5");
  CHECK(AtomKey::Midpoint(AtomKey::Parse("0.1"), AtomKey::Parse("0.2")).str() == "0.15");
  CHECK(AtomKey::Midpoint(AtomKey::Parse("-3"), AtomKey::Parse("3")).str() == "0");
  CHECK(AtomKey::Midpoint(AtomKey::Parse("1"), AtomKey::Parse("2.5")).str() == "1.75");
  CHECK(AtomKey::Midpoint(AtomKey::Parse("7"), AtomKey::Parse("7")).str() == "7");
}

TEST_CASE("midpoint lies between its arguments and commutes") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> digits(-5000, 5000);
  for (int i = 0; i < 500; ++i) {
    const AtomKey a = AtomKey::Parse(std::to_string(digits(rng)) + "e-2");
    const AtomKey b = AtomKey::Parse(std::to_string(digits(rng)) + "e-3");
    const AtomKey m = AtomKey::Midpoint(a, b);
    CHECK(m == AtomKey::Midpoint(b, a));
    CHECK(std::min(a, b) <= m);
    CHECK(m <= std::max(a, b));
    CHECK(m.value() == doctest::Approx((a.value() + b.value()) / 2).epsilon(1e-12));
    CHECK(AtomKey::Parse(m.str()) == m);
  }
}

}  // namespace
}  // namespace conflate

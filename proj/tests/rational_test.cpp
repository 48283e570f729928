//
// Copyright 2026 The mmsfair Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//


#include "mmsfair/rational.hpp"

#include <cstdint>
#include <limits>
#include <sstream>

#include "gtest/gtest.h"

namespace mmsfair {
namespace {

TEST(RationalTest, NormalizesSignAndGcd) {
  Rational r(6, -8);
  EXPECT_EQ(r.num(), -3);
  EXPECT_EQ(r.den(), 4);
  EXPECT_EQ(Rational(0, -5), Rational(0));
  EXPECT_EQ(Rational(0, -5).den(), 1);
}

TEST(RationalTest, ZeroDenominatorThrows) {
  EXPECT_THROW(Rational(1, 0), std::invalid_argument);
  EXPECT_THROW(Rational::parse("3/0"), std::invalid_argument);
}

TEST(RationalTest, ParseAndPrint) {
  EXPECT_EQ(Rational::parse("1/2"), Rational(1, 2));
  EXPECT_EQ(Rational::parse("4/8").str(), "1/2");
  EXPECT_EQ(Rational::parse("-7").str(), "-7");
  EXPECT_EQ(Rational::parse("0").str(), "0");
  EXPECT_EQ(Rational(5, 1).str(), "5");
  std::ostringstream out;
  out << Rational(-2, 6);
  EXPECT_EQ(out.str(), "-1/3");
}

TEST(RationalTest, ParseRejectsJunk) {
  for (const char* bad : {"", "1.5", " 1", "1/", "/2", "a", "1/2/3", "1/-2", "1 /2"}) {
    EXPECT_THROW(Rational::parse(bad), std::invalid_argument) << bad;
  }
}

TEST(RationalTest, Arithmetic) {
  Rational a(1, 2);
  Rational b(1, 3);
  EXPECT_EQ(a + b, Rational(5, 6));
  EXPECT_EQ(a - b, Rational(1, 6));
  EXPECT_EQ(a * b, Rational(1, 6));
  EXPECT_EQ(a / b, Rational(3, 2));
  EXPECT_EQ(-a, Rational(-1, 2));
  EXPECT_EQ(abs(Rational(-3, 7)), Rational(3, 7));
  EXPECT_THROW(a / Rational(0), std::domain_error);
}

TEST(RationalTest, Ordering) {
  EXPECT_LT(Rational(1, 3), Rational(1, 2));
  EXPECT_GT(Rational(-1, 3), Rational(-1, 2));
  EXPECT_EQ(Rational(2, 4) <=> Rational(1, 2), std::strong_ordering::equal);
  const std::int64_t big = std::numeric_limits<std::int64_t>::max();
  EXPECT_LT(Rational(big - 1, big), Rational(big, big - 1));
}

TEST(RationalTest, FloorAndCeil) {
  EXPECT_EQ(Rational(7, 2).floor(), 3);
  EXPECT_EQ(Rational(7, 2).ceil(), 4);
  EXPECT_EQ(Rational(-7, 2).floor(), -4);
  EXPECT_EQ(Rational(-7, 2).ceil(), -3);
  EXPECT_EQ(Rational(4).floor(), 4);
  EXPECT_EQ(Rational(4).ceil(), 4);
}

TEST(RationalTest, ToDouble) {
  EXPECT_DOUBLE_EQ(Rational(1, 4).to_double(), 0.25);
  EXPECT_DOUBLE_EQ(Rational(-3, 2).to_double(), -1.5);
}

TEST(RationalTest, OverflowIsReported) {
  const std::int64_t big = std::numeric_limits<std::int64_t>::max();
  EXPECT_THROW(Rational(big) + Rational(1), RationalOverflow);
  EXPECT_THROW(Rational(big) * Rational(2), RationalOverflow);
  // Large intermediates that cancel are fine.
  EXPECT_EQ(Rational(big, 3) * Rational(3, big), Rational(1));
}

}  // namespace
}  // namespace mmsfair

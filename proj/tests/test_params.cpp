#include <gtest/gtest.h>

#include <sstream>

#include "abcd/params.hpp"

using namespace abcd;

namespace {

AbcdParams standard() {
  AbcdParams p;
  p.n = 1000;
  p.gamma = 2.5;
  p.delta = 5;
  p.zeta = 0.5;
  p.beta = 1.5;
  p.s = 50;
  p.tau = 0.75;
  p.xi = 0.2;
  return p;
}

std::string field_of(const AbcdParams& p) {
  try {
    validate_params(p);
  } catch (const RangeError& e) {
    return e.field();
  }
  return "";
}

}  // namespace

TEST(Params, StandardSetIsValid) {
  const auto p = standard();
  EXPECT_EQ(validate_params(p), p);
  EXPECT_EQ(p.max_degree(), 31);
  EXPECT_EQ(p.max_community_size(), 177);
}

TEST(Params, OpenBoundsAreRejected) {
  auto p = standard();
  p.gamma = 2.0;
  EXPECT_EQ(field_of(p), "gamma");
  p = standard();
  p.gamma = 3.0;
  EXPECT_EQ(field_of(p), "gamma");
  p = standard();
  p.beta = 2.0;
  EXPECT_EQ(field_of(p), "beta");
  p = standard();
  p.xi = 0.0;
  EXPECT_EQ(field_of(p), "xi");
  p = standard();
  p.xi = 1.0;
  EXPECT_EQ(field_of(p), "xi");
  p = standard();
  p.delta = 0;
  EXPECT_EQ(field_of(p), "delta");
}

TEST(Params, MinimumCommunityMustExceedMinimumDegree) {
  auto p = standard();
  p.s = p.delta;
  EXPECT_EQ(field_of(p), "s");
  p.s = p.delta + 1;
  EXPECT_EQ(field_of(p), "");
}

TEST(Params, ZetaCappedByReducedRange) {
  auto p = standard();
  p.zeta = 1.0 / (p.gamma - 1.0);
  EXPECT_EQ(field_of(p), "");
  p.zeta = 1.0 / (p.gamma - 1.0) + 1e-6;
  EXPECT_EQ(field_of(p), "zeta");
}

TEST(Params, TauMustExceedZeta) {
  auto p = standard();
  p.tau = p.zeta;
  EXPECT_EQ(field_of(p), "tau");
}

TEST(Params, DerivedCutoffsChecked) {
  auto p = standard();
  p.n = 20;  // floor(20^0.5) = 4 < delta
  EXPECT_FALSE(field_of(p).empty());
}

TEST(Params, PerfectPowerFloors) {
  auto p = standard();
  p.n = 1000000;
  EXPECT_EQ(p.max_degree(), 1000);
  EXPECT_EQ(p.max_community_size(), 31622);
}

TEST(Config, RoundTrip) {
  for (auto variant : {Variant::continuous, Variant::discrete}) {
    auto p = standard();
    p.variant = variant;
    p.xi = 0.37;
    std::istringstream in(render_config(p));
    EXPECT_EQ(parse_config(in), p);
  }
}

TEST(Config, CommentsAndBlankLines) {
  std::istringstream in(
      "# standard set\n\nn=1000\ngamma=2.5\ndelta=5\nzeta=0.5\nbeta=1.5\ns=50\ntau=0.75\nxi=0.2\n");
  EXPECT_EQ(parse_config(in), standard());
}

TEST(Config, MissingKey) {
  std::istringstream in("n=1000\ngamma=2.5\ndelta=5\nzeta=0.5\nbeta=1.5\ns=50\ntau=0.75\n");
  EXPECT_THROW(parse_config(in), ParseError);
}

TEST(Config, MalformedNumberReportsLine) {
  std::istringstream in("n=1000\ngamma=abc\ndelta=5\nzeta=0.5\nbeta=1.5\ns=50\ntau=0.75\nxi=0.2\n");
  try {
    parse_config(in);
    FAIL() << "no error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(Config, UnknownKey) {
  std::istringstream in(render_config(standard()) + "alpha=1\n");
  EXPECT_THROW(parse_config(in), ParseError);
}

TEST(Config, DuplicateKey) {
  std::istringstream in(render_config(standard()) + "n=2000\n");
  EXPECT_THROW(parse_config(in), ParseError);
}

TEST(Config, OutOfRangeValue) {
  std::istringstream in("n=1000\ngamma=3.5\ndelta=5\nzeta=0.5\nbeta=1.5\ns=50\ntau=0.75\nxi=0.2\n");
  EXPECT_THROW(parse_config(in), RangeError);
}

TEST(Config, MissingFile) { EXPECT_THROW(load_config("/nonexistent/abcd.conf"), Error); }

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "unimap/errors.hpp"
#include "unimap/map_spec.hpp"
#include "unimap/synthesis.hpp"

using namespace unimap;

TEST(MapSpec, Builtins) {
  auto s = parse_map_spec("builtin scaled-sin r=0.5 domain=[-1,1]");
  EXPECT_EQ(s.family(), Family::scaled_sin);
  EXPECT_EQ(s.r(), Rational(1, 2));
  EXPECT_EQ(s.domain(), (Interval{-1, 1}));

  auto c = parse_map_spec("builtin cubic-fifth-sin domain=[-1,1]");
  EXPECT_EQ(c.family(), Family::cubic_fifth_sin);

  auto l = parse_map_spec("builtin linear a=-1/2 b=0 domain=[-1,1]");
  EXPECT_EQ(l.family(), Family::linear);
  EXPECT_EQ(l.a(), Rational(-1, 2));
  EXPECT_EQ(l.b(), Rational(0));
}

TEST(MapSpec, PiecewiseLinear) {
  auto m = parse_map_spec("pwl domain=[-1,1] points=(-1:1/2),(0:0),(1/2:0)");
  ASSERT_EQ(m.breakpoints().size(), 3u);
  EXPECT_EQ(m.breakpoints()[0], (Breakpoint{Rational(-1), Rational(1, 2)}));
  EXPECT_EQ(m(Rational(-1, 2)), Rational(1, 4));
}

TEST(MapSpec, FormatRoundTrip) {
  std::vector<std::string> texts = {"builtin scaled-sin r=0.5 domain=[-1,1]", "builtin cubic-fifth-sin domain=[-1,1]",
                                    "builtin linear a=0.5 b=0 domain=[-1,1]",
                                    "pwl domain=[-1,1] points=(-1:1/2),(0:0),(1/2:0)"};
  for (const auto& t : texts) EXPECT_EQ(format_map_spec(parse_map_spec(t)), t);

  std::mt19937_64 rng(1);
  for (int i = 0; i < 100; ++i) {
    auto m = synthesize_map(parse_code(oracle::random_periodic(rng)), 20).map;
    auto back = parse_map_spec(format_map_spec(m));
    EXPECT_EQ(back.breakpoints(), m.breakpoints());
    EXPECT_EQ(format_map_spec(back), format_map_spec(m));
  }
}

TEST(MapSpec, ErrorOffsets) {
  auto offset_of = [](const char* text) -> std::size_t {
    try {
      parse_map_spec(text);
    } catch (const ParseError& e) {
      return e.offset();
    }
    return std::size_t(-1);
  };
  EXPECT_EQ(offset_of("blah"), 0u);
  EXPECT_EQ(offset_of("builtin tent domain=[-1,1]"), 8u);
  EXPECT_EQ(offset_of("builtin scaled-sin r=x domain=[-1,1]"), 21u);
  EXPECT_EQ(offset_of("pwl domain=[-1,1] points=(0:0"), 29u);
  EXPECT_EQ(offset_of("builtin cubic-fifth-sin domain=[-1,1] extra"), 38u);
}

TEST(MapSpec, SemanticErrors) {
  EXPECT_THROW(parse_map_spec("builtin scaled-sin r=2 domain=[-1,1]"), DomainError);
  EXPECT_THROW(parse_map_spec("pwl domain=[-1,1] points=(-1:2),(1:0)"), DomainError);
  auto custom = IntervalMap::custom("sq", [](double x) { return x * x; }, [](double x) { return 2 * x; }, 0, 1);
  EXPECT_THROW(format_map_spec(custom), PreconditionError);
}

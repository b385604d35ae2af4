#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "unimap/errors.hpp"
#include "unimap/synthesis.hpp"

using namespace unimap;

namespace {

Rational q(const char* s) { return parse_rational(s); }

std::string round_trip(const SynthesisResult& s, std::size_t steps, bool* terminated = nullptr) {
  auto orbit = iterate(s.map, s.start, steps);
  auto enc = encode_orbit(std::span<const Rational>(orbit));
  if (terminated) *terminated = enc.terminated;
  return oracle::word(enc.code.take(steps));
}

}  // namespace

TEST(Synthesize, RL) {
  auto s = synthesize_map(parse_code("RL"));
  EXPECT_EQ(s.map.breakpoints(),
            (std::vector<Breakpoint>{{q("-1"), q("1/2")}, {q("0"), q("0")}, {q("1/2"), q("0")}}));
  EXPECT_EQ(s.start, q("-1"));
  EXPECT_EQ(iterate(s.map, s.start, 3), (std::vector<Rational>{q("-1"), q("1/2"), q("0"), q("0")}));
}

TEST(Synthesize, Empty) {
  auto s = synthesize_map(parse_code(""));
  EXPECT_EQ(s.start, q("0"));
  EXPECT_EQ(s.map.breakpoints(), (std::vector<Breakpoint>{{q("0"), q("0")}}));
  EXPECT_EQ(s.map(q("1/3")), q("0"));
  EXPECT_EQ(s.map(q("-1")), q("0"));
}

TEST(Synthesize, AlternatingHarmonic) {
  auto s = synthesize_map(parse_code("(RL)*"), 6);
  EXPECT_EQ(s.start, q("-1"));
  auto orbit = iterate(s.map, s.start, 5);
  EXPECT_EQ(orbit, (std::vector<Rational>{q("-1"), q("1/2"), q("-1/3"), q("1/4"), q("-1/5"), q("1/6")}));
  EXPECT_EQ(round_trip(s, 5), "RLRLR");
}

TEST(Synthesize, TruncationTooSmall) { EXPECT_THROW(synthesize_map(parse_code("(RL)*"), 1), PreconditionError); }

TEST(VerifyF1, Examples) {
  EXPECT_TRUE(verify_f1_pwl(synthesize_map(parse_code("RL")).map).ok);
  auto neg = IntervalMap::piecewise_linear(q("-1"), q("1"), {{q("-1"), q("1")}, {q("1"), q("-1")}});
  auto r = verify_f1_pwl(neg);
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(r.witness, q("-1"));
  EXPECT_TRUE(verify_f1_pwl(synthesize_map(parse_code("(RL)*"), 50).map).ok);
}

TEST(VerifyF1, Preconditions) {
  EXPECT_THROW(verify_f1_pwl(IntervalMap::scaled_sin(q("1/2"))), PreconditionError);
  auto shifted = IntervalMap::piecewise_linear(q("-1"), q("1"), {{q("-1"), q("0")}, {q("1"), q("1/2")}});
  EXPECT_THROW(verify_f1_pwl(shifted), PreconditionError);
}

// Every finite word up to length 10 round-trips exactly with an F1 map
// whose only fixed point is 0.
TEST(Properties, FiniteWordsUpToTen) {
  for (const auto& w : oracle::words_up_to(10)) {
    auto s = synthesize_map(parse_code(w));
    ASSERT_TRUE(verify_f1_pwl(s.map).ok) << w;
    bool terminated = false;
    ASSERT_EQ(round_trip(s, w.size() + 1, &terminated), w);
    ASSERT_TRUE(terminated) << w;
    ASSERT_EQ(fixed_points_exact(s.map), std::vector<Rational>{q("0")}) << w;
  }
}

TEST(Properties, FiniteWordsHaveNoTwoCycles) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 100; ++i) {
    auto w = oracle::random_word(rng, 1 + rng() % 10);
    EXPECT_TRUE(two_cycle_scan(synthesize_map(parse_code(w)).map).empty()) << w;
  }
}

TEST(Properties, RandomPeriodicCodes) {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 200; ++i) {
    auto text = oracle::random_periodic(rng);
    auto s = synthesize_map(parse_code(text), 40);
    EXPECT_TRUE(verify_f1_pwl(s.map).ok) << text;
    EXPECT_EQ(round_trip(s, 39), oracle::expand(text, 39)) << text;
  }
}

// A wall-valid sample, quantized to the representative of its code, yields
// an F1 map realizing the same pattern.
TEST(Properties, WallValidSamplesAreRealized) {
  std::mt19937_64 rng(29);
  for (int i = 0; i < 200; ++i) {
    auto s = oracle::wall_positive(rng);
    OrbitSample o{s.terms, s.p, 1e-12};
    auto code = encode_orbit(o).code;
    auto syn = synthesize_map(code);
    ASSERT_TRUE(verify_f1_pwl(syn.map).ok);
    auto orbit = iterate(syn.map, syn.start, s.terms.size() - 1);
    for (std::size_t m = 0; m < s.terms.size(); ++m)
      for (std::size_t n = m + 1; n < s.terms.size(); ++n)
        EXPECT_EQ(s.terms[m] < s.terms[n], orbit[m] < orbit[n]) << m << " " << n;
  }
}

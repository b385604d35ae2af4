#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "unimap/errors.hpp"
#include "unimap/synthesis.hpp"
#include "unimap/universality.hpp"

using namespace unimap;
using std::numbers::pi;

namespace {

Rational q(const char* s) { return parse_rational(s); }
IntervalMap half_sin() { return IntervalMap::scaled_sin(q("1/2")); }
IntervalMap half_linear() { return IntervalMap::linear(q("1/2"), q("0"), q("-1"), q("1")); }
IntervalMap neg_half_linear() { return IntervalMap::linear(q("-1/2"), q("0"), q("-1"), q("1")); }
IntervalMap reflection() {
  return IntervalMap::piecewise_linear(q("-1"), q("1"), {{q("-1"), q("1")}, {q("1"), q("-1")}});
}
IntervalMap square() {
  return IntervalMap::custom("x^2", [](double x) { return x * x; }, [](double x) { return 2 * x; }, 0, 1);
}

void expect_certificate_sound(const IntervalMap& map, const UniversalityCertificate& cert) {
  ASSERT_EQ(cert.witnesses.size(), cert.scales.size());
  ASSERT_EQ(cert.a_seq.size(), 4 * cert.scales.size());
  for (std::size_t j = 0; j < cert.scales.size(); ++j) {
    if (j > 0) EXPECT_LT(cert.scales[j], cert.scales[j - 1]);
    for (std::size_t i = 0; i < 4; ++i) {
      const auto& w = cert.witnesses[j][i];
      EXPECT_NE(w.x, cert.p);
      EXPECT_EQ(w.side == Side::right, w.x > cert.p);
      EXPECT_LE(std::abs(w.x - cert.p), w.scale);
      double fx = map(w.x);
      EXPECT_EQ(fx, w.fx);
      EXPECT_EQ(w.fx_side == ValueSide::above, fx > cert.p);
      EXPECT_EQ(w.fx_side == ValueSide::below, fx < cert.p);
      EXPECT_EQ(cert.a_seq[4 * j + i], w.x);
    }
  }
  auto chk = check_a_seq(map, cert.p, cert.a_seq, std::span<const double>(cert.scales));
  EXPECT_TRUE(chk.ok) << (chk.first_violation ? *chk.first_violation : 0);
}

bool orbit_matches(const IntervalMap& map, const BigFloat& x, const std::string& want) {
  auto orbit = iterate(map, x, want.size());
  std::string got;
  for (std::size_t i = 0; i + 1 < orbit.size(); ++i) got += orbit[i + 1] > orbit[i] ? 'R' : orbit[i + 1] < orbit[i] ? 'L' : '-';
  return got == want;
}

}  // namespace

TEST(ContractionRegion, Examples) {
  EXPECT_TRUE(contraction_region_contains(half_linear(), 0, {0.1, 0.9}, 1e-9));
  EXPECT_TRUE(contraction_region_contains(half_sin(), 0, {1 / (2 * pi), 1 / pi}, 1e-9));
  EXPECT_FALSE(contraction_region_contains(reflection(), 0, {0.1, 0.9}, 1e-6));
  EXPECT_FALSE(contraction_region_contains(reflection(), 0, {-0.5, -0.25}, 1e-6));
  EXPECT_THROW(contraction_region_contains(half_linear(), 0, {-0.1, 0.1}, 1e-9), PreconditionError);
}

TEST(ContractionRegion, ProvedBySubdivisionForCubic) {
  EXPECT_TRUE(contraction_region_contains(IntervalMap::cubic_fifth_sin(), 0, {0.01, 1}, 1e-9));
  EXPECT_TRUE(contraction_region_contains(IntervalMap::cubic_fifth_sin(), 0, {-1, -0.01}, 1e-9));
}

TEST(ZerosNearFixed, ScaledSin) {
  auto z = zeros_near_fixed(half_sin(), 0, Side::right, 0.4, 1e-13);
  ASSERT_GE(z.size(), 2u);
  EXPECT_NEAR(z[0].b, 1 / pi, 1e-13);
  EXPECT_NEAR(z[1].b, 1 / (2 * pi), 1e-13);
  // Oracle: zeros are exactly 1/(k pi), ordered farthest first.
  for (std::size_t k = 0; k < z.size(); ++k) {
    EXPECT_NEAR(z[k].b, 1 / ((k + 1) * pi), 1e-13);
    EXPECT_TRUE(z[k].isolated);
    // sin(1/x) changes sign at each zero: below on the near side of 1/pi,
    // above beyond it, alternating from there.
    bool odd = k % 2 == 0;
    EXPECT_EQ(z[k].toward, odd ? ValueSide::below : ValueSide::above);
    EXPECT_EQ(z[k].away, odd ? ValueSide::above : ValueSide::below);
  }
  auto left = zeros_near_fixed(half_sin(), 0, Side::left, 0.4, 1e-13);
  ASSERT_EQ(left.size(), z.size());
  for (std::size_t k = 0; k < z.size(); ++k) EXPECT_NEAR(left[k].b, -z[k].b, 1e-13);
}

TEST(ZerosNearFixed, LinearHasNone) {
  EXPECT_TRUE(zeros_near_fixed(half_linear(), 0, Side::right, 0.5, 1e-13).empty());
}

TEST(ZerosNearFixed, SynthesizedRL) {
  auto z = zeros_near_fixed(synthesize_map(parse_code("RL")).map, 0, Side::right, 0.6, 1e-13);
  ASSERT_EQ(z.size(), 1u);
  EXPECT_EQ(z[0].b, 0.5);
  EXPECT_FALSE(z[0].isolated);
}

TEST(Certify, ScaledSin) {
  auto r = certify_universal(half_sin(), 0, 0.1, 14, 1e-10);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r.certificate->scales.size(), 14u);
  EXPECT_NEAR(r.certificate->scales.back(), 0.1 / 8192, 1e-18);
  expect_certificate_sound(half_sin(), *r.certificate);
}

TEST(Certify, ClosedFormWitnessesAreValid) {
  // a = 1/(2 n pi +- pi/2): sin(1/a) = +-1, and f is even.
  for (int n = 1; n < 200; ++n) {
    double up = 1 / (2 * n * pi + pi / 2), down = 1 / (2 * n * pi - pi / 2);
    EXPECT_GT(half_sin()(up), 0);
    EXPECT_LT(half_sin()(down), 0);
    EXPECT_GT(half_sin()(-up), 0);
    EXPECT_LT(half_sin()(-down), 0);
  }
}

TEST(Certify, Cubic) {
  auto m = IntervalMap::cubic_fifth_sin();
  auto r = certify_universal(m, 0, 0.1, 14, 1e-10);
  ASSERT_TRUE(r.ok());
  expect_certificate_sound(m, *r.certificate);
}

TEST(Certify, Failures) {
  auto a = certify_universal(half_linear(), 0);
  ASSERT_FALSE(a.ok());
  EXPECT_EQ(a.failure->scale_index, 0u);
  EXPECT_EQ(a.failure->scale, 0.1);
  EXPECT_EQ(a.failure->side, Side::right);
  EXPECT_EQ(a.failure->missing, ValueSide::below);

  auto b = certify_universal(neg_half_linear(), 0);
  ASSERT_FALSE(b.ok());
  EXPECT_EQ(b.failure->side, Side::right);
  EXPECT_EQ(b.failure->missing, ValueSide::above);

  auto c = certify_universal(square(), 0);
  ASSERT_FALSE(c.ok());
  EXPECT_EQ(c.failure->side, Side::right);
  EXPECT_EQ(c.failure->missing, ValueSide::below);

  EXPECT_THROW(certify_universal(half_sin(), 0.5), PreconditionError);
}

TEST(ExactSubinterval, Reflection) {
  auto k = exact_subinterval(reflection(), {-1, 1}, {0, 1}, 1e-13);
  EXPECT_EQ(k, (Interval{-1, 0}));
}

TEST(ExactSubinterval, Tent) {
  auto tent = IntervalMap::piecewise_linear(q("0"), q("1"), {{q("0"), q("0")}, {q("1/2"), q("1")}, {q("1"), q("0")}});
  auto k = exact_subinterval(tent, {0, 0.5}, {0, 1}, 1e-13);
  EXPECT_NEAR(k.lo, 0, 1e-13);
  EXPECT_NEAR(k.hi, 0.5, 1e-13);
}

TEST(ExactSubinterval, ScaledSinContract) {
  const double tol = 1e-13;
  Interval I{1 / (2 * pi), 1 / pi}, J{-0.05, 0};
  auto k = exact_subinterval(half_sin(), I, J, tol);
  EXPECT_TRUE(I.contains(k));
  double a = half_sin()(k.lo), b = half_sin()(k.hi);
  EXPECT_NEAR(std::min(a, b), -0.05, 1e-12);
  EXPECT_NEAR(std::max(a, b), 0.0, 1e-12);
  for (int i = 0; i <= 100; ++i) {
    double v = half_sin()(k.lo + k.width() * i / 100);
    EXPECT_GE(v, J.lo - 1e-12);
    EXPECT_LE(v, J.hi + 1e-12);
  }
  EXPECT_THROW(exact_subinterval(half_sin(), I, {0.1, 0.2}, tol), PreconditionError);
}

TEST(FindPoint, SingleLabels) {
  auto l = find_point_with_pattern(half_sin(), 0, parse_code("L"), 5);
  EXPECT_NEAR(l.x, 1 / pi, 1e-15);
  auto r = find_point_with_pattern(half_sin(), 0, parse_code("R"), 5);
  EXPECT_NEAR(r.x, -1 / pi, 1e-15);
  auto e = find_point_with_pattern(half_sin(), 0, parse_code(""), 5);
  EXPECT_EQ(e.x, 0.0);
}

TEST(FindPoint, PeriodicDepthTwelve) {
  auto code = parse_code("(RRLL)*");
  auto pt = find_point_with_pattern(half_sin(), 0, code, 12);
  EXPECT_LT(pt.x, 0);
  EXPECT_TRUE(verify_pattern_point(half_sin(), pt.x_hp, code, 12));
  EXPECT_TRUE(orbit_matches(half_sin(), pt.x_hp, "RRLLRRLLRRLL"));
}

TEST(FindPoint, TraceSoundness) {
  std::mt19937_64 rng(31);
  for (const char* text : {"(RRLL)*", "(RL)*", "(LLLR)*", "LRRLLR"}) {
    auto code = parse_code(text);
    auto pt = find_point_with_pattern(half_sin(), 0, code, 10);
    const auto& steps = pt.trace.steps;
    ASSERT_FALSE(steps.empty());
    for (std::size_t k = 1; k < steps.size(); ++k) EXPECT_TRUE(steps[k - 1].I.contains(steps[k].I)) << text << k;
    for (const auto& s : steps) {
      EXPECT_GT(s.delta, 0);
      EXPECT_TRUE(s.J.lo >= 0 || s.J.hi <= 0) << text;
    }
    // Points of the final interval carry the same prefix.
    std::string want = oracle::word(code.take(code.length() ? *code.length() : 10));
    long prec = pt.trace.precision;
    BigFloat lo(pt.final_lo.to_double(), prec), width(0.0, prec);
    mpfr_set(lo.get(), pt.final_lo.get(), MPFR_RNDN);
    mpfr_sub(width.get(), pt.final_hi.get(), pt.final_lo.get(), MPFR_RNDN);
    for (int i = 0; i <= 100; ++i) {
      BigFloat x(0.0, prec);
      mpfr_mul_d(x.get(), width.get(), i / 100.0, MPFR_RNDN);
      mpfr_add(x.get(), x.get(), lo.get(), MPFR_RNDN);
      EXPECT_TRUE(orbit_matches(half_sin(), x, want)) << text << " sample " << i;
    }
  }
}

TEST(FindPoint, AllWordsOfLengthSix) {
  for (const auto& w : oracle::words_of_length(6)) {
    auto code = parse_code(w);
    auto pt = find_point_with_pattern(half_sin(), 0, code, 6);
    EXPECT_TRUE(verify_pattern_point(half_sin(), pt.x_hp, code, 6)) << w;
  }
}

TEST(FindPoint, OtherRadii) {
  for (const char* r : {"3/10", "9/10", "1"}) {
    auto m = IntervalMap::scaled_sin(q(r));
    auto pt = find_point_with_pattern(m, 0, parse_code("(RRLL)*"), 12);
    EXPECT_TRUE(verify_pattern_point(m, pt.x_hp, parse_code("(RRLL)*"), 12)) << r;
  }
}

TEST(FindPoint, CubicShallow) {
  auto m = IntervalMap::cubic_fifth_sin();
  auto pt = find_point_with_pattern(m, 0, parse_code("(RRLL)*"), 6);
  EXPECT_TRUE(verify_pattern_point(m, pt.x_hp, parse_code("(RRLL)*"), 6));
}

TEST(FindPoint, DoublePrecisionPath) {
  FindPointOptions opts;
  opts.double_precision = true;
  auto pt = find_point_with_pattern(half_sin(), 0, parse_code("(RL)*"), 5, 1e-13, opts);
  EXPECT_EQ(pt.trace.precision, 53);
  auto orbit = iterate(half_sin(), pt.x, 5);
  EXPECT_EQ(oracle::move_labels(orbit.terms), "RLRLR");
}

TEST(FindPoint, NoTransversalZero) {
  EXPECT_THROW(find_point_with_pattern(half_linear(), 0, parse_code("R"), 5), ConstructionError);
  EXPECT_THROW(find_point_with_pattern(neg_half_linear(), 0, parse_code("(RRLL)*"), 12), ConstructionError);
}

TEST(FindPoint, PrecisionCapIsReported) {
  FindPointOptions opts;
  opts.max_precision = 256;
  EXPECT_THROW(find_point_with_pattern(IntervalMap::cubic_fifth_sin(), 0, parse_code("(RRLL)*"), 8, 1e-13, opts),
               PrecisionError);
}

TEST(ASeq, FromConstructedPoint) {
  auto pt = find_point_with_pattern(half_sin(), 0, parse_code("(RRLL)*"), 12);
  // The double orbit stays accurate for the first few labels only; use
  // high-precision terms for the full sequence.
  auto orbit_hp = iterate(half_sin(), pt.x_hp, 12);
  std::vector<double> orbit;
  for (auto& t : orbit_hp) orbit.push_back(t.to_double());
  auto a = build_a_seq_from_orbit(std::span<const double>(orbit), 0, 8);
  auto images = a_seq_images_from_orbit(orbit, 8);
  EXPECT_TRUE(check_a_seq(0, a, images).ok);
}

TEST(ASeq, ConstantOrbitIsRejected) {
  EXPECT_THROW(build_a_seq_from_orbit(half_sin(), 0, 0.0, 8), PreconditionError);
}

TEST(ASeq, FromCanonicalRepresentative) {
  auto rep = canonical_representative(parse_code("(RRLL)*"), 13);
  std::vector<double> orbit;
  for (auto& r : rep) orbit.push_back(to_double(r));
  auto a = build_a_seq_from_orbit(std::span<const double>(orbit), 0, 11);
  ASSERT_EQ(a.size(), 11u);
  auto chk = check_a_seq(0, a, a_seq_images_from_orbit(orbit, 11));
  EXPECT_TRUE(chk.ok) << (chk.first_violation ? *chk.first_violation : 0);
}

TEST(ASeq, ViolationsAreLocated) {
  std::vector<double> a{0.5, -0.4, 0.3, -0.2}, images{0.1, 0.1, -0.1, 0.1};
  auto chk = check_a_seq(0, a, images);
  EXPECT_FALSE(chk.ok);
  EXPECT_EQ(chk.first_violation, 3u);
}

#pragma once

// Universality of maps in the first Sharkovsky class around a fixed point p:
// certificates that f swings both above and below p on both sides at every
// scale, and the nested-interval construction of a point whose orbit has a
// prescribed L/R code.

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "unimap/bigfloat.hpp"
#include "unimap/codes.hpp"
#include "unimap/maps.hpp"

namespace unimap {

enum class Side { left, right };
enum class ValueSide { above, below };

inline const char* to_string(Side s) { return s == Side::left ? "left" : "right"; }
inline const char* to_string(ValueSide s) { return s == ValueSide::above ? "above" : "below"; }

struct SideWitness {
  double scale = 0.0;
  Side side = Side::right;
  double x = 0.0;
  ValueSide fx_side = ValueSide::above;
  double fx = 0.0;
};

struct UniversalityCertificate {
  double p = 0.0;
  std::vector<double> scales;
  // Per scale: (right, above), (left, above), (right, below), (left, below).
  std::vector<std::array<SideWitness, 4>> witnesses;
  // a_seq[4j + i] = witnesses[j][i].x
  std::vector<double> a_seq;
};

struct CertificationFailure {
  std::size_t scale_index = 0;
  double scale = 0.0;
  Side side = Side::right;
  ValueSide missing = ValueSide::below;
};

struct CertificationResult {
  std::optional<UniversalityCertificate> certificate;
  std::optional<CertificationFailure> failure;

  bool ok() const { return certificate.has_value(); }
};

// True only when |f(x) - p| < |x - p| is proven on all of `region` by
// subdivision; false when proof fails down to segments of width tol.
bool contraction_region_contains(const IntervalMap& map, double p, Interval region, double tol);

struct ZeroInfo {
  double b = 0.0;
  Side side_of_p = Side::right;
  // Side of p taken by f just beyond b, moving toward p and away from it;
  // nullopt where f stays at p.
  std::optional<ValueSide> toward;
  std::optional<ValueSide> away;
  // f - p changes sign at b and has no other zero on the adjacent pieces.
  bool isolated = false;
};

// Preimages of p in the open band (p, p + delta) or (p - delta, p), farthest
// from p first. Oscillating maps are searched down to `min_distance` from p
// (default delta / 64).
std::vector<ZeroInfo> zeros_near_fixed(const IntervalMap& map, double p, Side side, double delta, double tol,
                                       std::optional<double> min_distance = std::nullopt);

// Scales eps0 * 2^-j, j < num_scales. A side passes when inf f < p - m and
// sup f > p + m with margin m = tol * max(p - inf, sup - p) plus rounding
// slack. Throws PreconditionError when p is not a fixed point.
CertificationResult certify_universal(const IntervalMap& map, double p, double eps0 = 0.1, std::size_t num_scales = 14,
                                      double tol = 1e-10);

// K inside one monotone piece of I with f(K) = J up to tol. Throws
// PreconditionError when no piece of I covers J.
Interval exact_subinterval(const IntervalMap& map, Interval I, Interval J, double tol);

struct TraceStep {
  Interval I;
  Interval J;
  ZeroInfo chosen_zero;
  Side side = Side::right;
  double delta = 0.0;
};

struct NestedIntervalTrace {
  std::vector<TraceStep> steps;
  Interval final_interval;
  double final_point = 0.0;
  // Working precision in bits (53 for the double-precision construction).
  long precision = 53;
};

struct PatternPoint {
  double x = 0.0;
  // Full-precision point and the ends of the final interval.
  BigFloat x_hp;
  BigFloat final_lo;
  BigFloat final_hi;
  NestedIntervalTrace trace;
};

// No admissible zero at some step.
class ConstructionError : public std::runtime_error {
 public:
  ConstructionError(const std::string& what, std::size_t step, NestedIntervalTrace trace)
      : std::runtime_error(what), step_(step), trace_(std::move(trace)) {}
  std::size_t step() const { return step_; }
  const NestedIntervalTrace& trace() const { return trace_; }

 private:
  std::size_t step_;
  NestedIntervalTrace trace_;
};

// Forward verification failed at the largest allowed precision.
class PrecisionError : public std::runtime_error {
 public:
  PrecisionError(const std::string& what, NestedIntervalTrace trace)
      : std::runtime_error(what), trace_(std::move(trace)) {}
  const NestedIntervalTrace& trace() const { return trace_; }

 private:
  NestedIntervalTrace trace_;
};

struct FindPointOptions {
  long start_precision = 128;
  long max_precision = 8192;
  // Use the double-precision construction even for the sin(1/x) families.
  bool double_precision = false;
};

// Point whose orbit encodes the first min(depth, |code|) labels of `code`,
// reaching p right after the last label of a finite code. The sin(1/x)
// families at p = 0 run in MPFR with adaptive precision; other maps run in
// double precision. The result is re-verified by forward iteration.
PatternPoint find_point_with_pattern(const IntervalMap& map, double p, const LRCode& code, std::size_t depth,
                                     double tol = 1e-13, const FindPointOptions& options = {});

// Forward check of a constructed point at its working precision: the orbit
// of x encodes the expected labels (and terminates for finite codes).
bool verify_pattern_point(const IntervalMap& map, const BigFloat& x, const LRCode& code, std::size_t depth);

// Orbit of x reindexed into the certificate sequence:
// a_{4k+3} = x_{4k+1}, a_{4k+1} = x_{4k+2}, a_{4k} = x_{4k+3}, a_{4k+2} = x_{4k+4}
// (x_1 = x). The orbit must follow (RRLL)* for n labels.
std::vector<double> build_a_seq_from_orbit(const IntervalMap& map, double p, double x, std::size_t n);
// Same from precomputed orbit terms x_1, x_2, ...; needs n + 1 terms.
std::vector<double> build_a_seq_from_orbit(std::span<const double> orbit, double p, std::size_t n);

// f(a_n) for the sequence above: the orbit term following each a_n.
std::vector<double> a_seq_images_from_orbit(std::span<const double> orbit, std::size_t n);

struct ASeqCheck {
  bool ok = true;
  std::optional<std::size_t> first_violation;
};

// a_n > p for even n, < p for odd n; f(a_n) > p for n mod 4 in {0, 1} and
// < p otherwise. With `scales`, |a_n - p| <= scales[n / 4]; without, the
// largest distance to p shrinks from each block of four to the next.
ASeqCheck check_a_seq(const IntervalMap& map, double p, std::span<const double> a_seq,
                      std::optional<std::span<const double>> scales = std::nullopt);
ASeqCheck check_a_seq(double p, std::span<const double> a_seq, std::span<const double> images,
                      std::optional<std::span<const double>> scales = std::nullopt);

}  // namespace unimap

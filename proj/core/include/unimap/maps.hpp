#pragma once

// Continuous self-maps of a closed interval.
//
// Two representations share one value type:
//  * piecewise-linear maps with rational breakpoints, evaluated exactly and
//    extended constantly outside the breakpoint hull;
//  * analytic catalog maps: r*x*sin(1/x), (x^3/5)*sin(1/x), a*x+b, and
//    programmatic `custom` maps given by value and derivative callables.
// Both sin(1/x) families oscillate infinitely often near 0; analysis routines
// resolve them only down to a caller-supplied scale and bound the rest with
// the envelope |f(x)| <= env(|x|).

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "unimap/bigfloat.hpp"
#include "unimap/codes.hpp"
#include "unimap/rational.hpp"

namespace unimap {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const { return hi - lo; }
  double mid() const { return lo + 0.5 * (hi - lo); }
  bool contains(double x) const { return lo <= x && x <= hi; }
  bool contains(const Interval& other) const { return lo <= other.lo && other.hi <= hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

struct Breakpoint {
  Rational x;
  Rational y;
  friend bool operator==(const Breakpoint&, const Breakpoint&) = default;
};

enum class Family { piecewise_linear, scaled_sin, cubic_fifth_sin, linear, custom };

class IntervalMap {
 public:
  using Function = std::function<double(double)>;

  // Breakpoints strictly increasing in x and inside [lo, hi]. Throws
  // DomainError when some value leaves the domain.
  static IntervalMap piecewise_linear(Rational lo, Rational hi, std::vector<Breakpoint> points);
  // r in (0, 1].
  static IntervalMap scaled_sin(Rational r, Rational lo = -1, Rational hi = 1);
  static IntervalMap cubic_fifth_sin(Rational lo = -1, Rational hi = 1);
  static IntervalMap linear(Rational a, Rational b, Rational lo, Rational hi);
  // Smooth map given by value and derivative. The self-map check is sampled.
  static IntervalMap custom(std::string name, Function f, Function derivative, double lo, double hi);

  Family family() const { return impl_->family; }
  bool is_piecewise_linear() const { return family() == Family::piecewise_linear; }
  bool oscillates_at_zero() const {
    return family() == Family::scaled_sin || family() == Family::cubic_fifth_sin;
  }
  const std::string& name() const { return impl_->name; }

  Interval domain() const { return {impl_->lo_d, impl_->hi_d}; }
  const Rational& domain_lo() const { return impl_->lo; }
  const Rational& domain_hi() const { return impl_->hi; }
  const std::vector<Breakpoint>& breakpoints() const { return impl_->points; }
  // Family parameters: r for scaled-sin, (a, b) for linear.
  const Rational& r() const { return impl_->p1; }
  const Rational& a() const { return impl_->p1; }
  const Rational& b() const { return impl_->p2; }

  // Throws DomainError outside the domain.
  double operator()(double x) const;
  // Piecewise-linear maps only.
  Rational operator()(const Rational& x) const;
  // Custom maps evaluate in double and are limited to double accuracy.
  BigFloat operator()(const BigFloat& x) const;

  // Derivative for analytic maps; one-sided (right) slope for piecewise-linear.
  double derivative(double x) const;
  BigFloat derivative(const BigFloat& x) const;

  // Bound env(|x|) >= |f(x)| for the sin(1/x) families; nullopt otherwise.
  std::optional<double> envelope(double x) const;

 private:
  struct Impl {
    Family family = Family::linear;
    std::string name;
    Rational lo, hi;
    double lo_d = 0.0, hi_d = 0.0;
    std::vector<Breakpoint> points;
    std::vector<double> xs, ys;  // double copies of the breakpoints
    Rational p1, p2;
    double p1_d = 0.0, p2_d = 0.0;
    Function f, df;
  };

  explicit IntervalMap(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  static void check_self_map(const IntervalMap& map);

  std::shared_ptr<const Impl> impl_;
};

double evaluate(const IntervalMap& map, double x);
Rational evaluate(const IntervalMap& map, const Rational& x);

// (x0, f(x0), ..., f^n(x0)). Throws DomainError naming the step when an
// iterate leaves the domain.
OrbitSample iterate(const IntervalMap& map, double x0, std::size_t n);
std::vector<Rational> iterate(const IntervalMap& map, const Rational& x0, std::size_t n);
std::vector<BigFloat> iterate(const IntervalMap& map, const BigFloat& x0, std::size_t n);

enum class Direction { increasing, decreasing, constant };

struct MonotonePiece {
  Interval interval;
  Direction direction = Direction::constant;
};

struct PieceDecomposition {
  std::vector<MonotonePiece> pieces;
  // Residual neighbourhoods of 0 that were not enumerated (sin families).
  std::vector<Interval> unresolved;
};

// Splits `region` into maximal monotone pieces. For the sin(1/x) families the
// part of `region` within `scale_cutoff` of 0 is reported as unresolved.
PieceDecomposition monotone_pieces(const IntervalMap& map, Interval region, double scale_cutoff);

struct RangeResult {
  double inf = 0.0;
  double sup = 0.0;
  double arg_inf = 0.0;
  double arg_sup = 0.0;
};

RangeResult range_on(const IntervalMap& map, Interval region, double tol);

std::vector<double> fixed_points(const IntervalMap& map, double tol);
// Piecewise-linear maps only; an interval of fixed points contributes its ends.
std::vector<Rational> fixed_points_exact(const IntervalMap& map);

// Sorted solutions of f(x) = y in `region`, one per crossing. Near 0 the sin
// families are searched only down to `scale_cutoff`; 0 itself is reported
// when f(0) = y.
std::vector<double> preimages_of(const IntervalMap& map, double y, Interval region, double tol,
                                 double scale_cutoff = 1e-4);
// Exact roots of f(x) = y for piecewise-linear and linear maps.
std::vector<Rational> preimages_exact(const IntervalMap& map, const Rational& y);

struct TwoCycle {
  double p = 0.0;
  double q = 0.0;
};

// Sign-change scan of f(f(x)) - x. Semi-decision: tangential 2-cycles can be
// missed, so an empty result means "none found at this resolution".
std::vector<TwoCycle> two_cycle_scan(const IntervalMap& map, std::size_t grid = 10000, double tol = 1e-12);

struct LipschitzEstimate {
  double value = 0.0;
  // True when `value` is the exact constant (piecewise-linear, linear);
  // false for sampled estimates.
  bool exact = false;
};

LipschitzEstimate lipschitz_estimate(const IntervalMap& map, std::size_t grid = 100000);

}  // namespace unimap

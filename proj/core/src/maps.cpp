#include "unimap/maps.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "unimap/errors.hpp"

namespace unimap {

namespace {

std::string describe(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

IntervalMap IntervalMap::piecewise_linear(Rational lo, Rational hi, std::vector<Breakpoint> points) {
  if (!(lo < hi)) throw DomainError("domain must satisfy lo < hi");
  if (points.empty()) throw DomainError("piecewise-linear map needs at least one breakpoint");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].x < lo || points[i].x > hi)
      throw DomainError("breakpoint x = " + to_string(points[i].x) + " lies outside the domain");
    if (i > 0 && !(points[i - 1].x < points[i].x))
      throw DomainError("breakpoints must be strictly increasing in x");
    if (points[i].y < lo || points[i].y > hi)
      throw DomainError("not a self-map: f(" + to_string(points[i].x) + ") = " + to_string(points[i].y) +
                        " leaves the domain");
  }
  auto impl = std::make_shared<Impl>();
  impl->family = Family::piecewise_linear;
  impl->name = "pwl";
  impl->lo = std::move(lo);
  impl->hi = std::move(hi);
  impl->lo_d = impl->lo.get_d();
  impl->hi_d = impl->hi.get_d();
  for (const auto& p : points) {
    impl->xs.push_back(p.x.get_d());
    impl->ys.push_back(p.y.get_d());
  }
  impl->points = std::move(points);
  return IntervalMap(std::move(impl));
}

IntervalMap IntervalMap::scaled_sin(Rational r, Rational lo, Rational hi) {
  if (!(r > 0 && r <= 1)) throw DomainError("scaled-sin needs r in (0, 1]");
  if (!(lo < hi)) throw DomainError("domain must satisfy lo < hi");
  auto impl = std::make_shared<Impl>();
  impl->family = Family::scaled_sin;
  impl->name = "scaled-sin";
  impl->lo = std::move(lo);
  impl->hi = std::move(hi);
  impl->lo_d = impl->lo.get_d();
  impl->hi_d = impl->hi.get_d();
  impl->p1 = std::move(r);
  impl->p1_d = impl->p1.get_d();
  IntervalMap map(std::move(impl));
  check_self_map(map);
  return map;
}

IntervalMap IntervalMap::cubic_fifth_sin(Rational lo, Rational hi) {
  if (!(lo < hi)) throw DomainError("domain must satisfy lo < hi");
  auto impl = std::make_shared<Impl>();
  impl->family = Family::cubic_fifth_sin;
  impl->name = "cubic-fifth-sin";
  impl->lo = std::move(lo);
  impl->hi = std::move(hi);
  impl->lo_d = impl->lo.get_d();
  impl->hi_d = impl->hi.get_d();
  IntervalMap map(std::move(impl));
  check_self_map(map);
  return map;
}

IntervalMap IntervalMap::linear(Rational a, Rational b, Rational lo, Rational hi) {
  if (!(lo < hi)) throw DomainError("domain must satisfy lo < hi");
  for (const Rational* end : {&lo, &hi}) {
    Rational y = a * *end + b;
    if (y < lo || y > hi)
      throw DomainError("not a self-map: f(" + to_string(*end) + ") = " + to_string(y) + " leaves the domain");
  }
  auto impl = std::make_shared<Impl>();
  impl->family = Family::linear;
  impl->name = "linear";
  impl->lo = std::move(lo);
  impl->hi = std::move(hi);
  impl->lo_d = impl->lo.get_d();
  impl->hi_d = impl->hi.get_d();
  impl->p1 = std::move(a);
  impl->p2 = std::move(b);
  impl->p1_d = impl->p1.get_d();
  impl->p2_d = impl->p2.get_d();
  return IntervalMap(std::move(impl));
}

IntervalMap IntervalMap::custom(std::string name, Function f, Function derivative, double lo, double hi) {
  if (!(lo < hi)) throw DomainError("domain must satisfy lo < hi");
  if (!f || !derivative) throw PreconditionError("custom map needs a value and a derivative");
  auto impl = std::make_shared<Impl>();
  impl->family = Family::custom;
  impl->name = std::move(name);
  impl->lo = from_double(lo);
  impl->hi = from_double(hi);
  impl->lo_d = lo;
  impl->hi_d = hi;
  impl->f = std::move(f);
  impl->df = std::move(derivative);
  IntervalMap map(std::move(impl));
  check_self_map(map);
  return map;
}

void IntervalMap::check_self_map(const IntervalMap& map) {
  Interval dom = map.domain();
  RangeResult r = range_on(map, dom, 1e-12);
  const double slack = 1e-12 * std::max(1.0, std::max(std::abs(dom.lo), std::abs(dom.hi)));
  if (r.inf < dom.lo - slack)
    throw DomainError("not a self-map: f(" + describe(r.arg_inf) + ") = " + describe(r.inf) + " leaves the domain");
  if (r.sup > dom.hi + slack)
    throw DomainError("not a self-map: f(" + describe(r.arg_sup) + ") = " + describe(r.sup) + " leaves the domain");
}

double IntervalMap::operator()(double x) const {
  const Impl& m = *impl_;
  if (!(x >= m.lo_d && x <= m.hi_d)) throw DomainError("x = " + describe(x) + " is outside the domain");
  switch (m.family) {
    case Family::piecewise_linear: {
      if (x <= m.xs.front()) return m.ys.front();
      if (x >= m.xs.back()) return m.ys.back();
      auto it = std::upper_bound(m.xs.begin(), m.xs.end(), x);
      std::size_t i = static_cast<std::size_t>(it - m.xs.begin());
      double x0 = m.xs[i - 1], x1 = m.xs[i], y0 = m.ys[i - 1], y1 = m.ys[i];
      if (x == x0) return y0;
      return y0 + (y1 - y0) * ((x - x0) / (x1 - x0));
    }
    case Family::scaled_sin:
      return x == 0.0 ? 0.0 : m.p1_d * x * std::sin(1.0 / x);
    case Family::cubic_fifth_sin:
      return x == 0.0 ? 0.0 : x * x * x / 5.0 * std::sin(1.0 / x);
    case Family::linear:
      return m.p1_d * x + m.p2_d;
    case Family::custom:
      return m.f(x);
  }
  return 0.0;
}

Rational IntervalMap::operator()(const Rational& x) const {
  const Impl& m = *impl_;
  if (m.family != Family::piecewise_linear) {
    if (m.family == Family::linear) {
      if (x < m.lo || x > m.hi) throw DomainError("x = " + to_string(x) + " is outside the domain");
      return m.p1 * x + m.p2;
    }
    throw PreconditionError("exact evaluation needs a piecewise-linear or linear map");
  }
  if (x < m.lo || x > m.hi) throw DomainError("x = " + to_string(x) + " is outside the domain");
  const auto& pts = m.points;
  if (x <= pts.front().x) return pts.front().y;
  if (x >= pts.back().x) return pts.back().y;
  auto it = std::upper_bound(pts.begin(), pts.end(), x,
                             [](const Rational& v, const Breakpoint& p) { return v < p.x; });
  const Breakpoint& right = *it;
  const Breakpoint& left = *(it - 1);
  if (x == left.x) return left.y;
  return left.y + (right.y - left.y) * (x - left.x) / (right.x - left.x);
}

BigFloat IntervalMap::operator()(const BigFloat& x) const {
  const Impl& m = *impl_;
  const mpfr_prec_t prec = x.precision();
  if (x < BigFloat(m.lo, prec) || x > BigFloat(m.hi, prec))
    throw DomainError("x = " + x.to_string() + " is outside the domain");
  switch (m.family) {
    case Family::piecewise_linear: {
      const auto& pts = m.points;
      if (x <= BigFloat(pts.front().x, prec)) return BigFloat(pts.front().y, prec);
      if (x >= BigFloat(pts.back().x, prec)) return BigFloat(pts.back().y, prec);
      std::size_t i = 1;
      while (i + 1 < pts.size() && x > BigFloat(pts[i].x, prec)) ++i;
      BigFloat x0(pts[i - 1].x, prec), y0(pts[i - 1].y, prec);
      BigFloat slope(Rational((pts[i].y - pts[i - 1].y) / (pts[i].x - pts[i - 1].x)), prec);
      return y0 + slope * (x - x0);
    }
    case Family::scaled_sin:
      if (x.is_zero()) return BigFloat(prec);
      return BigFloat(m.p1, prec) * x * sin(1.0 / x);
    case Family::cubic_fifth_sin:
      if (x.is_zero()) return BigFloat(prec);
      return x * x * x / 5.0 * sin(1.0 / x);
    case Family::linear:
      return BigFloat(m.p1, prec) * x + BigFloat(m.p2, prec);
    case Family::custom:
      return BigFloat(m.f(x.to_double()), prec);
  }
  return BigFloat(prec);
}

double IntervalMap::derivative(double x) const {
  const Impl& m = *impl_;
  switch (m.family) {
    case Family::piecewise_linear: {
      if (m.xs.size() < 2 || x < m.xs.front() || x > m.xs.back()) return 0.0;
      auto it = std::upper_bound(m.xs.begin(), m.xs.end(), x);
      std::size_t i = static_cast<std::size_t>(it - m.xs.begin());
      if (i == m.xs.size()) --i;
      return (m.ys[i] - m.ys[i - 1]) / (m.xs[i] - m.xs[i - 1]);
    }
    case Family::scaled_sin:
      if (x == 0.0) return std::nan("");
      return m.p1_d * (std::sin(1.0 / x) - std::cos(1.0 / x) / x);
    case Family::cubic_fifth_sin:
      if (x == 0.0) return 0.0;
      return (3.0 * x * x * std::sin(1.0 / x) - x * std::cos(1.0 / x)) / 5.0;
    case Family::linear:
      return m.p1_d;
    case Family::custom:
      return m.df(x);
  }
  return 0.0;
}

BigFloat IntervalMap::derivative(const BigFloat& x) const {
  const Impl& m = *impl_;
  const mpfr_prec_t prec = x.precision();
  switch (m.family) {
    case Family::scaled_sin: {
      BigFloat t = 1.0 / x;
      return BigFloat(m.p1, prec) * (sin(t) - cos(t) * t);
    }
    case Family::cubic_fifth_sin: {
      if (x.is_zero()) return BigFloat(prec);
      BigFloat t = 1.0 / x;
      return (x * x * sin(t) * 3.0 - x * cos(t)) / 5.0;
    }
    case Family::linear:
      return BigFloat(m.p1, prec);
    default:
      return BigFloat(derivative(x.to_double()), prec);
  }
}

std::optional<double> IntervalMap::envelope(double x) const {
  const double ax = std::abs(x);
  switch (impl_->family) {
    case Family::scaled_sin:
      return impl_->p1_d * ax;
    case Family::cubic_fifth_sin:
      return ax * ax * ax / 5.0;
    default:
      return std::nullopt;
  }
}

double evaluate(const IntervalMap& map, double x) { return map(x); }
Rational evaluate(const IntervalMap& map, const Rational& x) { return map(x); }

OrbitSample iterate(const IntervalMap& map, double x0, std::size_t n) {
  OrbitSample out;
  out.terms.reserve(n + 1);
  out.terms.push_back(x0);
  if (!map.domain().contains(x0)) throw DomainError("start point " + describe(x0) + " is outside the domain");
  for (std::size_t i = 1; i <= n; ++i) {
    double next = map(out.terms.back());
    if (!map.domain().contains(next))
      throw DomainError("iterate " + std::to_string(i) + " escaped the domain: " + describe(next));
    out.terms.push_back(next);
  }
  return out;
}

std::vector<Rational> iterate(const IntervalMap& map, const Rational& x0, std::size_t n) {
  std::vector<Rational> out;
  out.reserve(n + 1);
  out.push_back(x0);
  for (std::size_t i = 1; i <= n; ++i) out.push_back(map(out.back()));
  return out;
}

std::vector<BigFloat> iterate(const IntervalMap& map, const BigFloat& x0, std::size_t n) {
  std::vector<BigFloat> out;
  out.reserve(n + 1);
  out.push_back(x0);
  for (std::size_t i = 1; i <= n; ++i) {
    try {
      out.push_back(map(out.back()));
    } catch (const DomainError&) {
      throw DomainError("iterate " + std::to_string(i) + " escaped the domain");
    }
  }
  return out;
}

}  // namespace unimap

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "unimap/errors.hpp"
#include "unimap/maps.hpp"

namespace unimap {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

Direction direction_of(double fa, double fb) {
  if (fb > fa) return Direction::increasing;
  if (fb < fa) return Direction::decreasing;
  return Direction::constant;
}

// Root of a sign-changing function on [a, b], fa = F(a).
template <class F>
double bisect(F&& fn, double a, double b, double fa, double tol) {
  for (int it = 0; it < 400; ++it) {
    double m = a + 0.5 * (b - a);
    if (m <= a || m >= b) break;
    if (b - a <= std::max(tol, 4 * std::numeric_limits<double>::epsilon() * std::abs(m))) break;
    double fm = fn(m);
    if (fm == 0.0) return m;
    if ((fm < 0) == (fa < 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return a + 0.5 * (b - a);
}

// Critical points of the sin(1/x) families in t = 1/|x|: the root of
// tan t = t / c in (k pi, k pi + pi/2), c = 1 (scaled) or 3 (cubic).
double critical_t(int k, double c) {
  const double base = k * kPi;
  double t = base + kPi / 2 - 1e-3;
  for (int it = 0; it < 200; ++it) {
    double next = base + std::atan(t / c);
    if (std::abs(next - t) <= 1e-16 * next) return next;
    t = next;
  }
  return t;
}

// Critical |x| values of a sin family strictly inside (a, b), 0 < a < b, ascending.
std::vector<double> sin_critical_points(const IntervalMap& map, double a, double b) {
  const double c = map.family() == Family::scaled_sin ? 1.0 : 3.0;
  const double tlo = 1.0 / b, thi = 1.0 / a;
  long kmin = std::max(1L, static_cast<long>(std::floor(tlo / kPi)) - 1);
  long kmax = static_cast<long>(std::ceil(thi / kPi)) + 1;
  std::vector<double> xs;
  for (long k = kmax; k >= kmin; --k) {
    double t = critical_t(static_cast<int>(k), c);
    double x = 1.0 / t;
    if (x > a && x < b) xs.push_back(x);
  }
  std::sort(xs.begin(), xs.end());
  return xs;
}

void append_split(const IntervalMap& map, std::vector<MonotonePiece>& out, double a, double b,
                  const std::vector<double>& cuts) {
  double prev = a;
  auto push = [&](double lo, double hi) {
    if (!(hi > lo)) return;
    Direction d = direction_of(map(lo), map(hi));
    if (d == Direction::constant) {
      double s = map.derivative(lo + 0.5 * (hi - lo));
      d = s > 0 ? Direction::increasing : (s < 0 ? Direction::decreasing : Direction::constant);
    }
    out.push_back({{lo, hi}, d});
  };
  for (double c : cuts) {
    push(prev, c);
    prev = c;
  }
  push(prev, b);
}

// Pieces of a sin family on [a, b] with a*b >= 0 and min |x| > 0.
void sin_pieces_signed(const IntervalMap& map, double a, double b, std::vector<MonotonePiece>& out) {
  if (a >= 0) {
    append_split(map, out, a, b, sin_critical_points(map, a, b));
  } else {
    auto cuts = sin_critical_points(map, -b, -a);
    std::vector<double> neg;
    for (auto it = cuts.rbegin(); it != cuts.rend(); ++it) neg.push_back(-*it);
    append_split(map, out, a, b, neg);
  }
}

void custom_pieces(const IntervalMap& map, double a, double b, std::vector<MonotonePiece>& out) {
  constexpr int n = 4096;
  std::vector<double> cuts;
  double prev_x = a, prev_s = map.derivative(a);
  for (int i = 1; i <= n; ++i) {
    double x = a + (b - a) * i / n;
    if (i == n) x = b;
    double s = map.derivative(x);
    if (s == 0.0) continue;
    if (prev_s != 0.0 && (s > 0) != (prev_s > 0)) {
      auto df = [&](double y) { return map.derivative(y); };
      cuts.push_back(bisect(df, prev_x, x, prev_s, 1e-15));
    }
    prev_x = x;
    prev_s = s;
  }
  append_split(map, out, a, b, cuts);
}

void pwl_pieces(const IntervalMap& map, double a, double b, std::vector<MonotonePiece>& out) {
  std::vector<double> cuts;
  for (const auto& bp : map.breakpoints()) {
    double x = bp.x.get_d();
    if (x > a && x < b) cuts.push_back(x);
  }
  std::vector<MonotonePiece> raw;
  double prev = a;
  auto push = [&](double lo, double hi) {
    if (!(hi > lo)) return;
    Rational flo = map(from_double(lo)), fhi = map(from_double(hi));
    Direction d = fhi > flo ? Direction::increasing : (fhi < flo ? Direction::decreasing : Direction::constant);
    raw.push_back({{lo, hi}, d});
  };
  for (double c : cuts) {
    push(prev, c);
    prev = c;
  }
  push(prev, b);
  for (const auto& piece : raw) {
    if (!out.empty() && out.back().direction == piece.direction && out.back().interval.hi == piece.interval.lo) {
      out.back().interval.hi = piece.interval.hi;
    } else {
      out.push_back(piece);
    }
  }
}

Interval clip_to_domain(const IntervalMap& map, Interval region) {
  Interval dom = map.domain();
  if (region.lo > region.hi) std::swap(region.lo, region.hi);
  if (region.lo < dom.lo || region.hi > dom.hi) throw DomainError("region is outside the domain");
  return region;
}

}  // namespace

PieceDecomposition monotone_pieces(const IntervalMap& map, Interval region, double scale_cutoff) {
  region = clip_to_domain(map, region);
  PieceDecomposition out;
  switch (map.family()) {
    case Family::linear: {
      Direction d = map.a() > 0 ? Direction::increasing : (map.a() < 0 ? Direction::decreasing : Direction::constant);
      if (region.hi > region.lo) out.pieces.push_back({region, d});
      return out;
    }
    case Family::piecewise_linear:
      pwl_pieces(map, region.lo, region.hi, out.pieces);
      return out;
    case Family::custom:
      custom_pieces(map, region.lo, region.hi, out.pieces);
      return out;
    default:
      break;
  }
  const double c = std::abs(scale_cutoff);
  if (region.lo < -c) sin_pieces_signed(map, region.lo, std::min(region.hi, -c), out.pieces);
  double ulo = std::max(region.lo, -c), uhi = std::min(region.hi, c);
  if (ulo < uhi || (ulo == uhi && ulo == 0.0)) {
    if (ulo < 0 && uhi > 0) {
      out.unresolved.push_back({ulo, 0.0});
      out.unresolved.push_back({0.0, uhi});
    } else {
      out.unresolved.push_back({ulo, uhi});
    }
  }
  if (region.hi > c) sin_pieces_signed(map, std::max(region.lo, c), region.hi, out.pieces);
  return out;
}

RangeResult range_on(const IntervalMap& map, Interval region, double tol) {
  region = clip_to_domain(map, region);
  RangeResult r{kInf, -kInf, region.lo, region.lo};
  auto consider = [&](double x) {
    double v = map(x);
    if (v < r.inf) {
      r.inf = v;
      r.arg_inf = x;
    }
    if (v > r.sup) {
      r.sup = v;
      r.arg_sup = x;
    }
  };
  consider(region.lo);
  consider(region.hi);
  if (!map.oscillates_at_zero()) {
    for (const auto& piece : monotone_pieces(map, region, 0.0).pieces) {
      consider(piece.interval.lo);
      consider(piece.interval.hi);
    }
    return r;
  }

  // Each signed half is enumerated in dyadic shells toward 0 until the values
  // found dominate the envelope of what is left.
  auto half = [&](double near, double outer, double sign) {
    if (near == 0.0) consider(0.0);
    double c = outer;
    while (c > near) {
      double env = *map.envelope(c);
      if (env < tol) break;
      if (r.inf < -env && r.sup > env) break;
      double next = std::max(near, c / 2);
      std::vector<MonotonePiece> pieces;
      sin_pieces_signed(map, sign > 0 ? next : -c, sign > 0 ? c : -next, pieces);
      for (const auto& p : pieces) {
        consider(p.interval.lo);
        consider(p.interval.hi);
      }
      c = next;
    }
  };
  if (region.hi > 0) half(std::max(region.lo, 0.0), region.hi, 1.0);
  if (region.lo < 0) half(std::max(-region.hi, 0.0), -region.lo, -1.0);
  return r;
}

std::vector<double> fixed_points(const IntervalMap& map, double tol) {
  std::vector<double> out;
  if (map.is_piecewise_linear()) {
    for (const auto& q : fixed_points_exact(map)) out.push_back(q.get_d());
    return out;
  }
  if (map.family() == Family::linear) {
    Interval dom = map.domain();
    if (map.a() == 1) {
      if (map.b() == 0) return {dom.lo, dom.hi};
      return {};
    }
    Rational p = map.b() / (Rational(1) - map.a());
    if (p >= map.domain_lo() && p <= map.domain_hi()) out.push_back(p.get_d());
    return out;
  }
  auto g = [&](double x) { return map(x) - x; };
  Interval dom = map.domain();
  auto pieces = monotone_pieces(map, dom, map.oscillates_at_zero() ? 1e-3 : 0.0);
  auto scan = [&](double a, double b) {
    constexpr int n = 4096;
    double prev_x = a, prev_g = g(a);
    if (prev_g == 0.0) out.push_back(a);
    for (int i = 1; i <= n; ++i) {
      double x = i == n ? b : a + (b - a) * i / n;
      double gx = g(x);
      if (gx == 0.0) {
        out.push_back(x);
      } else if (prev_g != 0.0 && (gx > 0) != (prev_g > 0)) {
        out.push_back(bisect(g, prev_x, x, prev_g, tol));
      }
      prev_x = x;
      prev_g = gx;
    }
  };
  for (const auto& p : pieces.pieces) scan(p.interval.lo, p.interval.hi);
  for (const auto& u : pieces.unresolved) {
    // |f(x) - x| >= |x| - env(|x|) > 0 off zero whenever env(|x|) < |x|.
    bool cleared = *map.envelope(std::max(std::abs(u.lo), std::abs(u.hi))) < std::max(std::abs(u.lo), std::abs(u.hi));
    if (!cleared) scan(u.lo, u.hi);
  }
  if (map.oscillates_at_zero() && dom.contains(0.0)) out.push_back(0.0);
  std::sort(out.begin(), out.end());
  std::vector<double> uniq;
  for (double x : out) {
    if (uniq.empty() || x - uniq.back() > 10 * tol) uniq.push_back(x);
  }
  return uniq;
}

std::vector<Rational> fixed_points_exact(const IntervalMap& map) {
  if (!map.is_piecewise_linear()) throw PreconditionError("exact fixed points need a piecewise-linear map");
  const auto& pts = map.breakpoints();
  std::vector<Rational> out;
  auto add = [&](const Rational& x) {
    if (out.empty() || out.back() != x) out.push_back(x);
  };
  // Segments: [lo, x_0] constant, [x_i, x_{i+1}] linear, [x_last, hi] constant.
  auto segment = [&](const Rational& x0, const Rational& y0, const Rational& x1, const Rational& y1) {
    if (!(x0 < x1)) return;
    Rational g0 = y0 - x0, g1 = y1 - x1;
    if (g0 == 0 && g1 == 0) {
      add(x0);
      add(x1);
    } else if (g0 == 0) {
      add(x0);
    } else if (g1 == 0) {
      add(x1);
    } else if ((g0 < 0) != (g1 < 0)) {
      add(x0 + (x1 - x0) * g0 / (g0 - g1));
    }
  };
  segment(map.domain_lo(), pts.front().y, pts.front().x, pts.front().y);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) segment(pts[i].x, pts[i].y, pts[i + 1].x, pts[i + 1].y);
  segment(pts.back().x, pts.back().y, map.domain_hi(), pts.back().y);
  return out;
}

std::vector<double> preimages_of(const IntervalMap& map, double y, Interval region, double tol, double scale_cutoff) {
  region = clip_to_domain(map, region);
  std::vector<double> out;
  if (map.is_piecewise_linear()) {
    for (const auto& q : preimages_exact(map, from_double(y))) {
      double x = q.get_d();
      if (region.contains(x)) out.push_back(x);
    }
    return out;
  }
  auto pieces = monotone_pieces(map, region, map.oscillates_at_zero() ? scale_cutoff : 0.0);
  auto h = [&](double x) { return map(x) - y; };
  for (const auto& p : pieces.pieces) {
    double a = p.interval.lo, b = p.interval.hi;
    double fa = h(a), fb = h(b);
    if (fa == 0.0) out.push_back(a);
    if (fb == 0.0) out.push_back(b);
    if (fa != 0.0 && fb != 0.0 && (fa < 0) != (fb < 0)) out.push_back(bisect(h, a, b, fa, tol));
  }
  if (map.oscillates_at_zero() && region.contains(0.0) && y == 0.0) out.push_back(0.0);
  std::sort(out.begin(), out.end());
  std::vector<double> uniq;
  for (double x : out) {
    if (uniq.empty() || x - uniq.back() > tol) uniq.push_back(x);
  }
  return uniq;
}

std::vector<Rational> preimages_exact(const IntervalMap& map, const Rational& y) {
  if (map.family() == Family::linear) {
    if (map.a() == 0) throw PreconditionError("constant map: every point or none is a preimage");
    Rational x = (y - map.b()) / map.a();
    if (x < map.domain_lo() || x > map.domain_hi()) return {};
    return {x};
  }
  if (!map.is_piecewise_linear()) throw PreconditionError("exact preimages need a piecewise-linear or linear map");
  const auto& pts = map.breakpoints();
  std::vector<Rational> out;
  auto add = [&](const Rational& x) {
    if (out.empty() || out.back() != x) out.push_back(x);
  };
  auto segment = [&](const Rational& x0, const Rational& y0, const Rational& x1, const Rational& y1) {
    if (!(x0 < x1)) return;
    Rational g0 = y0 - y, g1 = y1 - y;
    if (g0 == 0) add(x0);
    if (g0 != 0 && g1 != 0 && (g0 < 0) != (g1 < 0)) add(x0 + (x1 - x0) * g0 / (g0 - g1));
    if (g1 == 0) add(x1);
  };
  segment(map.domain_lo(), pts.front().y, pts.front().x, pts.front().y);
  if (pts.size() == 1 && pts.front().y == y) add(pts.front().x);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) segment(pts[i].x, pts[i].y, pts[i + 1].x, pts[i + 1].y);
  segment(pts.back().x, pts.back().y, map.domain_hi(), pts.back().y);
  return out;
}

std::vector<TwoCycle> two_cycle_scan(const IntervalMap& map, std::size_t grid, double tol) {
  if (grid < 2) throw PreconditionError("two_cycle_scan needs grid >= 2");
  Interval dom = map.domain();
  auto h = [&](double x) { return map(map(x)) - x; };
  std::vector<double> roots;
  double prev_x = dom.lo, prev_h = h(dom.lo);
  if (prev_h == 0.0) roots.push_back(dom.lo);
  for (std::size_t i = 1; i < grid; ++i) {
    double x = i + 1 == grid ? dom.hi : dom.lo + dom.width() * static_cast<double>(i) / static_cast<double>(grid - 1);
    double hx = h(x);
    if (hx == 0.0) {
      roots.push_back(x);
    } else if (prev_h != 0.0 && (hx > 0) != (prev_h > 0)) {
      roots.push_back(bisect(h, prev_x, x, prev_h, tol));
    }
    prev_x = x;
    prev_h = hx;
  }
  std::vector<TwoCycle> out;
  for (double x : roots) {
    double fx = map(x);
    if (std::abs(fx - x) <= std::max(tol, 1e-9 * std::max(1.0, std::abs(x)))) continue;  // fixed point
    if (std::abs(map(fx) - x) > std::max(tol, 1e-9)) continue;
    bool seen = false;
    for (const auto& c : out) {
      if (std::abs(c.p - fx) <= 1e-9 && std::abs(c.q - x) <= 1e-9) seen = true;
    }
    if (!seen) out.push_back({x, fx});
  }
  return out;
}

LipschitzEstimate lipschitz_estimate(const IntervalMap& map, std::size_t grid) {
  if (grid < 2) throw PreconditionError("lipschitz_estimate needs grid >= 2");
  switch (map.family()) {
    case Family::linear:
      return {std::abs(map.a().get_d()), true};
    case Family::piecewise_linear: {
      const auto& pts = map.breakpoints();
      Rational best = 0;
      for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        Rational s = abs(Rational((pts[i + 1].y - pts[i].y) / (pts[i + 1].x - pts[i].x)));
        if (s > best) best = s;
      }
      return {best.get_d(), true};
    }
    case Family::scaled_sin:
      // f'(x) = r (sin(1/x) - cos(1/x)/x) is unbounded near 0.
      return {kInf, false};
    default:
      break;
  }
  Interval dom = map.domain();
  double best = 0.0;
  for (std::size_t i = 0; i < grid; ++i) {
    double x = dom.lo + dom.width() * static_cast<double>(i) / static_cast<double>(grid - 1);
    if (x == 0.0 && map.oscillates_at_zero()) continue;
    best = std::max(best, std::abs(map.derivative(x)));
  }
  if (map.family() == Family::cubic_fifth_sin) {
    // Between grid points near 0 the derivative is bounded by (3c^2 + c)/5.
    double c = dom.width() / static_cast<double>(grid - 1);
    best = std::max(best, (3 * c * c + c) / 5);
  }
  return {best, false};
}

}  // namespace unimap

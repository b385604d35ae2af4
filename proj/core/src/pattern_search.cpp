#include <algorithm>
#include <cmath>
#include <numbers>

#include "unimap/errors.hpp"
#include "unimap/universality.hpp"

namespace unimap {

namespace {

constexpr double kPi = std::numbers::pi;

int sigma(const LRCode& code, std::size_t k) {
  auto l = code.at(k);
  if (!l) throw PreconditionError("code has too few labels for the requested depth");
  return *l == Label::L ? 1 : -1;
}

Side side_of(int s) { return s > 0 ? Side::right : Side::left; }

// ---------------------------------------------------------------------------
// sin(1/x) families at p = 0, in t = 1/|x| where both maps are even:
// f(x) = g(t) with g(t) = r sin(t)/t or sin(t)/(5 t^3).

struct NeedPrecision {
  long bits;
};

struct Flank {
  BigFloat t_lo, t_hi;
  int x_sign = 1;
  // Zero at m pi bounding the flank (0 for the initial two-sided bracket).
  mpz_class m;
  bool away = false;
};

class SinChain {
 public:
  SinChain(const IntervalMap& map, long prec)
      : cubic_(map.family() == Family::cubic_fifth_sin), prec_(prec), r_(map.r(), prec), pi_(BigFloat::pi(prec)) {
    if (cubic_) r_ = BigFloat(1.0, prec);
  }

  long prec() const { return prec_; }
  const BigFloat& pi() const { return pi_; }
  BigFloat num(double v) const { return BigFloat(v, prec_); }

  BigFloat g(const BigFloat& t) const {
    if (cubic_) return sin(t) / (t * t * t * 5.0);
    return r_ * sin(t) / t;
  }

  BigFloat dg(const BigFloat& t) const {
    if (cubic_) return (t * cos(t) - sin(t) * 3.0) / (t * t * t * t * 5.0);
    return r_ * (t * cos(t) - sin(t)) / (t * t);
  }

  // Width of the flank on the far side of the zero m pi: stays clear of the
  // critical point and of |sin| = 1.
  double toward_width(const mpz_class& m) const {
    const double c = cubic_ ? 3.0 : 1.0;
    double base = m.get_d() * kPi;
    double u = kPi / 2;
    if (base < 1e8) {
      u = kPi / 4;
      for (int i = 0; i < 100; ++i) u = std::atan((base + u) / c);
    }
    return std::min(3 * kPi / 8, 0.99 * u);
  }

  // Solves g(t) = y on the monotone flank; returns t.
  BigFloat solve(const Flank& f, const BigFloat& y) const {
    BigFloat a = f.t_lo, b = f.t_hi;
    BigFloat ha = g(a) - y, hb = g(b) - y;
    if (ha.is_zero()) return a;
    if (hb.is_zero()) return b;
    if (ha.sign() == hb.sign()) {
      // Target on the boundary of the image up to rounding.
      BigFloat scale = max(abs(g(a)), abs(g(b)));
      BigFloat slack = ldexp(scale, -(prec_ - 16));
      if (abs(ha) <= slack) return a;
      if (abs(hb) <= slack) return b;
      throw NeedPrecision{prec_ * 2};
    }
    BigFloat t = a + (b - a) / 2.0;
    for (long i = 0; i < 4 * prec_; ++i) {
      BigFloat ht = g(t) - y;
      if (ht.is_zero()) break;
      if (ht.sign() == ha.sign()) {
        a = t;
        ha = ht;
      } else {
        b = t;
      }
      BigFloat d = dg(t);
      // Residual at the rounding floor of g near t.
      if (abs(ht) <= ldexp(abs(d) * t + abs(y), -(prec_ - 3))) break;
      BigFloat tn = d.is_zero() ? a + (b - a) / 2.0 : t - ht / d;
      if (!(tn > a && tn < b)) tn = a + (b - a) / 2.0;
      BigFloat step = abs(tn - t);
      t = tn;
      if (step <= ldexp(t, -(prec_ - 4))) break;
      if (b - a <= ldexp(t, -(prec_ - 2))) break;
    }
    return t;
  }

  BigFloat pull(const Flank& f, const BigFloat& y) const { return num(f.x_sign) / solve(f, y); }

  // x-interval of a flank.
  std::pair<BigFloat, BigFloat> x_range(const Flank& f) const {
    BigFloat a = num(f.x_sign) / f.t_hi, b = num(f.x_sign) / f.t_lo;
    if (b < a) std::swap(a, b);
    return {a, b};
  }

 private:
  bool cubic_;
  long prec_;
  BigFloat r_;
  BigFloat pi_;
};

struct SinBuild {
  BigFloat x;
  BigFloat final_lo, final_hi;
  NestedIntervalTrace trace;
};

Interval to_interval(const BigFloat& a, const BigFloat& b) { return {a.to_double(), b.to_double()}; }

SinBuild build_sin(const IntervalMap& map, const LRCode& code, std::size_t depth, long prec) {
  SinChain ch(map, prec);
  SinBuild out{BigFloat(prec), BigFloat(prec), BigFloat(prec), {}};
  out.trace.precision = prec;

  const auto len = code.length();
  const bool finite = len && *len <= depth;
  const std::size_t n = finite ? *len : depth;
  if (n == 0) {
    out.trace.final_interval = {0.0, 0.0};
    return out;
  }
  const BigFloat& pi = ch.pi();
  std::vector<Flank> flanks;
  {
    Flank f0;
    f0.t_lo = pi * (5.0 / 8.0);
    f0.t_hi = pi + ch.num(ch.toward_width(mpz_class(1)));
    f0.x_sign = sigma(code, 1);
    f0.m = 1;
    flanks.push_back(f0);
  }
  if (finite && n == 1) {
    out.x = ch.num(sigma(code, 1)) / pi;
    out.final_lo = out.final_hi = out.x;
    out.trace.final_interval = to_interval(out.x, out.x);
    out.trace.final_point = out.x.to_double();
    return out;
  }
  BigFloat e_lo = ch.g(flanks[0].t_hi), e_hi = ch.g(flanks[0].t_lo);
  if (e_hi < e_lo) std::swap(e_lo, e_hi);

  struct StepInfo {
    ZeroInfo zero;
    Side side;
    double delta;
    std::optional<BigFloat> zero_x;  // last step of a finite code
  };
  std::vector<StepInfo> info;
  const std::size_t last = n - 1;  // zero-choosing steps k = 1..last
  const BigFloat shrink = ch.num(1.0 + std::ldexp(1.0, -30));
  for (std::size_t k = 1; k <= last; ++k) {
    const int s = sigma(code, k + 1);
    BigFloat e = s > 0 ? e_hi : -e_lo;
    if (!(e > 0.0)) throw ConstructionError("image has no room on the required side", k, out.trace);
    BigFloat te = 1.0 / e;
    if (te.exponent() > prec / 2) throw NeedPrecision{2 * te.exponent() + 64};
    mpz_class m_min = (te / pi).floor_integer() + 1;

    StepInfo st;
    st.side = side_of(s);
    st.delta = e.to_double();
    auto zero_info = [&](const mpz_class& m) {
      ZeroInfo z;
      BigFloat t0 = BigFloat::from_integer(m, prec) * pi;
      z.b = (ch.num(s) / t0).to_double();
      z.side_of_p = side_of(s);
      bool odd = mpz_odd_p(m.get_mpz_t()) != 0;
      // sin changes from (-1)^(m+1) to (-1)^m across t = m pi.
      z.toward = odd ? ValueSide::below : ValueSide::above;
      z.away = odd ? ValueSide::above : ValueSide::below;
      z.isolated = true;
      return z;
    };

    if (finite && k == last) {
      BigFloat t0 = BigFloat::from_integer(m_min, prec) * pi;
      st.zero = zero_info(m_min);
      st.zero_x = ch.num(s) / t0;
      info.push_back(st);
      break;
    }

    const int want = sigma(code, k + 2);
    std::optional<Flank> best;
    BigFloat best_mag(prec);
    for (mpz_class m : {m_min, mpz_class(m_min + 1)}) {
      BigFloat t0 = BigFloat::from_integer(m, prec) * pi;
      bool odd = mpz_odd_p(m.get_mpz_t()) != 0;
      int away_sign = odd ? 1 : -1;
      Flank f;
      f.x_sign = s;
      f.m = m;
      if (away_sign == want) {
        f.away = true;
        f.t_lo = max(t0 - pi * (3.0 / 8.0), te * shrink);
        f.t_hi = t0;
        if (!(t0 - f.t_lo > 1e-3)) continue;
      } else {
        f.away = false;
        f.t_lo = t0;
        f.t_hi = t0 + ch.num(ch.toward_width(m));
      }
      BigFloat mag = abs(ch.g(f.away ? f.t_lo : f.t_hi));
      if (!best || mag > best_mag) {
        best = f;
        best_mag = mag;
        st.zero = zero_info(m);
      }
    }
    if (!best) throw ConstructionError("no admissible zero", k, out.trace);
    BigFloat v1 = ch.g(best->t_lo), v2 = ch.g(best->t_hi);
    e_lo = min(v1, v2);
    e_hi = max(v1, v2);
    flanks.push_back(*best);
    info.push_back(st);
  }

  // Pull a value at chain level j (an x_{j+1}) back to x_1.
  auto pull_to_start = [&](BigFloat y, std::size_t j) {
    for (std::size_t i = j; i-- > 0;) y = ch.pull(flanks[i], y);
    return y;
  };

  // Trace: I_k is the pullback of flank k to level 1.
  for (std::size_t k = 1; k <= info.size(); ++k) {
    TraceStep step;
    auto [ilo, ihi] = ch.x_range(flanks[0]);
    if (k > 1) {
      auto [jlo, jhi] = ch.x_range(flanks[k - 1]);
      BigFloat a = pull_to_start(jlo, k - 1), b = pull_to_start(jhi, k - 1);
      ilo = min(a, b);
      ihi = max(a, b);
    }
    step.I = to_interval(ilo, ihi);
    if (k < flanks.size()) {
      auto [jlo, jhi] = ch.x_range(flanks[k]);
      step.J = to_interval(jlo, jhi);
    } else {
      double b = info[k - 1].zero_x->to_double();
      step.J = {b, b};
    }
    step.chosen_zero = info[k - 1].zero;
    step.side = info[k - 1].side;
    step.delta = info[k - 1].delta;
    out.trace.steps.push_back(step);
  }

  if (finite) {
    out.x = pull_to_start(*info.back().zero_x, n - 1);
    out.final_lo = out.final_hi = out.x;
  } else if (n == 1) {
    auto [a, b] = ch.x_range(flanks[0]);
    out.final_lo = a;
    out.final_hi = b;
    out.x = a + (b - a) / 2.0;
  } else {
    auto [jlo, jhi] = ch.x_range(flanks[n - 1]);
    BigFloat a = pull_to_start(jlo, n - 1), b = pull_to_start(jhi, n - 1);
    out.final_lo = min(a, b);
    out.final_hi = max(a, b);
    out.x = out.final_lo + (out.final_hi - out.final_lo) / 2.0;
  }
  out.trace.final_interval = to_interval(out.final_lo, out.final_hi);
  out.trace.final_point = out.x.to_double();
  return out;
}

// Each J_k sits on the side of 0 fixed by the code, one step past the depth
// when the code goes on.  Labels alone do not pin the last of these.
bool sides_follow_chain(const IntervalMap& map, const BigFloat& x, const LRCode& code, std::size_t depth) {
  const auto len = code.length();
  const std::size_t n = len ? std::min<std::size_t>(*len, depth + 1) : depth + 1;
  BigFloat start(2 * x.precision());
  mpfr_set(start.get(), x.get(), MPFR_RNDN);
  std::vector<BigFloat> orbit;
  try {
    orbit = iterate(map, start, n);
  } catch (const DomainError&) {
    return false;
  }
  for (std::size_t k = 1; k <= n && k <= orbit.size(); ++k) {
    const int s = mpfr_sgn(orbit[k - 1].get());
    if (s != sigma(code, k)) return false;
  }
  return true;
}

PatternPoint find_sin(const IntervalMap& map, const LRCode& code, std::size_t depth, const FindPointOptions& opt) {
  long prec = std::max(64L, opt.start_precision);
  NestedIntervalTrace last;
  while (true) {
    long next = 2 * prec;
    try {
      SinBuild b = build_sin(map, code, depth, prec);
      last = b.trace;
      if (verify_pattern_point(map, b.x, code, depth) && sides_follow_chain(map, b.x, code, depth)) {
        PatternPoint out;
        out.x = b.x.to_double();
        out.x_hp = b.x;
        out.final_lo = b.final_lo;
        out.final_hi = b.final_hi;
        out.trace = std::move(b.trace);
        return out;
      }
    } catch (const NeedPrecision& np) {
      next = std::max(next, np.bits);
    }
    if (next > opt.max_precision) {
      throw PrecisionError("precision floor: construction needs more than " + std::to_string(opt.max_precision) +
                               " bits",
                           last);
    }
    // Round up to a power of two.
    long p2 = prec;
    while (p2 < next) p2 *= 2;
    prec = p2;
  }
}

// ---------------------------------------------------------------------------
// Double-precision construction for general maps.

double side_extent(const IntervalMap& map, double p, Side side) {
  Interval dom = map.domain();
  return side == Side::right ? dom.hi - p : p - dom.lo;
}

// The part of a monotone piece adjacent to b on one side.
std::optional<Interval> adjacent_piece(const IntervalMap& map, double b, bool to_right, Interval band) {
  double cutoff = map.oscillates_at_zero() ? 0.5 * std::abs(b) : 0.0;
  auto pieces = monotone_pieces(map, band, cutoff).pieces;
  for (const auto& pc : pieces) {
    if (to_right && pc.interval.lo <= b && b < pc.interval.hi) return Interval{b, pc.interval.hi};
    if (!to_right && pc.interval.lo < b && b <= pc.interval.hi) return Interval{pc.interval.lo, b};
  }
  return std::nullopt;
}

// Shrinks [b, far] toward b until it lies in S; nullopt if that fails.
std::optional<Interval> shrink_into_s(const IntervalMap& map, double p, double b, double far, double tol) {
  for (int i = 0; i < 40; ++i) {
    Interval seg{std::min(b, far), std::max(b, far)};
    if (seg.width() <= tol) return std::nullopt;
    if (contraction_region_contains(map, p, seg, std::max(tol, 1e-6 * seg.width()))) return seg;
    far = b + 0.5 * (far - b);
  }
  return std::nullopt;
}

PatternPoint find_generic(const IntervalMap& map, double p, const LRCode& code, std::size_t depth, double tol) {
  NestedIntervalTrace trace;
  trace.precision = 53;
  const auto len = code.length();
  const bool finite = len && *len <= depth;
  const std::size_t n = finite ? *len : depth;
  auto finish = [&](double x, Interval fin) {
    PatternPoint out;
    out.x = x;
    out.x_hp = BigFloat(x, 53);
    out.final_lo = BigFloat(fin.lo, 53);
    out.final_hi = BigFloat(fin.hi, 53);
    trace.final_interval = fin;
    trace.final_point = x;
    out.trace = trace;
    return out;
  };
  if (n == 0) return finish(p, {p, p});

  std::vector<Interval> flanks;
  // I_1 around a transversal zero on side(s_1).
  const Side s1 = side_of(sigma(code, 1));
  const double ext1 = side_extent(map, p, s1);
  if (!(ext1 > tol)) throw ConstructionError("no room on the required side of p", 1, trace);
  auto zs = zeros_near_fixed(map, p, s1, ext1, tol, ext1 / 16);
  const ZeroInfo* z1 = nullptr;
  for (const auto& z : zs) {
    if (z.isolated) {
      z1 = &z;
      break;
    }
  }
  if (!z1) throw ConstructionError("no transversal zero of f - p", 1, trace);
  if (finite && n == 1) return finish(z1->b, {z1->b, z1->b});
  Interval band1 = s1 == Side::right ? Interval{p, p + ext1} : Interval{p - ext1, p};
  auto left = adjacent_piece(map, z1->b, false, band1);
  auto right = adjacent_piece(map, z1->b, true, band1);
  if (!left || !right) throw ConstructionError("zero has no monotone neighbourhood", 1, trace);
  auto l = shrink_into_s(map, p, z1->b, left->lo == p ? z1->b - 0.5 * (z1->b - p) : left->lo, tol);
  auto r = shrink_into_s(map, p, z1->b, right->hi == p ? z1->b + 0.5 * (p - z1->b) : right->hi, tol);
  if (!l || !r) throw ConstructionError("no bracket inside the contraction region", 1, trace);
  flanks.push_back({l->lo, r->hi});
  RangeResult e = range_on(map, flanks[0], tol);

  std::vector<TraceStep> steps;
  std::optional<double> final_zero;
  for (std::size_t k = 1; k <= n - 1; ++k) {
    const int s = sigma(code, k + 1);
    const Side side = side_of(s);
    const double extent = s > 0 ? e.sup - p : p - e.inf;
    TraceStep st;
    st.side = side;
    st.delta = extent;
    if (!(extent > tol)) throw ConstructionError("image has no room on the required side", k, trace);
    auto cands = zeros_near_fixed(map, p, side, extent, tol, extent / 16);
    if (finite && k == n - 1) {
      if (cands.empty()) throw ConstructionError("no zero inside the image", k, trace);
      st.chosen_zero = cands.front();
      final_zero = cands.front().b;
      st.J = {*final_zero, *final_zero};
      steps.push_back(st);
      break;
    }
    const ValueSide want = sigma(code, k + 2) > 0 ? ValueSide::above : ValueSide::below;
    Interval band = side == Side::right ? Interval{p, p + extent} : Interval{p - extent, p};
    std::optional<Interval> chosen;
    for (const auto& z : cands) {
      for (bool away : {true, false}) {
        auto cls = away ? z.away : z.toward;
        if (!cls || *cls != want) continue;
        bool to_right = (side == Side::right) == away;
        auto piece = adjacent_piece(map, z.b, to_right, band);
        if (!piece) continue;
        double far = to_right ? piece->hi : piece->lo;
        if (far == p) far = z.b + 0.5 * (p - z.b);
        auto flank = shrink_into_s(map, p, z.b, far, tol);
        if (!flank) continue;
        chosen = flank;
        st.chosen_zero = z;
        break;
      }
      if (chosen) break;
    }
    if (!chosen) throw ConstructionError("no admissible zero", k, trace);
    st.J = *chosen;
    flanks.push_back(*chosen);
    steps.push_back(st);
    e = range_on(map, *chosen, tol);
  }

  auto pull_to_start = [&](double y, std::size_t j) {
    for (std::size_t i = j; i-- > 0;) {
      const Interval& fl = flanks[i];
      y = exact_subinterval(map, fl, {y, y}, tol).lo;
    }
    return y;
  };
  for (std::size_t k = 1; k <= steps.size(); ++k) {
    Interval I = flanks[0];
    if (k > 1) {
      double a = pull_to_start(flanks[k - 1].lo, k - 1), b = pull_to_start(flanks[k - 1].hi, k - 1);
      I = {std::min(a, b), std::max(a, b)};
    }
    steps[k - 1].I = I;
  }
  trace.steps = steps;

  double x;
  Interval fin;
  if (finite) {
    x = pull_to_start(*final_zero, n - 1);
    fin = {x, x};
  } else {
    const Interval& top = flanks[n - 1];
    double a = pull_to_start(top.lo, n - 1), b = pull_to_start(top.hi, n - 1);
    fin = {std::min(a, b), std::max(a, b)};
    x = fin.mid();
  }
  PatternPoint out = finish(x, fin);
  if (!verify_pattern_point(map, out.x_hp, code, depth))
    throw PrecisionError("forward verification failed in double precision", out.trace);
  return out;
}

}  // namespace

bool verify_pattern_point(const IntervalMap& map, const BigFloat& x, const LRCode& code, std::size_t depth) {
  const long prec = x.precision();
  const auto len = code.length();
  // A finite code needs one step past its end to show the stall at p.
  const std::size_t steps = len && *len <= depth ? std::max(depth, *len + 1) : depth;
  // The returned point is exact at its own precision; its orbit is followed
  // with twice as many bits.
  BigFloat start(2 * prec);
  mpfr_set(start.get(), x.get(), MPFR_RNDN);
  std::vector<BigFloat> orbit;
  try {
    orbit = iterate(map, start, steps);
  } catch (const DomainError&) {
    return false;
  }
  BigFloat tol = ldexp(BigFloat(1.0, prec), -(prec / 2));
  EncodeResult enc = encode_orbit(std::span<const BigFloat>(orbit), tol);
  if (len && *len <= depth) return enc.terminated && enc.code.prefix() == code.prefix();
  return !enc.terminated && enc.code.prefix() == code.take(depth);
}

PatternPoint find_point_with_pattern(const IntervalMap& map, double p, const LRCode& code, std::size_t depth,
                                     double tol, const FindPointOptions& options) {
  if (depth == 0) throw PreconditionError("depth must be at least 1");
  if (!map.domain().contains(p) || std::abs(map(p) - p) > 1e-12 * std::max(1.0, std::abs(p)))
    throw PreconditionError("p is not a fixed point of the map");
  if (map.oscillates_at_zero() && p == 0.0 && !options.double_precision) return find_sin(map, code, depth, options);
  return find_generic(map, p, code, depth, tol);
}

}  // namespace unimap

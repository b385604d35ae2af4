#include "unimap/universality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "unimap/errors.hpp"

namespace unimap {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

std::optional<ValueSide> value_side(double v, double p) {
  if (v > p) return ValueSide::above;
  if (v < p) return ValueSide::below;
  return std::nullopt;
}

Interval side_band(const IntervalMap& map, double p, Side side, double width) {
  Interval dom = map.domain();
  if (side == Side::right) return {p, std::min(dom.hi, p + width)};
  return {std::max(dom.lo, p - width), p};
}

// Root of f(x) = y on a monotone piece [a, b].
double invert_on_piece(const IntervalMap& map, double a, double b, double y, double tol) {
  double fa = map(a) - y, fb = map(b) - y;
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa < 0) == (fb < 0)) return std::abs(fa) < std::abs(fb) ? a : b;
  for (int it = 0; it < 400 && b - a > std::max(tol, 4 * kEps * std::abs(a)); ++it) {
    double m = a + 0.5 * (b - a);
    if (m <= a || m >= b) break;
    double fm = map(m) - y;
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

}  // namespace

bool contraction_region_contains(const IntervalMap& map, double p, Interval region, double tol) {
  if (region.lo < p && region.hi > p) throw PreconditionError("region straddles p");
  if (region.contains(p)) return false;
  if (map.oscillates_at_zero() && p == 0.0 && map.family() == Family::scaled_sin && map.r() < 1) {
    return true;  // |f(x)| <= r |x| < |x| off 0
  }
  std::vector<Interval> work{region};
  std::size_t budget = 200000;
  while (!work.empty()) {
    if (budget-- == 0) return false;
    Interval seg = work.back();
    work.pop_back();
    double dist = std::min(std::abs(seg.lo - p), std::abs(seg.hi - p));
    RangeResult r = range_on(map, seg, tol);
    double worst = std::max(std::abs(r.inf - p), std::abs(r.sup - p));
    if (worst < dist) continue;
    if (seg.width() < tol) return false;
    double m = seg.mid();
    work.push_back({seg.lo, m});
    work.push_back({m, seg.hi});
  }
  return true;
}

std::vector<ZeroInfo> zeros_near_fixed(const IntervalMap& map, double p, Side side, double delta, double tol,
                                       std::optional<double> min_distance) {
  if (!(delta > tol)) throw PreconditionError("zeros_near_fixed needs delta > tol");
  Interval band = side_band(map, p, side, delta);
  if (!(band.width() > 0)) return {};
  double floor_dist = min_distance.value_or(delta / 64);
  std::vector<double> roots;
  if (map.oscillates_at_zero() && p == 0.0) {
    Interval search = side == Side::right ? Interval{std::max(band.lo, floor_dist), band.hi}
                                          : Interval{band.lo, std::min(band.hi, -floor_dist)};
    if (search.hi > search.lo) roots = preimages_of(map, p, search, tol, floor_dist);
  } else {
    roots = preimages_of(map, p, band, tol, floor_dist);
  }
  std::vector<ZeroInfo> out;
  const double sgn = side == Side::right ? 1.0 : -1.0;
  for (double b : roots) {
    double d = (b - p) * sgn;
    if (!(d > 0) || !(d < delta)) continue;
    ZeroInfo z;
    z.b = b;
    z.side_of_p = side;
    // Probe just past b inside the neighbouring monotone pieces.
    double h = std::max(1e-9 * d, 64 * kEps * std::abs(b));
    if (map.oscillates_at_zero()) h = std::min(h, 1e-3 * d * d);
    Interval dom = map.domain();
    double toward_x = b - sgn * h, away_x = b + sgn * h;
    if (dom.contains(toward_x)) z.toward = value_side(map(toward_x), p);
    if (dom.contains(away_x)) z.away = value_side(map(away_x), p);
    z.isolated = z.toward && z.away && *z.toward != *z.away;
    out.push_back(z);
  }
  std::sort(out.begin(), out.end(), [p](const ZeroInfo& a, const ZeroInfo& b) {
    return std::abs(a.b - p) > std::abs(b.b - p);
  });
  return out;
}

CertificationResult certify_universal(const IntervalMap& map, double p, double eps0, std::size_t num_scales,
                                      double tol) {
  if (!map.domain().contains(p) || std::abs(map(p) - p) > std::max(tol, 1e-12 * std::max(1.0, std::abs(p))))
    throw PreconditionError("p is not a fixed point of the map");
  if (!(eps0 > 0)) throw PreconditionError("eps0 must be positive");

  CertificationResult out;
  UniversalityCertificate cert;
  cert.p = p;
  const double slack = 8 * kEps * std::abs(p);
  for (std::size_t j = 0; j < num_scales; ++j) {
    const double eps = std::ldexp(eps0, -static_cast<int>(j));
    std::array<SideWitness, 4> w{};
    for (Side side : {Side::right, Side::left}) {
      Interval band = side_band(map, p, side, eps);
      std::optional<RangeResult> r;
      // Oscillating maps: resolve relative to the envelope at this scale.
      double range_tol = tol * map.envelope(eps).value_or(1.0);
      if (band.width() > 0) r = range_on(map, band, range_tol);
      double swing_up = r ? r->sup - p : 0.0;
      double swing_down = r ? p - r->inf : 0.0;
      double margin = tol * std::max(swing_up, swing_down) + slack;
      for (ValueSide vs : {ValueSide::above, ValueSide::below}) {
        bool ok = r && (vs == ValueSide::above ? swing_up > margin : swing_down > margin);
        double x = r ? (vs == ValueSide::above ? r->arg_sup : r->arg_inf) : p;
        if (ok) {
          // Independent re-check by direct evaluation.
          double fx = map(x);
          ok = x != p && (vs == ValueSide::above ? fx > p : fx < p) && std::abs(x - p) <= eps;
        }
        if (!ok) {
          out.failure = CertificationFailure{j, eps, side, vs};
          return out;
        }
        std::size_t slot = (side == Side::right ? 0 : 1) + (vs == ValueSide::above ? 0 : 2);
        w[slot] = SideWitness{eps, side, x, vs, map(x)};
      }
    }
    cert.scales.push_back(eps);
    for (const auto& sw : w) cert.a_seq.push_back(sw.x);
    cert.witnesses.push_back(w);
  }
  out.certificate = std::move(cert);
  return out;
}

Interval exact_subinterval(const IntervalMap& map, Interval I, Interval J, double tol) {
  double cutoff = 0.0;
  if (map.oscillates_at_zero()) {
    if (I.contains(0.0)) throw PreconditionError("exact_subinterval needs I away from 0 for oscillating maps");
    cutoff = 0.5 * std::min(std::abs(I.lo), std::abs(I.hi));
  }
  auto pieces = monotone_pieces(map, I, cutoff);
  for (const auto& piece : pieces.pieces) {
    double fa = map(piece.interval.lo), fb = map(piece.interval.hi);
    double lo = std::min(fa, fb), hi = std::max(fa, fb);
    if (lo > J.lo + tol || hi < J.hi - tol) continue;
    if (piece.direction == Direction::constant && J.width() > tol) continue;
    double ya = std::clamp(J.lo, lo, hi), yb = std::clamp(J.hi, lo, hi);
    double ka = invert_on_piece(map, piece.interval.lo, piece.interval.hi, ya, tol);
    double kb = invert_on_piece(map, piece.interval.lo, piece.interval.hi, yb, tol);
    return {std::min(ka, kb), std::max(ka, kb)};
  }
  throw PreconditionError("no monotone piece of I covers J");
}

namespace {

std::size_t orbit_index(std::size_t n) {
  std::size_t q = n / 4;
  switch (n % 4) {
    case 0: return 4 * q + 2;
    case 1: return 4 * q + 1;
    case 2: return 4 * q + 3;
    default: return 4 * q;
  }
}

std::size_t orbit_terms_needed(std::size_t n) {
  std::size_t need = 0;
  for (std::size_t i = 0; i < n; ++i) need = std::max(need, orbit_index(i) + 2);
  return std::max(need, n + 1);
}

}  // namespace

std::vector<double> build_a_seq_from_orbit(std::span<const double> orbit, double p, std::size_t n) {
  std::size_t need = orbit_terms_needed(n);
  if (orbit.size() < need) throw PreconditionError("orbit too short for the requested sequence");
  OrbitSample sample{std::vector<double>(orbit.begin(), orbit.begin() + static_cast<long>(need)), p, 0.0};
  EncodeResult enc = encode_orbit(sample);
  LRCode expected = parse_code("(RRLL)*");
  auto labels = enc.code.take(need - 1);
  if (labels.size() < need - 1 || labels != expected.take(need - 1))
    throw PreconditionError("orbit does not follow the pattern (RRLL)*");
  std::vector<double> a;
  a.reserve(n);
  for (std::size_t i = 0; i < n; ++i) a.push_back(orbit[orbit_index(i)]);
  return a;
}

std::vector<double> build_a_seq_from_orbit(const IntervalMap& map, double p, double x, std::size_t n) {
  OrbitSample orbit = iterate(map, x, orbit_terms_needed(n));
  return build_a_seq_from_orbit(std::span<const double>(orbit.terms), p, n);
}

std::vector<double> a_seq_images_from_orbit(std::span<const double> orbit, std::size_t n) {
  if (orbit.size() < orbit_terms_needed(n)) throw PreconditionError("orbit too short for the requested sequence");
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(orbit[orbit_index(i) + 1]);
  return out;
}

ASeqCheck check_a_seq(double p, std::span<const double> a_seq, std::span<const double> images,
                      std::optional<std::span<const double>> scales) {
  if (images.size() != a_seq.size()) throw PreconditionError("one image per sequence term is needed");
  auto fail = [](std::size_t n) { return ASeqCheck{false, n}; };
  for (std::size_t n = 0; n < a_seq.size(); ++n) {
    bool above = n % 2 == 0;
    if (above ? !(a_seq[n] > p) : !(a_seq[n] < p)) return fail(n);
    bool image_above = n % 4 < 2;
    if (image_above ? !(images[n] > p) : !(images[n] < p)) return fail(n);
    if (scales) {
      if (n / 4 >= scales->size() || std::abs(a_seq[n] - p) > (*scales)[n / 4]) return fail(n);
    }
  }
  if (!scales) {
    double prev = std::numeric_limits<double>::infinity();
    for (std::size_t start = 0; start < a_seq.size(); start += 4) {
      double block = 0.0;
      std::size_t worst = start;
      for (std::size_t n = start; n < std::min(start + 4, a_seq.size()); ++n) {
        if (std::abs(a_seq[n] - p) > block) {
          block = std::abs(a_seq[n] - p);
          worst = n;
        }
      }
      if (!(block < prev)) return fail(worst);
      prev = block;
    }
  }
  return {};
}

ASeqCheck check_a_seq(const IntervalMap& map, double p, std::span<const double> a_seq,
                      std::optional<std::span<const double>> scales) {
  std::vector<double> images;
  images.reserve(a_seq.size());
  for (double a : a_seq) images.push_back(map(a));
  return check_a_seq(p, a_seq, images, scales);
}

}  // namespace unimap

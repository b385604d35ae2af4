#include "unimap/synthesis.hpp"

#include <algorithm>
#include <map>

#include "unimap/errors.hpp"

namespace unimap {

SynthesisResult synthesize_map(const LRCode& code, std::size_t truncation) {
  std::size_t n;
  if (auto len = code.length()) {
    n = *len + 1;
  } else {
    if (truncation < 2) throw PreconditionError("truncation must be >= 2");
    n = truncation;
  }
  std::vector<Rational> orbit = canonical_representative(code, n);

  // Successor of each orbit value; the last term of a truncated infinite
  // orbit goes to 0, and 0 itself is fixed.
  std::map<Rational, Rational> graph;
  graph.emplace(Rational(0), Rational(0));
  for (std::size_t k = 0; k < orbit.size(); ++k) {
    Rational next = k + 1 < orbit.size() ? orbit[k + 1] : Rational(0);
    auto [it, inserted] = graph.emplace(orbit[k], next);
    if (!inserted && it->second != next)
      throw std::logic_error("canonical representative repeats a nonzero value");
  }
  std::vector<Breakpoint> points;
  points.reserve(graph.size());
  for (const auto& [x, y] : graph) points.push_back({x, y});
  IntervalMap map = IntervalMap::piecewise_linear(Rational(-1), Rational(1), std::move(points));
  Rational start = orbit.front();
  return {std::move(map), std::move(start), std::move(orbit)};
}

F1Check verify_f1_pwl(const IntervalMap& map) {
  if (!map.is_piecewise_linear()) throw PreconditionError("verify_f1_pwl needs a piecewise-linear map");
  const auto& pts = map.breakpoints();
  if (pts.front().x > 0 || pts.back().x < 0) throw PreconditionError("0 is outside the breakpoint hull");
  if (map(Rational(0)) != 0) throw PreconditionError("f(0) != 0");

  // |f(x)| < |x| is linear on each side of 0, so checking the nonzero ends of
  // every segment suffices; a segment through 0 is split there.
  auto bad = [](const Rational& x, const Rational& y) { return x != 0 && !(abs(y) < abs(x)); };
  auto check = [&](const Rational& x, const Rational& y) -> std::optional<Rational> {
    if (bad(x, y)) return x;
    return std::nullopt;
  };
  // Constant extension: f = y_0 on [lo, x_0], worst at x_0 for the side of x_0.
  std::vector<std::pair<Rational, Rational>> probes;
  probes.emplace_back(map.domain_lo(), pts.front().y);
  for (const auto& p : pts) probes.emplace_back(p.x, p.y);
  probes.emplace_back(map.domain_hi(), pts.back().y);
  std::sort(probes.begin(), probes.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [x, y] : probes) {
    if (auto w = check(x, y)) return {false, w};
  }
  return {};
}

}  // namespace unimap

#pragma once

// Piecewise-linear maps realizing a prescribed L/R code.
//
// The orbit x_1..x_N is the canonical representative of the code; each orbit
// value is sent to its successor, 0 is fixed, and the map is linear between
// consecutive orbit values and constant outside their hull (domain [-1, 1]).

#include <cstddef>
#include <optional>
#include <vector>

#include "unimap/codes.hpp"
#include "unimap/maps.hpp"
#include "unimap/rational.hpp"

namespace unimap {

struct SynthesisResult {
  IntervalMap map;
  Rational start;
  // x_1..x_N as used by the construction.
  std::vector<Rational> orbit;
};

// N = |code| + 1 for finite codes, N = truncation for infinite ones. For
// finite codes truncation is ignored; for infinite codes it must be >= 2.
SynthesisResult synthesize_map(const LRCode& code, std::size_t truncation = 40);

struct F1Check {
  bool ok = true;
  std::optional<Rational> witness;
};

// Exact check of |f(x)| < |x| for x != 0 over the breakpoint hull and the
// constant extension. Throws PreconditionError when f(0) != 0 or 0 is not
// covered by the breakpoints.
F1Check verify_f1_pwl(const IntervalMap& map);

}  // namespace unimap

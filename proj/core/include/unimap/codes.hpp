#pragma once

// L/R codes of orbits in the first Sharkovsky class.
//
// An orbit x_1, x_2, ... converging to a fixed point p is labelled term by term:
// L when the next term is smaller, R when it is larger. Labelling stops at the
// first term equal to p, so a code is a finite word, an infinite sequence, or
// (for maps with no 2-cycle) equivalently the full order pattern of the orbit.
// Orbit positions are 1-based throughout.

#include <compare>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "unimap/bigfloat.hpp"
#include "unimap/rational.hpp"

namespace unimap {

enum class Label : char { L = 'L', R = 'R' };

inline char to_char(Label l) { return static_cast<char>(l); }

class LRCode {
 public:
  enum class Kind { finite, periodic, stream };
  using Source = std::function<std::optional<Label>()>;

  LRCode() = default;

  static LRCode finite(std::vector<Label> word);
  // Stored canonically: minimal period, shortest prefix.
  static LRCode periodic(std::vector<Label> prefix, std::vector<Label> period);
  // Labels are pulled on demand and cached. `source` returns nullopt once it
  // is exhausted. The source must not be shared with another consumer.
  static LRCode stream(Source source);

  Kind kind() const { return kind_; }
  bool is_infinite() const { return kind_ != Kind::finite; }
  const std::vector<Label>& prefix() const { return prefix_; }
  const std::vector<Label>& period() const { return period_; }
  // Word length for finite codes; nullopt otherwise.
  std::optional<std::size_t> length() const;

  // Label at 1-based `position`; nullopt past the end of a finite word.
  // Throws UnavailableLabel when a stream is exhausted first.
  std::optional<Label> at(std::size_t position) const;
  // The first min(n, length) labels.
  std::vector<Label> take(std::size_t n) const;

  // Text in the code grammar. Throws UndecidableEquality for streams.
  std::string to_string() const;

 private:
  struct StreamState {
    Source source;
    std::vector<Label> buffer;
    bool exhausted = false;
  };

  Kind kind_ = Kind::finite;
  std::vector<Label> prefix_;
  std::vector<Label> period_;
  std::shared_ptr<StreamState> stream_;
};

// code := word | word "(" word+ ")*"   with word := [LR]*
LRCode parse_code(std::string_view text);

struct OrbitSample {
  std::vector<double> terms;
  std::optional<double> limit;
  double tolerance = 1e-12;
};

struct EncodeResult {
  LRCode code;
  bool terminated = false;
};

// Relative tolerance: a step counts as a stall when |x_{i+1} - x_i| <=
// tolerance * max(1, |x_i|).
EncodeResult encode_orbit(const OrbitSample& sample);
EncodeResult encode_orbit(std::span<const Rational> terms);
EncodeResult encode_orbit(std::span<const BigFloat> terms, const BigFloat& tolerance);

struct WallCheck {
  bool holds = true;
  // Lexicographically first violating (n, m), 1-based, n < m.
  std::optional<std::pair<std::size_t, std::size_t>> violation;
};

WallCheck wall_check(const OrbitSample& sample);
WallCheck wall_check(std::span<const Rational> terms);

// Later terms on the same strict side of p are strictly nearer to p.
bool wall_check_distance(const OrbitSample& sample, double p);

// Order of orbit positions m and n (1-based, m != n) implied by the code:
// for m < n, greater when label m is L, less when R, equivalent when the
// orbit has reached its fixed point by position m.
std::strong_ordering cmp_from_code(const LRCode& code, std::size_t m, std::size_t n);

class OrderPattern {
 public:
  explicit OrderPattern(LRCode code) : code_(std::move(code)) {}
  const LRCode& code() const { return code_; }
  std::strong_ordering compare(std::size_t m, std::size_t n) const {
    return cmp_from_code(code_, m, n);
  }

 private:
  LRCode code_;
};

bool same_pattern(const LRCode& a, const LRCode& b);

// Terms x_1..x_length of the orbit over {+-1/k} u {0} realizing the code:
// x_k = 1/k for label L, -1/k for R, 0 once the code has ended.
std::vector<Rational> canonical_representative(const LRCode& code, std::size_t length);

}  // namespace unimap

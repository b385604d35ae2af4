#include "unimap/map_spec.hpp"

#include <cctype>
#include <optional>
#include <vector>

#include "unimap/errors.hpp"

namespace unimap {

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  std::size_t pos() const { return pos_; }
  bool done() {
    skip_space();
    return pos_ >= text_.size();
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string_view word() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) && text_[pos_] != '=') ++pos_;
    return text_.substr(start, pos_ - start);
  }

  void expect(char c) {
    if (pos_ >= text_.size() || text_[pos_] != c) throw ParseError(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }

  bool peek(char c) const { return pos_ < text_.size() && text_[pos_] == c; }

  // Number ending at any of `stops` (or whitespace / end).
  Rational number(std::string_view stops) {
    std::size_t start = pos_;
    while (pos_ < text_.size() && stops.find(text_[pos_]) == std::string_view::npos &&
           !std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    if (pos_ == start) throw ParseError("expected a number", start);
    try {
      return parse_rational(text_.substr(start, pos_ - start));
    } catch (const ParseError& e) {
      throw ParseError("bad number", start + e.offset());
    }
  }

  // key=
  void key(std::string_view name) {
    skip_space();
    std::size_t start = pos_;
    std::string_view w = word();
    if (w != name) throw ParseError("expected '" + std::string(name) + "='", start);
    expect('=');
  }

  std::pair<Rational, Rational> domain() {
    key("domain");
    expect('[');
    Rational lo = number(",");
    expect(',');
    Rational hi = number("]");
    expect(']');
    return {lo, hi};
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

void expect_end(Cursor& c) {
  if (!c.done()) throw ParseError("trailing characters in map spec", c.pos());
}

}  // namespace

IntervalMap parse_map_spec(std::string_view text) {
  Cursor c(text);
  c.skip_space();
  std::size_t head_pos = c.pos();
  std::string_view head = c.word();
  if (head == "builtin") {
    c.skip_space();
    std::size_t fam_pos = c.pos();
    std::string_view family = c.word();
    if (family == "scaled-sin") {
      c.key("r");
      Rational r = c.number("");
      auto [lo, hi] = c.domain();
      expect_end(c);
      return IntervalMap::scaled_sin(r, lo, hi);
    }
    if (family == "cubic-fifth-sin") {
      auto [lo, hi] = c.domain();
      expect_end(c);
      return IntervalMap::cubic_fifth_sin(lo, hi);
    }
    if (family == "linear") {
      c.key("a");
      Rational a = c.number("");
      c.key("b");
      Rational b = c.number("");
      auto [lo, hi] = c.domain();
      expect_end(c);
      return IntervalMap::linear(a, b, lo, hi);
    }
    throw ParseError("unknown builtin family", fam_pos);
  }
  if (head == "pwl") {
    auto [lo, hi] = c.domain();
    c.key("points");
    std::vector<Breakpoint> points;
    do {
      c.expect('(');
      Rational x = c.number(":");
      c.expect(':');
      Rational y = c.number(")");
      c.expect(')');
      points.push_back({x, y});
    } while (c.peek(',') && (c.expect(','), true));
    expect_end(c);
    return IntervalMap::piecewise_linear(lo, hi, std::move(points));
  }
  throw ParseError("map spec must start with 'builtin' or 'pwl'", head_pos);
}

std::string format_map_spec(const IntervalMap& map) {
  auto dom = "domain=[" + to_decimal_string(map.domain_lo()) + "," + to_decimal_string(map.domain_hi()) + "]";
  switch (map.family()) {
    case Family::scaled_sin:
      return "builtin scaled-sin r=" + to_decimal_string(map.r()) + " " + dom;
    case Family::cubic_fifth_sin:
      return "builtin cubic-fifth-sin " + dom;
    case Family::linear:
      return "builtin linear a=" + to_decimal_string(map.a()) + " b=" + to_decimal_string(map.b()) + " " + dom;
    case Family::piecewise_linear: {
      std::string out = "pwl " + dom + " points=";
      bool first = true;
      for (const auto& p : map.breakpoints()) {
        if (!first) out += ",";
        first = false;
        out += "(" + to_string(p.x) + ":" + to_string(p.y) + ")";
      }
      return out;
    }
    case Family::custom:
      break;
  }
  throw PreconditionError("custom maps have no text form");
}

}  // namespace unimap

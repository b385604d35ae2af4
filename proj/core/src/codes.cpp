#include "unimap/codes.hpp"

#include <algorithm>
#include <cmath>

#include "unimap/errors.hpp"

namespace unimap {

namespace {

// Length of the shortest word whose repetition gives `word`.
std::size_t primitive_root_length(const std::vector<Label>& word) {
  const std::size_t n = word.size();
  std::vector<std::size_t> failure(n, 0);
  for (std::size_t i = 1, k = 0; i < n; ++i) {
    while (k > 0 && word[i] != word[k]) k = failure[k - 1];
    if (word[i] == word[k]) ++k;
    failure[i] = k;
  }
  std::size_t d = n - failure[n - 1];
  return n % d == 0 ? d : n;
}

enum class Step { left, right, stall };

template <class T, class IsStall>
EncodeResult encode_terms(std::span<const T> terms, IsStall is_stall) {
  std::vector<Label> labels;
  for (std::size_t i = 0; i + 1 < terms.size(); ++i) {
    if (is_stall(terms[i], terms[i + 1])) return {LRCode::finite(std::move(labels)), true};
    labels.push_back(terms[i + 1] < terms[i] ? Label::L : Label::R);
  }
  return {LRCode::finite(std::move(labels)), false};
}

template <class T, class Compare>
WallCheck wall_terms(std::span<const T> t, Compare cmp) {
  // cmp(a, b) < 0, == 0, > 0 with tolerance folded in.
  for (std::size_t n = 0; n + 1 < t.size(); ++n) {
    int step = cmp(t[n + 1], t[n]);
    for (std::size_t m = n + 1; m < t.size(); ++m) {
      if (cmp(t[m], t[n]) != step) return {false, std::pair{n + 1, m + 1}};
    }
  }
  return {};
}

int sign_of(double v) { return (v > 0) - (v < 0); }

}  // namespace

LRCode LRCode::finite(std::vector<Label> word) {
  LRCode c;
  c.kind_ = Kind::finite;
  c.prefix_ = std::move(word);
  return c;
}

LRCode LRCode::periodic(std::vector<Label> prefix, std::vector<Label> period) {
  if (period.empty()) throw PreconditionError("periodic code needs a nonempty period");
  period.resize(primitive_root_length(period));
  while (!prefix.empty() && prefix.back() == period.back()) {
    std::rotate(period.rbegin(), period.rbegin() + 1, period.rend());
    prefix.pop_back();
  }
  LRCode c;
  c.kind_ = Kind::periodic;
  c.prefix_ = std::move(prefix);
  c.period_ = std::move(period);
  return c;
}

LRCode LRCode::stream(Source source) {
  LRCode c;
  c.kind_ = Kind::stream;
  c.stream_ = std::make_shared<StreamState>();
  c.stream_->source = std::move(source);
  return c;
}

std::optional<std::size_t> LRCode::length() const {
  if (kind_ == Kind::finite) return prefix_.size();
  return std::nullopt;
}

std::optional<Label> LRCode::at(std::size_t position) const {
  if (position == 0) throw PreconditionError("code positions are 1-based");
  const std::size_t i = position - 1;
  switch (kind_) {
    case Kind::finite:
      if (i < prefix_.size()) return prefix_[i];
      return std::nullopt;
    case Kind::periodic:
      if (i < prefix_.size()) return prefix_[i];
      return period_[(i - prefix_.size()) % period_.size()];
    case Kind::stream: {
      auto& s = *stream_;
      while (s.buffer.size() <= i && !s.exhausted) {
        if (auto next = s.source()) {
          s.buffer.push_back(*next);
        } else {
          s.exhausted = true;
        }
      }
      if (i < s.buffer.size()) return s.buffer[i];
      throw UnavailableLabel("stream code exhausted before position " + std::to_string(position));
    }
  }
  return std::nullopt;
}

std::vector<Label> LRCode::take(std::size_t n) const {
  std::vector<Label> out;
  if (auto len = length()) n = std::min(n, *len);
  out.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) out.push_back(*at(i));
  return out;
}

std::string LRCode::to_string() const {
  if (kind_ == Kind::stream) throw UndecidableEquality("stream codes have no finite text form");
  std::string out;
  for (Label l : prefix_) out.push_back(to_char(l));
  if (kind_ == Kind::periodic) {
    out.push_back('(');
    for (Label l : period_) out.push_back(to_char(l));
    out += ")*";
  }
  return out;
}

LRCode parse_code(std::string_view text) {
  auto label_at = [&](std::size_t i) -> std::optional<Label> {
    if (text[i] == 'L') return Label::L;
    if (text[i] == 'R') return Label::R;
    return std::nullopt;
  };

  std::vector<Label> prefix;
  std::size_t i = 0;
  for (; i < text.size(); ++i) {
    if (auto l = label_at(i)) {
      prefix.push_back(*l);
    } else {
      break;
    }
  }
  if (i == text.size()) return LRCode::finite(std::move(prefix));
  if (text[i] != '(') throw ParseError("expected 'L', 'R' or '('", i);
  ++i;

  std::vector<Label> period;
  for (; i < text.size(); ++i) {
    if (auto l = label_at(i)) {
      period.push_back(*l);
    } else {
      break;
    }
  }
  if (period.empty()) throw ParseError("period must contain at least one label", i);
  if (i >= text.size() || text[i] != ')') throw ParseError("expected ')'", i);
  ++i;
  if (i >= text.size() || text[i] != '*') throw ParseError("expected '*' after ')'", i);
  ++i;
  if (i != text.size()) throw ParseError("trailing characters after periodic code", i);
  return LRCode::periodic(std::move(prefix), std::move(period));
}

EncodeResult encode_orbit(const OrbitSample& sample) {
  const double tol = sample.tolerance;
  return encode_terms(std::span<const double>(sample.terms), [tol](double a, double b) {
    return std::abs(b - a) <= tol * std::max(1.0, std::abs(a));
  });
}

EncodeResult encode_orbit(std::span<const Rational> terms) {
  return encode_terms(terms, [](const Rational& a, const Rational& b) { return a == b; });
}

EncodeResult encode_orbit(std::span<const BigFloat> terms, const BigFloat& tolerance) {
  return encode_terms(terms, [&tolerance](const BigFloat& a, const BigFloat& b) {
    BigFloat scale = abs(a);
    if (scale < 1.0) scale = BigFloat(1.0, scale.precision());
    return abs(b - a) <= tolerance * scale;
  });
}

WallCheck wall_check(const OrbitSample& sample) {
  const double tol = sample.tolerance;
  return wall_terms(std::span<const double>(sample.terms), [tol](double a, double b) {
    if (std::abs(a - b) <= tol * std::max(1.0, std::abs(b))) return 0;
    return sign_of(a - b);
  });
}

WallCheck wall_check(std::span<const Rational> terms) {
  return wall_terms(terms, [](const Rational& a, const Rational& b) { return cmp(a, b) < 0 ? -1 : (a == b ? 0 : 1); });
}

bool wall_check_distance(const OrbitSample& sample, double p) {
  const auto& t = sample.terms;
  for (std::size_t n = 0; n < t.size(); ++n) {
    int side_n = sign_of(t[n] - p);
    if (side_n == 0) continue;
    for (std::size_t m = n + 1; m < t.size(); ++m) {
      if (sign_of(t[m] - p) != side_n) continue;
      if (!(std::abs(t[m] - p) < std::abs(t[n] - p))) return false;
    }
  }
  return true;
}

std::strong_ordering cmp_from_code(const LRCode& code, std::size_t m, std::size_t n) {
  if (m == 0 || n == 0) throw PreconditionError("orbit positions are 1-based");
  if (m == n) throw PreconditionError("cmp_from_code needs distinct positions");
  if (m > n) return 0 <=> cmp_from_code(code, n, m);
  auto label = code.at(m);
  if (!label) return std::strong_ordering::equal;
  return *label == Label::L ? std::strong_ordering::greater : std::strong_ordering::less;
}

bool same_pattern(const LRCode& a, const LRCode& b) {
  if (a.kind() == LRCode::Kind::stream || b.kind() == LRCode::Kind::stream)
    throw UndecidableEquality("pattern equality is undecidable for stream codes");
  return a.kind() == b.kind() && a.prefix() == b.prefix() && a.period() == b.period();
}

std::vector<Rational> canonical_representative(const LRCode& code, std::size_t length) {
  if (length == 0) throw PreconditionError("canonical representative needs length >= 1");
  std::vector<Rational> out;
  out.reserve(length);
  bool ended = false;
  for (std::size_t k = 1; k <= length; ++k) {
    std::optional<Label> label;
    if (!ended) {
      label = code.at(k);
      ended = !label;
    }
    if (!label) {
      out.emplace_back(0);
    } else {
      Rational term(1, k);
      out.push_back(*label == Label::L ? term : Rational(-term));
    }
  }
  return out;
}

}  // namespace unimap

#pragma once

// Independent reference computations used to check the library.

#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "unimap/codes.hpp"
#include "unimap/rational.hpp"

namespace oracle {

// Root of tan t = t on (pi, 3pi/2) by plain bisection on sin t - t cos t.
inline double tan_fixed_point() {
  double lo = std::numbers::pi + 1e-9, hi = 1.5 * std::numbers::pi - 1e-9;
  auto g = [](double t) { return std::sin(t) - t * std::cos(t); };
  for (int i = 0; i < 200; ++i) {
    double m = 0.5 * (lo + hi);
    if ((g(m) < 0) == (g(lo) < 0)) lo = m; else hi = m;
  }
  return 0.5 * (lo + hi);
}

// Labels of consecutive moves, '-' once the orbit stalls.
inline std::string move_labels(const std::vector<double>& xs) {
  std::string s;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    if (xs[i + 1] > xs[i]) s += 'R';
    else if (xs[i + 1] < xs[i]) s += 'L';
    else break;
  }
  return s;
}

inline std::string word(const std::vector<unimap::Label>& w) {
  std::string s;
  for (auto l : w) s += unimap::to_char(l);
  return s;
}

// Every LR word of length exactly n.
inline std::vector<std::string> words_of_length(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t bits = 0; bits < (std::size_t{1} << n); ++bits) {
    std::string w;
    for (std::size_t i = 0; i < n; ++i) w += (bits >> (n - 1 - i)) & 1 ? 'R' : 'L';
    out.push_back(w);
  }
  return out;
}

inline std::vector<std::string> words_up_to(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t k = 0; k <= n; ++k)
    for (auto& w : words_of_length(k)) out.push_back(w);
  return out;
}

inline std::string random_word(std::mt19937_64& rng, std::size_t n) {
  std::string w;
  for (std::size_t i = 0; i < n; ++i) w += rng() & 1 ? 'R' : 'L';
  return w;
}

// Eventually-periodic code text with |prefix| <= 6 and 1 <= |period| <= 6.
inline std::string random_periodic(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pre(0, 6), per(1, 6);
  return random_word(rng, pre(rng)) + "(" + random_word(rng, per(rng)) + ")*";
}

// Label at 1-based position k of a code text, expanding the period by hand.
inline char label_at(const std::string& text, std::size_t k) {
  auto open = text.find('(');
  if (open == std::string::npos) return k <= text.size() ? text[k - 1] : '-';
  std::string prefix = text.substr(0, open);
  std::string period = text.substr(open + 1, text.find(')') - open - 1);
  if (k <= prefix.size()) return prefix[k - 1];
  return period[(k - prefix.size() - 1) % period.size()];
}

inline std::string expand(const std::string& text, std::size_t n) {
  std::string s;
  for (std::size_t k = 1; k <= n; ++k) {
    char c = label_at(text, k);
    if (c == '-') break;
    s += c;
  }
  return s;
}

// Wall-valid samples: terms below p increase, terms above p decrease, in a
// random interleaving. Mutations swap two same-side terms ahead of a later
// opposite-side term, which breaks both wall conditions.
struct WallSample {
  std::vector<double> terms;
  double p = 0.0;
};

inline WallSample wall_positive(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> len(4, 20);
  std::uniform_real_distribution<double> u(0.3, 0.95), pd(-0.5, 0.5);
  WallSample s;
  s.p = pd(rng);
  int n = len(rng);
  double below = 1.0, above = 1.0;
  for (int i = 0; i < n; ++i) {
    bool up = i == 0 ? true : i == 1 ? false : (rng() & 1);
    double& d = up ? above : below;
    d *= u(rng);
    s.terms.push_back(up ? s.p + d : s.p - d);
  }
  return s;
}

inline WallSample wall_mutant(std::mt19937_64& rng) {
  for (;;) {
    WallSample s = wall_positive(rng);
    std::vector<std::pair<std::size_t, std::size_t>> options;
    auto side = [&](std::size_t i) { return s.terms[i] > s.p; };
    for (std::size_t i = 0; i < s.terms.size(); ++i) {
      std::size_t j = i + 1;
      while (j < s.terms.size() && side(j) != side(i)) ++j;
      if (j >= s.terms.size()) continue;
      bool opposite_later = false;
      for (std::size_t k = i + 1; k < s.terms.size(); ++k)
        if (k != j && side(k) != side(i)) opposite_later = true;
      if (opposite_later) options.emplace_back(i, j);
    }
    if (options.empty()) continue;
    auto [i, j] = options[rng() % options.size()];
    std::swap(s.terms[i], s.terms[j]);
    return s;
  }
}

}  // namespace oracle

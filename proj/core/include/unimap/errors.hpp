#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace unimap {

// Malformed code or map-spec text. `offset()` is the byte offset of the first
// offending character.
class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::invalid_argument(what + " (at byte " + std::to_string(offset) + ")"),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

// Argument outside a map's domain, or a map that is not a self-map.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A documented precondition of an operation does not hold.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A stream code ran dry before the requested position.
class UnavailableLabel : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Equality was requested on codes for which it is not decidable (streams).
class UndecidableEquality : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace unimap

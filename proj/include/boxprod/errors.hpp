#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace boxprod {

/// Malformed arguments: degree mismatch, out-of-range point, equal points.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An operation was called outside its mathematical hypotheses.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// The requested vertex lies outside the region on which a partial tree
/// automorphism is defined. Raising the ambient depth usually cures it.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configured size bound (domain degree, vertex count, enumeration size)
/// would be exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

}  // namespace boxprod

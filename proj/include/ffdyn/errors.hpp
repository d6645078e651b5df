#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ffdyn {

// A well-formed request whose mathematical preconditions fail (exceptional
// target, preperiodic point where a wandering one is needed, caps exceeded).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed expression text; position is a 0-based character offset.
class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& message, std::size_t position)
      : std::invalid_argument(message + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

}  // namespace ffdyn

#pragma once

#include <stdexcept>
#include <string>

namespace mv {

// Syntax error in any of the text formats (elements, sentences, instance files).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string msg, size_t pos)
      : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"),
        position(pos) {}
  size_t position;
};

// Precondition violation: mixed fields, division by zero, bad arity, ...
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// A cross-check inside a certified operation disagreed with the direct
// criterion.  Always a bug, never user error.
class InternalCheckError : public std::logic_error {
 public:
  explicit InternalCheckError(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace mv

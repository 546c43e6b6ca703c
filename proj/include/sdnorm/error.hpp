#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sdnorm {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

class InvalidDiagram : public Error {
 public:
  using Error::Error;
};

class NotAdmissible : public Error {
 public:
  NotAdmissible(std::size_t height, bool right)
      : Error(std::string(right ? "right" : "left") +
              " exchange not admissible at height " + std::to_string(height)),
        height(height),
        right(right) {}

  std::size_t height;
  bool right;
};

class NotBoundaryConnected : public Error {
 public:
  NotBoundaryConnected()
      : Error("diagram is not boundary-connected") {}
};

class NotConnected : public Error {
 public:
  NotConnected() : Error("diagram is not connected") {}
};

class StepCapExceeded : public Error {
 public:
  explicit StepCapExceeded(std::size_t cap)
      : Error("normalization exceeded the step cap of " + std::to_string(cap)),
        cap(cap) {}

  std::size_t cap;
};

/// Malformed textual input. `line` and `column` are 1-based; 0 means unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column = 0)
      : Error(format(what, line, column)), line(line), column(column) {}

  std::size_t line;
  std::size_t column;

 private:
  static std::string format(const std::string& what, std::size_t line,
                            std::size_t column) {
    std::string out;
    if (line != 0) {
      out = "line " + std::to_string(line);
      if (column != 0) out += ", column " + std::to_string(column);
      out += ": ";
    }
    return out + what;
  }
};

class UnknownGenerator : public Error {
 public:
  UnknownGenerator(const std::string& name, std::size_t position)
      : Error("unknown generator '" + name + "' at position " +
              std::to_string(position)),
        name(name),
        position(position) {}

  std::string name;
  std::size_t position;
};

/// Composition `f . g` where the codomain of `g` differs from the domain of `f`.
class CompositionMismatch : public Error {
 public:
  CompositionMismatch(int expected, int found, std::size_t position)
      : Error("composition mismatch at position " + std::to_string(position) +
              ": expected width " + std::to_string(expected) + ", found " +
              std::to_string(found)),
        expected(expected),
        found(found),
        position(position) {}

  int expected;
  int found;
  std::size_t position;
};

/// A broken internal invariant. Seeing one of these is a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace sdnorm

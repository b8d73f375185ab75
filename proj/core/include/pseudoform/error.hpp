#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pseudoform {

enum class ErrorKind {
  MalformedFacet,
  Dimension,
  MissingFace,
  NotASurface,
  NotACycle,
  Precondition,
  Inconclusive,
  Parse,
  Replay,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised while reading the text formats; `line` is 1-based (0 if unknown).
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(ErrorKind::Parse, "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Raised by trace replay; `index` is the 0-based position of the failing
/// move record.
class ReplayError : public Error {
 public:
  ReplayError(std::size_t index, const std::string& what)
      : Error(ErrorKind::Replay,
              "move " + std::to_string(index) + ": " + what),
        index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

}  // namespace pseudoform

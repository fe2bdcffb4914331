#pragma once

#include <stdexcept>
#include <string>

namespace stochmatch {

enum class ErrorKind {
  kDuplicateEdge,
  kSelfLoop,
  kNonPositiveWeight,
  kProbabilityOutOfRange,
  kInvalidArgument,
  kSizeLimit,
  kOverflow,
  kSelectorMismatch,
  kInfeasible,
  kParse,
  kConfig,
  kIo,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Malformed graph input (build_graph and generators).
class GraphError : public Error {
 public:
  using Error::Error;
};

// Exhaustive oracles refuse inputs beyond their enumeration limit.
class SizeLimitError : public Error {
 public:
  SizeLimitError(const std::string& what, std::size_t size, std::size_t limit)
      : Error(ErrorKind::kSizeLimit,
              what + " (size " + std::to_string(size) + " exceeds limit " +
                  std::to_string(limit) + ")"),
        size_(size),
        limit_(limit) {}
  std::size_t size() const { return size_; }
  std::size_t limit() const { return limit_; }

 private:
  std::size_t size_;
  std::size_t limit_;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& source, int line, const std::string& what)
      : Error(ErrorKind::kParse,
              source + ":" + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace stochmatch

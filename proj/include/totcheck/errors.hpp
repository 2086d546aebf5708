#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace totcheck {

struct Span {
  int line = 0;
  int col = 0;
};

// Base class for every diagnostic the checker reports.  `kind()` is the
// stable tag used in JSON reports.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, std::string message, Span span = {});

  const std::string& kind() const { return kind_; }
  const std::string& message() const { return message_; }
  Span span() const { return span_; }

 private:
  std::string kind_;
  std::string message_;
  Span span_;
};

class ParseError : public Error {
 public:
  ParseError(std::string message, Span span, std::vector<std::string> expected = {});
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::vector<std::string> expected_;
};

class DesugarError : public Error {
 public:
  DesugarError(std::string message, Span span);
};

class TypeError : public Error {
 public:
  TypeError(std::string message, Span span);
};

class CoverageError : public Error {
 public:
  // `detail` is either the uncovered witness or the missing field label.
  CoverageError(std::string message, Span span, std::string detail);
  const std::string& detail() const { return detail_; }

 private:
  std::string detail_;
};

class HigherOrderError : public Error {
 public:
  HigherOrderError(std::string message, Span span);
};

class CycleError : public Error {
 public:
  explicit CycleError(std::string message);
};

class ResourceError : public Error {
 public:
  explicit ResourceError(std::string message);
};

class MatchFailure : public Error {
 public:
  explicit MatchFailure(std::string message);
};

}  // namespace totcheck

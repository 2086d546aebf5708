#include "totcheck/errors.hpp"

#include <fmt/format.h>

namespace totcheck {

namespace {

std::string render(const std::string& kind, const std::string& message, Span span) {
  if (span.line > 0) return fmt::format("{}:{}: {}: {}", span.line, span.col, kind, message);
  return fmt::format("{}: {}", kind, message);
}

}  // namespace

Error::Error(std::string kind, std::string message, Span span)
    : std::runtime_error(render(kind, message, span)),
      kind_(std::move(kind)),
      message_(std::move(message)),
      span_(span) {}

ParseError::ParseError(std::string message, Span span, std::vector<std::string> expected)
    : Error("parse error", std::move(message), span), expected_(std::move(expected)) {}

DesugarError::DesugarError(std::string message, Span span)
    : Error("desugar error", std::move(message), span) {}

TypeError::TypeError(std::string message, Span span) : Error("type error", std::move(message), span) {}

CoverageError::CoverageError(std::string message, Span span, std::string detail)
    : Error("coverage error", std::move(message), span), detail_(std::move(detail)) {}

HigherOrderError::HigherOrderError(std::string message, Span span)
    : Error("higher-order error", std::move(message), span) {}

CycleError::CycleError(std::string message) : Error("cycle error", std::move(message)) {}

ResourceError::ResourceError(std::string message) : Error("resource error", std::move(message)) {}

MatchFailure::MatchFailure(std::string message) : Error("match failure", std::move(message)) {}

}  // namespace totcheck

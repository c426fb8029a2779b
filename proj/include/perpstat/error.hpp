#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace perpstat {

enum class ErrorCode {
  InvalidArgument,
  NonPositiveValue,
  SeriesTooShort,
  LagTooLarge,
  DegenerateSeries,
  IncompleteWindow,
  UnevenSpacing,
  ZeroDenominator,
  InvertedBounds,
  RankDeficient,
  Underdetermined,
  MisalignedSeries,
  NonConvergence,
  NotConverged,
  InvalidParams,
  ParseError,
  AlignmentError,
  IncompleteReport,
};

[[nodiscard]] std::string_view to_string(ErrorCode code) noexcept;

/// Every library failure is raised as an Error carrying one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Wraps an Error raised inside a pipeline stage with the stage's name.
class StageError : public Error {
 public:
  StageError(std::string stage, const Error& cause)
      : Error(cause.code(), "stage '" + stage + "': " + cause.what()), stage_(std::move(stage)) {}

  [[nodiscard]] const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

/// True for errors caused by malformed user input rather than by a computation.
[[nodiscard]] constexpr bool is_input_error(ErrorCode code) noexcept {
  return code == ErrorCode::ParseError || code == ErrorCode::AlignmentError ||
         code == ErrorCode::UnevenSpacing || code == ErrorCode::MisalignedSeries ||
         code == ErrorCode::InvalidArgument;
}

}  // namespace perpstat

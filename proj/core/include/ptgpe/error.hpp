#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ptgpe {

enum class ErrorCode {
  InvalidArgument,
  GridMismatch,
  NoConvergence,
  JacobianSingular,
  NotConverged,
  NotTerminated,
  AmplitudeTooSmall,
  LostVortex,
  BlowUp,
  EigenSolver,
  Config,
  Io,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Base exception for all library failures; carries a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Newton failure. `residual` is the last residual 2-norm reached.
class SolverError : public Error {
 public:
  SolverError(ErrorCode code, const std::string& what, double residual, int iterations)
      : Error(code, what), residual_(residual), iterations_(iterations) {}

  double residual() const noexcept { return residual_; }
  int iterations() const noexcept { return iterations_; }

 private:
  double residual_;
  int iterations_;
};

/// Non-finite value encountered during propagation.
class BlowUpError : public Error {
 public:
  BlowUpError(const std::string& what, long step) : Error(ErrorCode::BlowUp, what), step_(step) {}

  long step() const noexcept { return step_; }

 private:
  long step_;
};

}  // namespace ptgpe

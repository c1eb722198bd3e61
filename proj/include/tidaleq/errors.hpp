#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace tidaleq {

// Exit codes used by the command line driver.
enum class ExitCode : int {
  ok = 0,
  failure = 1,
  config = 2,
  resonance = 3,
  divergence = 4,
  quadrature = 5,
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual ExitCode exit_code() const { return ExitCode::failure; }
};

class ConfigError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const override { return ExitCode::config; }
};

/// Bad argument to a numerical routine (outside its domain).
class DomainError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const override { return ExitCode::config; }
};

/// phi0'(1) vanishes, so the base state cannot carry a free boundary.
class DegenerateBaseError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const override { return ExitCode::config; }
};

class ResonanceError : public Error {
 public:
  ResonanceError(int mode, double omega)
      : Error("resonant mode n=" + std::to_string(mode) +
              " (|omega_n| = " + std::to_string(std::abs(omega)) + ")"),
        mode_(mode), omega_(omega) {}
  int mode() const { return mode_; }
  double omega() const { return omega_; }
  ExitCode exit_code() const override { return ExitCode::resonance; }

 private:
  int mode_;
  double omega_;
};

class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, std::vector<double> history)
      : Error(what), history_(std::move(history)) {}
  const std::vector<double>& history() const { return history_; }
  ExitCode exit_code() const override { return ExitCode::divergence; }

 private:
  std::vector<double> history_;
};

class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, double achieved)
      : Error(what + " (achieved error estimate " + std::to_string(achieved) + ")"),
        achieved_(achieved) {}
  double achieved() const { return achieved_; }
  ExitCode exit_code() const override { return ExitCode::quadrature; }

 private:
  double achieved_;
};

/// Linear or nonlinear sub-solver failure (collocation system, Picard, shooting).
class SolverError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const override { return ExitCode::divergence; }
};

}  // namespace tidaleq

#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace asopf {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline constexpr const char* kVersion = "asopf-0.1.0";

// Default tolerances; all quantities are per-unit, O(1).
inline constexpr double kTolActive = 1e-6;
inline constexpr double kTolFeasible = 1e-6;

// Input/parse failures (CLI exit code 2).
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Structural problems in a network or config (CLI exit code 2).
class ModelError : public std::runtime_error {
 public:
  explicit ModelError(const std::string& what) : std::runtime_error(what) {}
};

// Model/dataset dictionary mismatch (CLI exit code 3).
class BindingMismatchError : public std::runtime_error {
 public:
  explicit BindingMismatchError(const std::string& what) : std::runtime_error(what) {}
};

// Singular systems, unresolvable degeneracy (CLI exit code 4).
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace asopf

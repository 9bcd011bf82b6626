// Basic value types and error classes shared by every csfheat module.
#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace csf {

/// Point or vector in the plane. 1D problems use the x component only.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr bool operator==(const Vec2&) const = default;

  double norm() const { return std::hypot(x, y); }
  constexpr double dot(Vec2 o) const { return x * o.x + y * o.y; }
};

/// Raised for inputs that violate an operation's preconditions.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a linear or nonlinear solve fails to converge.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw InvalidInput(std::string(what) + " must be finite");
  }
}

inline void require_positive(double v, const char* what) {
  if (!std::isfinite(v) || v <= 0.0) {
    throw InvalidInput(std::string(what) + " must be finite and > 0");
  }
}

inline constexpr double kPi = 3.14159265358979323846;

}  // namespace csf

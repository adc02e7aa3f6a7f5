#pragma once

#include <variant>

namespace fuzzrisk {

/// Triangular shape with breakpoints a <= b <= c and a < c. Coincident
/// breakpoints (a == b or b == c) evaluate as a vertical edge at the peak.
struct Triangular {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  double evaluate(double x) const;
  bool operator==(const Triangular&) const = default;
};

/// Trapezoidal shape with breakpoints a <= b <= c <= d and a < d. The plateau
/// [b, c] is closed; coincident edge breakpoints act as vertical edges.
struct Trapezoidal {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;

  double evaluate(double x) const;
  bool operator==(const Trapezoidal&) const = default;
};

/// Tagged membership-function shape. Instances always satisfy the breakpoint
/// invariants; the factories reject anything else.
class MembershipFunction {
 public:
  using Shape = std::variant<Triangular, Trapezoidal>;

  static MembershipFunction triangular(double a, double b, double c);
  static MembershipFunction trapezoidal(double a, double b, double c, double d);

  /// Membership degree in [0, 1]. Breakpoints may lie outside any particular
  /// universe; evaluation is total over finite reals. Non-finite x is a
  /// contract violation and throws std::invalid_argument.
  double evaluate(double x) const;

  const Shape& shape() const { return shape_; }
  bool is_triangular() const { return std::holds_alternative<Triangular>(shape_); }

  bool operator==(const MembershipFunction&) const = default;

 private:
  explicit MembershipFunction(Shape shape) : shape_(shape) {}

  Shape shape_;
};

}  // namespace fuzzrisk

#include "fuzzrisk/membership.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fuzzrisk {

namespace {

void require_finite(std::initializer_list<double> xs, const char* what) {
  for (double x : xs) {
    if (!std::isfinite(x)) {
      throw std::invalid_argument(std::string(what) + ": breakpoints must be finite");
    }
  }
}

}  // namespace

double Triangular::evaluate(double x) const {
  if (x < a || x > c) return 0.0;
  // Checking against the peak first keeps coincident breakpoints (a == b or
  // b == c, a vertical edge) from dividing by zero.
  if (x == b) return 1.0;
  if (x < b) return (x - a) / (b - a);
  return (c - x) / (c - b);
}

double Trapezoidal::evaluate(double x) const {
  if (x < a || x > d) return 0.0;
  if (x >= b && x <= c) return 1.0;
  if (x < b) return (x - a) / (b - a);
  return (d - x) / (d - c);
}

MembershipFunction MembershipFunction::triangular(double a, double b, double c) {
  require_finite({a, b, c}, "triangular");
  if (!(a <= b && b <= c) || !(a < c)) {
    std::ostringstream msg;
    msg << "triangular: breakpoints must satisfy a <= b <= c with a < c, got (" << a << ", " << b
        << ", " << c << ")";
    throw std::invalid_argument(msg.str());
  }
  return MembershipFunction(Triangular{a, b, c});
}

MembershipFunction MembershipFunction::trapezoidal(double a, double b, double c, double d) {
  require_finite({a, b, c, d}, "trapezoidal");
  if (!(a <= b && b <= c && c <= d) || !(a < d)) {
    std::ostringstream msg;
    msg << "trapezoidal: breakpoints must satisfy a <= b <= c <= d with a < d, got (" << a << ", "
        << b << ", " << c << ", " << d << ")";
    throw std::invalid_argument(msg.str());
  }
  return MembershipFunction(Trapezoidal{a, b, c, d});
}

double MembershipFunction::evaluate(double x) const {
  if (!std::isfinite(x)) {
    throw std::invalid_argument("membership function input must be finite");
  }
  return std::visit([x](const auto& shape) { return shape.evaluate(x); }, shape_);
}

}  // namespace fuzzrisk

#include "dismed/interval.hpp"

#include <algorithm>
#include <cmath>

#include "dismed/error.hpp"

namespace dismed {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Endpoint product with 0 * inf taken as 0, the usual convention for
// interval multiplication over the extended reals.
double mul_endpoint(double a, double b) {
  if (a == 0.0 || b == 0.0) return 0.0;
  return a * b;
}

}  // namespace

ExtendedValue ExtendedValue::interval(double lo, double hi) {
  if (std::isnan(lo) || std::isnan(hi) || lo > hi) {
    throw Error(Errc::InvalidArgument, "interval bounds must satisfy lower <= upper");
  }
  return ExtendedValue(lo, hi);
}

bool ExtendedValue::is_indeterminate() const { return lo_ == -kInf && hi_ == kInf; }

ExtendedValue operator+(const ExtendedValue& a, const ExtendedValue& b) {
  double lo = a.lower() + b.lower();
  double hi = a.upper() + b.upper();
  // -inf + inf can only arise from opposite infinite endpoints; widen.
  if (std::isnan(lo)) lo = -kInf;
  if (std::isnan(hi)) hi = kInf;
  return ExtendedValue::interval(lo, hi);
}

ExtendedValue operator-(const ExtendedValue& a) {
  return ExtendedValue::interval(-a.upper(), -a.lower());
}

ExtendedValue operator-(const ExtendedValue& a, const ExtendedValue& b) { return a + (-b); }

ExtendedValue operator*(const ExtendedValue& a, const ExtendedValue& b) {
  if (a.is_point() && b.is_point()) return ExtendedValue::point(a.lower() * b.lower());
  const double p[4] = {mul_endpoint(a.lower(), b.lower()), mul_endpoint(a.lower(), b.upper()),
                       mul_endpoint(a.upper(), b.lower()), mul_endpoint(a.upper(), b.upper())};
  return ExtendedValue::interval(*std::min_element(p, p + 4), *std::max_element(p, p + 4));
}

ExtendedValue operator/(const ExtendedValue& a, const ExtendedValue& b) {
  if (b.contains(0.0)) {
    throw Error(Errc::DivisionByZeroInterval, "divisor interval contains zero");
  }
  if (a.is_point() && b.is_point()) return ExtendedValue::point(a.lower() / b.lower());
  auto inv = ExtendedValue::interval(1.0 / b.upper(), 1.0 / b.lower());
  return a * inv;
}

ExtendedValue max(const ExtendedValue& a, const ExtendedValue& b) {
  return ExtendedValue::interval(std::max(a.lower(), b.lower()), std::max(a.upper(), b.upper()));
}

ExtendedValue min(const ExtendedValue& a, const ExtendedValue& b) {
  return ExtendedValue::interval(std::min(a.lower(), b.lower()), std::min(a.upper(), b.upper()));
}

Truth greater(const ExtendedValue& a, const ExtendedValue& b) {
  if (a.lower() > b.upper()) return Truth::True;
  if (a.upper() <= b.lower()) return Truth::False;
  return Truth::Unknown;
}

Truth less(const ExtendedValue& a, const ExtendedValue& b) { return greater(b, a); }

Truth within(const ExtendedValue& a, double tol) {
  const double max_abs = std::max(std::fabs(a.lower()), std::fabs(a.upper()));
  const double min_abs =
      a.contains(0.0) ? 0.0 : std::min(std::fabs(a.lower()), std::fabs(a.upper()));
  if (max_abs <= tol) return Truth::True;
  if (min_abs > tol) return Truth::False;
  return Truth::Unknown;
}

Truth both(Truth a, Truth b) {
  if (a == Truth::False || b == Truth::False) return Truth::False;
  if (a == Truth::True && b == Truth::True) return Truth::True;
  return Truth::Unknown;
}

}  // namespace dismed

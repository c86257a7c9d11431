#pragma once

#include <limits>

namespace dismed {

enum class Truth : unsigned char { False, True, Unknown };

// Closed interval over the extended reals. A point has lower == upper;
// Indeterminate is the whole line.
class ExtendedValue {
 public:
  ExtendedValue() : ExtendedValue(indeterminate()) {}

  static ExtendedValue point(double x) { return ExtendedValue(x, x); }
  static ExtendedValue interval(double lo, double hi);
  static ExtendedValue indeterminate() {
    return ExtendedValue(-std::numeric_limits<double>::infinity(),
                         std::numeric_limits<double>::infinity());
  }

  double lower() const { return lo_; }
  double upper() const { return hi_; }
  bool is_point() const { return lo_ == hi_; }
  bool is_indeterminate() const;
  bool contains(double x) const { return lo_ <= x && x <= hi_; }
  bool contains(const ExtendedValue& other) const {
    return lo_ <= other.lo_ && other.hi_ <= hi_;
  }

  friend bool operator==(const ExtendedValue&, const ExtendedValue&) = default;

 private:
  ExtendedValue(double lo, double hi) : lo_(lo), hi_(hi) {}

  double lo_;
  double hi_;
};

ExtendedValue operator+(const ExtendedValue& a, const ExtendedValue& b);
ExtendedValue operator-(const ExtendedValue& a, const ExtendedValue& b);
ExtendedValue operator-(const ExtendedValue& a);
ExtendedValue operator*(const ExtendedValue& a, const ExtendedValue& b);
// Throws Error(DivisionByZeroInterval) when b contains 0.
ExtendedValue operator/(const ExtendedValue& a, const ExtendedValue& b);
ExtendedValue max(const ExtendedValue& a, const ExtendedValue& b);
ExtendedValue min(const ExtendedValue& a, const ExtendedValue& b);

// a > b decided only when the intervals are disjoint.
Truth greater(const ExtendedValue& a, const ExtendedValue& b);
Truth less(const ExtendedValue& a, const ExtendedValue& b);
// |a| <= tol.
Truth within(const ExtendedValue& a, double tol);

Truth both(Truth a, Truth b);

}  // namespace dismed

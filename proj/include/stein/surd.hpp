#ifndef STEIN_SURD_HPP_
#define STEIN_SURD_HPP_

#include <compare>
#include <string>

#include "stein/rational.hpp"

namespace stein {

/// A real number of the form base + sqrt(radicand) with rational base and
/// nonnegative rational radicand. Every bound in the library has this shape,
/// so comparisons against exact distances can be decided without rounding.
class Surd {
 public:
  Surd() = default;
  explicit Surd(Rational base) : base_(std::move(base)) {}
  /// Throws std::domain_error when radicand < 0.
  Surd(Rational base, Rational radicand);

  /// c * sqrt(r) + base, for c >= 0.
  static Surd scaled_root(const Rational& coefficient, const Rational& radicand,
                          const Rational& base = 0);

  const Rational& base() const { return base_; }
  const Rational& radicand() const { return radicand_; }

  double to_double() const;

  friend std::strong_ordering compare(const Surd& lhs, const Surd& rhs);
  friend bool operator==(const Surd& lhs, const Surd& rhs) {
    return compare(lhs, rhs) == std::strong_ordering::equal;
  }
  friend std::strong_ordering operator<=>(const Surd& lhs, const Surd& rhs) {
    return compare(lhs, rhs);
  }

 private:
  Rational base_ = 0;
  Rational radicand_ = 0;
};

inline bool operator<=(const Rational& lhs, const Surd& rhs) {
  return Surd(lhs) <= rhs;
}
inline bool operator<=(const Surd& lhs, const Rational& rhs) {
  return lhs <= Surd(rhs);
}

}  // namespace stein

#endif  // STEIN_SURD_HPP_

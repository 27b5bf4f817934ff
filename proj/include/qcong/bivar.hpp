#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qcong/laurent.hpp"

namespace qcong {

/// Polynomial in x (nonnegative powers only) with LaurentPoly coefficients.
/// Coefficients are stored densely by x-degree with trailing zeros trimmed.
class BivarPoly {
 public:
  BivarPoly() = default;
  explicit BivarPoly(LaurentPoly c);
  /// c * x^degree
  static BivarPoly monomial(LaurentPoly c, std::size_t degree);
  static BivarPoly x() { return monomial(LaurentPoly(1L), 1); }

  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  std::int64_t degree() const { return static_cast<std::int64_t>(coeffs_.size()) - 1; }
  /// Coefficient of x^r (zero beyond the degree).
  LaurentPoly coeff(std::size_t r) const;
  const std::vector<LaurentPoly>& coeffs() const { return coeffs_; }

  BivarPoly operator-() const;
  BivarPoly& operator+=(const BivarPoly& rhs);
  BivarPoly& operator-=(const BivarPoly& rhs);
  friend BivarPoly operator+(BivarPoly a, const BivarPoly& b) { return a += b; }
  friend BivarPoly operator-(BivarPoly a, const BivarPoly& b) { return a -= b; }
  friend BivarPoly operator*(const BivarPoly& a, const BivarPoly& b);
  BivarPoly& operator*=(const BivarPoly& rhs) { return *this = *this * rhs; }
  bool operator==(const BivarPoly&) const = default;

  /// Multiplies every coefficient by c.
  BivarPoly times(const LaurentPoly& c) const;
  /// Substitutes a rational value for x.
  LaurentPoly at_x(const Rational& v) const;

 private:
  void trim();
  std::vector<LaurentPoly> coeffs_;
};

/// (x; q)_n = prod_{j=0..n-1} (1 - x q^j).
BivarPoly pochhammer_x(std::int64_t n);

/// "(c0) + (c1)*x + (c2)*x^2 ..." with each coefficient in LaurentPoly form.
std::string to_string(const BivarPoly& a);

}  // namespace qcong

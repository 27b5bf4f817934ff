#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qcong/rational.hpp"

namespace qcong {

using Exponent = std::int64_t;

/// Polynomial in q with signed exponents and exact rational coefficients.
///
/// Terms are kept sorted by exponent with no zero coefficients, so two equal
/// polynomials always have identical term vectors and operator== is a plain
/// structural comparison. Values never change after construction.
class LaurentPoly {
 public:
  struct Term {
    Exponent exponent;
    Rational coeff;
    bool operator==(const Term&) const = default;
  };

  LaurentPoly() = default;
  explicit LaurentPoly(const Rational& c);
  explicit LaurentPoly(long c) : LaurentPoly(Rational(c)) {}

  static LaurentPoly monomial(const Rational& c, Exponent e);
  static LaurentPoly q_power(Exponent e) { return monomial(Rational(1), e); }
  /// Sums repeated exponents and drops zeros; input order is irrelevant.
  static LaurentPoly from_terms(std::vector<Term> terms);
  /// coeffs[i] is the coefficient of q^(low + i).
  static LaurentPoly from_dense(std::span<const Rational> coeffs, Exponent low = 0);

  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }
  /// Both are 0 for the zero polynomial.
  Exponent min_exponent() const { return terms_.empty() ? 0 : terms_.front().exponent; }
  Exponent max_exponent() const { return terms_.empty() ? 0 : terms_.back().exponent; }
  Rational coeff(Exponent e) const;
  const Rational& leading_coeff() const { return terms_.back().coeff; }

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& rhs);
  LaurentPoly& operator-=(const LaurentPoly& rhs);
  LaurentPoly& operator*=(const LaurentPoly& rhs);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  bool operator==(const LaurentPoly&) const = default;

  LaurentPoly scaled(const Rational& c) const;

 private:
  std::vector<Term> terms_;
};

/// Multiplication by q^e.
LaurentPoly shift(const LaurentPoly& a, Exponent e);

/// Formal d/dq: c q^e -> c e q^(e-1).
LaurentPoly derivative(const LaurentPoly& a);

/// Throws ZeroAtNegativeExponent when v = 0 and a has a negative power.
Rational eval(const LaurentPoly& a, const Rational& v);

/// Returns c with a = b * c. Throws NotDivisible when no such Laurent
/// polynomial exists and std::domain_error when b is zero.
LaurentPoly exact_div(const LaurentPoly& a, const LaurentPoly& b);

LaurentPoly pow(const LaurentPoly& a, std::uint64_t n);

/// Ascending-exponent rendering, e.g. "1/2*q^-2 + q^-1 + 3/2".
std::string to_string(const LaurentPoly& a);

}  // namespace qcong

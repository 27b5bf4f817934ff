#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace qcong {

using Integer = mpz_class;

// mpq_class is kept canonical (den > 0, gcd(num, den) = 1) by every
// gmpxx arithmetic operator; only construction from a raw num/den pair
// needs an explicit canonicalize(), which make_rational does.
using Rational = mpq_class;

// Throws std::domain_error when den is zero.
Rational make_rational(const Integer& num, const Integer& den);

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  return make_rational(Integer(static_cast<long>(num)), Integer(static_cast<long>(den)));
}

// "n" for integers, "n/d" otherwise.
std::string to_string(const Rational& r);

Rational pow(const Rational& base, std::uint64_t exponent);

}  // namespace qcong

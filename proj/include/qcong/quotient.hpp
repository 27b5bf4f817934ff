#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qcong/errors.hpp"
#include "qcong/laurent.hpp"
#include "qcong/rational.hpp"

namespace qcong {

/// Raised by Residue::inverse. gcd() is the monic gcd of the representative
/// and the modulus, which separates "not coprime to the modulus" from a
/// false congruence statement.
class NonInvertible : public Error {
 public:
  NonInvertible(const std::string& what, LaurentPoly gcd) : Error(what), gcd_(std::move(gcd)) {}
  const LaurentPoly& gcd() const { return gcd_; }

 private:
  LaurentPoly gcd_;
};

namespace detail {
struct RingData;
}

class Residue;

/// Q[q]/(f) for a polynomial f with nonzero constant term and degree >= 1.
///
/// A QuotientRing is a cheap handle to immutable shared state; copies refer
/// to the same ring.
class QuotientRing {
 public:
  /// Throws InvalidParams unless the modulus has minimum exponent 0,
  /// nonzero constant term and degree >= 1.
  explicit QuotientRing(const LaurentPoly& modulus);

  /// Modulus [p] (power 1) or [p]^2 (power 2) for an odd prime p.
  static QuotientRing for_prime(std::int64_t p, int power = 1);

  const LaurentPoly& modulus() const;
  std::size_t degree() const;
  /// N with q^N = 1 in the ring, known when the modulus is [N].
  std::optional<std::int64_t> period() const;

  Residue reduce(const LaurentPoly& a) const;
  Residue zero() const;
  Residue one() const;
  Residue constant(const Rational& c) const;
  Residue q_power(Exponent e) const;
  Residue q_inverse() const;

  bool operator==(const QuotientRing& other) const;

 private:
  explicit QuotientRing(std::shared_ptr<const detail::RingData> data) : data_(std::move(data)) {}
  std::shared_ptr<const detail::RingData> data_;
  friend class Residue;
};

/// Reduced remainder modulo the ring's modulus, coefficients of q^0..q^(d-1).
///
/// Stored as integer numerators over one positive common denominator in
/// lowest terms, so equal residues compare structurally.
class Residue {
 public:
  QuotientRing ring() const { return QuotientRing(ring_); }
  std::size_t size() const { return num_.size(); }
  Rational coeff(std::size_t i) const;
  std::vector<Rational> coefficients() const;
  bool is_zero() const;
  /// Representative polynomial of degree < d.
  LaurentPoly lift() const;

  Residue operator-() const;
  Residue& operator+=(const Residue& rhs);
  Residue& operator-=(const Residue& rhs);
  Residue& operator*=(const Residue& rhs);
  friend Residue operator+(Residue a, const Residue& b) { return a += b; }
  friend Residue operator-(Residue a, const Residue& b) { return a -= b; }
  friend Residue operator*(const Residue& a, const Residue& b);
  bool operator==(const Residue& other) const;

  Residue scaled(const Rational& c) const;
  /// Multiplication by q^e without a full product when the ring is periodic.
  Residue shifted(Exponent e) const;
  /// Extended Euclid on representative and modulus. Throws NonInvertible.
  Residue inverse() const;
  Residue pow(std::uint64_t n) const;

 private:
  Residue(std::shared_ptr<const detail::RingData> ring, std::vector<Integer> num, Integer den);
  void check_ring(const Residue& other) const;

  std::shared_ptr<const detail::RingData> ring_;
  std::vector<Integer> num_;
  Integer den_;

  friend class QuotientRing;
  friend struct detail::RingData;
};

/// "[c0, c1, ..., c(d-1)]" with rationals rendered as n or n/d.
std::string to_string(const Residue& r);

}  // namespace qcong

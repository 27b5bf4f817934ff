#include "qcong/bivar.hpp"

#include <sstream>

#include "qcong/errors.hpp"

namespace qcong {

BivarPoly::BivarPoly(LaurentPoly c) {
  if (!c.is_zero()) coeffs_.push_back(std::move(c));
}

BivarPoly BivarPoly::monomial(LaurentPoly c, std::size_t degree) {
  BivarPoly r;
  if (c.is_zero()) return r;
  r.coeffs_.resize(degree + 1);
  r.coeffs_[degree] = std::move(c);
  return r;
}

void BivarPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

LaurentPoly BivarPoly::coeff(std::size_t r) const { return r < coeffs_.size() ? coeffs_[r] : LaurentPoly(); }

BivarPoly BivarPoly::operator-() const {
  BivarPoly r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

BivarPoly& BivarPoly::operator+=(const BivarPoly& rhs) {
  if (coeffs_.size() < rhs.coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  trim();
  return *this;
}

BivarPoly& BivarPoly::operator-=(const BivarPoly& rhs) { return *this += -rhs; }

BivarPoly operator*(const BivarPoly& a, const BivarPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  BivarPoly r;
  r.coeffs_.resize(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  r.trim();
  return r;
}

BivarPoly BivarPoly::times(const LaurentPoly& c) const {
  BivarPoly r = *this;
  for (auto& x : r.coeffs_) x *= c;
  r.trim();
  return r;
}

LaurentPoly BivarPoly::at_x(const Rational& v) const {
  LaurentPoly acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc.scaled(v) + *it;
  return acc;
}

BivarPoly pochhammer_x(std::int64_t n) {
  if (n < 0) throw InvalidParams("(x;q)_n needs n >= 0");
  BivarPoly acc(LaurentPoly(1L));
  for (std::int64_t j = 0; j < n; ++j)
    acc *= BivarPoly(LaurentPoly(1L)) - BivarPoly::monomial(LaurentPoly::q_power(j), 1);
  return acc;
}

std::string to_string(const BivarPoly& a) {
  if (a.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (std::size_t r = 0; r < a.coeffs().size(); ++r) {
    if (a.coeffs()[r].is_zero()) continue;
    if (!first) out << " + ";
    first = false;
    out << "(" << to_string(a.coeffs()[r]) << ")";
    if (r == 1) out << "*x";
    if (r > 1) out << "*x^" << r;
  }
  return out.str();
}

}  // namespace qcong

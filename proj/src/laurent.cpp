#include "qcong/laurent.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "qcong/errors.hpp"

namespace qcong {

namespace {

// Dense accumulation is used when the exponent span is not much larger
// than the number of partial products.
bool prefer_dense(std::size_t span, std::size_t work) { return span <= 4 * work + 64; }

}  // namespace

LaurentPoly::LaurentPoly(const Rational& c) {
  if (c != 0) terms_.push_back({0, c});
}

LaurentPoly LaurentPoly::monomial(const Rational& c, Exponent e) {
  LaurentPoly r;
  if (c != 0) r.terms_.push_back({e, c});
  return r;
}

LaurentPoly LaurentPoly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.exponent < b.exponent; });
  LaurentPoly r;
  for (auto& t : terms) {
    if (!r.terms_.empty() && r.terms_.back().exponent == t.exponent) {
      r.terms_.back().coeff += t.coeff;
      if (r.terms_.back().coeff == 0) r.terms_.pop_back();
    } else if (t.coeff != 0) {
      r.terms_.push_back(std::move(t));
    }
  }
  return r;
}

LaurentPoly LaurentPoly::from_dense(std::span<const Rational> coeffs, Exponent low) {
  LaurentPoly r;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (coeffs[i] != 0) r.terms_.push_back({low + static_cast<Exponent>(i), coeffs[i]});
  return r;
}

Rational LaurentPoly::coeff(Exponent e) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                             [](const Term& t, Exponent x) { return t.exponent < x; });
  if (it != terms_.end() && it->exponent == e) return it->coeff;
  return Rational(0);
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& rhs) {
  if (rhs.is_zero()) return *this;
  std::vector<Term> out;
  out.reserve(terms_.size() + rhs.terms_.size());
  auto i = terms_.begin();
  auto j = rhs.terms_.begin();
  while (i != terms_.end() || j != rhs.terms_.end()) {
    if (j == rhs.terms_.end() || (i != terms_.end() && i->exponent < j->exponent)) {
      out.push_back(std::move(*i++));
    } else if (i == terms_.end() || j->exponent < i->exponent) {
      out.push_back(*j++);
    } else {
      Rational c = i->coeff + j->coeff;
      if (c != 0) out.push_back({i->exponent, std::move(c)});
      ++i;
      ++j;
    }
  }
  terms_ = std::move(out);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& rhs) { return *this += -rhs; }

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& rhs) { return *this = *this * rhs; }

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const Exponent low = a.min_exponent() + b.min_exponent();
  const auto span = static_cast<std::size_t>(a.max_exponent() + b.max_exponent() - low + 1);
  LaurentPoly r;
  if (prefer_dense(span, a.size() * b.size())) {
    std::vector<Rational> acc(span);
    for (const auto& x : a.terms_)
      for (const auto& y : b.terms_) acc[x.exponent + y.exponent - low] += x.coeff * y.coeff;
    return LaurentPoly::from_dense(acc, low);
  }
  std::map<Exponent, Rational> acc;
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_) acc[x.exponent + y.exponent] += x.coeff * y.coeff;
  for (auto& [e, c] : acc)
    if (c != 0) r.terms_.push_back({e, std::move(c)});
  return r;
}

LaurentPoly LaurentPoly::scaled(const Rational& c) const {
  if (c == 0) return {};
  LaurentPoly r = *this;
  for (auto& t : r.terms_) t.coeff *= c;
  return r;
}

LaurentPoly shift(const LaurentPoly& a, Exponent e) {
  std::vector<LaurentPoly::Term> terms = a.terms();
  for (auto& t : terms) t.exponent += e;
  return LaurentPoly::from_terms(std::move(terms));
}

LaurentPoly derivative(const LaurentPoly& a) {
  std::vector<LaurentPoly::Term> terms;
  terms.reserve(a.size());
  for (const auto& t : a.terms())
    if (t.exponent != 0) terms.push_back({t.exponent - 1, t.coeff * Rational(t.exponent)});
  return LaurentPoly::from_terms(std::move(terms));
}

Rational eval(const LaurentPoly& a, const Rational& v) {
  if (a.is_zero()) return Rational(0);
  if (v == 0) {
    if (a.min_exponent() < 0)
      throw ZeroAtNegativeExponent("evaluating a negative power of q at q = 0");
    return a.coeff(0);
  }
  // Horner from the top exponent down, then rescale by v^min_exponent.
  Rational acc(0);
  Exponent current = a.max_exponent();
  const auto& terms = a.terms();
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    acc *= pow(v, static_cast<std::uint64_t>(current - it->exponent));
    acc += it->coeff;
    current = it->exponent;
  }
  if (current >= 0) return acc * pow(v, static_cast<std::uint64_t>(current));
  return acc / pow(v, static_cast<std::uint64_t>(-current));
}

LaurentPoly exact_div(const LaurentPoly& a, const LaurentPoly& b) {
  if (b.is_zero()) throw std::domain_error("division by the zero polynomial");
  if (a.is_zero()) return {};
  // Strip the monomial parts: a = q^ea * A, b = q^eb * B with A(0), B(0) != 0.
  const Exponent ea = a.min_exponent();
  const Exponent eb = b.min_exponent();
  const auto deg_a = static_cast<std::size_t>(a.max_exponent() - ea);
  const auto deg_b = static_cast<std::size_t>(b.max_exponent() - eb);
  if (deg_a < deg_b) throw NotDivisible("dividend degree below divisor degree");

  std::vector<Rational> rem(deg_a + 1);
  for (const auto& t : a.terms()) rem[t.exponent - ea] = t.coeff;
  std::vector<std::pair<std::size_t, Rational>> divisor;
  for (const auto& t : b.terms()) divisor.emplace_back(t.exponent - eb, t.coeff);
  const Rational& lead = b.leading_coeff();
  const bool unit_lead = lead == 1;

  std::vector<Rational> quot(deg_a - deg_b + 1);
  for (std::size_t top = deg_a + 1; top-- > deg_b;) {
    if (rem[top] == 0) continue;
    const std::size_t k = top - deg_b;
    Rational c = unit_lead ? rem[top] : Rational(rem[top] / lead);
    for (const auto& [e, d] : divisor) rem[k + e] -= c * d;
    quot[k] = std::move(c);
  }
  for (std::size_t i = 0; i < deg_b; ++i)
    if (rem[i] != 0) throw NotDivisible("polynomial division leaves a nonzero remainder");
  return LaurentPoly::from_dense(quot, ea - eb);
}

LaurentPoly pow(const LaurentPoly& a, std::uint64_t n) {
  LaurentPoly result(1);
  LaurentPoly base = a;
  while (n > 0) {
    if (n & 1U) result *= base;
    n >>= 1U;
    if (n > 0) base *= base;
  }
  return result;
}

std::string to_string(const LaurentPoly& a) {
  if (a.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& t : a.terms()) {
    Rational c = t.coeff;
    if (!first) {
      out << (c < 0 ? " - " : " + ");
      c = abs(c);
    } else if (c < 0 && t.exponent != 0 && c == -1) {
      out << "-";
      c = 1;
    }
    first = false;
    if (t.exponent == 0) {
      out << c.get_str();
      continue;
    }
    if (c != 1) out << c.get_str() << "*";
    out << "q";
    if (t.exponent != 1) out << "^" << t.exponent;
  }
  return out.str();
}

}  // namespace qcong

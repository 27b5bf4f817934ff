#include "qcong/quotient.hpp"

#include <algorithm>
#include <sstream>

#include "qcong/primes.hpp"

namespace qcong {

namespace {

// Divides numerators and denominator by their common content; den ends up
// positive and the zero residue ends up as 0/1.
void canonicalize(std::vector<Integer>& num, Integer& den) {
  if (sgn(den) < 0) {
    den = -den;
    for (auto& x : num) x = -x;
  }
  Integer g = den;
  for (const auto& x : num) {
    if (g == 1) break;
    if (sgn(x) != 0) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  }
  if (std::all_of(num.begin(), num.end(), [](const Integer& x) { return sgn(x) == 0; })) {
    den = 1;
    return;
  }
  if (g == 1) return;
  for (auto& x : num) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  mpz_divexact(den.get_mpz_t(), den.get_mpz_t(), g.get_mpz_t());
}

// Dense rational polynomials for the extended Euclidean algorithm.
using RPoly = std::vector<Rational>;

void trim(RPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

RPoly sub(const RPoly& a, const RPoly& b) {
  RPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

RPoly mul(const RPoly& a, const RPoly& b) {
  if (a.empty() || b.empty()) return {};
  RPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

// a = quot * b + rem with deg rem < deg b; b nonzero.
void divmod(const RPoly& a, const RPoly& b, RPoly& quot, RPoly& rem) {
  rem = a;
  quot.clear();
  if (a.size() < b.size()) return;
  quot.assign(a.size() - b.size() + 1, Rational(0));
  const Rational& lead = b.back();
  for (std::size_t top = a.size(); top-- >= b.size();) {
    if (rem[top] == 0) continue;
    const std::size_t k = top - (b.size() - 1);
    Rational c = rem[top] / lead;
    for (std::size_t j = 0; j < b.size(); ++j) rem[k + j] -= c * b[j];
    quot[k] = std::move(c);
  }
  trim(quot);
  trim(rem);
}

}  // namespace

namespace detail {

struct RingData {
  LaurentPoly modulus;
  std::vector<Integer> g;  // primitive integer multiple of the modulus, g.back() > 0
  std::size_t d = 0;
  std::optional<std::int64_t> period;
  std::vector<Integer> qinv_num;
  Integer qinv_den;

  // Reduces the integer polynomial v / den modulo g in place; v may have any
  // length and ends with length d.
  void reduce_in_place(std::vector<Integer>& v, Integer& den) const {
    if (period && v.size() > static_cast<std::size_t>(*period)) {
      const auto n = static_cast<std::size_t>(*period);
      for (std::size_t i = n; i < v.size(); ++i) v[i % n] += v[i];
      v.resize(n);
    }
    const Integer& lead = g[d];
    const bool monic = lead == 1;
    for (std::size_t top = v.size(); top-- > d;) {
      if (sgn(v[top]) == 0) continue;
      const Integer c = v[top];
      if (!monic) {
        for (std::size_t i = 0; i <= top; ++i) v[i] *= lead;
        den *= lead;
      }
      const std::size_t k = top - d;
      for (std::size_t i = 0; i <= d; ++i)
        if (sgn(g[i]) != 0) mpz_submul(v[k + i].get_mpz_t(), c.get_mpz_t(), g[i].get_mpz_t());
    }
    v.resize(d);
    canonicalize(v, den);
  }
};

}  // namespace detail

// ---------------------------------------------------------------------------
// QuotientRing

QuotientRing::QuotientRing(const LaurentPoly& modulus) {
  if (modulus.is_zero() || modulus.min_exponent() != 0 || modulus.max_exponent() < 1)
    throw InvalidParams("modulus must be a polynomial of degree >= 1 with nonzero constant term");
  auto data = std::make_shared<detail::RingData>();
  data->modulus = modulus;
  data->d = static_cast<std::size_t>(modulus.max_exponent());

  // Clear denominators and content; the ideal is unchanged.
  Integer lcm_den = 1;
  for (const auto& t : modulus.terms()) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), t.coeff.get_den_mpz_t());
  data->g.assign(data->d + 1, Integer(0));
  for (const auto& t : modulus.terms()) {
    Rational scaled = t.coeff * Rational(lcm_den);
    data->g[t.exponent] = scaled.get_num();
  }
  Integer content = 0;
  for (const auto& x : data->g) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), x.get_mpz_t());
  if (sgn(data->g.back()) < 0) content = -content;
  for (auto& x : data->g) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), content.get_mpz_t());

  // [N] = 1 + q + ... + q^(N-1) divides q^N - 1.
  if (std::all_of(data->g.begin(), data->g.end(), [](const Integer& x) { return x == 1; }))
    data->period = static_cast<std::int64_t>(data->d) + 1;

  // g = g0 + q*h  =>  q * (-h/g0) = 1 in the ring.
  data->qinv_num.assign(data->d, Integer(0));
  for (std::size_t i = 1; i <= data->d; ++i) data->qinv_num[i - 1] = -data->g[i];
  data->qinv_den = data->g[0];
  canonicalize(data->qinv_num, data->qinv_den);

  data_ = std::move(data);
}

QuotientRing QuotientRing::for_prime(std::int64_t p, int power) {
  if (!is_prime(p)) throw NotPrime(std::to_string(p) + " is not prime");
  if (p < 3) throw InvalidParams("prime modulus requires p >= 3");
  if (power != 1 && power != 2) throw InvalidParams("modulus power must be 1 or 2");
  std::vector<LaurentPoly::Term> terms;
  for (std::int64_t i = 0; i < p; ++i) terms.push_back({i, Rational(1)});
  LaurentPoly qp = LaurentPoly::from_terms(std::move(terms));
  return QuotientRing(power == 1 ? qp : qp * qp);
}

const LaurentPoly& QuotientRing::modulus() const { return data_->modulus; }
std::size_t QuotientRing::degree() const { return data_->d; }
std::optional<std::int64_t> QuotientRing::period() const { return data_->period; }

bool QuotientRing::operator==(const QuotientRing& other) const {
  return data_ == other.data_ || data_->modulus == other.data_->modulus;
}

Residue QuotientRing::zero() const {
  return Residue(data_, std::vector<Integer>(data_->d, Integer(0)), Integer(1));
}

Residue QuotientRing::one() const { return constant(Rational(1)); }

Residue QuotientRing::constant(const Rational& c) const {
  std::vector<Integer> num(data_->d, Integer(0));
  num[0] = c.get_num();
  return Residue(data_, std::move(num), c.get_den());
}

Residue QuotientRing::q_inverse() const {
  return Residue(data_, data_->qinv_num, data_->qinv_den);
}

Residue QuotientRing::q_power(Exponent e) const {
  if (data_->period) {
    const std::int64_t n = *data_->period;
    std::vector<Integer> v(static_cast<std::size_t>(n), Integer(0));
    v[static_cast<std::size_t>(((e % n) + n) % n)] = 1;
    Integer den = 1;
    data_->reduce_in_place(v, den);
    return Residue(data_, std::move(v), std::move(den));
  }
  if (e < 0) return q_inverse().pow(static_cast<std::uint64_t>(-e));
  std::vector<Integer> v(static_cast<std::size_t>(e) + 1, Integer(0));
  v.back() = 1;
  Integer den = 1;
  data_->reduce_in_place(v, den);
  return Residue(data_, std::move(v), std::move(den));
}

Residue QuotientRing::reduce(const LaurentPoly& a) const {
  if (a.is_zero()) return zero();
  Integer den = 1;
  for (const auto& t : a.terms()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.coeff.get_den_mpz_t());
  auto numerator = [&den](const Rational& c) {
    Integer x = c.get_num() * (den / c.get_den());
    return x;
  };
  if (data_->period) {
    const std::int64_t n = *data_->period;
    std::vector<Integer> v(static_cast<std::size_t>(n), Integer(0));
    for (const auto& t : a.terms()) v[static_cast<std::size_t>(((t.exponent % n) + n) % n)] += numerator(t.coeff);
    data_->reduce_in_place(v, den);
    return Residue(data_, std::move(v), std::move(den));
  }
  const Exponent low = std::min<Exponent>(0, a.min_exponent());
  std::vector<Integer> v(static_cast<std::size_t>(a.max_exponent() - low) + 1, Integer(0));
  for (const auto& t : a.terms()) v[static_cast<std::size_t>(t.exponent - low)] = numerator(t.coeff);
  if (v.size() < data_->d) v.resize(data_->d, Integer(0));
  data_->reduce_in_place(v, den);
  Residue r(data_, std::move(v), std::move(den));
  if (low < 0) r *= q_inverse().pow(static_cast<std::uint64_t>(-low));
  return r;
}

// ---------------------------------------------------------------------------
// Residue

Residue::Residue(std::shared_ptr<const detail::RingData> ring, std::vector<Integer> num, Integer den)
    : ring_(std::move(ring)), num_(std::move(num)), den_(std::move(den)) {
  canonicalize(num_, den_);
}

void Residue::check_ring(const Residue& other) const {
  if (ring_ != other.ring_ && !(ring_->modulus == other.ring_->modulus))
    throw RingMismatch("residues belong to different quotient rings");
}

Rational Residue::coeff(std::size_t i) const { return make_rational(num_.at(i), den_); }

std::vector<Rational> Residue::coefficients() const {
  std::vector<Rational> out;
  out.reserve(num_.size());
  for (const auto& x : num_) out.push_back(make_rational(x, den_));
  return out;
}

bool Residue::is_zero() const {
  return std::all_of(num_.begin(), num_.end(), [](const Integer& x) { return sgn(x) == 0; });
}

LaurentPoly Residue::lift() const { return LaurentPoly::from_dense(coefficients()); }

bool Residue::operator==(const Residue& other) const {
  return QuotientRing(ring_) == QuotientRing(other.ring_) && den_ == other.den_ && num_ == other.num_;
}

Residue Residue::operator-() const {
  Residue r = *this;
  for (auto& x : r.num_) x = -x;
  return r;
}

Residue& Residue::operator+=(const Residue& rhs) {
  check_ring(rhs);
  if (den_ == rhs.den_) {
    for (std::size_t i = 0; i < num_.size(); ++i) num_[i] += rhs.num_[i];
  } else {
    for (std::size_t i = 0; i < num_.size(); ++i) {
      num_[i] *= rhs.den_;
      mpz_addmul(num_[i].get_mpz_t(), rhs.num_[i].get_mpz_t(), den_.get_mpz_t());
    }
    den_ *= rhs.den_;
  }
  canonicalize(num_, den_);
  return *this;
}

Residue& Residue::operator-=(const Residue& rhs) { return *this += -rhs; }

Residue& Residue::operator*=(const Residue& rhs) { return *this = *this * rhs; }

Residue operator*(const Residue& a, const Residue& b) {
  a.check_ring(b);
  const auto& ring = *a.ring_;
  const std::size_t d = ring.d;
  const std::size_t width = ring.period ? static_cast<std::size_t>(*ring.period) : 2 * d - 1;
  std::vector<Integer> acc(width, Integer(0));
  for (std::size_t i = 0; i < d; ++i) {
    if (sgn(a.num_[i]) == 0) continue;
    for (std::size_t j = 0; j < d; ++j) {
      if (sgn(b.num_[j]) == 0) continue;
      std::size_t k = i + j;
      if (k >= width) k -= width;
      mpz_addmul(acc[k].get_mpz_t(), a.num_[i].get_mpz_t(), b.num_[j].get_mpz_t());
    }
  }
  Integer den = a.den_ * b.den_;
  ring.reduce_in_place(acc, den);
  return Residue(a.ring_, std::move(acc), std::move(den));
}

Residue Residue::scaled(const Rational& c) const {
  std::vector<Integer> num = num_;
  for (auto& x : num) x *= c.get_num();
  return Residue(ring_, std::move(num), den_ * c.get_den());
}

Residue Residue::shifted(Exponent e) const {
  if (ring_->period) {
    const std::int64_t n = *ring_->period;
    const auto s = static_cast<std::size_t>(((e % n) + n) % n);
    std::vector<Integer> v(static_cast<std::size_t>(n), Integer(0));
    for (std::size_t i = 0; i < num_.size(); ++i) v[(i + s) % static_cast<std::size_t>(n)] = num_[i];
    Integer den = den_;
    ring_->reduce_in_place(v, den);
    return Residue(ring_, std::move(v), std::move(den));
  }
  return *this * ring().q_power(e);
}

Residue Residue::pow(std::uint64_t n) const {
  Residue result = ring().one();
  Residue base = *this;
  while (n > 0) {
    if (n & 1U) result *= base;
    n >>= 1U;
    if (n > 0) base *= base;
  }
  return result;
}

Residue Residue::inverse() const {
  RPoly modulus(ring_->g.begin(), ring_->g.end());
  RPoly rep = coefficients();
  trim(rep);
  // Invariant: s_i * rep = r_i (mod modulus).
  RPoly r0 = modulus, r1 = rep;
  RPoly s0, s1{Rational(1)};
  RPoly quot, rem;
  while (!r1.empty()) {
    divmod(r0, r1, quot, rem);
    RPoly s2 = sub(s0, mul(quot, s1));
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r0.size() != 1) {
    const Rational lead = r0.back();
    for (auto& c : r0) c /= lead;
    throw NonInvertible("residue shares a nontrivial factor with the modulus",
                        LaurentPoly::from_dense(r0));
  }
  const Rational scale = 1 / r0[0];
  Integer den = 1;
  for (const auto& c : s0) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Integer> v(std::max(s0.size(), ring_->d), Integer(0));
  for (std::size_t i = 0; i < s0.size(); ++i) v[i] = s0[i].get_num() * (den / s0[i].get_den());
  ring_->reduce_in_place(v, den);
  return Residue(ring_, std::move(v), std::move(den)).scaled(scale);
}

std::string to_string(const Residue& r) {
  std::ostringstream out;
  out << "[";
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i) out << ", ";
    out << r.coeff(i).get_str();
  }
  out << "]";
  return out.str();
}

}  // namespace qcong

#include "qcong/qkit.hpp"

#include <optional>

#include "qcong/errors.hpp"
#include "qcong/primes.hpp"

namespace qcong {

namespace {

LaurentPoly delannoy_sum(std::int64_t n, bool weighted) {
  if (n < 0) throw InvalidParams("Delannoy index must be nonnegative");
  LaurentPoly sum;
  for (std::int64_t k = 0; k <= n; ++k) {
    LaurentPoly term = q_binomial(n + k, 2 * k) * q_binomial(2 * k, k);
    term = shift(term, k * (k - 1) / 2 - 2 * n * k);
    if (weighted) term = (term + shift(term, k)).scaled(Rational(1, 2));
    sum += term;
  }
  return sum;
}

// Dense integer coefficient vectors, ascending exponents from q^0.
using IntPoly = std::vector<Integer>;

// a * (1 - q^e)
IntPoly times_one_minus(const IntPoly& a, std::size_t e) {
  IntPoly r(a.size() + e);
  for (std::size_t i = 0; i < a.size(); ++i) {
    r[i] += a[i];
    r[i + e] -= a[i];
  }
  return r;
}

// a / (1 - q^e), or nullopt when the division leaves a remainder.
std::optional<IntPoly> over_one_minus(const IntPoly& a, std::size_t e) {
  if (a.size() <= e) {
    for (const auto& c : a)
      if (c != 0) return std::nullopt;
    return IntPoly{};
  }
  IntPoly b(a.begin(), a.end());
  for (std::size_t i = e; i < b.size(); ++i) b[i] += b[i - e];
  for (std::size_t i = b.size() - e; i < b.size(); ++i)
    if (b[i] != 0) return std::nullopt;
  b.resize(b.size() - e);
  return b;
}

LaurentPoly to_laurent(const IntPoly& a) {
  std::vector<Rational> dense(a.begin(), a.end());
  return LaurentPoly::from_dense(dense);
}

IntPoly central_binomial_coeffs(std::int64_t n, std::int64_t k) {
  IntPoly acc{Integer(1)};
  for (std::int64_t j = 1; j <= k; ++j) {
    auto next = over_one_minus(times_one_minus(acc, static_cast<std::size_t>(n - k + j)), static_cast<std::size_t>(j));
    if (!next) throw NotDivisible("Gaussian binomial product left a remainder");
    acc = std::move(*next);
  }
  return acc;
}

}  // namespace

LaurentPoly q_int(std::int64_t n) {
  if (n < 0) throw InvalidParams("q-integer of a negative number");
  std::vector<Rational> ones(static_cast<std::size_t>(n), Rational(1));
  return LaurentPoly::from_dense(ones);
}

const LaurentPoly& QBinomialTable::get(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0 || k > n) return zero_;
  while (static_cast<std::int64_t>(rows_.size()) <= n) {
    const auto m = static_cast<std::int64_t>(rows_.size());
    std::vector<LaurentPoly> row(static_cast<std::size_t>(m) + 1);
    row[0] = LaurentPoly(1L);
    row[m] = LaurentPoly(1L);
    for (std::int64_t j = 1; j < m; ++j) row[j] = rows_[m - 1][j - 1] + shift(rows_[m - 1][j], j);
    rows_.push_back(std::move(row));
  }
  return rows_[n][k];
}

LaurentPoly q_binomial(std::int64_t n, std::int64_t k) {
  thread_local QBinomialTable table;
  return table.get(n, k);
}

LaurentPoly q_binomial_product(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0 || k > n) return {};
  return to_laurent(central_binomial_coeffs(n, k));
}

LaurentPoly poch(const LaurentPoly& a, std::int64_t n) {
  if (n < 0) throw InvalidParams("q-Pochhammer length must be nonnegative");
  LaurentPoly acc(1L);
  for (std::int64_t j = 0; j < n; ++j) acc *= LaurentPoly(1L) - shift(a, j);
  return acc;
}

LaurentPoly q_fermat_quotient(std::int64_t p) {
  if (!is_prime(p)) throw NotPrime(std::to_string(p) + " is not prime");
  if (p < 3) throw InvalidParams("q-Fermat quotient requires p >= 3");
  // (-q; q)_(p-1) = prod (1 + q^j), then divide by [p] as (1 - q^p)/(1 - q).
  IntPoly acc{Integer(1)};
  for (std::int64_t j = 1; j < p; ++j) {
    const auto e = static_cast<std::size_t>(j);
    acc.resize(acc.size() + e);
    for (std::size_t i = acc.size(); i-- > e;) acc[i] += acc[i - e];
  }
  acc[0] -= 1;
  auto quotient = over_one_minus(times_one_minus(acc, 1), static_cast<std::size_t>(p));
  if (!quotient) throw NotDivisible("q-Fermat quotient division left a remainder");
  return to_laurent(*quotient);
}

LaurentPoly q_delannoy(std::int64_t n) { return delannoy_sum(n, true); }

LaurentPoly q_delannoy_bar(std::int64_t n) { return delannoy_sum(n, false); }

Residue q_harmonic_res(const QuotientRing& ring, std::int64_t n) {
  Residue sum = ring.zero();
  for (std::int64_t k = 1; k <= n; ++k) sum += ring.reduce(q_int(k)).inverse();
  return sum;
}

bool central_qbinom_divisible(std::int64_t p, std::int64_t k) {
  if (!is_prime(p) || p < 3) throw NotPrime(std::to_string(p) + " is not an odd prime");
  if (2 * k <= p - 1 || k >= p) throw InvalidParams("central binomial check needs (p-1)/2 < k < p");
  // [p] = (1 - q^p)/(1 - q), so [p] | f iff (1 - q^p) | f (1 - q).
  return over_one_minus(times_one_minus(central_binomial_coeffs(2 * k, k), 1), static_cast<std::size_t>(p)).has_value();
}

ResidueBinomialRows::ResidueBinomialRows(QuotientRing ring) : ring_(std::move(ring)) {}

const std::vector<Residue>& ResidueBinomialRows::next() {
  ++n_;
  std::vector<Residue> row;
  row.reserve(static_cast<std::size_t>(n_) + 1);
  row.push_back(ring_.one());
  for (std::int64_t k = 1; k < n_; ++k) row.push_back(row_[k - 1] + row_[k].shifted(k));
  if (n_ > 0) row.push_back(ring_.one());
  row_ = std::move(row);
  return row_;
}

}  // namespace qcong

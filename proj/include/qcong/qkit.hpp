#pragma once

#include <cstdint>
#include <vector>

#include "qcong/laurent.hpp"
#include "qcong/quotient.hpp"

namespace qcong {

/// [n] = 1 + q + ... + q^(n-1); [0] = 0.
LaurentPoly q_int(std::int64_t n);

/// Memoized Gaussian binomials built row by row with the q-Pascal rule
///   [n, k] = [n-1, k-1] + q^k [n-1, k].
///
/// The table is the one mutable structure in this module: keep an instance
/// per thread (q_binomial() below does exactly that).
class QBinomialTable {
 public:
  /// Zero outside 0 <= k <= n.
  const LaurentPoly& get(std::int64_t n, std::int64_t k);
  std::size_t rows() const { return rows_.size(); }

 private:
  std::vector<std::vector<LaurentPoly>> rows_;
  LaurentPoly zero_;
};

/// Gaussian binomial from the calling thread's memo table.
LaurentPoly q_binomial(std::int64_t n, std::int64_t k);

/// Gaussian binomial via prod_{j=1..k} (1 - q^(n-k+j)) / (1 - q^j), dividing
/// exactly after every factor so each intermediate is itself [n-k+j, j].
/// No memo; meant for single large entries such as [2k, k] with k near 100.
LaurentPoly q_binomial_product(std::int64_t n, std::int64_t k);

/// (a; q)_n = (1 - a)(1 - a q)...(1 - a q^(n-1)); (a; q)_0 = 1.
LaurentPoly poch(const LaurentPoly& a, std::int64_t n);

/// ((-q; q)_(p-1) - 1) / [p] as an exact polynomial quotient.
/// Throws NotPrime / InvalidParams for bad p and NotDivisible if the
/// division were ever inexact.
LaurentPoly q_fermat_quotient(std::int64_t p);

/// D_n(q) = sum_k (1 + q^k)/2 [n+k, 2k][2k, k] q^(C(k,2) - 2nk).
LaurentPoly q_delannoy(std::int64_t n);
/// Same sum without the (1 + q^k)/2 weight.
LaurentPoly q_delannoy_bar(std::int64_t n);

/// H_n(q) = sum_{k=1..n} 1/[k] inside the ring. Throws NonInvertible.
Residue q_harmonic_res(const QuotientRing& ring, std::int64_t n);

/// Whether [p] divides [2k, k] exactly, for (p-1)/2 < k < p.
bool central_qbinom_divisible(std::int64_t p, std::int64_t k);

/// Rows of Gaussian binomials reduced into a ring, generated by the same
/// q-Pascal rule as QBinomialTable. Only the current row is kept.
class ResidueBinomialRows {
 public:
  explicit ResidueBinomialRows(QuotientRing ring);
  /// Row n = 0, 1, 2, ... on successive calls; entry k is [n, k].
  const std::vector<Residue>& next();
  std::int64_t current_row() const { return n_; }

 private:
  QuotientRing ring_;
  std::vector<Residue> row_;
  std::int64_t n_ = -1;
};

}  // namespace qcong

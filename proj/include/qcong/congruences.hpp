#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qcong/quotient.hpp"
#include "qcong/report.hpp"

namespace qcong {

/// Per-task cache of the residues most congruences share, for one prime.
/// Built lazily; never shared between tasks.
class PrimeContext {
 public:
  /// Throws NotPrime for composite p.
  PrimeContext(std::int64_t p, int modulus_power);

  std::int64_t p() const { return p_; }
  const QuotientRing& ring() const { return ring_; }

  /// inv([k]) for 1 <= k <= p-1.
  const Residue& inv_int(std::int64_t k);
  /// inv(1 + q^k) for 1 <= k <= p-1.
  const Residue& inv_one_plus(std::int64_t k);
  /// (-q; q)_k for 0 <= k <= p-1.
  const Residue& neg_poch(std::int64_t k);
  /// inv((-q; q)_k) for 0 <= k <= p-1.
  const Residue& inv_neg_poch(std::int64_t k);
  /// The reduced q-Fermat quotient ((-q;q)_(p-1) - 1)/[p].
  const Residue& fermat_quotient();
  /// (p-1)(1-q)/2, the scalar term that recurs throughout the catalog.
  Residue half_shift() const;

 private:
  std::int64_t p_;
  QuotientRing ring_;
  std::vector<std::optional<Residue>> inv_int_;
  std::vector<std::optional<Residue>> inv_one_plus_;
  std::vector<Residue> neg_poch_;
  std::vector<std::optional<Residue>> inv_neg_poch_;
  std::optional<Residue> fermat_quotient_;
};

/// One side-by-side comparison produced by a builder. The label tells
/// sub-checks apart in the witness (for example "k=5"); it is empty for
/// single-comparison cases.
struct SideCheck {
  std::string label;
  Residue lhs;
  Residue rhs;
};

struct CongruenceCase {
  std::string id;
  /// One-line statement of the congruence.
  std::string statement;
  /// Smallest admissible prime; smaller primes are skipped.
  std::int64_t min_prime;
  /// 1 for mod [p], 2 for mod [p]^2.
  int modulus_power;
  /// Whether the case takes the multiplicity parameter m.
  bool uses_m;
  std::function<std::vector<SideCheck>(PrimeContext&, const Params&)> build;
  /// For an amended statement, the id of the catalog case it corrects.
  std::string amends;
};

/// Catalog in its documented order, amended statements last.
const std::vector<CongruenceCase>& congruence_cases();
/// Every registered id, amended statements included.
std::vector<std::string> case_ids();
/// Ids of the catalog proper, without the amended statements.
std::vector<std::string> catalog_ids();
/// Throws UnknownCase.
const CongruenceCase& find_case(const std::string& id);

struct VerifyOptions {
  /// Run primes below the case's constraint instead of skipping them. Such
  /// reports carry params["exploratory"] = 1.
  bool exploratory = false;
  /// Add 1 to the first built right-hand side (checker sanity).
  bool perturb = false;
};

/// Builds both sides and compares them. Throws UnknownCase; builder errors
/// become status error with the message as witness.
Report verify_case(const std::string& id, std::int64_t p, const Params& params = {}, const VerifyOptions& options = {});

struct MRange {
  std::int64_t lo = 1;
  std::int64_t hi = 4;
};

/// One task per (case, prime, m) over the cross product; cases without m
/// get empty params.
struct CongruenceTask {
  std::string id;
  std::int64_t prime;
  Params params;
};
std::vector<CongruenceTask> congruence_tasks(const std::vector<std::string>& ids, const std::vector<std::int64_t>& primes,
                                             MRange m_range = {});

/// Sequential sweep over every case; reports sorted.
std::vector<Report> verify_all(const std::vector<std::int64_t>& primes, MRange m_range = {},
                               const VerifyOptions& options = {});

enum class ChainWeight {
  /// q^C(k_m+1,2) / (-q;q)_(k_m) on the last index.
  kohnen,
  /// No outer weight: the plain multiple q-harmonic sum.
  plain,
};

/// Sum over chains 1 <= k1 <= ... <= km <= p-1 of weight(km)/([k1]...[km])
/// by the recurrence C_1(k) = inv([k]), C_i(k) = inv([k]) sum_{l<=k} C_(i-1)(l).
/// Works in any ring where the [k] are invertible.
Residue chain_sum_residue(const QuotientRing& ring, std::int64_t p, std::int64_t m,
                          ChainWeight weight = ChainWeight::kohnen);

/// D_0(q)..D_(n_max)(q) (weighted) or their unweighted variants, reduced
/// into the ring, computed from residue Pascal rows.
std::vector<Residue> delannoy_residues(const QuotientRing& ring, std::int64_t n_max, bool weighted);

}  // namespace qcong

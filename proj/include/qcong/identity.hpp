#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qcong/bivar.hpp"
#include "qcong/report.hpp"

namespace qcong {

/// Both sides of an identity after multiplying through by its common
/// denominator. The identity holds iff lhs == rhs.
struct IdentityOutcome {
  BivarPoly lhs;
  BivarPoly rhs;

  bool pass() const { return lhs == rhs; }
  std::string witness() const { return to_string(lhs - rhs); }
};

// Every verifier throws InvalidParams outside its stated parameter range.

/// sum_{k=0..n} (-1)^k [n,k] q^(C(k+1,2) - rk) / (1 - x q^k) = (q;q)_n x^r / (x;q)_(n+1),
/// cleared by (x;q)_(n+1). n >= 1, 0 <= r <= n.
IdentityOutcome verify_lagrange(std::int64_t n, std::int64_t r);

/// sum q^k/(1-q^k) = sum (-1)^(k-1) [n,k] q^C(k+1,2)/(1-q^k), cleared by
/// prod_{k=1..n} (1-q^k). n >= 1.
IdentityOutcome verify_van_hamme(std::int64_t n);

/// Dilcher's m-fold chain sum against its binomial closed form, cleared by
/// prod_{k=1..n} (1-q^k)^m. m, n >= 1.
IdentityOutcome verify_dilcher(std::int64_t m, std::int64_t n);

/// The same chain sum weighted by (x;q)_(k1) against
/// sum (-1)^k [n,k] q^(C(k,2)+km) (x^k - 1)/(1-q^k)^m, same multiplier.
IdentityOutcome verify_x_dilcher(std::int64_t m, std::int64_t n);

/// The m = 1 case of verify_x_dilcher, expanded term by term without the
/// chain recurrence. n >= 1.
IdentityOutcome verify_q_kohnen(std::int64_t n);

/// sum (1-x)^k/k = sum (-1)^k/k C(n,k) (x^k - 1) over the rationals,
/// cleared by lcm(1..n). n >= 1.
IdentityOutcome verify_kohnen_binomial(std::int64_t n);

/// The nested sum over chains r <= k1 <= ... <= km <= n of
/// [k1,r] q^(k1+...+km) / prod (1-q^ki), times (-1)^r q^C(r,2), enumerated
/// chain by chain, against (-1)^r q^(C(r,2)+mr) [n,r] / (1-q^r)^m.
/// Cleared by prod_{j=r..n} (1-q^j)^m. 1 <= r <= n, m >= 1.
IdentityOutcome verify_chain_coeff(std::int64_t m, std::int64_t n, std::int64_t r);

/// sum_{k1=r..k2} [k1,r] q^k1/(1-q^k1) = [k2,r] q^r/(1-q^r), cleared by
/// prod_{j=r..k2} (1-q^j). 1 <= r <= k2.
IdentityOutcome verify_prefix_lemma(std::int64_t r, std::int64_t k2);

/// Cleared chain sum
///   prod_{k=1..n}(1-q^k)^m * sum_{1<=k1<=...<=km<=n} w(k1) q^(k1+...+km) / prod (1-q^ki)
/// by the recurrence A_1(k) = w(k) q^k P_k, A_i(k) = q^k P_k sum_{l<=k} A_(i-1)(l)
/// with P_k = prod_{j != k} (1-q^j). Uses O(m n) polynomial products.
BivarPoly cleared_chain_sum(std::int64_t m, std::int64_t n, const std::function<BivarPoly(std::int64_t)>& first_weight);

/// Right-hand side of the x-weighted Dilcher identity with the same multiplier.
BivarPoly x_dilcher_rhs(std::int64_t m, std::int64_t n);

/// prod_{1<=j<=n, j != k} (1 - q^j).
LaurentPoly product_except(std::int64_t n, std::int64_t k);

/// Registry entry binding an identity to its parameter space.
struct IdentityCase {
  std::string id;
  std::vector<std::string> param_names;
  /// Default sweep bounds used by identity_sweep when none are given.
  std::int64_t default_n_max;
  std::int64_t default_m_max;
  std::function<IdentityOutcome(const Params&)> run;
  /// Every admissible parameter set with n <= n_max and m <= m_max.
  std::function<std::vector<Params>(std::int64_t n_max, std::int64_t m_max)> grid;
};

const std::vector<IdentityCase>& identity_cases();
std::vector<std::string> identity_ids();

/// Runs one identity; InvalidParams becomes status error. Throws UnknownCase.
/// perturb adds 1 to the right-hand side.
Report verify_identity(const std::string& id, const Params& params, bool perturb = false);
const IdentityCase& find_identity(const std::string& id);

/// Sweeps one identity (or "all") over its grid; bounds <= 0 mean defaults.
std::vector<Report> identity_sweep(const std::string& id, std::int64_t n_max = 0, std::int64_t m_max = 0);

}  // namespace qcong

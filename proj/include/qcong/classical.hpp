#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qcong/congruences.hpp"
#include "qcong/report.hpp"

namespace qcong {

/// Largest prime the modular routines accept; p^2 and the products of two
/// residues mod p^2 then stay inside unsigned 128-bit intermediates.
inline constexpr std::uint64_t kMaxClassicalPrime = (1ULL << 31) - 1;

/// Residue mod M (M = p or p^2), always in [0, M).
class ModP {
 public:
  ModP() = default;
  /// Any integer, reduced into [0, M).
  ModP(std::int64_t v, std::uint64_t modulus);

  std::uint64_t value() const { return value_; }
  std::uint64_t modulus() const { return modulus_; }
  bool is_zero() const { return value_ == 0; }

  ModP operator-() const;
  ModP& operator+=(const ModP& rhs);
  ModP& operator-=(const ModP& rhs);
  ModP& operator*=(const ModP& rhs);
  friend ModP operator+(ModP a, const ModP& b) { return a += b; }
  friend ModP operator-(ModP a, const ModP& b) { return a -= b; }
  friend ModP operator*(ModP a, const ModP& b) { return a *= b; }
  bool operator==(const ModP&) const = default;

  ModP pow(std::uint64_t e) const;
  /// Throws NonInvertible when gcd(value, M) != 1.
  ModP inverse() const;

 private:
  std::uint64_t value_ = 0;
  std::uint64_t modulus_ = 1;
};

/// a^-1 mod M by extended Euclid. Throws NonInvertible.
ModP mod_inv(std::int64_t a, std::uint64_t modulus);

/// 1/1, 1/2, ..., 1/n mod M with one inversion (prefix products). Index 0
/// holds 0. Requires every k <= n coprime to M.
std::vector<ModP> inverses_upto(std::int64_t n, std::uint64_t modulus);

/// (2^(p-1) - 1)/p mod p.
ModP fermat_quotient2(std::int64_t p);

/// D_0..D_(n_max) mod p from sum_k C(n+k, 2k) C(2k, k) with factorial
/// tables below p. Terms with n + k >= p vanish mod p. n_max <= p-1.
std::vector<ModP> delannoy_mod(std::int64_t n_max, std::int64_t p);

/// Same values from n D_n = 3(2n-1) D_(n-1) - (n-1) D_(n-2), O(n_max).
std::vector<ModP> delannoy_mod_recurrence(std::int64_t n_max, std::int64_t p);

/// Weight of a chain 1 <= k1 <= ... <= km <= p-1, placed on one end.
struct NestedVariant {
  enum class End { first, last };
  End end;
  /// Weights for k = 0..n (index 0 unused).
  std::function<std::vector<ModP>(std::int64_t n, std::uint64_t p)> weights;

  /// 1/2^km: the multiple Kohnen sum.
  static NestedVariant kohnen();
  /// (1-x)^k1.
  static NestedVariant one_minus_x(std::int64_t x);
  /// 2^k1 - (-1)^k1.
  static NestedVariant combined();
};

/// sum over chains of weight / (k1 ... km) mod p by the chain recurrence.
ModP nested_sum_mod(std::int64_t m, std::int64_t p, const NestedVariant& variant);

struct ClassicalCheck {
  std::string label;
  ModP lhs;
  ModP rhs;
};

struct ClassicalCase {
  std::string id;
  std::string statement;
  /// Admissible (p, params); others are skipped.
  std::function<bool(std::int64_t p, const Params&)> admissible;
  /// Parameter grid; an unset m range or x list falls back to the defaults.
  std::function<std::vector<Params>(const std::optional<MRange>&, const std::optional<std::vector<std::int64_t>>&)> grid;
  std::function<std::vector<ClassicalCheck>(std::int64_t p, const Params&)> build;
};

const std::vector<ClassicalCase>& classical_cases();
std::vector<std::string> classical_ids();
/// Throws UnknownCase.
const ClassicalCase& find_classical(const std::string& id);

/// Throws UnknownCase; builder errors become status error.
Report verify_classical(const std::string& id, std::int64_t p, const Params& params = {},
                        const VerifyOptions& options = {});

struct ClassicalTask {
  std::string id;
  std::int64_t prime;
  Params params;
};
std::vector<ClassicalTask> classical_tasks(const std::vector<std::string>& ids, const std::vector<std::int64_t>& primes,
                                           const std::optional<MRange>& m_range = std::nullopt,
                                           const std::optional<std::vector<std::int64_t>>& xs = std::nullopt);

}  // namespace qcong

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qcong/congruences.hpp"
#include "qcong/report.hpp"

namespace qcong::cli {

enum class Command { list, verify, identity, classical, bench };

struct PrimeRange {
  std::int64_t lo = 3;
  std::int64_t hi = 31;
};

struct RunConfig {
  Command command = Command::list;
  /// Case or identity id, or "all".
  std::string selector = "all";
  PrimeRange primes;
  /// Unset means each case's own default.
  std::optional<MRange> m_range;
  std::optional<std::vector<std::int64_t>> xs;
  /// Identity sweep bounds; 0 means the identity's default.
  std::int64_t n_max = 0;
  std::int64_t m_max = 0;
  Format format = Format::text;
  std::optional<std::string> output;
  /// Worker threads; 0 means one per hardware thread.
  unsigned jobs = 0;
  bool exploratory = false;
  /// Ids whose right-hand side is shifted by 1.
  std::set<std::string> perturb;
};

/// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kFailed = 1;
inline constexpr int kUsage = 2;

/// "lo..hi" with 3 <= lo <= hi. Throws InvalidParams.
PrimeRange parse_prime_range(const std::string& text);
/// "lo..hi" or a single "m", within 1..8. Throws InvalidParams.
MRange parse_m_range(const std::string& text);

/// Runs a validated config, writing reports to config.output or out.
/// Returns kOk when no non-exploratory report failed or errored, kFailed
/// otherwise, kUsage for bad selectors or an unwritable output path.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv and runs. Usage errors go to err with status kUsage.
int main_with_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qcong::cli

#include "qcong/primes.hpp"

namespace qcong {

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::int64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::int64_t> primes_between(std::int64_t lo, std::int64_t hi) {
  std::vector<std::int64_t> out;
  if (hi < 2 || lo > hi) return out;
  std::vector<bool> composite(static_cast<std::size_t>(hi) + 1, false);
  for (std::int64_t i = 2; i * i <= hi; ++i)
    if (!composite[i])
      for (std::int64_t j = i * i; j <= hi; j += i) composite[j] = true;
  for (std::int64_t n = lo < 2 ? 2 : lo; n <= hi; ++n)
    if (!composite[n]) out.push_back(n);
  return out;
}

}  // namespace qcong

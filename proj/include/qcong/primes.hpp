#pragma once

#include <cstdint>
#include <vector>

namespace qcong {

bool is_prime(std::int64_t n);

/// Primes in [lo, hi] by a sieve of Eratosthenes; empty when lo > hi.
std::vector<std::int64_t> primes_between(std::int64_t lo, std::int64_t hi);

}  // namespace qcong

#include "qcong/classical.hpp"

#include <chrono>

#include "qcong/errors.hpp"
#include "qcong/primes.hpp"

namespace qcong {

namespace {

using u128 = unsigned __int128;

std::uint64_t as_modulus(std::int64_t p) { return static_cast<std::uint64_t>(p); }

std::int64_t require(const Params& params, const std::string& key) {
  const auto it = params.find(key);
  if (it == params.end()) throw InvalidParams("missing parameter " + key);
  return it->second;
}

std::int64_t param_m(const Params& params) {
  const std::int64_t m = require(params, "m");
  if (m < 1) throw InvalidParams("m must be >= 1");
  return m;
}

// base^0 .. base^n
std::vector<ModP> powers(const ModP& base, std::int64_t n) {
  std::vector<ModP> out{ModP(1, base.modulus())};
  for (std::int64_t k = 1; k <= n; ++k) out.push_back(out.back() * base);
  return out;
}

// sum_{k=1..hi} w(k) / k^m mod p
ModP power_sum(std::int64_t p, std::int64_t hi, std::int64_t m, const std::function<ModP(std::int64_t)>& w) {
  const auto inv = inverses_upto(p - 1, as_modulus(p));
  ModP sum(0, as_modulus(p));
  for (std::int64_t k = 1; k <= hi; ++k) {
    ModP term = w(k);
    for (std::int64_t i = 0; i < m; ++i) term *= inv[k];
    sum += term;
  }
  return sum;
}

ModP alternating_harmonic(std::int64_t p, std::int64_t hi) {
  return power_sum(p, hi, 1, [p](std::int64_t k) { return ModP(k % 2 == 1 ? 1 : -1, as_modulus(p)); });
}

// sum_{k=1..hi} 1/(k 2^k) mod M
ModP kohnen_sum(std::int64_t hi, std::uint64_t modulus) {
  const auto inv = inverses_upto(hi, modulus);
  const ModP half = mod_inv(2, modulus);
  ModP weight(1, modulus);
  ModP sum(0, modulus);
  for (std::int64_t k = 1; k <= hi; ++k) {
    weight *= half;
    sum += inv[k] * weight;
  }
  return sum;
}

std::vector<Params> m_grid(const std::optional<MRange>& range, MRange fallback, bool even_only = false) {
  const MRange r = range.value_or(fallback);
  std::vector<Params> grid;
  for (std::int64_t m = r.lo; m <= r.hi; ++m)
    if (!even_only || m % 2 == 0) grid.push_back({{"m", m}});
  return grid;
}

auto no_params() {
  return [](const std::optional<MRange>&, const std::optional<std::vector<std::int64_t>>&) {
    return std::vector<Params>{Params{}};
  };
}

auto m_params(MRange fallback, bool even_only = false) {
  return [fallback, even_only](const std::optional<MRange>& range, const std::optional<std::vector<std::int64_t>>&) {
    return m_grid(range, fallback, even_only);
  };
}

auto at_least(std::int64_t bound) {
  return [bound](std::int64_t p, const Params&) { return p >= bound; };
}

auto above_m_plus_one() {
  return [](std::int64_t p, const Params& params) { return p >= 3 && p > require(params, "m") + 1; };
}

std::vector<ClassicalCheck> single(ModP lhs, ModP rhs) { return {ClassicalCheck{"", lhs, rhs}}; }

// The (1-x)^k1 chain identity at a single x.
std::vector<ClassicalCheck> first_power_check(std::int64_t p, std::int64_t m, std::int64_t x) {
  const std::uint64_t mod = as_modulus(p);
  const ModP lhs = nested_sum_mod(m, p, NestedVariant::one_minus_x(x));
  const auto x_power = powers(ModP(x, mod), p - 1);
  const ModP rhs = power_sum(p, p - 1, m, [&](std::int64_t k) { return x_power[k] - ModP(1, mod); });
  return single(lhs, rhs);
}

std::vector<ClassicalCase> build_catalog() {
  std::vector<ClassicalCase> cases;

  cases.push_back({"known", "(2^(p-1)-1)/p = 1/2 sum (-1)^(k-1)/k = sum_(k<=(p-1)/2) (-1)^(k-1)/k", at_least(3),
                   no_params(), [](std::int64_t p, const Params&) {
                     const ModP f = fermat_quotient2(p);
                     const ModP half_sum = alternating_harmonic(p, p - 1) * mod_inv(2, as_modulus(p));
                     const ModP half_range = alternating_harmonic(p, (p - 1) / 2);
                     return std::vector<ClassicalCheck>{{"half sum", f, half_sum},
                                                        {"half range", f, half_range},
                                                        {"forms agree", half_sum, half_range}};
                   }});

  cases.push_back({"glaisher", "sum 2^(k-1)/k = -(2^(p-1)-1)/p", at_least(3), no_params(),
                   [](std::int64_t p, const Params&) {
                     const auto two = powers(ModP(2, as_modulus(p)), p - 1);
                     const ModP lhs = power_sum(p, p - 1, 1, [&](std::int64_t k) { return two[k - 1]; });
                     return single(lhs, -fermat_quotient2(p));
                   }});

  cases.push_back({"kohnen", "sum 1/(k 2^k) = sum_(k<=(p-1)/2) (-1)^(k-1)/k", at_least(3), no_params(),
                   [](std::int64_t p, const Params&) {
                     return single(kohnen_sum(p - 1, as_modulus(p)), alternating_harmonic(p, (p - 1) / 2));
                   }});

  cases.push_back({"sun-delannoy", "sum D_k/k = -(2^(p-1)-1)/p", at_least(3), no_params(),
                   [](std::int64_t p, const Params&) {
                     const auto d = delannoy_mod_recurrence(p - 1, p);
                     const ModP lhs = power_sum(p, p - 1, 1, [&](std::int64_t k) { return d[k]; });
                     return single(lhs, -fermat_quotient2(p));
                   }});

  cases.push_back({"multi-kohnen", "sum over chains 1/(k1...km 2^km) = 1/2 sum (-1)^(k-1)/k^m", above_m_plus_one(),
                   m_params({1, 4}), [](std::int64_t p, const Params& params) {
                     const std::int64_t m = param_m(params);
                     const ModP rhs = power_sum(p, p - 1, m, [p](std::int64_t k) {
                                        return ModP(k % 2 == 1 ? 1 : -1, as_modulus(p));
                                      }) *
                                      mod_inv(2, as_modulus(p));
                     return single(nested_sum_mod(m, p, NestedVariant::kohnen()), rhs);
                   }});

  cases.push_back({"multi-even", "sum over chains 1/(k1...km 2^km) = 0 for even m", above_m_plus_one(),
                   m_params({1, 4}, true), [](std::int64_t p, const Params& params) {
                     const std::int64_t m = param_m(params);
                     if (m % 2 != 0) throw InvalidParams("multi-even needs even m");
                     return single(nested_sum_mod(m, p, NestedVariant::kohnen()), ModP(0, as_modulus(p)));
                   }});

  cases.push_back({"sun-harmonic", "sum H_k/(k 2^k) = 0", at_least(5), no_params(), [](std::int64_t p, const Params&) {
                     const std::uint64_t mod = as_modulus(p);
                     const auto inv = inverses_upto(p - 1, mod);
                     const ModP half = mod_inv(2, mod);
                     ModP weight(1, mod);
                     ModP harmonic(0, mod);
                     ModP lhs(0, mod);
                     for (std::int64_t k = 1; k < p; ++k) {
                       weight *= half;
                       harmonic += inv[k];
                       lhs += harmonic * inv[k] * weight;
                     }
                     return single(lhs, ModP(0, mod));
                   }});

  cases.push_back({"power-sum-zero", "sum 1/k^m = 0 for p > m+1", above_m_plus_one(), m_params({1, 4}),
                   [](std::int64_t p, const Params& params) {
                     const ModP lhs = power_sum(p, p - 1, param_m(params), [p](std::int64_t) { return ModP(1, as_modulus(p)); });
                     return single(lhs, ModP(0, as_modulus(p)));
                   }});

  cases.push_back({"xxyy", "sum over chains (1-x)^k1/(k1...km) = sum (x^k - 1)/k^m", at_least(3),
                   [](const std::optional<MRange>& range, const std::optional<std::vector<std::int64_t>>& xs) {
                     std::vector<Params> grid;
                     const std::vector<std::int64_t> x_values = xs.value_or(std::vector<std::int64_t>{-3, -2, -1, 0, 1, 2, 3});
                     for (const auto& m : m_grid(range, {1, 3}))
                       for (std::int64_t x : x_values) grid.push_back({{"m", m.at("m")}, {"x", x}});
                     return grid;
                   },
                   [](std::int64_t p, const Params& params) {
                     return first_power_check(p, param_m(params), require(params, "x"));
                   }});

  cases.push_back({"cor-x-neg1", "sum over chains 2^k1/(k1...km) = sum ((-1)^k - 1)/k^m", at_least(3),
                   m_params({1, 3}),
                   [](std::int64_t p, const Params& params) { return first_power_check(p, param_m(params), -1); }});

  cases.push_back({"cor-x-2", "sum over chains (-1)^k1/(k1...km) = sum (2^k - 1)/k^m", at_least(3), m_params({1, 3}),
                   [](std::int64_t p, const Params& params) { return first_power_check(p, param_m(params), 2); }});

  cases.push_back({"cor-combined", "sum over chains (2^k1 - (-1)^k1)/(k1...km) = sum ((-1)^k - 2^k)/k^m", at_least(3),
                   m_params({1, 3}), [](std::int64_t p, const Params& params) {
                     const std::int64_t m = param_m(params);
                     const std::uint64_t mod = as_modulus(p);
                     const auto two = powers(ModP(2, mod), p - 1);
                     const ModP rhs = power_sum(p, p - 1, m, [&](std::int64_t k) {
                       return ModP(k % 2 == 0 ? 1 : -1, mod) - two[k];
                     });
                     return single(nested_sum_mod(m, p, NestedVariant::combined()), rhs);
                   }});

  cases.push_back({"sun95", "sum_(k<=(p-1)/2) 1/(k 2^k) = sum_(k<=floor(3p/4)) (-1)^(k-1)/k", at_least(3), no_params(),
                   [](std::int64_t p, const Params&) {
                     return single(kohnen_sum((p - 1) / 2, as_modulus(p)), alternating_harmonic(p, 3 * p / 4));
                   }});

  cases.push_back({"sunZH", "sum 1/(k 2^k) = F - p F^2/2 mod p^2, F = (2^(p-1)-1)/p", at_least(3), no_params(),
                   [](std::int64_t p, const Params&) {
                     const std::uint64_t mod = as_modulus(p) * as_modulus(p);
                     mpz_class big_p = static_cast<unsigned long>(p);
                     mpz_class power;
                     const mpz_class cube = big_p * big_p * big_p;
                     mpz_powm_ui(power.get_mpz_t(), mpz_class(2).get_mpz_t(), static_cast<unsigned long>(p - 1),
                                 cube.get_mpz_t());
                     const mpz_class f_big = (power - 1) / big_p;
                     const ModP f(static_cast<std::int64_t>(f_big.get_ui()), mod);
                     const ModP rhs = f - ModP(p, mod) * f * f * mod_inv(2, mod);
                     return single(kohnen_sum(p - 1, mod), rhs);
                   }});

  return cases;
}

}  // namespace

ModP::ModP(std::int64_t v, std::uint64_t modulus) : modulus_(modulus) {
  if (modulus == 0) throw InvalidParams("modulus must be positive");
  const auto m = static_cast<std::int64_t>(modulus);
  const std::int64_t r = v % m;
  value_ = static_cast<std::uint64_t>(r < 0 ? r + m : r);
}

ModP ModP::operator-() const {
  ModP r = *this;
  r.value_ = value_ == 0 ? 0 : modulus_ - value_;
  return r;
}

ModP& ModP::operator+=(const ModP& rhs) {
  value_ += rhs.value_;
  if (value_ >= modulus_) value_ -= modulus_;
  return *this;
}

ModP& ModP::operator-=(const ModP& rhs) { return *this += -rhs; }

ModP& ModP::operator*=(const ModP& rhs) {
  if (modulus_ <= (1ULL << 32))
    value_ = value_ * rhs.value_ % modulus_;
  else
    value_ = static_cast<std::uint64_t>(static_cast<u128>(value_) * rhs.value_ % modulus_);
  return *this;
}

ModP ModP::pow(std::uint64_t e) const {
  ModP result(1, modulus_);
  ModP base = *this;
  while (e > 0) {
    if (e & 1U) result *= base;
    base *= base;
    e >>= 1U;
  }
  return result;
}

ModP ModP::inverse() const { return mod_inv(static_cast<std::int64_t>(value_), modulus_); }

ModP mod_inv(std::int64_t a, std::uint64_t modulus) {
  const ModP reduced(a, modulus);
  __int128 old_r = static_cast<__int128>(reduced.value()), r = static_cast<__int128>(modulus);
  __int128 old_s = 1, s = 0;
  while (r != 0) {
    const __int128 quotient = old_r / r;
    old_r -= quotient * r;
    std::swap(old_r, r);
    old_s -= quotient * s;
    std::swap(old_s, s);
  }
  if (old_r != 1) {
    const auto g = static_cast<long>(old_r);
    throw NonInvertible(std::to_string(a) + " is not invertible mod " + std::to_string(modulus), LaurentPoly(g));
  }
  const auto m = static_cast<__int128>(modulus);
  return ModP(static_cast<std::int64_t>(((old_s % m) + m) % m), modulus);
}

std::vector<ModP> inverses_upto(std::int64_t n, std::uint64_t modulus) {
  std::vector<ModP> prefix(static_cast<std::size_t>(std::max<std::int64_t>(n, 0)) + 1, ModP(1, modulus));
  for (std::int64_t k = 1; k <= n; ++k) prefix[k] = prefix[k - 1] * ModP(k, modulus);
  std::vector<ModP> inv(prefix.size(), ModP(0, modulus));
  if (n < 1) return inv;
  ModP running = prefix[n].inverse();
  for (std::int64_t k = n; k >= 1; --k) {
    inv[k] = running * prefix[k - 1];
    running *= ModP(k, modulus);
  }
  return inv;
}

ModP fermat_quotient2(std::int64_t p) {
  if (p < 3 || !is_prime(p)) throw NotPrime(std::to_string(p) + " is not an odd prime");
  if (as_modulus(p) > kMaxClassicalPrime) throw InvalidParams("prime above the supported bound");
  const std::uint64_t square = as_modulus(p) * as_modulus(p);
  const ModP power = ModP(2, square).pow(as_modulus(p) - 1);
  return ModP(static_cast<std::int64_t>((power.value() - 1) / as_modulus(p)), as_modulus(p));
}

std::vector<ModP> delannoy_mod(std::int64_t n_max, std::int64_t p) {
  if (n_max < 0 || n_max > p - 1) throw InvalidParams("delannoy_mod needs 0 <= n_max <= p-1");
  const std::uint64_t mod = as_modulus(p);
  std::vector<ModP> fact(static_cast<std::size_t>(p), ModP(1, mod));
  for (std::int64_t i = 1; i < p; ++i) fact[i] = fact[i - 1] * ModP(i, mod);
  std::vector<ModP> inv_fact(fact.size());
  for (std::size_t i = 0; i < fact.size(); ++i) inv_fact[i] = fact[i].inverse();
  std::vector<ModP> d;
  for (std::int64_t n = 0; n <= n_max; ++n) {
    ModP sum(0, mod);
    // (n+k)! / ((n-k)! k! k!), zero once n + k reaches p
    for (std::int64_t k = 0; k <= n && n + k < p; ++k) sum += fact[n + k] * inv_fact[n - k] * inv_fact[k] * inv_fact[k];
    d.push_back(sum);
  }
  return d;
}

std::vector<ModP> delannoy_mod_recurrence(std::int64_t n_max, std::int64_t p) {
  if (n_max < 0 || n_max > p - 1) throw InvalidParams("delannoy_mod needs 0 <= n_max <= p-1");
  const std::uint64_t mod = as_modulus(p);
  const auto inv = inverses_upto(n_max, mod);
  std::vector<ModP> d{ModP(1, mod)};
  if (n_max >= 1) d.push_back(ModP(3, mod));
  for (std::int64_t n = 2; n <= n_max; ++n)
    d.push_back((ModP(3 * (2 * n - 1), mod) * d[n - 1] - ModP(n - 1, mod) * d[n - 2]) * inv[n]);
  return d;
}

NestedVariant NestedVariant::kohnen() {
  return {End::last, [](std::int64_t n, std::uint64_t p) { return powers(mod_inv(2, p), n); }};
}

NestedVariant NestedVariant::one_minus_x(std::int64_t x) {
  return {End::first, [x](std::int64_t n, std::uint64_t p) { return powers(ModP(1 - x, p), n); }};
}

NestedVariant NestedVariant::combined() {
  return {End::first, [](std::int64_t n, std::uint64_t p) {
            auto w = powers(ModP(2, p), n);
            for (std::int64_t k = 0; k <= n; ++k) w[k] -= ModP(k % 2 == 0 ? 1 : -1, p);
            return w;
          }};
}

ModP nested_sum_mod(std::int64_t m, std::int64_t p, const NestedVariant& variant) {
  if (m < 1) throw InvalidParams("chain length m must be >= 1");
  const std::uint64_t mod = as_modulus(p);
  const auto inv = inverses_upto(p - 1, mod);
  const bool first = variant.end == NestedVariant::End::first;
  // c[k]: chains ending at k; the first weight enters at the start, the last at the end.
  const auto w = variant.weights(p - 1, mod);
  std::vector<ModP> c(inv.size(), ModP(0, mod));
  for (std::int64_t k = 1; k < p; ++k) c[k] = first ? w[k] * inv[k] : inv[k];
  for (std::int64_t i = 2; i <= m; ++i) {
    ModP prefix(0, mod);
    for (std::int64_t k = 1; k < p; ++k) {
      prefix += c[k];
      c[k] = inv[k] * prefix;
    }
  }
  ModP sum(0, mod);
  for (std::int64_t k = 1; k < p; ++k) sum += first ? c[k] : w[k] * c[k];
  return sum;
}

const std::vector<ClassicalCase>& classical_cases() {
  static const std::vector<ClassicalCase> cases = build_catalog();
  return cases;
}

std::vector<std::string> classical_ids() {
  std::vector<std::string> ids;
  for (const auto& c : classical_cases()) ids.push_back(c.id);
  return ids;
}

const ClassicalCase& find_classical(const std::string& id) {
  for (const auto& c : classical_cases())
    if (c.id == id) return c;
  throw UnknownCase("unknown classical case: " + id);
}

Report verify_classical(const std::string& id, std::int64_t p, const Params& params, const VerifyOptions& options) {
  const ClassicalCase& c = find_classical(id);
  Report report{id, p, params, Status::skipped, std::nullopt, 0};
  const auto start = std::chrono::steady_clock::now();
  try {
    if (p < 3 || !is_prime(p)) throw NotPrime(std::to_string(p) + " is not an odd prime");
    if (as_modulus(p) > kMaxClassicalPrime) throw InvalidParams("prime above the supported bound");
    if (!c.admissible(p, params)) {
      if (!options.exploratory) return report;
      report.params["exploratory"] = 1;
    }
    auto checks = c.build(p, params);
    if (options.perturb && !checks.empty()) checks.front().rhs += ModP(1, checks.front().rhs.modulus());
    report.status = Status::pass;
    for (const auto& check : checks) {
      const ModP diff = check.lhs - check.rhs;
      if (diff.is_zero()) continue;
      report.status = Status::fail;
      const std::string text = std::to_string(diff.value()) + " mod " + std::to_string(diff.modulus());
      report.witness = check.label.empty() ? text : check.label + ": " + text;
      break;
    }
  } catch (const Error& e) {
    report.status = Status::error;
    report.witness = e.what();
  }
  report.millis = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::vector<ClassicalTask> classical_tasks(const std::vector<std::string>& ids, const std::vector<std::int64_t>& primes,
                                           const std::optional<MRange>& m_range,
                                           const std::optional<std::vector<std::int64_t>>& xs) {
  std::vector<ClassicalTask> tasks;
  for (const auto& id : ids) {
    const auto grid = find_classical(id).grid(m_range, xs);
    for (std::int64_t p : primes)
      for (const auto& params : grid) tasks.push_back({id, p, params});
  }
  return tasks;
}

}  // namespace qcong

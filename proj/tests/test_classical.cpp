#include "doctest.h"
#include "generators.hpp"
#include "qcong/classical.hpp"
#include "qcong/errors.hpp"
#include "qcong/primes.hpp"

using namespace qcong;

namespace {

// Exact rational reduced mod M; the denominator must be coprime to M.
std::uint64_t to_mod(const Rational& r, std::uint64_t m) {
  mpz_class num = r.get_num() % m;
  if (num < 0) num += m;
  mpz_class inv;
  mpz_class mod = static_cast<unsigned long>(m);
  REQUIRE(mpz_invert(inv.get_mpz_t(), mpz_class(r.get_den()).get_mpz_t(), mod.get_mpz_t()) != 0);
  return mpz_class(num * inv % mod).get_ui();
}

Integer binomial(long n, long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

Integer delannoy_exact(long n) {
  Integer sum = 0;
  for (long k = 0; k <= n; ++k) sum += binomial(n + k, 2 * k) * binomial(2 * k, k);
  return sum;
}

Rational two_pow(long e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, static_cast<unsigned long>(std::abs(e)));
  return e >= 0 ? Rational(r) : Rational(Integer(1), r);
}

// Sum over chains 1 <= k1 <= ... <= km <= p-1 of weight(k1, km)/(k1...km) in
// exact rationals.
Rational naive_chain(long m, long p, const std::function<Rational(long, long)>& weight) {
  Rational sum = 0;
  std::vector<long> chain;
  auto walk = [&](auto&& self, long low) -> void {
    if (static_cast<long>(chain.size()) == m) {
      Rational term = weight(chain.front(), chain.back());
      for (long k : chain) term /= k;
      sum += term;
      return;
    }
    for (long k = low; k < p; ++k) {
      chain.push_back(k);
      self(self, k);
      chain.pop_back();
    }
  };
  walk(walk, 1);
  return sum;
}

Rational rational_pow(long base, long e) {
  Rational r = 1;
  for (long i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

TEST_CASE("ModP arithmetic against wide integers") {
  auto& rng = qcong::testing::rng();
  for (std::uint64_t m : {5ULL, 25ULL, 1000003ULL, 2147483647ULL, 2147483647ULL * 2147483647ULL}) {
    std::uniform_int_distribution<std::uint64_t> dist(0, m - 1);
    for (int t = 0; t < 200; ++t) {
      const std::uint64_t a = dist(rng), b = dist(rng);
      const ModP x(static_cast<std::int64_t>(a), m), y(static_cast<std::int64_t>(b), m);
      CHECK((x * y).value() == static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m));
      CHECK((x + y).value() == static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) + b) % m));
      CHECK((x - y + y) == x);
      CHECK(x.value() < m);
    }
  }
  CHECK(ModP(-1, 7).value() == 6);
  CHECK(ModP(-14, 7).is_zero());
  CHECK(ModP(3, 7).pow(6).value() == 1);
}

TEST_CASE("modular inverses") {
  CHECK(mod_inv(2, 5).value() == 3);
  CHECK(mod_inv(1, 97).value() == 1);
  CHECK(mod_inv(4, 25).value() == 19);
  CHECK(mod_inv(-1, 7).value() == 6);
  CHECK_THROWS_AS(mod_inv(5, 25), NonInvertible);
  CHECK_THROWS_AS(mod_inv(0, 7), NonInvertible);
  for (std::uint64_t m : {97ULL, 9409ULL}) {
    const auto inv = inverses_upto(96, m);
    for (std::int64_t k = 1; k <= 96; ++k) {
      CHECK(inv[k] == mod_inv(k, m));
      CHECK((inv[k] * ModP(k, m)).value() == 1);
    }
  }
}

TEST_CASE("base-2 Fermat quotient") {
  CHECK(fermat_quotient2(3).value() == 1);
  CHECK(fermat_quotient2(5).value() == 3);
  CHECK(fermat_quotient2(7).value() == 2);
  for (long p : primes_between(3, 400)) {
    const Integer q = (Integer(two_pow(p - 1).get_num()) - 1) / p;
    CHECK(fermat_quotient2(p).value() == to_mod(Rational(q), static_cast<std::uint64_t>(p)));
  }
  // Wieferich primes
  CHECK(fermat_quotient2(1093).is_zero());
  CHECK(fermat_quotient2(3511).is_zero());
  CHECK_THROWS_AS(fermat_quotient2(9), NotPrime);
  CHECK_THROWS_AS(fermat_quotient2(2), NotPrime);
}

TEST_CASE("Delannoy numbers mod p") {
  const auto d = delannoy_mod(4, 1009);
  const std::uint64_t expected[] = {1, 3, 13, 63, 321};
  for (int n = 0; n <= 4; ++n) {
    CHECK(d[n].value() == expected[n]);
    CHECK(delannoy_exact(n) == expected[n]);
  }
  CHECK(delannoy_mod(0, 7).at(0).value() == 1);
  CHECK(delannoy_mod(4, 5).at(4).value() == 1);
  for (long p : primes_between(3, 61)) {
    const auto binom = delannoy_mod(p - 1, p);
    const auto rec = delannoy_mod_recurrence(p - 1, p);
    for (long n = 0; n < p; ++n) {
      CHECK(binom[n] == rec[n]);
      CHECK(binom[n].value() == to_mod(Rational(delannoy_exact(n)), static_cast<std::uint64_t>(p)));
    }
  }
  for (long p : {997L, 1009L}) CHECK(delannoy_mod(p - 1, p) == delannoy_mod_recurrence(p - 1, p));
  CHECK_THROWS_AS(delannoy_mod(7, 7), InvalidParams);
}

TEST_CASE("nested sums against chain enumeration") {
  CHECK(nested_sum_mod(1, 5, NestedVariant::kohnen()).value() == 3);
  CHECK_THROWS_AS(nested_sum_mod(0, 5, NestedVariant::kohnen()), InvalidParams);
  for (long p : primes_between(3, 13)) {
    const auto mod = static_cast<std::uint64_t>(p);
    for (long m = 1; m <= 3; ++m) {
      CAPTURE(p);
      CAPTURE(m);
      CHECK(nested_sum_mod(m, p, NestedVariant::kohnen()).value() ==
            to_mod(naive_chain(m, p, [](long, long last) { return two_pow(-last); }), mod));
      CHECK(nested_sum_mod(m, p, NestedVariant::combined()).value() ==
            to_mod(naive_chain(m, p, [](long first, long) -> Rational { return two_pow(first) - rational_pow(-1, first); }), mod));
      for (long x = -3; x <= 3; ++x)
        CHECK(nested_sum_mod(m, p, NestedVariant::one_minus_x(x)).value() ==
              to_mod(naive_chain(m, p, [x](long first, long) { return rational_pow(1 - x, first); }), mod));
    }
  }
}

TEST_CASE("nested sums in closed special cases") {
  auto& rng = qcong::testing::rng();
  std::uniform_int_distribution<long> xs(-50, 50);
  for (long p : primes_between(3, 97)) {
    const auto mod = static_cast<std::uint64_t>(p);
    const long x = xs(rng);
    ModP direct(0, mod);
    for (long k = 1; k < p; ++k) direct += ModP(1 - x, mod).pow(static_cast<std::uint64_t>(k)) * mod_inv(k, mod);
    CHECK(nested_sum_mod(1, p, NestedVariant::one_minus_x(x)) == direct);

    // m = 2 of the Kohnen weight is sum H_k/(k 2^k)
    ModP harmonic(0, mod), sum(0, mod);
    for (long k = 1; k < p; ++k) {
      harmonic += mod_inv(k, mod);
      sum += harmonic * mod_inv(k, mod) * mod_inv(2, mod).pow(static_cast<std::uint64_t>(k));
    }
    CHECK(nested_sum_mod(2, p, NestedVariant::kohnen()) == sum);
  }
}

TEST_CASE("small-prime values by direct evaluation") {
  // 1 + 2/2 + 4/3 + 8/4 = 16/3 = 2 mod 5
  CHECK(to_mod(Rational(1) + Rational(2, 2) + Rational(4, 3) + Rational(8, 4), 5) == 2);
  const auto glaisher = find_classical("glaisher").build(5, {});
  CHECK(glaisher.at(0).lhs.value() == 2);
  CHECK(verify_classical("glaisher", 5).status == Status::pass);

  const auto kohnen = find_classical("kohnen").build(5, {});
  CHECK(kohnen.at(0).lhs.value() == 3);
  CHECK(kohnen.at(0).rhs.value() == 3);
  CHECK(verify_classical("kohnen", 5).status == Status::pass);

  // 3/1 + 13/2 + 63/3 + 321/4 = 2 mod 5
  CHECK(to_mod(Rational(3) + Rational(13, 2) + Rational(63, 3) + Rational(321, 4), 5) == 2);
  CHECK(find_classical("sun-delannoy").build(5, {}).at(0).lhs.value() == 2);
  CHECK(verify_classical("sun-delannoy", 5).status == Status::pass);
}

TEST_CASE("sunZH against exact rationals mod p^2") {
  for (long p : primes_between(3, 200)) {
    const auto square = static_cast<std::uint64_t>(p * p);
    Rational lhs = 0;
    for (long k = 1; k < p; ++k) lhs += two_pow(-k) / k;
    const Rational f((Integer(two_pow(p - 1).get_num()) - 1) / p);
    const Rational rhs = f - Rational(p) * f * f / 2;
    const auto built = find_classical("sunZH").build(p, {});
    CHECK(built.at(0).lhs.value() == to_mod(lhs, square));
    CHECK(built.at(0).rhs.value() == to_mod(rhs, square));
    CHECK(built.at(0).lhs.modulus() == square);
  }
}

TEST_CASE("sun95 upper limit") {
  for (long p : primes_between(3, 200)) {
    Rational lhs = 0, rhs = 0;
    for (long k = 1; k <= (p - 1) / 2; ++k) lhs += two_pow(-k) / k;
    for (long k = 1; 4 * k <= 3 * p; ++k) rhs += Rational(k % 2 == 1 ? 1 : -1, k);
    const auto built = find_classical("sun95").build(p, {});
    CHECK(built.at(0).lhs.value() == to_mod(lhs, static_cast<std::uint64_t>(p)));
    CHECK(built.at(0).rhs.value() == to_mod(rhs, static_cast<std::uint64_t>(p)));
  }
}

TEST_CASE("combined corollary is the difference of its two instances") {
  for (long p : primes_between(3, 97))
    for (long m = 1; m <= 3; ++m) {
      const Params params{{"m", m}};
      const auto neg = find_classical("cor-x-neg1").build(p, params).at(0);
      const auto two = find_classical("cor-x-2").build(p, params).at(0);
      const auto both = find_classical("cor-combined").build(p, params).at(0);
      CHECK(both.lhs == neg.lhs - two.lhs);
      CHECK(both.rhs == neg.rhs - two.rhs);
    }
}

TEST_CASE("catalog sweep") {
  CHECK(classical_ids().size() == 14);
  CHECK_THROWS_AS(find_classical("nope"), UnknownCase);
  CHECK_THROWS_AS(verify_classical("nope", 5), UnknownCase);
  const auto tasks = classical_tasks(classical_ids(), primes_between(3, 400));
  for (const auto& t : tasks) {
    const Report r = verify_classical(t.id, t.prime, t.params);
    CAPTURE(t.id);
    CAPTURE(t.prime);
    CHECK((r.status == Status::pass || r.status == Status::skipped));
    if (r.status == Status::skipped) CHECK(t.prime <= 5);
  }
  // the known case's two forms are compared inside every run
  const auto known = find_classical("known").build(1009, {});
  REQUIRE(known.size() == 3);
  CHECK(known[2].lhs == known[2].rhs);
}

TEST_CASE("grids, constraints and statuses") {
  const auto xxyy = find_classical("xxyy").grid(std::nullopt, std::nullopt);
  CHECK(xxyy.size() == 21);
  CHECK(find_classical("multi-even").grid(std::nullopt, std::nullopt).size() == 2);
  CHECK(find_classical("xxyy").grid(MRange{2, 2}, std::vector<std::int64_t>{5}).size() == 1);

  CHECK(verify_classical("multi-kohnen", 5, {{"m", 4}}).status == Status::skipped);
  CHECK(verify_classical("multi-kohnen", 7, {{"m", 4}}).status == Status::pass);
  CHECK(verify_classical("sun-harmonic", 3).status == Status::skipped);
  const Report probe = verify_classical("sun-harmonic", 3, {}, VerifyOptions{true, false});
  CHECK(probe.status != Status::skipped);
  CHECK(probe.params.at("exploratory") == 1);

  CHECK(verify_classical("known", 21).status == Status::error);
  CHECK(verify_classical("xxyy", 7, {{"m", 1}}).status == Status::error);
  CHECK(verify_classical("multi-even", 7, {{"m", 3}}).status == Status::error);

  for (const auto& id : classical_ids()) {
    const auto grid = find_classical(id).grid(std::nullopt, std::nullopt);
    const Report r = verify_classical(id, 11, grid.front(), VerifyOptions{false, true});
    CAPTURE(id);
    CHECK(r.status == Status::fail);
    REQUIRE(r.witness.has_value());
    CHECK(r.witness->find(" mod ") != std::string::npos);
  }
  const Report zh = verify_classical("sunZH", 11, {}, VerifyOptions{false, true});
  CHECK(zh.witness->find("mod 121") != std::string::npos);
}

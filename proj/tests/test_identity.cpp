#include "doctest.h"
#include "generators.hpp"
#include "qcong/errors.hpp"
#include "qcong/identity.hpp"
#include "qcong/qkit.hpp"

using namespace qcong;
using qcong::testing::poly;

namespace {

BivarPoly c(long v) { return BivarPoly(LaurentPoly(v)); }
const BivarPoly x = BivarPoly::x();

LaurentPoly one_minus_q_power(long e) { return LaurentPoly(1L) - LaurentPoly::q_power(e); }

// Brute-force oracle for the cleared left side of the x-weighted Dilcher
// identity: enumerate every chain 1 <= k1 <= ... <= km <= n and clear each
// term by the factors of prod_k (1-q^k)^m it does not use.
BivarPoly naive_x_dilcher_lhs(long m, long n) {
  BivarPoly sum;
  std::vector<long> chain;
  std::vector<long> uses(static_cast<std::size_t>(n) + 1, 0);
  auto walk = [&](auto&& self, long low) -> void {
    if (static_cast<long>(chain.size()) == m) {
      long exponent = 0;
      for (long k : chain) exponent += k;
      LaurentPoly weight = LaurentPoly::q_power(exponent);
      for (long j = 1; j <= n; ++j) weight *= pow(one_minus_q_power(j), static_cast<std::uint64_t>(m - uses[j]));
      sum += pochhammer_x(chain.front()).times(weight);
      return;
    }
    for (long k = low; k <= n; ++k) {
      chain.push_back(k);
      ++uses[k];
      self(self, k);
      --uses[k];
      chain.pop_back();
    }
  };
  walk(walk, 1);
  return sum;
}

}  // namespace

TEST_CASE("bivariate arithmetic") {
  CHECK((c(1) + x) * (c(1) - x) == c(1) - BivarPoly::monomial(LaurentPoly(1L), 2));
  CHECK(((c(1) + x) * BivarPoly()).is_zero());
  CHECK(pochhammer_x(2) == c(1) - x.times(poly({1, 1})) + BivarPoly::monomial(poly({0, 1}), 2));
  CHECK((x - x).is_zero());
  CHECK(BivarPoly::monomial(LaurentPoly(), 3).is_zero());
  CHECK((c(1) + x).at_x(Rational(2)) == LaurentPoly(3L));
  CHECK(to_string(c(1) - x.times(poly({0, 1}))) == "(1) + (-q)*x");
}

TEST_CASE("pochhammer_x") {
  CHECK(pochhammer_x(0) == c(1));
  CHECK(pochhammer_x(1) == c(1) - x);
  for (long n = 0; n <= 8; ++n) {
    const BivarPoly p = pochhammer_x(n);
    CHECK(p.degree() == n);
    CHECK(p.coeff(static_cast<std::size_t>(n)) == LaurentPoly::monomial(Rational(n % 2 ? -1 : 1), n * (n - 1) / 2));
    CHECK(p.at_x(Rational(1)).is_zero() == (n >= 1));
  }
}

TEST_CASE("lagrange interpolation identity") {
  CHECK(verify_lagrange(1, 0).pass());
  CHECK(verify_lagrange(1, 0).rhs == c(1).times(poly({1, -1})));
  CHECK(verify_lagrange(1, 1).pass());
  for (long n = 1; n <= 8; ++n)
    for (long r = 0; r <= n; ++r) CHECK(verify_lagrange(n, r).pass());
  CHECK_THROWS_AS(verify_lagrange(0, 0), InvalidParams);
  CHECK_THROWS_AS(verify_lagrange(3, 4), InvalidParams);
}

TEST_CASE("van hamme") {
  CHECK(verify_van_hamme(1).pass());
  CHECK(verify_van_hamme(2).pass());
  for (long n = 1; n <= 10; ++n) CHECK(verify_van_hamme(n).pass());
  CHECK_THROWS_AS(verify_van_hamme(0), InvalidParams);
}

TEST_CASE("dilcher") {
  for (long n = 1; n <= 6; ++n) {
    const auto d = verify_dilcher(1, n);
    const auto v = verify_van_hamme(n);
    CHECK(d.pass() == v.pass());
    CHECK(d.lhs == v.lhs);
  }
  CHECK(verify_dilcher(2, 2).pass());
  for (long m = 1; m <= 4; ++m)
    for (long n = 1; n <= 8; ++n) CHECK(verify_dilcher(m, n).pass());
  CHECK_THROWS_AS(verify_dilcher(0, 3), InvalidParams);
}

TEST_CASE("x-dilcher coefficients and specializations") {
  for (long m = 1; m <= 4; ++m) {
    for (long n = 1; n <= 8; ++n) {
      CAPTURE(m);
      CAPTURE(n);
      const auto out = verify_x_dilcher(m, n);
      CHECK(out.pass());
      // coefficient of x^r against the closed form (-1)^r q^(C(r,2)+mr) [n,r] / (1-q^r)^m
      for (long r = 1; r <= n; ++r) {
        const LaurentPoly closed = q_binomial(n, r) *
                                   LaurentPoly::monomial(Rational(r % 2 ? -1 : 1), r * (r - 1) / 2 + m * r) *
                                   pow(product_except(n, r), static_cast<std::uint64_t>(m));
        CHECK(out.lhs.coeff(static_cast<std::size_t>(r)) == closed);
      }
      CHECK(out.lhs.at_x(Rational(1)).is_zero());
      CHECK(out.rhs.at_x(Rational(1)).is_zero());
      const auto d = verify_dilcher(m, n);
      CHECK(out.lhs.at_x(Rational(0)) == d.lhs.coeff(0));
      CHECK(out.rhs.at_x(Rational(0)) == d.rhs.coeff(0));
    }
  }
}

TEST_CASE("chain recurrence equals naive chain enumeration") {
  for (long m = 1; m <= 3; ++m)
    for (long n = 1; n <= 8; ++n) {
      CAPTURE(m);
      CAPTURE(n);
      CHECK(cleared_chain_sum(m, n, pochhammer_x) == naive_x_dilcher_lhs(m, n));
    }
}

TEST_CASE("q-kohnen") {
  CHECK(verify_q_kohnen(1).pass());
  for (long n = 1; n <= 10; ++n) {
    const auto k = verify_q_kohnen(n);
    CHECK(k.pass());
    const auto xd = verify_x_dilcher(1, n);
    CHECK(k.lhs == xd.lhs);
    CHECK(k.rhs == xd.rhs);
  }
}

TEST_CASE("kohnen binomial identity") {
  CHECK(verify_kohnen_binomial(1).pass());
  CHECK(verify_kohnen_binomial(2).pass());
  for (long n = 1; n <= 12; ++n) CHECK(verify_kohnen_binomial(n).pass());
  // n = 2 cleared by lcm = 2: 2(1-x) + (1-x)^2 = 3 - 4x + x^2
  CHECK(verify_kohnen_binomial(2).lhs == c(3) - x.times(LaurentPoly(4L)) + BivarPoly::monomial(LaurentPoly(1L), 2));
}

TEST_CASE("chain coefficient and prefix lemma") {
  for (long n = 1; n <= 6; ++n)
    for (long r = 1; r <= n; ++r) CHECK(verify_chain_coeff(1, n, r).pass() == verify_prefix_lemma(r, n).pass());
  CHECK(verify_chain_coeff(2, 3, 2).pass());
  for (long m = 1; m <= 3; ++m)
    for (long n = 1; n <= 6; ++n)
      for (long r = 1; r <= n; ++r) CHECK(verify_chain_coeff(m, n, r).pass());
  CHECK(verify_prefix_lemma(3, 3).pass());
  CHECK(verify_prefix_lemma(1, 3).pass());
  for (long k2 = 1; k2 <= 8; ++k2)
    for (long r = 1; r <= k2; ++r) CHECK(verify_prefix_lemma(r, k2).pass());
  CHECK_THROWS_AS(verify_chain_coeff(1, 3, 0), InvalidParams);
  CHECK_THROWS_AS(verify_prefix_lemma(4, 3), InvalidParams);
}

TEST_CASE("mismatched sides are reported as failures") {
  IdentityOutcome wrong{verify_van_hamme(3).lhs, verify_van_hamme(4).rhs};
  CHECK_FALSE(wrong.pass());
  CHECK(wrong.witness() != "0");
  IdentityOutcome shifted = verify_x_dilcher(2, 3);
  shifted.rhs += c(1);
  CHECK_FALSE(shifted.pass());
}

TEST_CASE("identity registry") {
  const auto ids = identity_ids();
  CHECK(ids.size() == 8);
  CHECK_THROWS_AS(verify_identity("no-such-identity", {}), UnknownCase);
  CHECK_THROWS_AS(identity_sweep("no-such-identity"), UnknownCase);
  const Report bad = verify_identity("lagrange", {{"n", 2}, {"r", 5}});
  CHECK(bad.status == Status::error);
  CHECK(bad.witness.has_value());
  const Report good = verify_identity("x-dilcher", {{"m", 2}, {"n", 3}});
  CHECK(good.status == Status::pass);
  CHECK_FALSE(good.witness.has_value());
  const auto sweep = identity_sweep("prefix-lemma", 4, 0);
  CHECK(sweep.size() == 10);
  for (const auto& r : sweep) CHECK(r.status == Status::pass);
}

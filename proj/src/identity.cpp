#include "qcong/identity.hpp"

#include <chrono>
#include <map>

#include "qcong/errors.hpp"
#include "qcong/qkit.hpp"

namespace qcong {

namespace {

LaurentPoly one_minus_q_power(std::int64_t e) { return LaurentPoly(1L) - LaurentPoly::q_power(e); }

LaurentPoly signed_power(std::int64_t sign_exponent, std::int64_t q_exponent) {
  return LaurentPoly::monomial(Rational(sign_exponent % 2 == 0 ? 1 : -1), q_exponent);
}

std::int64_t choose2(std::int64_t k) { return k * (k - 1) / 2; }

BivarPoly constant(LaurentPoly c) { return BivarPoly(std::move(c)); }

// x^k - 1
BivarPoly x_power_minus_one(std::int64_t k) {
  return BivarPoly::monomial(LaurentPoly(1L), static_cast<std::size_t>(k)) - constant(LaurentPoly(1L));
}

void require(bool ok, const char* what) {
  if (!ok) throw InvalidParams(what);
}

std::int64_t param(const Params& params, const std::string& name) {
  auto it = params.find(name);
  if (it == params.end()) throw InvalidParams("missing parameter " + name);
  return it->second;
}

}  // namespace

LaurentPoly product_except(std::int64_t n, std::int64_t k) {
  LaurentPoly acc(1L);
  for (std::int64_t j = 1; j <= n; ++j)
    if (j != k) acc *= one_minus_q_power(j);
  return acc;
}

IdentityOutcome verify_lagrange(std::int64_t n, std::int64_t r) {
  require(n >= 1 && r >= 0 && r <= n, "lagrange needs n >= 1 and 0 <= r <= n");
  std::vector<BivarPoly> factors;
  for (std::int64_t j = 0; j <= n; ++j)
    factors.push_back(constant(LaurentPoly(1L)) - BivarPoly::monomial(LaurentPoly::q_power(j), 1));
  BivarPoly lhs;
  for (std::int64_t k = 0; k <= n; ++k) {
    BivarPoly term = constant(q_binomial(n, k) * signed_power(k, k * (k + 1) / 2 - r * k));
    for (std::int64_t j = 0; j <= n; ++j)
      if (j != k) term *= factors[j];
    lhs += term;
  }
  const BivarPoly rhs = BivarPoly::monomial(poch(LaurentPoly::q_power(1), n), static_cast<std::size_t>(r));
  return {lhs, rhs};
}

IdentityOutcome verify_van_hamme(std::int64_t n) {
  require(n >= 1, "van-hamme needs n >= 1");
  LaurentPoly lhs, rhs;
  for (std::int64_t k = 1; k <= n; ++k) {
    const LaurentPoly pk = product_except(n, k);
    lhs += shift(pk, k);
    rhs += q_binomial(n, k) * signed_power(k - 1, k * (k + 1) / 2) * pk;
  }
  return {constant(lhs), constant(rhs)};
}

BivarPoly cleared_chain_sum(std::int64_t m, std::int64_t n,
                            const std::function<BivarPoly(std::int64_t)>& first_weight) {
  require(m >= 1 && n >= 1, "chain sum needs m, n >= 1");
  std::vector<LaurentPoly> step(static_cast<std::size_t>(n) + 1);
  for (std::int64_t k = 1; k <= n; ++k) step[k] = shift(product_except(n, k), k);

  std::vector<BivarPoly> level(static_cast<std::size_t>(n) + 1);
  for (std::int64_t k = 1; k <= n; ++k) level[k] = first_weight(k).times(step[k]);
  for (std::int64_t i = 2; i <= m; ++i) {
    BivarPoly prefix;
    for (std::int64_t k = 1; k <= n; ++k) {
      prefix += level[k];
      level[k] = prefix.times(step[k]);
    }
  }
  BivarPoly total;
  for (std::int64_t k = 1; k <= n; ++k) total += level[k];
  return total;
}

BivarPoly x_dilcher_rhs(std::int64_t m, std::int64_t n) {
  BivarPoly rhs;
  for (std::int64_t k = 1; k <= n; ++k) {
    const LaurentPoly c = q_binomial(n, k) * signed_power(k, choose2(k) + k * m) *
                          pow(product_except(n, k), static_cast<std::uint64_t>(m));
    rhs += x_power_minus_one(k).times(c);
  }
  return rhs;
}

IdentityOutcome verify_dilcher(std::int64_t m, std::int64_t n) {
  require(m >= 1 && n >= 1, "dilcher needs m, n >= 1");
  const BivarPoly lhs = cleared_chain_sum(m, n, [](std::int64_t) { return constant(LaurentPoly(1L)); });
  LaurentPoly rhs;
  for (std::int64_t k = 1; k <= n; ++k)
    rhs += q_binomial(n, k) * signed_power(k - 1, choose2(k) + k * m) *
           pow(product_except(n, k), static_cast<std::uint64_t>(m));
  return {lhs, constant(rhs)};
}

IdentityOutcome verify_x_dilcher(std::int64_t m, std::int64_t n) {
  require(m >= 1 && n >= 1, "x-dilcher needs m, n >= 1");
  return {cleared_chain_sum(m, n, pochhammer_x), x_dilcher_rhs(m, n)};
}

IdentityOutcome verify_q_kohnen(std::int64_t n) {
  require(n >= 1, "q-kohnen needs n >= 1");
  BivarPoly lhs, rhs;
  BivarPoly x_poch = constant(LaurentPoly(1L));
  for (std::int64_t k = 1; k <= n; ++k) {
    x_poch *= constant(LaurentPoly(1L)) - BivarPoly::monomial(LaurentPoly::q_power(k - 1), 1);
    const LaurentPoly pk = product_except(n, k);
    lhs += x_poch.times(shift(pk, k));
    rhs += x_power_minus_one(k).times(q_binomial(n, k) * signed_power(k, k * (k + 1) / 2) * pk);
  }
  return {lhs, rhs};
}

IdentityOutcome verify_kohnen_binomial(std::int64_t n) {
  require(n >= 1, "kohnen-binomial needs n >= 1");
  Integer lcm = 1;
  for (std::int64_t k = 2; k <= n; ++k) mpz_lcm_ui(lcm.get_mpz_t(), lcm.get_mpz_t(), static_cast<unsigned long>(k));
  const BivarPoly one_minus_x = constant(LaurentPoly(1L)) - BivarPoly::x();
  BivarPoly lhs, rhs;
  BivarPoly power = constant(LaurentPoly(1L));
  for (std::int64_t k = 1; k <= n; ++k) {
    power *= one_minus_x;
    const Integer weight = lcm / k;
    lhs += power.times(LaurentPoly(Rational(weight)));
    Integer binom;
    mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    const Integer c = (k % 2 == 0 ? 1 : -1) * weight * binom;
    rhs += x_power_minus_one(k).times(LaurentPoly(Rational(c)));
  }
  return {lhs, rhs};
}

IdentityOutcome verify_chain_coeff(std::int64_t m, std::int64_t n, std::int64_t r) {
  require(m >= 1 && r >= 1 && r <= n, "chain-coeff needs m >= 1 and 1 <= r <= n");
  // powers[j - r][e] = (1 - q^j)^e
  std::vector<std::vector<LaurentPoly>> powers;
  for (std::int64_t j = r; j <= n; ++j) {
    std::vector<LaurentPoly> row{LaurentPoly(1L)};
    for (std::int64_t e = 1; e <= m; ++e) row.push_back(row.back() * one_minus_q_power(j));
    powers.push_back(std::move(row));
  }

  LaurentPoly sum;
  std::vector<std::int64_t> chain;
  std::vector<std::int64_t> uses(static_cast<std::size_t>(n - r) + 1, 0);
  std::function<void(std::int64_t)> walk = [&](std::int64_t low) {
    if (static_cast<std::int64_t>(chain.size()) == m) {
      std::int64_t exponent = 0;
      for (auto k : chain) exponent += k;
      LaurentPoly term = shift(q_binomial(chain.front(), r), exponent);
      for (std::size_t j = 0; j < uses.size(); ++j) term *= powers[j][m - uses[j]];
      sum += term;
      return;
    }
    for (std::int64_t k = low; k <= n; ++k) {
      chain.push_back(k);
      ++uses[k - r];
      walk(k);
      --uses[k - r];
      chain.pop_back();
    }
  };
  walk(r);

  const LaurentPoly lhs = sum * signed_power(r, choose2(r));
  LaurentPoly rhs = q_binomial(n, r) * signed_power(r, choose2(r) + m * r);
  for (std::int64_t j = r + 1; j <= n; ++j) rhs *= powers[j - r][m];
  return {constant(lhs), constant(rhs)};
}

IdentityOutcome verify_prefix_lemma(std::int64_t r, std::int64_t k2) {
  require(r >= 1 && r <= k2, "prefix-lemma needs 1 <= r <= k2");
  LaurentPoly lhs;
  for (std::int64_t k1 = r; k1 <= k2; ++k1) {
    LaurentPoly term = shift(q_binomial(k1, r), k1);
    for (std::int64_t j = r; j <= k2; ++j)
      if (j != k1) term *= one_minus_q_power(j);
    lhs += term;
  }
  LaurentPoly rhs = shift(q_binomial(k2, r), r);
  for (std::int64_t j = r + 1; j <= k2; ++j) rhs *= one_minus_q_power(j);
  return {constant(lhs), constant(rhs)};
}

// ---------------------------------------------------------------------------
// Registry

namespace {

using Grid = std::vector<Params>;

Grid grid_n(std::int64_t n_max) {
  Grid g;
  for (std::int64_t n = 1; n <= n_max; ++n) g.push_back({{"n", n}});
  return g;
}

Grid grid_mn(std::int64_t n_max, std::int64_t m_max) {
  Grid g;
  for (std::int64_t m = 1; m <= m_max; ++m)
    for (std::int64_t n = 1; n <= n_max; ++n) g.push_back({{"m", m}, {"n", n}});
  return g;
}

std::vector<IdentityCase> build_registry() {
  std::vector<IdentityCase> cases;
  cases.push_back({"lagrange", {"n", "r"}, 8, 0,
                   [](const Params& p) { return verify_lagrange(param(p, "n"), param(p, "r")); },
                   [](std::int64_t n_max, std::int64_t) {
                     Grid g;
                     for (std::int64_t n = 1; n <= n_max; ++n)
                       for (std::int64_t r = 0; r <= n; ++r) g.push_back({{"n", n}, {"r", r}});
                     return g;
                   }});
  cases.push_back({"van-hamme", {"n"}, 10, 0, [](const Params& p) { return verify_van_hamme(param(p, "n")); },
                   [](std::int64_t n_max, std::int64_t) { return grid_n(n_max); }});
  cases.push_back({"dilcher", {"m", "n"}, 8, 4,
                   [](const Params& p) { return verify_dilcher(param(p, "m"), param(p, "n")); }, grid_mn});
  cases.push_back({"x-dilcher", {"m", "n"}, 8, 4,
                   [](const Params& p) { return verify_x_dilcher(param(p, "m"), param(p, "n")); }, grid_mn});
  cases.push_back({"q-kohnen", {"n"}, 10, 0, [](const Params& p) { return verify_q_kohnen(param(p, "n")); },
                   [](std::int64_t n_max, std::int64_t) { return grid_n(n_max); }});
  cases.push_back({"kohnen-binomial", {"n"}, 12, 0,
                   [](const Params& p) { return verify_kohnen_binomial(param(p, "n")); },
                   [](std::int64_t n_max, std::int64_t) { return grid_n(n_max); }});
  cases.push_back({"chain-coeff", {"m", "n", "r"}, 6, 3,
                   [](const Params& p) { return verify_chain_coeff(param(p, "m"), param(p, "n"), param(p, "r")); },
                   [](std::int64_t n_max, std::int64_t m_max) {
                     Grid g;
                     for (std::int64_t m = 1; m <= m_max; ++m)
                       for (std::int64_t n = 1; n <= n_max; ++n)
                         for (std::int64_t r = 1; r <= n; ++r) g.push_back({{"m", m}, {"n", n}, {"r", r}});
                     return g;
                   }});
  cases.push_back({"prefix-lemma", {"r", "k2"}, 8, 0,
                   [](const Params& p) { return verify_prefix_lemma(param(p, "r"), param(p, "k2")); },
                   [](std::int64_t n_max, std::int64_t) {
                     Grid g;
                     for (std::int64_t k2 = 1; k2 <= n_max; ++k2)
                       for (std::int64_t r = 1; r <= k2; ++r) g.push_back({{"k2", k2}, {"r", r}});
                     return g;
                   }});
  return cases;
}

}  // namespace

const std::vector<IdentityCase>& identity_cases() {
  static const std::vector<IdentityCase> cases = build_registry();
  return cases;
}

std::vector<std::string> identity_ids() {
  std::vector<std::string> ids;
  for (const auto& c : identity_cases()) ids.push_back(c.id);
  return ids;
}

const IdentityCase& find_identity(const std::string& id) {
  for (const auto& c : identity_cases())
    if (c.id == id) return c;
  throw UnknownCase("unknown identity: " + id);
}

Report verify_identity(const std::string& id, const Params& params, bool perturb) {
  const IdentityCase& c = find_identity(id);
  Report report{id, 0, params, Status::error, std::nullopt, 0};
  const auto start = std::chrono::steady_clock::now();
  try {
    IdentityOutcome outcome = c.run(params);
    if (perturb) outcome.rhs += BivarPoly(LaurentPoly(1L));
    if (outcome.pass()) {
      report.status = Status::pass;
    } else {
      report.status = Status::fail;
      report.witness = outcome.witness();
    }
  } catch (const Error& e) {
    report.status = Status::error;
    report.witness = e.what();
  }
  report.millis = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::vector<Report> identity_sweep(const std::string& id, std::int64_t n_max, std::int64_t m_max) {
  if (id != "all") (void)find_identity(id);
  std::vector<Report> reports;
  for (const auto& c : identity_cases()) {
    if (id != "all" && c.id != id) continue;
    const std::int64_t n_bound = n_max > 0 ? n_max : c.default_n_max;
    const std::int64_t m_bound = m_max > 0 ? m_max : c.default_m_max;
    for (const auto& params : c.grid(n_bound, m_bound)) reports.push_back(verify_identity(c.id, params));
  }
  sort_reports(reports);
  return reports;
}

}  // namespace qcong

#include "qcong/congruences.hpp"

#include <algorithm>
#include <chrono>

#include "qcong/errors.hpp"
#include "qcong/qkit.hpp"

namespace qcong {

namespace {

std::int64_t binom2(std::int64_t n) { return n * (n - 1) / 2; }

Rational sign(std::int64_t k) { return Rational(k % 2 == 0 ? 1 : -1); }

Residue one_minus_q(const QuotientRing& ring) { return ring.one() - ring.q_power(1); }

// m from params, >= 1.
std::int64_t param_m(const Params& params) {
  const auto it = params.find("m");
  if (it == params.end()) throw InvalidParams("missing parameter m");
  if (it->second < 1) throw InvalidParams("m must be >= 1");
  return it->second;
}

// C_m(k) for k = 1..n by the chain recurrence; index 0 unused.
std::vector<Residue> chain_table(const QuotientRing& ring, const std::vector<Residue>& inv, std::int64_t m) {
  std::vector<Residue> c = inv;
  for (std::int64_t i = 2; i <= m; ++i) {
    Residue prefix = ring.zero();
    for (std::size_t k = 1; k < c.size(); ++k) {
      prefix += c[k];
      c[k] = inv[k] * prefix;
    }
  }
  return c;
}

std::vector<Residue> int_inverses(PrimeContext& ctx) {
  std::vector<Residue> inv{ctx.ring().zero()};
  for (std::int64_t k = 1; k < ctx.p(); ++k) inv.push_back(ctx.inv_int(k));
  return inv;
}

// sum_{k=1..p-1} (-q;q)_(k-1) q^k / [k], shared by several corollaries.
Residue glaisher_sum(PrimeContext& ctx) {
  Residue sum = ctx.ring().zero();
  for (std::int64_t k = 1; k < ctx.p(); ++k) sum += (ctx.neg_poch(k - 1) * ctx.inv_int(k)).shifted(k);
  return sum;
}

// sum_{k=1..p-1} k q^e(k) / (1 + q^k) with e(k) = k + offset.
Residue derivative_sum(PrimeContext& ctx, std::int64_t offset) {
  Residue sum = ctx.ring().zero();
  for (std::int64_t k = 1; k < ctx.p(); ++k) sum += ctx.inv_one_plus(k).shifted(k + offset).scaled(Rational(k));
  return sum;
}

// sum_{k=1..p-1} q^C(k+1,2) / ([k] (-q;q)_k)
Residue kohnen_new_lhs(PrimeContext& ctx) {
  Residue sum = ctx.ring().zero();
  for (std::int64_t k = 1; k < ctx.p(); ++k) sum += (ctx.inv_int(k) * ctx.inv_neg_poch(k)).shifted(binom2(k + 1));
  return sum;
}

std::vector<SideCheck> single(Residue lhs, Residue rhs) { return {SideCheck{"", std::move(lhs), std::move(rhs)}}; }

std::vector<CongruenceCase> build_catalog() {
  std::vector<CongruenceCase> cases;
  auto add = [&](std::string id, std::string statement, std::int64_t min_prime, int power, bool uses_m, auto build,
                 std::string amends = "") {
    cases.push_back(
        CongruenceCase{std::move(id), std::move(statement), min_prime, power, uses_m, build, std::move(amends)});
  };

  add("q-known", "sum (-1)^k/[k] = -2((-q;q)_(p-1) - 1)/[p] - (p-1)(1-q)/2", 3, 1, false,
      [](PrimeContext& ctx, const Params&) {
        const auto& ring = ctx.ring();
        Residue lhs = ring.zero();
        for (std::int64_t k = 1; k < ctx.p(); ++k) lhs += ctx.inv_int(k).scaled(sign(k));
        return single(lhs, -ctx.fermat_quotient().scaled(Rational(2)) - ctx.half_shift());
      });

  add("q-glaisher-pan", "sum (-q;q)_k q^k/(2[k]) = -((-q;q)_(p-1) - 1)/[p] - (p-1)(1-q)/2", 3, 1, false,
      [](PrimeContext& ctx, const Params&) {
        Residue lhs = ctx.ring().zero();
        for (std::int64_t k = 1; k < ctx.p(); ++k) lhs += (ctx.neg_poch(k) * ctx.inv_int(k)).shifted(k);
        return single(lhs.scaled(Rational(1, 2)), -ctx.fermat_quotient() - ctx.half_shift());
      });

  add("q-glaisher-tauraso", "sum (-q;q)_(k-1) q^(-C(k,2))/[k] = -((-q;q)_(p-1) - 1)/[p]", 3, 1, false,
      [](PrimeContext& ctx, const Params&) {
        Residue lhs = ctx.ring().zero();
        for (std::int64_t k = 1; k < ctx.p(); ++k) lhs += (ctx.neg_poch(k - 1) * ctx.inv_int(k)).shifted(-binom2(k));
        return single(lhs, -ctx.fermat_quotient());
      });

  add("q-kohnen-tauraso", "sum q^k/([k](-q;q)_k) = ((-q;q)_(p-1) - 1)/[p]", 3, 1, false,
      [](PrimeContext& ctx, const Params&) {
        Residue lhs = ctx.ring().zero();
        for (std::int64_t k = 1; k < ctx.p(); ++k) lhs += (ctx.inv_int(k) * ctx.inv_neg_poch(k)).shifted(k);
        return single(lhs, ctx.fermat_quotient());
      });

  add("q-delannoy", "sum D_k(q)/[k] = -((-q;q)_(p-1) - 1)/[p] + (p-1)(1-q)/4", 3, 1, false,
      [](PrimeContext& ctx, const Params&) {
        const auto& ring = ctx.ring();
        const auto d = delannoy_residues(ring, ctx.p() - 1, true);
        Residue lhs = ring.zero();
        for (std::int64_t k = 1; k < ctx.p(); ++k) lhs += d[k] * ctx.inv_int(k);
        return single(lhs, -ctx.fermat_quotient() + ctx.half_shift().scaled(Rational(1, 2)));
      });

  add("q-delannoy-bar", "sum (Dbar_m(q) - 1)/[m] = sum_(k<=(p-1)/2) (-1)^k/[k]", 3, 1, false,
      [](PrimeContext& ctx, const Params&) {
        const auto& ring = ctx.ring();
        const auto d = delannoy_residues(ring, ctx.p() - 1, false);
        Residue lhs = ring.zero();
        for (std::int64_t m = 1; m < ctx.p(); ++m) lhs += (d[m] - ring.one()) * ctx.inv_int(m);
        Residue rhs = ring.zero();
        for (std::int64_t k = 1; k <= (ctx.p() - 1) / 2; ++k) rhs += ctx.inv_int(k).scaled(sign(k));
        return single(lhs, rhs);
      });

  add("q-glaisher-new", "sum (-q;q)_(k-1) q^k/[k] = -((-q;q)_(p-1) - 1)/[p] - (p-1)(1-q)/2", 3, 1, false,
      [](PrimeContext& ctx, const Params&) {
        return single(glaisher_sum(ctx), -ctx.fermat_quotient() - ctx.half_shift());
      });

  add("q-kohnen-new", "sum q^C(k+1,2)/([k](-q;q)_k) = ((-q;q)_(p-1) - 1)/[p] + (p-1)(1-q)/2", 3, 1, false,
      [](PrimeContext& ctx, const Params&) {
        return single(kohnen_new_lhs(ctx), ctx.fermat_quotient() + ctx.half_shift());
      });

  add("q-kohnen-new-half",
      "sum q^C(k+1,2)/([k](-q;q)_k) = sum_(k<=(p-1)/2) (-1)^(k-1)(1+q^k)/(2[k]) + (p-1)(1-q)/4", 3, 1, false,
      [](PrimeContext& ctx, const Params&) {
        Residue rhs = ctx.half_shift().scaled(Rational(1, 2));
        for (std::int64_t k = 1; k <= (ctx.p() - 1) / 2; ++k) {
          const Residue t = ctx.inv_int(k).scaled(-sign(k));
          rhs += (t + t.shifted(k)).scaled(Rational(1, 2));
        }
        return single(kohnen_new_lhs(ctx), rhs);
      });

  add("q-harmonic-andrews", "H_(p-1)(q) = (p-1)(1-q)/2", 3, 1, false, [](PrimeContext& ctx, const Params&) {
    Residue lhs = ctx.ring().zero();
    for (std::int64_t k = 1; k < ctx.p(); ++k) lhs += ctx.inv_int(k);
    return single(lhs, ctx.half_shift());
  });

  add("q-binom-p-1", "[p-1, k] = (-1)^k q^(-C(k+1,2)) for 1 <= k <= p-1", 3, 1, false,
      [](PrimeContext& ctx, const Params&) {
        const auto& ring = ctx.ring();
        ResidueBinomialRows rows(ring);
        const std::vector<Residue>* row = nullptr;
        while (rows.current_row() < ctx.p() - 1) row = &rows.next();
        std::vector<SideCheck> checks;
        for (std::int64_t k = 1; k < ctx.p(); ++k)
          checks.push_back({"k=" + std::to_string(k), (*row)[k], ring.constant(sign(k)).shifted(-binom2(k + 1))});
        return checks;
      });

  add("q-central-vanish", "[2k, k] = 0 for (p-1)/2 < k < p", 3, 1, false, [](PrimeContext& ctx, const Params&) {
    const auto& ring = ctx.ring();
    const std::int64_t p = ctx.p();
    std::vector<SideCheck> checks;
    ResidueBinomialRows rows(ring);
    while (rows.current_row() < 2 * p - 2) {
      const auto& row = rows.next();
      const std::int64_t n = rows.current_row();
      if (n % 2 != 0 || 2 * (n / 2) <= p - 1) continue;
      const std::int64_t k = n / 2;
      checks.push_back({"k=" + std::to_string(k), row[k], ring.zero()});
      const Residue exact = central_qbinom_divisible(p, k) ? ring.zero() : ring.one();
      checks.push_back({"k=" + std::to_string(k) + " exact", exact, ring.zero()});
    }
    return checks;
  });

  add("q-multi", "chain sum of q^C(km+1,2)/([k1]...[km](-q;q)_km) = (-1)^m sum q^((m-1)k)((-1)^k - 1)/(2[k]^m)", 3, 1,
      true, [](PrimeContext& ctx, const Params& params) {
        const auto& ring = ctx.ring();
        const std::int64_t m = param_m(params);
        const auto inv = int_inverses(ctx);
        const auto c = chain_table(ring, inv, m);
        Residue lhs = ring.zero();
        for (std::int64_t k = 1; k < ctx.p(); ++k) lhs += (c[k] * ctx.inv_neg_poch(k)).shifted(binom2(k + 1));
        Residue rhs = ring.zero();
        for (std::int64_t k = 1; k < ctx.p(); k += 2) rhs -= inv[k].pow(static_cast<std::uint64_t>(m)).shifted((m - 1) * k);
        return single(lhs, m % 2 == 0 ? rhs : -rhs);
      });

  add("q-sun-harmonic", "sum H_k(q) q^C(k+1,2)/([k](-q;q)_k) = (p^2-1)(1-q)^2/24", 5, 1, false,
      [](PrimeContext& ctx, const Params&) {
        const auto& ring = ctx.ring();
        const std::int64_t p = ctx.p();
        Residue harmonic = ring.zero();
        Residue lhs = ring.zero();
        for (std::int64_t k = 1; k < p; ++k) {
          harmonic += ctx.inv_int(k);
          lhs += (harmonic * ctx.inv_int(k) * ctx.inv_neg_poch(k)).shifted(binom2(k + 1));
        }
        const Residue t = one_minus_q(ring);
        return single(lhs, (t * t).scaled(Rational(p * p - 1, 24)));
      });

  add("q-alt-square-zero", "sum (-1)^k q^k/[k]^2 = 0", 3, 1, false, [](PrimeContext& ctx, const Params&) {
    const auto& ring = ctx.ring();
    Residue lhs = ring.zero();
    for (std::int64_t k = 1; k < ctx.p(); ++k) {
      const Residue& inv = ctx.inv_int(k);
      lhs += (inv * inv).scaled(sign(k)).shifted(k);
    }
    return single(lhs, ring.zero());
  });

  add("q-shi-pan", "sum q^k/[k]^2 = -(p^2-1)(1-q)^2/12", 5, 1, false, [](PrimeContext& ctx, const Params&) {
    const auto& ring = ctx.ring();
    const std::int64_t p = ctx.p();
    Residue lhs = ring.zero();
    for (std::int64_t k = 1; k < p; ++k) {
      const Residue& inv = ctx.inv_int(k);
      lhs += (inv * inv).shifted(k);
    }
    const Residue t = one_minus_q(ring);
    return single(lhs, (t * t).scaled(Rational(-(p * p - 1), 12)));
  });

  add("q-derivative-cor", "sum k q^k/(1+q^k) = p(p-1)(1-q)/2 + p sum (-q;q)_(k-1) q^k/(1-q^k)", 3, 1, false,
      [](PrimeContext& ctx, const Params&) {
        const auto& ring = ctx.ring();
        const std::int64_t p = ctx.p();
        const Residue inv_one_minus_q = one_minus_q(ring).inverse();
        const Residue rhs = (ctx.half_shift() + glaisher_sum(ctx) * inv_one_minus_q).scaled(Rational(p));
        return single(derivative_sum(ctx, 0), rhs);
      });

  add("q-second-p", "(-q;q)_(p-1) - 1 = -(1-q^p)((p-1)(1-q)/2 + sum (-q;q)_(k-1) q^k/[k]) mod [p]^2", 3, 2, false,
      [](PrimeContext& ctx, const Params&) {
        const auto& ring = ctx.ring();
        const Residue lhs = ctx.neg_poch(ctx.p() - 1) - ring.one();
        const Residue rhs = -(ring.one() - ring.q_power(ctx.p())) * (ctx.half_shift() + glaisher_sum(ctx));
        return single(lhs, rhs);
      });

  add("q-third-p",
      "(-q;q)_(p-1) sum k q^(k-1)/(1+q^k) = p q^(p-1)((p-1)(1-q)/2 + sum (-q;q)_(k-1) q^k/[k]), checked mod [p]", 3, 1,
      false, [](PrimeContext& ctx, const Params&) {
        const std::int64_t p = ctx.p();
        const Residue lhs = ctx.neg_poch(p - 1) * derivative_sum(ctx, -1);
        const Residue rhs = (ctx.half_shift() + glaisher_sum(ctx)).shifted(p - 1).scaled(Rational(p));
        return single(lhs, rhs);
      });

  add("q-quotient-cor", "((-q;q)_(p-1) - 1)/(1-q^p) = -(1/p) sum k q^k/(1+q^k)", 3, 1, false,
      [](PrimeContext& ctx, const Params&) {
        const Residue lhs = ctx.fermat_quotient() * one_minus_q(ctx.ring()).inverse();
        return single(lhs, derivative_sum(ctx, 0).scaled(Rational(-1, ctx.p())));
      });

  // The three statements above do not hold as written: the mod [p]^2 step
  // multiplies by 1 - q^p where [p] is needed, and the other two inherit a
  // stray factor of 1 - q from it. The amended forms follow.

  add("q-second-p-amended", "(-q;q)_(p-1) - 1 = -[p]((p-1)(1-q)/2 + sum (-q;q)_(k-1) q^k/[k]) mod [p]^2", 3, 2, false,
      [](PrimeContext& ctx, const Params&) {
        const auto& ring = ctx.ring();
        const Residue lhs = ctx.neg_poch(ctx.p() - 1) - ring.one();
        const Residue rhs = -ring.reduce(q_int(ctx.p())) * (ctx.half_shift() + glaisher_sum(ctx));
        return single(lhs, rhs);
      },
      "q-second-p");

  add("q-third-p-amended",
      "(-q;q)_(p-1) sum k q^(k-1)/(1+q^k) = p q^(p-1)((p-1)(1-q)/2 + sum (-q;q)_(k-1) q^k/[k])/(1-q)", 3, 1, false,
      [](PrimeContext& ctx, const Params&) {
        const std::int64_t p = ctx.p();
        const Residue lhs = ctx.neg_poch(p - 1) * derivative_sum(ctx, -1);
        const Residue inner = (ctx.half_shift() + glaisher_sum(ctx)) * one_minus_q(ctx.ring()).inverse();
        return single(lhs, inner.shifted(p - 1).scaled(Rational(p)));
      },
      "q-third-p");

  add("q-derivative-cor-amended", "sum k q^k/(1+q^k) = p(p-1)/2 + p sum (-q;q)_(k-1) q^k/(1-q^k)", 3, 1, false,
      [](PrimeContext& ctx, const Params&) {
        const auto& ring = ctx.ring();
        const std::int64_t p = ctx.p();
        const Residue tail = glaisher_sum(ctx) * one_minus_q(ring).inverse();
        return single(derivative_sum(ctx, 0), ring.constant(Rational(p * (p - 1), 2)) + tail.scaled(Rational(p)));
      },
      "q-derivative-cor");

  return cases;
}

}  // namespace

PrimeContext::PrimeContext(std::int64_t p, int modulus_power)
    : p_(p),
      ring_(QuotientRing::for_prime(p, modulus_power)),
      inv_int_(static_cast<std::size_t>(p)),
      inv_one_plus_(static_cast<std::size_t>(p)),
      inv_neg_poch_(static_cast<std::size_t>(p)) {}

const Residue& PrimeContext::inv_int(std::int64_t k) {
  auto& slot = inv_int_.at(static_cast<std::size_t>(k));
  if (!slot) slot = ring_.reduce(q_int(k)).inverse();
  return *slot;
}

const Residue& PrimeContext::inv_one_plus(std::int64_t k) {
  auto& slot = inv_one_plus_.at(static_cast<std::size_t>(k));
  if (!slot) slot = (ring_.one() + ring_.q_power(k)).inverse();
  return *slot;
}

const Residue& PrimeContext::neg_poch(std::int64_t k) {
  if (neg_poch_.empty()) {
    neg_poch_.push_back(ring_.one());
    for (std::int64_t j = 1; j < p_; ++j) neg_poch_.push_back(neg_poch_.back() + neg_poch_.back().shifted(j));
  }
  return neg_poch_.at(static_cast<std::size_t>(k));
}

const Residue& PrimeContext::inv_neg_poch(std::int64_t k) {
  auto& slot = inv_neg_poch_.at(static_cast<std::size_t>(k));
  if (!slot) slot = k == 0 ? ring_.one() : inv_neg_poch(k - 1) * inv_one_plus(k);
  return *slot;
}

const Residue& PrimeContext::fermat_quotient() {
  if (!fermat_quotient_) fermat_quotient_ = ring_.reduce(q_fermat_quotient(p_));
  return *fermat_quotient_;
}

Residue PrimeContext::half_shift() const { return one_minus_q(ring_).scaled(Rational(p_ - 1, 2)); }

const std::vector<CongruenceCase>& congruence_cases() {
  static const std::vector<CongruenceCase> cases = build_catalog();
  return cases;
}

std::vector<std::string> case_ids() {
  std::vector<std::string> ids;
  for (const auto& c : congruence_cases()) ids.push_back(c.id);
  return ids;
}

std::vector<std::string> catalog_ids() {
  std::vector<std::string> ids;
  for (const auto& c : congruence_cases())
    if (c.amends.empty()) ids.push_back(c.id);
  return ids;
}

const CongruenceCase& find_case(const std::string& id) {
  for (const auto& c : congruence_cases())
    if (c.id == id) return c;
  throw UnknownCase("unknown congruence case: " + id);
}

Report verify_case(const std::string& id, std::int64_t p, const Params& params, const VerifyOptions& options) {
  const CongruenceCase& c = find_case(id);
  Report report{id, p, params, Status::skipped, std::nullopt, 0};
  const bool below = p < c.min_prime;
  if (below && !(options.exploratory && p >= 3)) return report;
  if (below) report.params["exploratory"] = 1;

  const auto start = std::chrono::steady_clock::now();
  try {
    for (const auto& [key, value] : params)
      if (!(c.uses_m && key == "m")) throw InvalidParams("unexpected parameter " + key);
    PrimeContext ctx(p, c.modulus_power);
    auto checks = c.build(ctx, params);
    if (options.perturb && !checks.empty()) checks.front().rhs += ctx.ring().one();
    report.status = Status::pass;
    for (const auto& check : checks) {
      const Residue diff = check.lhs - check.rhs;
      if (diff.is_zero()) continue;
      report.status = Status::fail;
      report.witness = check.label.empty() ? to_string(diff) : check.label + ": " + to_string(diff);
      break;
    }
  } catch (const Error& e) {
    report.status = Status::error;
    report.witness = e.what();
  }
  report.millis = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::vector<CongruenceTask> congruence_tasks(const std::vector<std::string>& ids, const std::vector<std::int64_t>& primes,
                                             MRange m_range) {
  std::vector<CongruenceTask> tasks;
  for (const auto& id : ids) {
    const CongruenceCase& c = find_case(id);
    for (std::int64_t p : primes) {
      if (!c.uses_m) {
        tasks.push_back({id, p, {}});
        continue;
      }
      for (std::int64_t m = m_range.lo; m <= m_range.hi; ++m) tasks.push_back({id, p, {{"m", m}}});
    }
  }
  return tasks;
}

std::vector<Report> verify_all(const std::vector<std::int64_t>& primes, MRange m_range, const VerifyOptions& options) {
  std::vector<Report> reports;
  for (const auto& task : congruence_tasks(case_ids(), primes, m_range))
    reports.push_back(verify_case(task.id, task.prime, task.params, options));
  sort_reports(reports);
  return reports;
}

Residue chain_sum_residue(const QuotientRing& ring, std::int64_t p, std::int64_t m, ChainWeight weight) {
  if (m < 1) throw InvalidParams("chain length m must be >= 1");
  std::vector<Residue> inv{ring.zero()};
  for (std::int64_t k = 1; k < p; ++k) inv.push_back(ring.reduce(q_int(k)).inverse());
  const auto c = chain_table(ring, inv, m);
  Residue sum = ring.zero();
  Residue inv_poch = ring.one();
  for (std::int64_t k = 1; k < p; ++k) {
    if (weight == ChainWeight::plain) {
      sum += c[k];
      continue;
    }
    inv_poch *= (ring.one() + ring.q_power(k)).inverse();
    sum += (c[k] * inv_poch).shifted(binom2(k + 1));
  }
  return sum;
}

std::vector<Residue> delannoy_residues(const QuotientRing& ring, std::int64_t n_max, bool weighted) {
  if (n_max < 0) throw InvalidParams("Delannoy index must be nonnegative");
  // Every D_m has the k = 0 term 1; row n of the q-Pascal triangle supplies
  // [m+k, 2k] for each m = n - k, and [2k, k] was recorded at row 2k.
  std::vector<Residue> d(static_cast<std::size_t>(n_max) + 1, ring.one());
  std::vector<Residue> central;
  ResidueBinomialRows rows(ring);
  for (std::int64_t n = 0; n <= 2 * n_max; ++n) {
    const auto& row = rows.next();
    if (n % 2 == 0) central.push_back(row[n / 2]);
    for (std::int64_t k = std::max<std::int64_t>(1, n - n_max); 2 * k <= n; ++k) {
      const std::int64_t m = n - k;
      Residue term = (row[2 * k] * central[k]).shifted(binom2(k) - 2 * m * k);
      if (weighted) term = (term + term.shifted(k)).scaled(Rational(1, 2));
      d[m] += term;
    }
  }
  return d;
}

}  // namespace qcong

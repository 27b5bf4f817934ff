#include "qcong/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "qcong/classical.hpp"
#include "qcong/errors.hpp"
#include "qcong/identity.hpp"
#include "qcong/primes.hpp"

namespace qcong::cli {

namespace {

struct Task {
  std::string id;
  std::int64_t prime;
  Params params;
};

std::vector<std::string> split_ids(const std::string& selector, const std::vector<std::string>& all) {
  if (selector == "all") return all;
  std::vector<std::string> ids;
  std::stringstream in(selector);
  for (std::string id; std::getline(in, id, ',');)
    if (!id.empty()) ids.push_back(id);
  if (ids.empty()) throw InvalidParams("empty case selector");
  return ids;
}

std::vector<Report> run_pool(const std::vector<Task>& tasks, unsigned jobs,
                             const std::function<Report(const Task&)>& runner) {
  std::vector<Report> reports(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        reports[i] = runner(tasks[i]);
      } catch (const std::exception& e) {
        reports[i] = Report{tasks[i].id, tasks[i].prime, tasks[i].params, Status::error, e.what(), 0};
      }
    }
  };
  unsigned threads = jobs != 0 ? jobs : std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, tasks.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  sort_reports(reports);
  return reports;
}

std::vector<std::int64_t> primes_in(const PrimeRange& range) { return primes_between(range.lo, range.hi); }

std::vector<Task> verify_tasks(const RunConfig& config) {
  std::vector<Task> tasks;
  const auto ids = split_ids(config.selector, case_ids());
  for (auto& t : congruence_tasks(ids, primes_in(config.primes), config.m_range.value_or(MRange{})))
    tasks.push_back({std::move(t.id), t.prime, std::move(t.params)});
  return tasks;
}

std::vector<Report> run_verify(const RunConfig& config) {
  return run_pool(verify_tasks(config), config.jobs, [&](const Task& t) {
    return verify_case(t.id, t.prime, t.params, VerifyOptions{config.exploratory, config.perturb.count(t.id) > 0});
  });
}

std::vector<Report> run_classical(const RunConfig& config) {
  std::vector<Task> tasks;
  const auto ids = split_ids(config.selector, classical_ids());
  for (auto& t : classical_tasks(ids, primes_in(config.primes), config.m_range, config.xs))
    tasks.push_back({std::move(t.id), t.prime, std::move(t.params)});
  return run_pool(tasks, config.jobs, [&](const Task& t) {
    return verify_classical(t.id, t.prime, t.params, VerifyOptions{config.exploratory, config.perturb.count(t.id) > 0});
  });
}

std::vector<Report> run_identity(const RunConfig& config) {
  std::vector<Task> tasks;
  for (const auto& id : split_ids(config.selector, identity_ids())) {
    const IdentityCase& c = find_identity(id);
    const std::int64_t n_bound = config.n_max > 0 ? config.n_max : c.default_n_max;
    const std::int64_t m_bound = config.m_max > 0 ? config.m_max : c.default_m_max;
    for (auto& params : c.grid(n_bound, m_bound)) tasks.push_back({id, 0, std::move(params)});
  }
  return run_pool(tasks, config.jobs,
                  [&](const Task& t) { return verify_identity(t.id, t.params, config.perturb.count(t.id) > 0); });
}

std::string render_list(Format format) {
  struct Entry {
    std::string kind, id, statement;
  };
  std::vector<Entry> entries;
  for (const auto& c : congruence_cases()) entries.push_back({"q", c.id, c.statement});
  for (const auto& c : classical_cases()) entries.push_back({"classical", c.id, c.statement});
  for (const auto& c : identity_cases()) entries.push_back({"identity", c.id, ""});

  std::ostringstream out;
  switch (format) {
    case Format::json:
      for (const auto& e : entries) {
        nlohmann::ordered_json obj;
        obj["kind"] = e.kind;
        obj["id"] = e.id;
        obj["statement"] = e.statement;
        out << obj.dump() << '\n';
      }
      break;
    case Format::csv:
      out << "kind,id\n";
      for (const auto& e : entries) out << e.kind << ',' << e.id << '\n';
      break;
    case Format::text:
      for (const auto& e : entries) {
        out << e.kind << "  " << e.id;
        if (!e.statement.empty()) out << "  " << e.statement;
        out << '\n';
      }
      break;
  }
  return out.str();
}

std::string render_bench(const std::vector<Report>& reports, Format format, double wall_seconds) {
  struct Row {
    std::int64_t tasks = 0, total = 0, max = 0;
  };
  std::map<std::string, Row> rows;
  for (const auto& r : reports) {
    auto& row = rows[r.case_id];
    ++row.tasks;
    row.total += r.millis;
    row.max = std::max(row.max, r.millis);
  }
  std::ostringstream out;
  switch (format) {
    case Format::json:
      for (const auto& [id, row] : rows) {
        nlohmann::ordered_json obj;
        obj["case"] = id;
        obj["tasks"] = row.tasks;
        obj["total_millis"] = row.total;
        obj["max_millis"] = row.max;
        out << obj.dump() << '\n';
      }
      break;
    case Format::csv:
      out << "case,tasks,total_millis,max_millis\n";
      for (const auto& [id, row] : rows) out << id << ',' << row.tasks << ',' << row.total << ',' << row.max << '\n';
      break;
    case Format::text:
      for (const auto& [id, row] : rows)
        out << id << "  tasks=" << row.tasks << "  total=" << row.total << " ms  max=" << row.max << " ms\n";
      out << "wall " << wall_seconds << " s\n";
      break;
  }
  return out.str();
}

bool counts_as_failure(const Report& r) {
  return (r.status == Status::fail || r.status == Status::error) && r.params.count("exploratory") == 0;
}

void validate(const RunConfig& config) {
  if (config.primes.lo < 3 || config.primes.lo > config.primes.hi)
    throw InvalidParams("prime range must satisfy 3 <= lo <= hi");
  if (config.m_range && (config.m_range->lo < 1 || config.m_range->hi > 8 || config.m_range->lo > config.m_range->hi))
    throw InvalidParams("m range must lie within 1..8");
  if (config.n_max < 0 || config.m_max < 0) throw InvalidParams("sweep bounds must be nonnegative");
}

std::pair<std::int64_t, std::int64_t> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  std::size_t used = 0;
  try {
    if (dots == std::string::npos) {
      const std::int64_t v = std::stoll(text, &used);
      if (used != text.size()) throw InvalidParams("");
      return {v, v};
    }
    const std::string lo = text.substr(0, dots), hi = text.substr(dots + 2);
    const std::int64_t a = std::stoll(lo, &used);
    if (used != lo.size()) throw InvalidParams("");
    const std::int64_t b = std::stoll(hi, &used);
    if (used != hi.size()) throw InvalidParams("");
    return {a, b};
  } catch (const std::logic_error&) {
    throw InvalidParams("malformed range '" + text + "', expected lo..hi");
  } catch (const InvalidParams&) {
    throw InvalidParams("malformed range '" + text + "', expected lo..hi");
  }
}

}  // namespace

PrimeRange parse_prime_range(const std::string& text) {
  const auto [lo, hi] = parse_range(text);
  if (lo < 3 || lo > hi) throw InvalidParams("prime range must satisfy 3 <= lo <= hi");
  return {lo, hi};
}

MRange parse_m_range(const std::string& text) {
  const auto [lo, hi] = parse_range(text);
  if (lo < 1 || hi > 8 || lo > hi) throw InvalidParams("m range must lie within 1..8");
  return {lo, hi};
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::string rendered;
  bool failed = false;
  try {
    validate(config);
    const auto start = std::chrono::steady_clock::now();
    std::vector<Report> reports;
    switch (config.command) {
      case Command::list: rendered = render_list(config.format); break;
      case Command::verify: reports = run_verify(config); break;
      case Command::classical: reports = run_classical(config); break;
      case Command::identity: reports = run_identity(config); break;
      case Command::bench: reports = run_verify(config); break;
    }
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed = std::any_of(reports.begin(), reports.end(), counts_as_failure);
    if (config.command == Command::bench)
      rendered = render_bench(reports, config.format, wall);
    else if (config.command != Command::list)
      rendered = render(reports, config.format);
  } catch (const UnknownCase& e) {
    err << "qcong: " << e.what() << '\n';
    return kUsage;
  } catch (const InvalidParams& e) {
    err << "qcong: " << e.what() << '\n';
    return kUsage;
  }

  if (config.output) {
    std::ofstream file(*config.output, std::ios::binary);
    if (!file) {
      err << "qcong: cannot write " << *config.output << '\n';
      return kUsage;
    }
    file << rendered;
  } else {
    out << rendered;
  }
  return failed ? kFailed : kOk;
}

int main_with_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact checks of q-congruences modulo [p], their integer counterparts mod p, and q-series identities.",
               "qcong"};
  app.require_subcommand(1);

  RunConfig config;
  std::string primes = "3..31", m_text, format = "text", output;
  std::vector<std::int64_t> xs;
  std::vector<std::string> perturb;
  const std::map<std::string, Format> formats{{"text", Format::text}, {"json", Format::json}, {"csv", Format::csv}};

  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--format", format, "text, json or csv")->check(CLI::IsMember({"text", "json", "csv"}));
    sub->add_option("--output,-o", output, "Write the report here instead of stdout");
  };
  auto add_run = [&](CLI::App* sub) {
    add_output(sub);
    sub->add_option("--jobs,-j", config.jobs, "Worker threads (default: hardware threads)");
    sub->add_option("--perturb", perturb, "Add 1 to the right-hand side of these ids")->take_all();
  };

  auto* list = app.add_subcommand("list", "List every registered case and identity");
  add_output(list);

  auto* verify = app.add_subcommand("verify", "Check q-congruences over a prime range");
  auto* bench = app.add_subcommand("bench", "Time the q-congruence checks per case");
  for (auto* sub : {verify, bench}) {
    sub->add_option("--case", config.selector, "Case id, comma list, or all");
    sub->add_option("--primes", primes, "Inclusive prime range lo..hi");
    sub->add_option("--m", m_text, "m range lo..hi for multi-sum cases (within 1..8)");
    sub->add_flag("--exploratory", config.exploratory, "Also run primes below a case's constraint");
    add_run(sub);
  }

  auto* classical = app.add_subcommand("classical", "Check the integer congruences mod p over a prime range");
  classical->add_option("--case", config.selector, "Case id, comma list, or all");
  classical->add_option("--primes", primes, "Inclusive prime range lo..hi");
  classical->add_option("--m", m_text, "m range lo..hi (within 1..8)");
  classical->add_option("--x", xs, "x values for xxyy")->delimiter(',');
  classical->add_flag("--exploratory", config.exploratory, "Also run primes below a case's constraint");
  add_run(classical);

  auto* identity = app.add_subcommand("identity", "Check polynomial identities over their parameter grid");
  identity->add_option("--id", config.selector, "Identity id, comma list, or all");
  identity->add_option("--n-max", config.n_max, "Largest n (default per identity)");
  identity->add_option("--m-max", config.m_max, "Largest m (default per identity)");
  add_run(identity);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*list) config.command = Command::list;
    if (*verify) config.command = Command::verify;
    if (*bench) config.command = Command::bench;
    if (*classical) config.command = Command::classical;
    if (*identity) config.command = Command::identity;
    config.primes = parse_prime_range(primes);
    if (!m_text.empty()) config.m_range = parse_m_range(m_text);
    if (!xs.empty()) config.xs = xs;
    config.format = formats.at(format);
    if (!output.empty()) config.output = output;
    config.perturb.insert(perturb.begin(), perturb.end());
  } catch (const InvalidParams& e) {
    err << "qcong: " << e.what() << '\n';
    return kUsage;
  }
  return run(config, out, err);
}

}  // namespace qcong::cli

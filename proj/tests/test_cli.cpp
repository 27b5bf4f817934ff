#include <filesystem>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "qcong/classical.hpp"
#include "qcong/cli.hpp"
#include "qcong/errors.hpp"
#include "qcong/identity.hpp"
#include "qcong/primes.hpp"

using namespace qcong;
using namespace qcong::cli;
using nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "qcong");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = main_with_args(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<json> records(const std::string& ndjson) {
  std::vector<json> rows;
  std::istringstream in(ndjson);
  for (std::string line; std::getline(in, line);) rows.push_back(json::parse(line));
  return rows;
}

std::string without_millis(const std::string& text) {
  return std::regex_replace(text, std::regex(R"("millis":\d+)"), R"("millis":0)");
}

const std::set<std::string> misprinted = {"q-second-p", "q-third-p", "q-derivative-cor"};

}  // namespace

TEST_CASE("range parsing") {
  CHECK(parse_prime_range("3..31").lo == 3);
  CHECK(parse_prime_range("3..31").hi == 31);
  CHECK(parse_prime_range("7..7").hi == 7);
  CHECK_THROWS_AS(parse_prime_range("2..31"), InvalidParams);
  CHECK_THROWS_AS(parse_prime_range("31..3"), InvalidParams);
  CHECK_THROWS_AS(parse_prime_range("3-31"), InvalidParams);
  CHECK_THROWS_AS(parse_prime_range("3..x"), InvalidParams);
  CHECK_THROWS_AS(parse_prime_range(""), InvalidParams);

  CHECK(parse_m_range("2").lo == 2);
  CHECK(parse_m_range("2").hi == 2);
  CHECK(parse_m_range("1..8").hi == 8);
  CHECK_THROWS_AS(parse_m_range("0..3"), InvalidParams);
  CHECK_THROWS_AS(parse_m_range("1..9"), InvalidParams);
  CHECK_THROWS_AS(parse_m_range("4..2"), InvalidParams);
}

TEST_CASE("verify all over 3..31 as JSON") {
  const auto result = invoke({"verify", "--case", "all", "--primes", "3..31", "--format", "json"});
  const auto rows = records(result.out);
  CHECK(rows.size() == congruence_tasks(case_ids(), primes_between(3, 31)).size());

  std::set<std::string> failing;
  for (const auto& row : rows) {
    CHECK(row.size() == 6);
    for (const char* key : {"case", "prime", "params", "status", "witness", "millis"}) CHECK(row.contains(key));
    const std::string status = row["status"];
    CHECK(status != "error");
    if (status == "fail") {
      failing.insert(row["case"].get<std::string>());
      CHECK(row["witness"].is_string());
    } else {
      CHECK(row["witness"].is_null());
    }
  }
  // The three misprinted statements fail and nothing else does.
  CHECK(failing == misprinted);
  CHECK(result.code == kFailed);

  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& a = rows[i - 1];
    const auto& b = rows[i];
    const bool ordered = a["case"] < b["case"] || (a["case"] == b["case"] && a["prime"] <= b["prime"]);
    CHECK(ordered);
  }
}

TEST_CASE("verify the correct statements exits 0") {
  std::string selector;
  for (const auto& id : case_ids())
    if (misprinted.count(id) == 0) selector += (selector.empty() ? "" : ",") + id;
  const auto result = invoke({"verify", "--case", selector, "--primes", "3..13", "--format", "json"});
  CHECK(result.code == kOk);
  CHECK(result.err.empty());
}

TEST_CASE("identity x-dilcher") {
  const auto result = invoke({"identity", "--id", "x-dilcher", "--n-max", "6", "--m-max", "3", "--format", "json"});
  CHECK(result.code == kOk);
  const auto rows = records(result.out);
  CHECK(rows.size() == 18);
  for (const auto& row : rows) {
    CHECK(row["status"] == "pass");
    CHECK(row["prime"] == 0);
  }
}

TEST_CASE("skipped records do not fail the run") {
  const auto result = invoke({"verify", "--case", "q-sun-harmonic", "--primes", "3..3", "--format", "json"});
  CHECK(result.code == kOk);
  const auto rows = records(result.out);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0]["status"] == "skipped");
  CHECK(rows[0]["prime"] == 3);
}

TEST_CASE("exploratory reports never change the exit code") {
  for (const char* id : {"q-sun-harmonic", "q-shi-pan"}) {
    const auto result =
        invoke({"verify", "--case", id, "--primes", "3..3", "--exploratory", "--perturb", id, "--format", "json"});
    CHECK(result.code == kOk);
    const auto rows = records(result.out);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0]["params"]["exploratory"] == 1);
    CHECK(rows[0]["status"] == "fail");
  }
}

TEST_CASE("reruns are identical apart from timings") {
  RunConfig config;
  config.command = Command::verify;
  config.primes = {3, 23};
  config.format = Format::json;
  config.jobs = 1;
  std::ostringstream first, second, err;
  const int a = run(config, first, err);
  config.jobs = 4;
  const int b = run(config, second, err);
  CHECK(a == b);
  CHECK(without_millis(first.str()) == without_millis(second.str()));

  config.command = Command::classical;
  config.primes = {3, 200};
  std::ostringstream third, fourth;
  CHECK(run(config, third, err) == kOk);
  config.jobs = 1;
  CHECK(run(config, fourth, err) == kOk);
  CHECK(without_millis(third.str()) == without_millis(fourth.str()));
}

TEST_CASE("classical command") {
  const auto result = invoke({"classical", "--case", "xxyy", "--primes", "5..13", "--m", "1..2", "--x", "-1,2", "--format",
                              "json"});
  CHECK(result.code == kOk);
  CHECK(records(result.out).size() == 4 * 2 * 2);

  const auto all = invoke({"classical", "--primes", "3..500", "--format", "csv"});
  CHECK(all.code == kOk);
  CHECK(all.out.rfind("case,prime,params,status,witness,millis\n", 0) == 0);
}

TEST_CASE("perturbation turns a pass into a failure") {
  const auto q = invoke({"verify", "--case", "q-known", "--primes", "5..5", "--perturb", "q-known", "--format", "json"});
  CHECK(q.code == kFailed);
  auto rows = records(q.out);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0]["status"] == "fail");
  CHECK(rows[0]["witness"] == "[-1, 0, 0, 0]");

  const auto c = invoke({"classical", "--case", "glaisher", "--primes", "7..7", "--perturb", "glaisher", "--format", "json"});
  CHECK(c.code == kFailed);
  rows = records(c.out);
  CHECK(rows[0]["witness"] == "6 mod 7");

  const auto i = invoke({"identity", "--id", "van-hamme", "--n-max", "2", "--perturb", "van-hamme"});
  CHECK(i.code == kFailed);
}

TEST_CASE("usage errors") {
  CHECK(invoke({}).code == kUsage);
  CHECK(invoke({"frobnicate"}).code == kUsage);
  CHECK(invoke({"verify", "--primes", "1..5"}).code == kUsage);
  CHECK(invoke({"verify", "--primes", "9..5"}).code == kUsage);
  CHECK(invoke({"verify", "--m", "0..2"}).code == kUsage);
  CHECK(invoke({"verify", "--format", "xml"}).code == kUsage);
  CHECK(invoke({"verify", "--bogus"}).code == kUsage);

  const auto unknown = invoke({"verify", "--case", "q-nothing"});
  CHECK(unknown.code == kUsage);
  CHECK(unknown.out.empty());
  CHECK(unknown.err.find("q-nothing") != std::string::npos);
  CHECK(invoke({"classical", "--case", "nothing"}).code == kUsage);
  CHECK(invoke({"identity", "--id", "nothing"}).code == kUsage);

  const auto help = invoke({"--help"});
  CHECK(help.code == kOk);
  CHECK(help.out.find("verify") != std::string::npos);
}

TEST_CASE("output path") {
  const auto path = std::filesystem::temp_directory_path() / "qcong_cli_report.json";
  std::filesystem::remove(path);
  const auto result = invoke({"verify", "--case", "q-known", "--primes", "3..11", "--format", "json", "-o", path.string()});
  CHECK(result.code == kOk);
  CHECK(result.out.empty());
  std::ifstream in(path);
  std::stringstream text;
  text << in.rdbuf();
  CHECK(records(text.str()).size() == 4);
  std::filesystem::remove(path);

  CHECK(invoke({"verify", "--case", "q-known", "-o", "/nonexistent-dir/report.json"}).code == kUsage);
}

TEST_CASE("list and bench") {
  const auto list = invoke({"list", "--format", "json"});
  CHECK(list.code == kOk);
  std::set<std::string> ids;
  for (const auto& row : records(list.out)) ids.insert(row["id"].get<std::string>());
  for (const auto& id : case_ids()) CHECK(ids.count(id) == 1);
  for (const auto& id : classical_ids()) CHECK(ids.count(id) == 1);
  for (const auto& id : identity_ids()) CHECK(ids.count(id) == 1);

  const auto bench = invoke({"bench", "--case", "q-known,q-kohnen-tauraso", "--primes", "3..17", "--format", "csv"});
  CHECK(bench.code == kOk);
  CHECK(bench.out.rfind("case,tasks,total_millis,max_millis\nq-known,6,", 0) == 0);
}

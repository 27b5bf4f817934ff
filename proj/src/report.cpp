#include "qcong/report.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <tuple>

#include "json.hpp"

namespace qcong {

namespace {

nlohmann::ordered_json params_json(const Params& params) {
  nlohmann::ordered_json obj = nlohmann::ordered_json::object();
  for (const auto& [key, value] : params) obj[key] = value;
  return obj;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string params_text(const Params& params) {
  std::string out;
  for (const auto& [key, value] : params) {
    if (!out.empty()) out += ' ';
    out += key + "=" + std::to_string(value);
  }
  return out;
}

}  // namespace

std::string_view to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::skipped: return "skipped";
    case Status::error: return "error";
  }
  return "error";
}

bool report_less(const Report& a, const Report& b) {
  return std::tie(a.case_id, a.prime, a.params) < std::tie(b.case_id, b.prime, b.params);
}

void sort_reports(std::vector<Report>& reports) { std::stable_sort(reports.begin(), reports.end(), report_less); }

std::string render_json_line(const Report& r) {
  nlohmann::ordered_json obj;
  obj["case"] = r.case_id;
  obj["prime"] = r.prime;
  obj["params"] = params_json(r.params);
  obj["status"] = std::string(to_string(r.status));
  obj["witness"] = r.witness ? nlohmann::ordered_json(*r.witness) : nlohmann::ordered_json(nullptr);
  obj["millis"] = r.millis;
  return obj.dump();
}

std::string render(const std::vector<Report>& reports, Format format) {
  std::ostringstream out;
  switch (format) {
    case Format::json:
      for (const auto& r : reports) out << render_json_line(r) << '\n';
      break;
    case Format::csv:
      out << "case,prime,params,status,witness,millis\n";
      for (const auto& r : reports)
        out << csv_quote(r.case_id) << ',' << r.prime << ',' << csv_quote(params_json(r.params).dump()) << ','
            << to_string(r.status) << ',' << (r.witness ? csv_quote(*r.witness) : "") << ',' << r.millis << '\n';
      break;
    case Format::text:
      for (const auto& r : reports) {
        std::string status(to_string(r.status));
        std::transform(status.begin(), status.end(), status.begin(), [](unsigned char c) { return std::toupper(c); });
        out << status << ' ' << r.case_id;
        if (r.prime != 0) out << " p=" << r.prime;
        if (!r.params.empty()) out << ' ' << params_text(r.params);
        out << " (" << r.millis << " ms)";
        if (r.witness) out << "\n    witness: " << *r.witness;
        out << '\n';
      }
      break;
  }
  return out.str();
}

}  // namespace qcong

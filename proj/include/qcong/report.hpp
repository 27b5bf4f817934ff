#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qcong {

using Params = std::map<std::string, std::int64_t>;

enum class Status { pass, fail, skipped, error };

std::string_view to_string(Status s);

/// Outcome of one verification: a (case, prime, params) triple for the
/// congruence catalogs, a (case, params) pair for identities (prime = 0).
///
/// status == fail always carries the nonzero difference as witness; error
/// carries the failure detail there instead.
struct Report {
  std::string case_id;
  std::int64_t prime = 0;
  Params params;
  Status status = Status::skipped;
  std::optional<std::string> witness;
  std::int64_t millis = 0;
};

/// Orders by (case id, prime, params).
bool report_less(const Report& a, const Report& b);
void sort_reports(std::vector<Report>& reports);

enum class Format { text, json, csv };

/// JSON: one object per line with keys case, prime, params, status,
/// witness, millis. CSV: a header line then the same columns, params as an
/// embedded JSON object. Text: one human-readable line per report.
std::string render(const std::vector<Report>& reports, Format format);
std::string render_json_line(const Report& report);

}  // namespace qcong

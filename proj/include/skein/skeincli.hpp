#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace skein {

enum class CheckStatus { Pass, Fail, NotStabilized };

std::string statusName(CheckStatus s);

struct CheckReport {
  std::string check;
  std::map<std::string, int> params;
  CheckStatus status = CheckStatus::Fail;
  std::string witness;  // always set when status is Fail
  int truncation = 0;
  long elapsedMs = 0;
};

struct RunOptions {
  std::optional<int> a, b;           // restrict color-dependent checks to one pair
  std::optional<int> truncation;     // override the pinned degree bounds
  int jobs = 1;
};

const std::vector<std::string>& suiteNames();
bool isSuite(const std::string& name);

// Runs every check of a suite ("all" runs every suite) and returns the
// reports in canonical order: by check id, then by parameters.
std::vector<CheckReport> runSuite(const std::string& suite, const RunOptions& options);

// 0 if everything passed, 1 on a failure, 3 if nothing failed but some
// solver did not stabilize.
int exitCode(const std::vector<CheckReport>& reports);

// One JSON object per line, preceded by the schema header line.
std::string schemaHeader();
std::string toJsonLine(const CheckReport& r, bool withTiming = true);
std::string toText(const CheckReport& r);

}  // namespace skein

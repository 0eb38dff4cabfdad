// Runs `skein-lab all` twice and prints one PASS/FAIL line per acceptance
// criterion. Usage: acceptance <path-to-skein-lab> [work-dir]

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <sys/wait.h>
#include <thread>
#include <vector>

#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Criterion {
  int id;
  std::string title;
  std::vector<std::string> checks;  // exact ids, or prefixes ending in '.'
  long budgetMs;
};

bool covers(const Criterion& c, const std::string& check) {
  for (const auto& pattern : c.checks) {
    if (pattern.back() == '.' ? check.rfind(pattern, 0) == 0 : check == pattern) return true;
  }
  return false;
}

struct Run {
  int exitCode = -1;
  long wallMs = 0;
  std::vector<json> reports;
  std::vector<std::string> normalized;  // report lines without elapsed_ms
  std::string error;
};

Run runAll(const std::string& cli, const fs::path& out, int jobs) {
  Run run;
  const std::string cmd = "\"" + cli + "\" all --json --jobs " + std::to_string(jobs) + " --out \"" + out.string() + "\"";
  const auto start = std::chrono::steady_clock::now();
  const int raw = std::system(cmd.c_str());
  run.wallMs = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  run.exitCode = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;

  std::ifstream in(out);
  if (!in) {
    run.error = "no report written to " + out.string();
    return run;
  }
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded()) {
      run.error = "unparsable report line: " + line;
      return run;
    }
    if (header) {
      if (j != json{{"schema", "skein-lab/1"}}) run.error = "bad schema header: " + line;
      header = false;
      continue;
    }
    run.reports.push_back(j);
    j.erase("elapsed_ms");
    run.normalized.push_back(j.dump());
  }
  if (header) run.error = "empty report";
  return run;
}

std::string describe(const json& r) {
  std::string s = r.at("check").get<std::string>();
  for (const auto& [k, v] : r.at("params").items()) s += " " + k + "=" + v.dump();
  s += " [" + r.at("status").get<std::string>() + "]";
  if (!r.at("witness").is_null()) s += ": " + r.at("witness").get<std::string>().substr(0, 200);
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <path-to-skein-lab> [work-dir]\n";
    return 2;
  }
  const std::string cli = argv[1];
  const fs::path work = argc > 2 ? fs::path(argv[2]) : fs::temp_directory_path();
  fs::create_directories(work);

  const int jobs = std::max(2u, std::thread::hardware_concurrency());
  const Run first = runAll(cli, work / "acceptance-run1.jsonl", jobs);
  const Run second = runAll(cli, work / "acceptance-run2.jsonl", 1);

  const std::vector<Criterion> criteria{
      {1, "symmetric-function identities", {"sym."}, 5'000},
      {2, "Hecke oracle: idempotents, digon, crossing cable, braid relations", {"hecke."}, 60'000},
      {3, "decategorified colored skein relations", {"skein"}, 600'000},
      {4, "hom dimensions with stabilization", {"hom."}, 300'000},
      {5, "d^2 = 0 for all complexes", {"rickard.d2", "shifted-rickard.d2", "kmcs.d2", "mccs.d2"}, 300'000},
      {6, "dot sliding and contractibility", {"rickard.dot-sliding", "rickard.contractible"}, 0},
      {7, "zeta transform: invertibility, block pattern, worked example",
       {"zeta.invertible", "zeta.pattern", "zeta.worked-example"}, 0},
      {8, "Theta homotopies", {"zeta.theta"}, 0},
      {9, "full twist certificate and Euler characteristic", {"fulltwist."}, 0},
      {10, "digon removal and intertwining isomorphism", {"induced.", "mccs.thick-digon"}, 0},
      {11, "filtered structure of the twisted Koszul complex", {"mccs.structure", "mccs.row", "kmcs.euler"}, 0},
  };

  int failed = 0;
  auto report = [&](int id, const std::string& title, bool ok, const std::string& detail) {
    std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << id << ": " << title;
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << "\n";
    if (!ok) ++failed;
  };

  if (!first.error.empty()) std::cerr << "first run: " << first.error << "\n";
  std::vector<bool> claimed(first.reports.size(), false);
  for (const auto& c : criteria) {
    int total = 0, passed = 0;
    long spent = 0;
    std::vector<std::string> problems;
    for (std::size_t i = 0; i < first.reports.size(); ++i) {
      const json& r = first.reports[i];
      if (!covers(c, r.at("check").get<std::string>())) continue;
      claimed[i] = true;
      ++total;
      spent += r.at("elapsed_ms").get<long>();
      if (r.at("status") == "pass")
        ++passed;
      else
        problems.push_back(describe(r));
    }
    bool ok = first.error.empty() && total > 0 && passed == total;
    std::string detail = std::to_string(passed) + "/" + std::to_string(total) + " checks, " + std::to_string(spent) + " ms";
    if (c.budgetMs > 0 && spent > c.budgetMs) {
      ok = false;
      detail += ", over budget of " + std::to_string(c.budgetMs) + " ms";
    }
    report(c.id, c.title, ok, detail);
    for (const auto& p : problems) std::cout << "        " << p << "\n";
  }

  for (std::size_t i = 0; i < first.reports.size(); ++i)
    if (!claimed[i]) std::cout << "note: check not assigned to a criterion: " << describe(first.reports[i]) << "\n";

  {
    bool ok = first.error.empty() && second.error.empty() && first.exitCode == 0 && second.exitCode == 0 &&
              first.normalized == second.normalized && first.wallMs < 30 * 60 * 1000;
    std::string detail = "exit codes " + std::to_string(first.exitCode) + "/" + std::to_string(second.exitCode) +
                         ", wall " + std::to_string(first.wallMs) + " ms with " + std::to_string(jobs) + " jobs and " +
                         std::to_string(second.wallMs) + " ms with 1 job";
    if (first.normalized != second.normalized) {
      detail += ", reports differ";
      const std::size_t n = std::min(first.normalized.size(), second.normalized.size());
      for (std::size_t i = 0; i < n; ++i)
        if (first.normalized[i] != second.normalized[i]) {
          std::cout << "        first difference at report " << i << ":\n        " << first.normalized[i]
                    << "\n        " << second.normalized[i] << "\n";
          break;
        }
    }
    report(12, "CLI determinism across runs and job counts", ok, detail);
  }

  std::cout << (criteria.size() + 1 - failed) << "/" << (criteria.size() + 1) << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}

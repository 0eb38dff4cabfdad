#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "skein/skeincli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Runs the exact verification suites of the colored skein library."};
  std::string suite;
  int a = -1, b = -1, trunc = -1, jobs = 1;
  bool json = false;
  std::string out;

  std::string suites;
  for (const auto& s : skein::suiteNames()) suites += (suites.empty() ? "" : ", ") + s;
  app.add_option("suite", suite, "One of: " + suites)->required()->check(CLI::IsMember(skein::suiteNames()));
  app.add_option("--a", a, "First color; restricts color-dependent checks (default: the built-in grid)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--b", b, "Second color; restricts color-dependent checks (default: the built-in grid)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--trunc", trunc, "Degree bound D for graded linear algebra (default: 2(a+b)+8, or the pinned value)")
      ->check(CLI::PositiveNumber);
  app.add_flag("--json", json, "Emit JSON lines with a schema header instead of text");
  app.add_option("--out", out, "Write the report to this file instead of standard output");
  app.add_option("--jobs", jobs, "Number of checks run concurrently (default: 1)")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return e.get_exit_code() == 0 ? code : 2;
  }

  skein::RunOptions options;
  if (a >= 0) options.a = a;
  if (b >= 0) options.b = b;
  if (trunc > 0) options.truncation = trunc;
  options.jobs = jobs;

  const auto reports = skein::runSuite(suite, options);
  std::ostringstream text;
  if (json) text << skein::schemaHeader() << "\n";
  for (const auto& r : reports) text << (json ? skein::toJsonLine(r) : skein::toText(r)) << "\n";
  if (!json) {
    int passed = 0;
    for (const auto& r : reports) passed += r.status == skein::CheckStatus::Pass;
    text << passed << "/" << reports.size() << " checks passed\n";
  }

  if (out.empty()) {
    std::cout << text.str();
  } else {
    std::ofstream file(out);
    if (!file) {
      std::cerr << "cannot write " << out << "\n";
      return 2;
    }
    file << text.str();
  }
  return skein::exitCode(reports);
}

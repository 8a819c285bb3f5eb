// Prints one PASS/FAIL line per acceptance criterion; exit status 0 iff all pass.
#include <cstdio>
#include <map>
#include <string>

#include "uwq/verify.hpp"

int main(int argc, char** argv) {
  uwq::VerifyOptions opts;
  opts.parallel = argc > 1 && std::string(argv[1]) == "--parallel";
  const auto reports = uwq::run_verify(uwq::Suite::All, opts);

  struct Row {
    bool pass = true;
    std::string names;
  };
  std::map<int, Row> rows;
  for (int c = 1; c <= 14; ++c) rows[c].pass = false;  // a criterion with no report fails
  std::map<int, bool> seen;
  for (const auto& r : reports) {
    Row& row = rows[r.criterion];
    if (!seen[r.criterion]) {
      row.pass = true;
      seen[r.criterion] = true;
    }
    row.pass = row.pass && r.status == uwq::ReportStatus::Pass;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s%s=%.3e (tol %.1e)", row.names.empty() ? "" : ", ", r.name.c_str(),
                  r.measured, r.tolerance);
    row.names += buf;
  }
  bool all = true;
  for (const auto& [c, row] : rows) {
    std::printf("criterion %2d %s  %s\n", c, row.pass ? "PASS" : "FAIL", row.names.c_str());
    all = all && row.pass;
  }
  for (const auto& r : reports)
    if (r.status == uwq::ReportStatus::Fail) std::printf("  %s: %s\n", r.name.c_str(), r.detail.c_str());
  return all ? 0 : 1;
}

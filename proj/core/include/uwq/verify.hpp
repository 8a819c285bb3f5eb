#pragma once

#include <string>
#include <vector>

#include "uwq/spec_io.hpp"

namespace uwq {

enum class ReportStatus { Pass, Fail, Skip };

struct Report {
  std::string name;
  int criterion = 0;  // acceptance criterion number, 1..14
  ReportStatus status = ReportStatus::Skip;
  double measured = 0.0;
  double tolerance = 0.0;
  double runtime_ms = 0.0;
  std::string detail;
};

enum class Suite { All, Stft, Quant245, Expansion, Tau, Compose, Gaussconv, Weights };

/// Throws std::invalid_argument naming the valid suites.
Suite parse_suite(const std::string& name);
const char* to_string(Suite s);
const char* to_string(ReportStatus s);

struct VerifyOptions {
  GridParams grid;
  bool parallel = false;
};

// Tolerances of the acceptance checks.
namespace tol {
inline constexpr double kStftInversion = 1e-10;
inline constexpr double kStftIsometry = 1e-10;
inline constexpr double kAntiWickWeyl = 1e-5;
inline constexpr double kAwToWeyl = 1e-12;
inline constexpr double kInverseCoeff = 1e-12;
inline constexpr double kInverseMatrix = 1e-5;
inline constexpr double kTauChange = 1e-8;
inline constexpr double kTauSign = 1e-3;
inline constexpr double kTranspose = 1e-9;
inline constexpr double kTransposeTerms = 1e-8;
inline constexpr double kCompose = 1e-8;
inline constexpr double kPositivity = 1e-7;
inline constexpr double kNormBound = 1e-6;
inline constexpr double kOscillator = 1e-6;
inline constexpr double kGaussconv = 1e-8;
inline constexpr double kOscKernel = 1e-5;
}  // namespace tol

/// Acceptance criteria covered by `suite`, ascending.
std::vector<int> suite_criteria(Suite suite);

/// Runs the checks of `suite`, ordered by name regardless of `parallel`.
std::vector<Report> run_verify(Suite suite, const VerifyOptions& opts = {});

/// True when every report passed or was skipped.
bool all_pass(const std::vector<Report>& reports);

enum class ReportFormat { Table, Json };

/// Table output starts with the defaults banner; JSON carries it as "header".
std::string emit_report(const std::vector<Report>& reports, ReportFormat format,
                        const GridParams& grid = {});

}  // namespace uwq

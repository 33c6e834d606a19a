#pragma once

#include <functional>
#include <string>
#include <vector>

#include "dchain/montecarlo.hpp"

namespace dchain {

struct CheckResult {
  std::string id;  // e.g. "2.b-critical"
  std::string title;
  bool passed = false;
  std::string detail;
};

struct CriterionReport {
  int number = 0;
  std::string title;
  std::vector<CheckResult> checks;
  bool passed() const;
};

struct AcceptanceOptions {
  McParams mc;       // defaults are the ones the MC criterion is stated for
  int workers = 1;   // threads for the MC curves
};

// Criteria 1-10. Each runs independently and never throws; an exception
// inside a check is reported as a failed check.
CriterionReport check_critical_table();
CriterionReport check_degeneracy_sequences();
CriterionReport check_residual_entropy();
CriterionReport check_critical_magnetization();
CriterionReport check_finite_ring_partition();
CriterionReport check_transfer_elements();
CriterionReport check_derivatives();
CriterionReport check_monte_carlo(const AcceptanceOptions& options);
CriterionReport check_entropy_peaks();
CriterionReport check_symmetries();

CriterionReport run_criterion(int number, const AcceptanceOptions& options);
inline constexpr int kCriterionCount = 10;

// Runs criteria in order, reporting each one as soon as it finishes.
std::vector<CriterionReport> run_acceptance(const AcceptanceOptions& options,
                                            const std::function<void(const CriterionReport&)>& on_done = {});

// "PASS  2  Degeneracy sequences (9/9 checks)"
std::string summary_line(const CriterionReport& report);

}  // namespace dchain

#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "coxlab/group.hpp"
#include "coxlab/subgroups.hpp"

namespace coxlab {

enum class CheckStatus { Pass, Fail, BoundedPass, Skipped };

std::string to_string(CheckStatus s);
CheckStatus check_status_from(const std::string& s);

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::Skipped;
  std::string detail;
  nlohmann::json payload = nlohmann::json::object();  // counts, counterexamples

  friend bool operator==(const CheckResult&, const CheckResult&) = default;
};

struct VerificationReport {
  std::string suite;
  std::string matrix_digest;
  std::map<std::string, std::int64_t> budgets;
  std::vector<CheckResult> checks;
  bool budget_exhausted = false;

  bool any_fail() const;
  /// 0 all pass, 1 any fail, 2 budget exhausted without a failure.
  int exit_code() const;

  nlohmann::json to_json() const;
  static VerificationReport from_json(const nlohmann::json& j);
  std::string to_text() const;

  friend bool operator==(const VerificationReport&, const VerificationReport&) = default;
};

const std::vector<std::string>& suite_names();

/// Runs one suite ("all" runs every suite). Censuses are shared across the
/// suites of one call. Throws InputError for an unknown suite name.
VerificationReport run_suite(CoxeterGroup& g, const std::string& suite, std::size_t max_chambers);

/// {"generators","induced_m","index","polytope","nerve_deletion","theorems"}.
nlohmann::json subgroup_report(CoxeterGroup& g, const ReflectionSubgroup& h);

}  // namespace coxlab

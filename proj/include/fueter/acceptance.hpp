#pragma once

// The eight end-to-end checks, shared by the acceptance test binary and the
// `verify all` command.

#include <nlohmann/json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace fueter {

struct AcceptanceConfig {
  int n = 1;
  std::uint64_t seed = 7;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string failure;  // first failing assertion, empty on success
  nlohmann::json data;  // measured values
};

CriterionResult check_fundamental_solution(const AcceptanceConfig& cfg);      // 1
CriterionResult check_holomorphic_extension(const AcceptanceConfig& cfg);     // 2
CriterionResult check_hull_equivalence(const AcceptanceConfig& cfg);          // 3
CriterionResult check_distance_lemma(const AcceptanceConfig& cfg);            // 4
CriterionResult check_cp1_cohomology(const AcceptanceConfig& cfg);            // 5
CriterionResult check_penrose_round_trip(const AcceptanceConfig& cfg);        // 6
CriterionResult check_commutative_diagram(const AcceptanceConfig& cfg);       // 7
CriterionResult check_complex_transform(const AcceptanceConfig& cfg);         // 8

CriterionResult run_criterion(int id, const AcceptanceConfig& cfg);
std::vector<CriterionResult> run_all(const AcceptanceConfig& cfg);

nlohmann::json to_json(const CriterionResult& r);

}  // namespace fueter

#pragma once

#include <string>

#include "mva/report.hpp"
#include "mva/scalar.hpp"

namespace mva {

struct CampaignParams {
  std::string command;
  std::string family = "sl";
  int size = 2;
  std::uint32_t characteristic = 5;
  bool level_critical = true;
  long long level_value = 0;  // used when level_critical is false
  int trunc = 1;
  int weight_cap = 4;
  int degree_cap = 4;
  std::uint64_t seed = 1;
  int workers = 1;
  long long trials = 100;
  std::string construction;  // empty = by family (gl -> cdet, else casimir)
  std::string points_file;
  std::string out_path;
  std::string golden_path;
  std::string emit_spec_path;
  bool corrupt_bracket = false;  // test fixture: damages one structure constant
};

struct Outcome {
  Report report;
  int exit_code = 0;  // 0 pass, 1 check failed, 2 usage/config, 3 capacity
};

Outcome cmd_validate(const CampaignParams& params);
Outcome cmd_borcherds(const CampaignParams& params);
Outcome cmd_centre(const CampaignParams& params);
Outcome cmd_jets(const CampaignParams& params);
Outcome cmd_sugawara(const CampaignParams& params);

// Dispatch on params.command, then handle --out and --golden.  Catches
// domain errors into the exit-code contract.
Outcome run_command(const CampaignParams& params);

}  // namespace mva

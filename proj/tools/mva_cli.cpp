#include <chrono>
#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "mva/campaigns.hpp"

namespace {

void add_common(CLI::App* cmd, mva::CampaignParams& p, std::string& level) {
  cmd->add_option("--family", p.family, "gl | sl | so | sp");
  cmd->add_option("--size", p.size, "matrix size N");
  cmd->add_option("--char", p.characteristic, "prime characteristic, or 0");
  cmd->add_option("--level", level, "level k, or 'critical'");
  cmd->add_option("--trunc", p.trunc, "jet truncation level m");
  cmd->add_option("--weight-cap", p.weight_cap, "conformal weight cap");
  cmd->add_option("--degree-cap", p.degree_cap, "polynomial degree cap");
  cmd->add_option("--seed", p.seed, "fuzz seed");
  cmd->add_option("--workers", p.workers, "worker count for parallel kernels");
  cmd->add_option("--trials", p.trials, "fuzz trial count");
  cmd->add_option("--out", p.out_path, "write the report to this file");
  cmd->add_option("--golden", p.golden_path, "compare the report against this file");
  cmd->set_config("--config", "", "config file (key = value lines)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact verification harness for modular affine vertex algebras"};
  app.require_subcommand(1);

  mva::CampaignParams params;
  if (const char* w = std::getenv("MVA_WORKERS")) params.workers = std::atoi(w);
  std::string level = "critical";

  CLI::App* validate = app.add_subcommand("validate", "structural invariants of a Lie algebra spec");
  CLI::App* borcherds = app.add_subcommand("borcherds", "randomized Borcherds identity campaign");
  CLI::App* centre = app.add_subcommand("centre", "kernel oracle vs predicted centre dimensions");
  CLI::App* jets = app.add_subcommand("jets", "jet-space invariant ring and Jacobian checks");
  CLI::App* sugawara = app.add_subcommand("sugawara", "build and verify Segal-Sugawara vectors");
  for (CLI::App* c : {validate, borcherds, centre, jets, sugawara}) add_common(c, params, level);
  validate->add_option("--emit-spec", params.emit_spec_path, "also write the spec document");
  for (CLI::App* c : {validate, borcherds})
    c->add_flag("--corrupt-bracket", params.corrupt_bracket,
                "test fixture: damage one structure constant");
  jets->add_option("--points", params.points_file, "mva-points document for the Jacobian");
  sugawara->add_option("--construction", params.construction, "casimir | cdet");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  params.command = app.get_subcommands().front()->get_name();
  if (level == "critical") {
    params.level_critical = true;
  } else {
    params.level_critical = false;
    try {
      params.level_value = std::stoll(level);
    } catch (...) {
      std::cerr << "invalid --level value: " << level << "\n";
      return 2;
    }
  }
  if (!params.out_path.empty() && params.out_path.front() != '/') {
    if (const char* dir = std::getenv("MVA_OUT_DIR"))
      params.out_path = std::string(dir) + "/" + params.out_path;
  }

  auto t0 = std::chrono::steady_clock::now();
  mva::Outcome outcome = mva::run_command(params);
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - t0)
                .count();

  std::cout << outcome.report.text();
  // timings stay out of the report so reruns are byte-identical
  std::cerr << "[mva] " << params.command << " finished in " << ms << " ms, exit "
            << outcome.exit_code << "\n";
  return outcome.exit_code;
}

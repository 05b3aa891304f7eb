#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ranksync/harness.hpp"

using namespace ranksync;

int main(int argc, char** argv) {
  CLI::App app{"two-party permutation synchronization: experiments, verification, reference bounds"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run seeded trials of one protocol and report statistics");
  ExperimentConfig cfg;
  cfg.n = 1024;
  cfg.d = 2;
  cfg.trials = 1000;
  std::string proto = "p2";
  std::string accounting = "both";
  std::string format = "json";
  run->add_option("--protocol", proto,
                  "p1|p2|insertions|block|translocation|transposition|anchor-baseline")
      ->capture_default_str();
  run->add_option("--n", cfg.n, "sequence length")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  run->add_option("--d", cfg.d, "deletion count / block span (ignored by the one-move models)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  run->add_option("--trials", cfg.trials)->check(CLI::PositiveNumber)->capture_default_str();
  run->add_option("--seed", cfg.seed)->capture_default_str();
  run->add_option("--accounting", accounting, "ideal|wire|both")->capture_default_str();
  run->add_option("--format", format, "json|csv")->capture_default_str();
  run->add_option("--out", cfg.out_path, "write the report to this file instead of stdout");
  run->add_option("--dump", cfg.dump_path, "write every trial's transcript to this file");

  auto* verify = app.add_subcommand("verify", "run the exhaustive small-n property suites");
  std::string suite = "all";
  int n_max = 6;
  verify
      ->add_option("--suite", suite,
                   "exactness_all|coset_partition|translocation_detection|unique_reinsertion|"
                   "deletion_inversion|block_shape|roundtrip|all")
      ->capture_default_str();
  verify->add_option("--n-max", n_max, "largest n to cover (each suite caps internally)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  auto* bounds_cmd =
      app.add_subcommand("bounds", "print the closed-form reference table for one (n, d)");
  int bn = 1024;
  int bd = 2;
  bounds_cmd->add_option("--n", bn)->check(CLI::PositiveNumber)->capture_default_str();
  bounds_cmd->add_option("--d", bd)->check(CLI::PositiveNumber)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (run->parsed()) {
      const auto p = protocol_from_string(proto);
      if (!p) {
        std::cerr << "unknown protocol: " << proto << "\n";
        return 1;
      }
      cfg.protocol = *p;
      if (accounting == "ideal") {
        cfg.accounting = Accounting::Ideal;
      } else if (accounting == "wire") {
        cfg.accounting = Accounting::Wire;
      } else if (accounting == "both") {
        cfg.accounting = Accounting::Both;
      } else {
        std::cerr << "unknown accounting: " << accounting << "\n";
        return 1;
      }
      if (format == "json") {
        cfg.format = ReportFormat::Json;
      } else if (format == "csv") {
        cfg.format = ReportFormat::Csv;
      } else {
        std::cerr << "unknown format: " << format << "\n";
        return 1;
      }

      const ExperimentStats st = run_experiment(cfg);
      const std::string report = cfg.format == ReportFormat::Json ? to_json(st) : to_csv(st);
      if (cfg.out_path.empty()) {
        std::cout << report;
      } else {
        std::ofstream out(cfg.out_path);
        if (!out) {
          std::cerr << "cannot open " << cfg.out_path << "\n";
          return 1;
        }
        out << report;
      }
      return 0;
    }

    if (verify->parsed()) {
      const auto checks = verify_small_n(suite, n_max);
      for (const auto& c : checks) {
        std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.property << ": " << c.detail << "\n";
      }
      return all_passed(checks) ? 0 : 2;
    }

    // bounds
    static const BoundKind kKinds[] = {
        BoundKind::GenieDeletions,          BoundKind::GenieBlock,
        BoundKind::GenieTranslocation,      BoundKind::GenieTransposition,
        BoundKind::DeletionsForwardExpectation, BoundKind::DeletionsFeedbackCap,
        BoundKind::BlockForwardExpectation, BoundKind::BlockFeedbackExpectation,
        BoundKind::MoveForwardExpectation,  BoundKind::MoveFeedbackExpectation,
        BoundKind::AnchorTranspositionRounds, BoundKind::MoveRound1Probability,
    };
    std::cout.precision(10);
    std::cout << "n=" << bn << " d=" << bd << "\n";
    for (const BoundKind k : kKinds) {
      const BoundValue v = bound(k, bn, bd);
      std::cout << to_string(k) << " mean=" << v.mean;
      if (v.variance) std::cout << " variance=" << *v.variance;
      std::cout << "\n";
    }
    std::cout << "block_forward_branch_mix mean=" << block_forward_branch_mix(bn, bd) << "\n";
    return 0;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
}

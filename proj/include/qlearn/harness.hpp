#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qlearn {

// One experiment request: what to run and how to report it. The same keys
// are accepted as CLI flags and in a JSON config file (CLI wins on overlap).
// Defaults: learner=quantum, k=2, m=6, l=2, trials=200, seed=1, format=csv.
struct ExperimentConfig {
  std::string kind;          // gamma | learn | partition | simon-gap | pac-formulas | bench
  std::string class_spec;    // for gamma / learn / partition
  std::string learner = "quantum";
  unsigned k = 2;            // partition piece count
  unsigned m = 6;            // simon-gap register width
  unsigned l = 2;            // simon-gap hidden dimension
  uint64_t trials = 200;
  uint64_t seed = 1;
  std::string out_path;      // empty: stdout only
  std::string format = "csv";  // csv | json
};

// Parses the JSON body {"kind": ..., "class": ..., "learner": ..., "k": ...,
// "m": ..., "l": ..., "trials": ..., "seed": ..., "out": ..., "format": ...}.
// Unknown keys are rejected.
ExperimentConfig config_from_json(const std::string& text);

// A finished report: fixed column order, every cell pre-formatted, so the
// serialized forms are byte-stable for a given seed. `all_pass` folds the
// pass/fail cells (empty cells are informational and do not count).
struct ReportTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  bool all_pass = true;
};

// Runs one experiment. Deterministic given cfg.seed. Throws
// std::invalid_argument on bad specs and propagates size-cap errors from the
// modules it drives.
ReportTable run_experiment(const ExperimentConfig& cfg);

// Fixed fixture sweep: gamma spot values, quantum-vs-halving query counts
// with the R/(nQ + Q^2) ratio column, a partition round trip, and the
// hidden-subspace gap at m=8, l=5.
ReportTable bench_suite(uint64_t seed);

std::string to_csv(const ReportTable& table);
std::string to_json_lines(const ReportTable& table);

}  // namespace qlearn

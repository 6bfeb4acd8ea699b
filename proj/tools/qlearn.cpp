#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "qlearn/harness.hpp"

using qlearn::ExperimentConfig;
using qlearn::ReportTable;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"query-complexity laboratory for learning boolean concept classes"};
  app.require_subcommand(1);

  // one shared option set; only the chosen subcommand parses it
  std::string config_path, class_spec, learner, out_path, format;
  unsigned k = 0, m = 0, l = 0;
  uint64_t trials = 0, seed = 0;

  struct KindDesc {
    const char* name;
    const char* help;
  };
  const KindDesc kinds[] = {
      {"gamma", "exact minority-fraction invariant of a class"},
      {"learn", "run a learner over seeded trials and report query statistics"},
      {"partition", "build a k-piece partition and locate every concept"},
      {"simon-gap", "hidden-subspace learning vs the classical collision baseline"},
      {"pac-formulas", "closed-form vs state-vector checks for the sample-size bounds"},
      {"bench", "fixed fixture sweep with comparison columns"},
  };
  for (const KindDesc& kd : kinds) {
    CLI::App* sub = app.add_subcommand(kd.name, kd.help);
    sub->add_option("--config", config_path, "JSON config file; flags override it");
    sub->add_option("--class", class_spec,
                    "class spec, e.g. parity:n=6, delta:n=5, nestedbv:n=16,d=2, "
                    "prefparity:n=5,k=2, rand:n=4,size=12,seed=1, json:PATH");
    sub->add_option("--learner", learner, "quantum | halving | nestedbv")
        ->check(CLI::IsMember({"quantum", "halving", "nestedbv"}));
    sub->add_option("--k", k, "partition piece count");
    sub->add_option("--m", m, "register width for simon-gap");
    sub->add_option("--l", l, "hidden subspace dimension for simon-gap");
    sub->add_option("--trials", trials, "Monte-Carlo trial count");
    sub->add_option("--seed", seed, "master seed; all randomness derives from it");
    sub->add_option("--out", out_path, "also write the report to this file");
    sub->add_option("--format", format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
  }

  CLI11_PARSE(app, argc, argv);
  CLI::App* sub = app.get_subcommands().front();

  ExperimentConfig cfg;
  try {
    if (sub->count("--config")) cfg = qlearn::config_from_json(slurp(config_path));
    cfg.kind = sub->get_name();
    if (sub->count("--class")) cfg.class_spec = class_spec;
    if (sub->count("--learner")) cfg.learner = learner;
    if (sub->count("--k")) cfg.k = k;
    if (sub->count("--m")) cfg.m = m;
    if (sub->count("--l")) cfg.l = l;
    if (sub->count("--trials")) cfg.trials = trials;
    if (sub->count("--seed")) cfg.seed = seed;
    if (sub->count("--out")) cfg.out_path = out_path;
    if (sub->count("--format")) cfg.format = format;

    ReportTable table = qlearn::run_experiment(cfg);
    std::string text =
        cfg.format == "json" ? qlearn::to_json_lines(table) : qlearn::to_csv(table);
    if (!cfg.out_path.empty()) {
      std::ofstream out(cfg.out_path, std::ios::binary);
      if (!out) throw std::runtime_error("cannot write " + cfg.out_path);
      out << text;
    }
    std::cout << text;
    std::cerr << (table.all_pass ? "all checks passed" : "CHECK FAILURES PRESENT")
              << " (" << table.rows.size() << " rows)\n";
    return table.all_pass ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}

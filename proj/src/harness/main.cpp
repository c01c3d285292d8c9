#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "clup/error.hpp"
#include "clup/harness.hpp"

using namespace clup;

int main(int argc, char** argv) {
  CLI::App app{"Sparse regression theory solver and simulation harness"};
  app.require_subcommand(1);

  // Flag values are kept as strings and applied after the config file so that flags win.
  std::string config_path;
  std::map<std::string, std::string> values;
  auto add_flags = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "key=value file; flags override it");
    static const std::pair<const char*, const char*> opts[] = {
        {"alpha", "measurement ratio m/n"},
        {"beta", "sparsity ratio k/n"},
        {"sigma", "single noise level"},
        {"inv-sigma-list", "comma-separated 1/sigma values"},
        {"rsc", "radius scale r_sc"},
        {"cl1", "l1 weight c_l1"},
        {"n", "problem size"},
        {"trials", "Monte Carlo trials"},
        {"seed", "base seed"},
        {"max-iter", "iteration budget"},
        {"engine", "largescale | basic"},
        {"method", "socp | lasso | idealml"},
        {"model", "clup | socp"},
        {"out", "output CSV path; JSON goes next to it"}};
    for (const auto& [name, help] : opts) sub->add_option(std::string("--") + name, values[name], help);
  };

  harness::ExperimentConfig cfg;
  struct Leaf {
    CLI::App* app;
    harness::Mode mode;
    harness::ReproTable table;
  };
  std::vector<Leaf> leaves;
  auto leaf = [&](CLI::App* parent, const char* name, const char* help, harness::Mode m,
                  harness::ReproTable t = harness::ReproTable::Table1) {
    CLI::App* s = parent->add_subcommand(name, help);
    add_flags(s);
    leaves.push_back({s, m, t});
  };

  CLI::App* theory = app.add_subcommand("theory", "deterministic characterisations");
  theory->require_subcommand(1);
  leaf(theory, "stationary", "stationary point per sigma", harness::Mode::TheoryStationary);
  leaf(theory, "tune", "optimal (r_sc, c_l1) per sigma", harness::Mode::TheoryTune);
  leaf(theory, "interval", "delta interval per sigma", harness::Mode::TheoryInterval);
  leaf(theory, "limits", "small-noise limits", harness::Mode::TheoryLimits);
  leaf(theory, "pt", "phase transition", harness::Mode::TheoryPt);
  CLI::App* sim = app.add_subcommand("sim", "Monte Carlo simulation");
  sim->require_subcommand(1);
  leaf(sim, "clup", "contraction trials", harness::Mode::SimClup);
  leaf(sim, "baseline", "SOCP, LASSO or ideal ML trials", harness::Mode::SimBaseline);
  CLI::App* repro = app.add_subcommand("repro", "regenerate a table");
  repro->require_subcommand(1);
  leaf(repro, "table1", "tuned knobs", harness::Mode::Repro, harness::ReproTable::Table1);
  leaf(repro, "table2", "fixed r_sc = 2", harness::Mode::Repro, harness::ReproTable::Table2);
  leaf(repro, "table3", "theory and simulation", harness::Mode::Repro, harness::ReproTable::Table3);
  leaf(repro, "table4", "intervals", harness::Mode::Repro, harness::ReproTable::Table4);
  leaf(repro, "figure-data", "delta curves", harness::Mode::Repro, harness::ReproTable::FigureData);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    for (const auto& l : leaves) {
      if (!l.app->parsed()) continue;
      if (!config_path.empty()) {
        std::ifstream f(config_path);
        if (!f) throw Error(ErrorKind::Io, "cannot open " + config_path);
        harness::apply_config(cfg, f);
      }
      cfg.mode = l.mode;
      cfg.table = l.table;
      static const std::pair<const char*, const char*> keys[] = {
          {"alpha", "alpha"}, {"beta", "beta"},     {"sigma", "sigma"},   {"inv-sigma-list", "inv_sigma_list"},
          {"rsc", "r_sc"},    {"cl1", "c_l1"},      {"n", "n"},           {"trials", "trials"},
          {"seed", "seed"},   {"max-iter", "max_iter"}, {"engine", "engine"}, {"method", "method"},
          {"model", "model"}, {"out", "output_path"}};
      for (const auto& [flag, key] : keys) {
        if (l.app->count(std::string("--") + flag) > 0) harness::apply_key(cfg, key, values[flag]);
      }
      const auto out = harness::run(cfg);
      harness::emit(cfg, out, std::cout);
      return 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "clup: %s\n", e.what());
    return 1;
  }
  return 1;
}

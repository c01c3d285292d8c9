#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "clup/instances.hpp"
#include "clup/theory.hpp"

namespace clup::harness {

enum class Mode {
  TheoryStationary,
  TheoryTune,
  TheoryInterval,
  TheoryLimits,
  TheoryPt,
  SimClup,
  SimBaseline,
  Repro,
};
enum class Engine { LargeScale, Basic };
enum class Method { Socp, Lasso, IdealMl };
enum class ReproTable { Table1, Table2, Table3, Table4, FigureData };

struct ExperimentConfig {
  Mode mode = Mode::TheoryStationary;
  double alpha = 0.5;
  double beta = 0.1625;
  std::vector<double> inv_sigma_list;  // empty: mode default
  double r_sc = 2.0;
  double c_l1 = 4.5;
  int n = 2000;
  int trials = 20;
  std::uint64_t base_seed = 1;
  int max_iter = 3000;
  Engine engine = Engine::LargeScale;
  Method method = Method::Socp;
  theory::Model model = theory::Model::Clup;
  ReproTable table = ReproTable::Table1;
  std::string output_path;  // empty: CSV to stdout, no JSON
};

/// Reads `key=value` lines ('#' starts a comment) into cfg.
void apply_config(ExperimentConfig& cfg, std::istream& in);
void apply_key(ExperimentConfig& cfg, const std::string& key, const std::string& value);

/// Fills mode defaults and rejects invalid settings before any computation.
ExperimentConfig resolve(ExperimentConfig cfg);

using Cell = std::variant<double, long, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct Output {
  Table table;
  Table trials;       // per-trial rows when the main table holds aggregates
  std::string json;   // summary, derived from the tables
};

Output run(const ExperimentConfig& cfg);

/// Writes CSV and, with an output path, JSON (and the trial table when present).
void emit(const ExperimentConfig& cfg, const Output& out, std::ostream& fallback);

void write_csv(const Table& t, std::ostream& out);

struct Aggregate {
  double mean = 0.0;
  double median = 0.0;
  double stddev = 0.0;
  int count = 0;
};

/// Order-independent: sorts a copy before reducing.
Aggregate aggregate(std::vector<double> v);

/// min(CLUP_THREADS, hardware threads, cap), at least 1.
int worker_count(int cap);

/// Seeds of trial t: the instance uses (base, t), the start vector (base ^ kStartSalt, t).
inline constexpr std::uint64_t kStartSalt = 0x9e3779b97f4a7c15ULL;

}  // namespace clup::harness

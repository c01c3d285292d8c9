#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <sstream>

#include "clup/error.hpp"
#include "clup/harness.hpp"

namespace clup::harness {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  double d = 0.0;
  try {
    d = std::stod(v, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != v.size()) throw Error(ErrorKind::Config, key + ": not a number: '" + v + "'");
  return d;
}

template <class Int>
Int to_int(const std::string& key, const std::string& v) {
  Int x{};
  const auto r = std::from_chars(v.data(), v.data() + v.size(), x);
  if (r.ec != std::errc{} || r.ptr != v.data() + v.size()) {
    throw Error(ErrorKind::Config, key + ": not an integer: '" + v + "'");
  }
  return x;
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(to_double(key, item));
  }
  return out;
}

Mode to_mode(const std::string& v) {
  static const std::pair<const char*, Mode> names[] = {
      {"theory-stationary", Mode::TheoryStationary}, {"theory-tune", Mode::TheoryTune},
      {"theory-interval", Mode::TheoryInterval},     {"theory-limits", Mode::TheoryLimits},
      {"theory-pt", Mode::TheoryPt},                 {"sim-clup", Mode::SimClup},
      {"sim-baseline", Mode::SimBaseline},           {"repro", Mode::Repro}};
  for (const auto& [s, m] : names) {
    if (v == s) return m;
  }
  throw Error(ErrorKind::Config, "mode: unknown value '" + v + "'");
}

ReproTable to_table(const std::string& v) {
  if (v == "table1") return ReproTable::Table1;
  if (v == "table2") return ReproTable::Table2;
  if (v == "table3") return ReproTable::Table3;
  if (v == "table4") return ReproTable::Table4;
  if (v == "figure-data") return ReproTable::FigureData;
  throw Error(ErrorKind::Config, "table: unknown value '" + v + "'");
}

}  // namespace

void apply_key(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  if (key == "mode") {
    cfg.mode = to_mode(v);
  } else if (key == "alpha") {
    cfg.alpha = to_double(key, v);
  } else if (key == "beta") {
    cfg.beta = to_double(key, v);
  } else if (key == "sigma") {
    const double s = to_double(key, v);
    if (!(s > 0.0)) throw Error(ErrorKind::Config, "sigma must be positive");
    cfg.inv_sigma_list = {1.0 / s};
  } else if (key == "inv_sigma_list" || key == "sigma_list") {
    cfg.inv_sigma_list = to_list(key, v);
    if (key == "sigma_list") {
      for (double& s : cfg.inv_sigma_list) {
        if (!(s > 0.0)) throw Error(ErrorKind::Config, "sigma must be positive");
        s = 1.0 / s;
      }
    }
  } else if (key == "r_sc" || key == "rsc") {
    cfg.r_sc = to_double(key, v);
  } else if (key == "c_l1" || key == "cl1") {
    cfg.c_l1 = to_double(key, v);
  } else if (key == "n") {
    cfg.n = to_int<int>(key, v);
  } else if (key == "trials") {
    cfg.trials = to_int<int>(key, v);
  } else if (key == "base_seed" || key == "seed") {
    cfg.base_seed = to_int<std::uint64_t>(key, v);
  } else if (key == "max_iter") {
    cfg.max_iter = to_int<int>(key, v);
  } else if (key == "engine") {
    if (v == "largescale") cfg.engine = Engine::LargeScale;
    else if (v == "basic") cfg.engine = Engine::Basic;
    else throw Error(ErrorKind::Config, "engine: unknown value '" + v + "'");
  } else if (key == "method") {
    if (v == "socp") cfg.method = Method::Socp;
    else if (v == "lasso") cfg.method = Method::Lasso;
    else if (v == "idealml") cfg.method = Method::IdealMl;
    else throw Error(ErrorKind::Config, "method: unknown value '" + v + "'");
  } else if (key == "model") {
    if (v == "clup") cfg.model = theory::Model::Clup;
    else if (v == "socp") cfg.model = theory::Model::Socp;
    else throw Error(ErrorKind::Config, "model: unknown value '" + v + "'");
  } else if (key == "table") {
    cfg.table = to_table(v);
  } else if (key == "output_path" || key == "out") {
    cfg.output_path = v;
  } else {
    throw Error(ErrorKind::Config, "unknown key '" + key + "'");
  }
}

void apply_config(ExperimentConfig& cfg, std::istream& in) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorKind::Config, "line " + std::to_string(lineno) + ": expected key=value");
    }
    apply_key(cfg, trim(line.substr(0, eq)), line.substr(eq + 1));
  }
}

ExperimentConfig resolve(ExperimentConfig cfg) {
  if (cfg.inv_sigma_list.empty()) {
    auto range = [](int lo, int hi) {
      std::vector<double> v;
      for (int i = lo; i <= hi; ++i) v.push_back(i);
      return v;
    };
    if (cfg.mode == Mode::Repro) {
      switch (cfg.table) {
        case ReproTable::Table1: cfg.inv_sigma_list = range(6, 15), cfg.inv_sigma_list.push_back(100); break;
        case ReproTable::Table2: cfg.inv_sigma_list = range(6, 15); break;
        case ReproTable::Table3: cfg.inv_sigma_list = range(7, 15); break;
        case ReproTable::Table4: cfg.inv_sigma_list = range(8, 15); break;
        case ReproTable::FigureData: cfg.inv_sigma_list = range(6, 15); break;
      }
    } else {
      cfg.inv_sigma_list = {10.0};
    }
  }
  for (double v : cfg.inv_sigma_list) {
    if (!(v > 0.0) || !std::isfinite(v)) throw Error(ErrorKind::Config, "1/sigma values must be positive");
  }
  if (!(0.0 < cfg.beta && cfg.beta < cfg.alpha && cfg.alpha <= 1.0)) {
    throw Error(ErrorKind::Config, "requires 0 < beta < alpha <= 1");
  }
  if (!(cfg.r_sc > 0.0) || !(cfg.c_l1 > 0.0)) throw Error(ErrorKind::Config, "r_sc and c_l1 must be positive");
  if (cfg.trials < 1) throw Error(ErrorKind::Config, "trials must be at least 1");
  if (cfg.n < 10) throw Error(ErrorKind::Config, "n must be at least 10");
  if (cfg.max_iter < 1) throw Error(ErrorKind::Config, "max_iter must be positive");
  return cfg;
}

}  // namespace clup::harness

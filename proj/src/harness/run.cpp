#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "clup/error.hpp"
#include "clup/harness.hpp"
#include "clup/interval.hpp"
#include "clup/solvers.hpp"

namespace clup::harness {

namespace {

using nlohmann::ordered_json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const char* mode_name(Mode m) {
  switch (m) {
    case Mode::TheoryStationary: return "theory-stationary";
    case Mode::TheoryTune: return "theory-tune";
    case Mode::TheoryInterval: return "theory-interval";
    case Mode::TheoryLimits: return "theory-limits";
    case Mode::TheoryPt: return "theory-pt";
    case Mode::SimClup: return "sim-clup";
    case Mode::SimBaseline: return "sim-baseline";
    case Mode::Repro: return "repro";
  }
  return "?";
}

const char* table_name(ReproTable t) {
  switch (t) {
    case ReproTable::Table1: return "table1";
    case ReproTable::Table2: return "table2";
    case ReproTable::Table3: return "table3";
    case ReproTable::Table4: return "table4";
    case ReproTable::FigureData: return "figure-data";
  }
  return "?";
}

const char* method_name(Method m) {
  switch (m) {
    case Method::Socp: return "socp";
    case Method::Lasso: return "lasso";
    case Method::IdealMl: return "idealml";
  }
  return "?";
}

std::string seed_text(std::uint64_t v) { return std::to_string(v); }

TheoryPoint point(const ExperimentConfig& cfg, double inv_sigma, double c_l1) {
  TheoryPoint tp;
  tp.alpha = cfg.alpha;
  tp.beta = cfg.beta;
  tp.sigma = 1.0 / inv_sigma;
  tp.alpha_w = theory::phase_transition_alpha_w(cfg.beta);
  tp.r_sc = cfg.r_sc;
  tp.c_l1 = c_l1;
  return tp;
}

double table2_cl1(double inv_sigma) {
  static const std::map<int, double> knobs = {{6, 5.05},  {7, 4.54},  {8, 4.37},  {9, 4.27},  {10, 4.22},
                                              {11, 4.17}, {12, 4.14}, {13, 4.12}, {14, 4.10}, {15, 4.09}};
  const int key = static_cast<int>(std::lround(inv_sigma));
  const auto it = knobs.find(key);
  if (it == knobs.end() || std::abs(inv_sigma - key) > 1e-12) {
    throw Error(ErrorKind::Config, "table2 has knobs only for 1/sigma in 6..15");
  }
  return it->second;
}

double table3_cl1(double inv_sigma, double c_l1) { return std::abs(inv_sigma - 7.0) < 1e-12 ? 5.0 : c_l1; }

// ---------------------------------------------------------------------------
// Monte Carlo

struct TrialTask {
  int trial = 0;
  numerics::RngSeed instance_seed;
  numerics::RngSeed start_seed;
};

/// Runs body(task) for every trial on a pool; results are stored by trial index.
template <class Row>
std::vector<Row> monte_carlo(int trials, std::uint64_t base, const std::function<Row(const TrialTask&)>& body) {
  std::vector<Row> out(trials);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int t; (t = next.fetch_add(1)) < trials;) {
      const auto ut = static_cast<std::uint64_t>(t);
      out[t] = body({t, {base, ut}, {base ^ kStartSalt, ut}});
    }
  };
  const int w = worker_count(trials);
  std::vector<std::thread> pool;
  for (int i = 1; i < w; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return out;
}

const std::vector<std::string> kClupTrialColumns = {
    "inv_sigma", "sigma",      "trial",   "seed_base", "seed_stream", "start_seed_base", "c_l1", "ok",
    "converged", "iterations", "last_step", "c1",      "c2",          "delta",           "residual_norm", "xi_ls",
    "error"};

struct Knobs {
  double c_l1 = 0.0;
  theory::StationarySolution sol;
};

/// One row per (sigma, trial); each trial draws one instance and reuses it and its Gram across sigma.
Table clup_trials(const ExperimentConfig& cfg, const std::vector<Knobs>& knobs) {
  const auto& inv = cfg.inv_sigma_list;
  using Rows = std::vector<std::vector<Cell>>;
  auto body = [&](const TrialTask& task) {
    Rows rows;
    std::optional<ProblemInstance> base;
    Eigen::MatrixXd G;
    for (std::size_t j = 0; j < inv.size(); ++j) {
      const double sigma = 1.0 / inv[j];
      std::vector<Cell> row = {inv[j],
                               sigma,
                               static_cast<long>(task.trial),
                               seed_text(task.instance_seed.base),
                               seed_text(task.instance_seed.stream),
                               seed_text(task.start_seed.base),
                               knobs[j].c_l1};
      try {
        if (!base) {
          base = generate(cfg.n, cfg.alpha, cfg.beta, sigma, task.instance_seed);
          if (cfg.engine == Engine::LargeScale) G = solvers::gram(base->A);
        }
        const ProblemInstance inst = with_sigma(*base, sigma);
        solvers::ClupResult res;
        if (cfg.engine == Engine::LargeScale) {
          solvers::ClupParams p;
          p.r_sc = cfg.r_sc;
          p.c_l1_theory = knobs[j].c_l1;
          p.gamma1_hat = knobs[j].sol.dv.gamma1;
          p.c2_hat = knobs[j].sol.dv.c2;
          p.max_iter = cfg.max_iter;
          p.trace_stride = cfg.max_iter;
          p.seed = task.start_seed;
          res = solvers::clup_largescale(inst, G, p);
        } else {
          res = solvers::clup_basic(inst, cfg.r_sc, knobs[j].c_l1, std::min(cfg.max_iter, 200), task.start_seed);
        }
        const Metrics mt = metrics(inst, res.x_hat);
        row.insert(row.end(), {1L, static_cast<long>(res.converged), static_cast<long>(res.iterations),
                               res.last_step, mt.c1, mt.c2, mt.delta, mt.residual_norm, res.trace.back().xi_ls,
                               std::string()});
      } catch (const std::exception& e) {
        row.insert(row.end(), {0L, 0L, 0L, kNaN, kNaN, kNaN, kNaN, kNaN, kNaN, std::string(e.what())});
      }
      rows.push_back(std::move(row));
    }
    return rows;
  };
  const auto per_trial = monte_carlo<Rows>(cfg.trials, cfg.base_seed, body);
  Table t{kClupTrialColumns, {}};
  for (std::size_t j = 0; j < inv.size(); ++j) {
    for (const auto& rows : per_trial) t.rows.push_back(rows[j]);
  }
  return t;
}

std::vector<Knobs> clup_knobs(const ExperimentConfig& cfg, const std::function<double(double)>& c_l1_of) {
  std::vector<Knobs> out;
  for (double inv : cfg.inv_sigma_list) {
    const double c = c_l1_of(inv);
    out.push_back({c, theory::solve_stationary(point(cfg, inv, c), theory::Model::Clup)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Aggregation over table rows

std::size_t column(const Table& t, const std::string& name) {
  const auto it = std::find(t.columns.begin(), t.columns.end(), name);
  if (it == t.columns.end()) throw Error(ErrorKind::Config, "missing column " + name);
  return static_cast<std::size_t>(it - t.columns.begin());
}

double as_double(const Cell& c) {
  if (const double* d = std::get_if<double>(&c)) return *d;
  if (const long* l = std::get_if<long>(&c)) return static_cast<double>(*l);
  return kNaN;
}

struct Group {
  double inv_sigma = 0.0;
  int failures = 0;
  int converged = 0;
  std::map<std::string, Aggregate> stats;
};

/// Per-sigma aggregates of `fields` over the rows with ok = 1.
std::vector<Group> group_stats(const Table& t, const std::vector<std::string>& fields) {
  const std::size_t ci = column(t, "inv_sigma"), ok = column(t, "ok");
  const auto conv = std::find(t.columns.begin(), t.columns.end(), "converged");
  std::vector<Group> groups;
  std::vector<double> order;
  for (const auto& r : t.rows) {
    const double inv = as_double(r[ci]);
    if (std::find(order.begin(), order.end(), inv) == order.end()) order.push_back(inv);
  }
  for (double inv : order) {
    Group g;
    g.inv_sigma = inv;
    std::map<std::string, std::vector<double>> vals;
    for (const auto& r : t.rows) {
      if (as_double(r[ci]) != inv) continue;
      if (as_double(r[ok]) != 1.0) {
        ++g.failures;
        continue;
      }
      if (conv != t.columns.end() && as_double(r[conv - t.columns.begin()]) == 1.0) ++g.converged;
      for (const auto& f : fields) vals[f].push_back(as_double(r[column(t, f)]));
    }
    for (const auto& f : fields) g.stats[f] = aggregate(vals[f]);
    groups.push_back(std::move(g));
  }
  return groups;
}

ordered_json finite_or_null(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

ordered_json groups_json(const std::vector<Group>& groups) {
  ordered_json arr = ordered_json::array();
  for (const auto& g : groups) {
    ordered_json o;
    o["inv_sigma"] = g.inv_sigma;
    o["failures"] = g.failures;
    o["converged"] = g.converged;
    for (const auto& [name, a] : g.stats) {
      o[name] = {{"count", a.count},
                 {"mean", finite_or_null(a.mean)},
                 {"median", finite_or_null(a.median)},
                 {"std", finite_or_null(a.stddev)}};
    }
    arr.push_back(std::move(o));
  }
  return arr;
}

ordered_json rows_json(const Table& t) {
  ordered_json arr = ordered_json::array();
  for (const auto& r : t.rows) {
    ordered_json o;
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
      std::visit(
          [&](const auto& v) {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, double>) o[t.columns[i]] = finite_or_null(v);
            else o[t.columns[i]] = v;
          },
          r[i]);
    }
    arr.push_back(std::move(o));
  }
  return arr;
}

ordered_json config_json(const ExperimentConfig& cfg) {
  ordered_json c;
  c["mode"] = mode_name(cfg.mode);
  if (cfg.mode == Mode::Repro) c["table"] = table_name(cfg.table);
  c["alpha"] = cfg.alpha;
  c["beta"] = cfg.beta;
  c["alpha_w"] = theory::phase_transition_alpha_w(cfg.beta);
  c["inv_sigma_list"] = cfg.inv_sigma_list;
  c["r_sc"] = cfg.r_sc;
  c["c_l1"] = cfg.c_l1;
  c["n"] = cfg.n;
  c["trials"] = cfg.trials;
  c["base_seed"] = cfg.base_seed;
  c["max_iter"] = cfg.max_iter;
  c["engine"] = cfg.engine == Engine::LargeScale ? "largescale" : "basic";
  c["method"] = method_name(cfg.method);
  c["model"] = cfg.model == theory::Model::Clup ? "clup" : "socp";
  return c;
}

ordered_json seed_policy(const ExperimentConfig& cfg) {
  return {{"instance", "(base_seed, trial)"},
          {"start_vector", "(base_seed xor " + std::to_string(kStartSalt) + ", trial)"},
          {"start_seed_base", cfg.base_seed ^ kStartSalt},
          {"sigma_coupling", "each trial reuses one instance (A, x_sol, v) across all sigma"}};
}

// ---------------------------------------------------------------------------
// Modes

Output theory_stationary(const ExperimentConfig& cfg, const std::function<double(double)>& c_l1_of) {
  Output out;
  out.table.columns = {"inv_sigma", "sigma", "r_sc", "c_l1", "gamma1", "nu", "c2", "c1", "xi", "delta", "residual"};
  for (double inv : cfg.inv_sigma_list) {
    const double c = c_l1_of(inv);
    const auto s = theory::solve_stationary(point(cfg, inv, c), cfg.model);
    out.table.rows.push_back(
        {inv, 1.0 / inv, cfg.r_sc, c, s.dv.gamma1, s.dv.nu, s.dv.c2, s.dv.c1, s.xi, s.delta, s.residual});
  }
  return out;
}

Output theory_tune(const ExperimentConfig& cfg) {
  Output out;
  out.table.columns = {"inv_sigma", "sigma", "r_sc", "c_l1", "gamma1", "nu", "c2", "c1", "xi", "delta",
                       "grid_points", "grid_failures"};
  for (double inv : cfg.inv_sigma_list) {
    const auto t = theory::tune_very_ultimate(cfg.alpha, cfg.beta, 1.0 / inv);
    out.table.rows.push_back({inv, 1.0 / inv, t.r_sc, t.c_l1, t.sol.dv.gamma1, t.sol.dv.nu, t.sol.dv.c2,
                              t.sol.dv.c1, t.sol.xi, t.sol.delta, static_cast<long>(t.grid_points),
                              static_cast<long>(t.grid_failures)});
  }
  return out;
}

Output theory_interval(const ExperimentConfig& cfg, const std::function<double(double)>& c_l1_of) {
  Output out;
  out.table.columns = {"inv_sigma", "sigma",    "r_sc",      "c_l1",         "xi_ub",
                       "delta_lb",  "delta_ub", "crossings", "delta_stationary"};
  for (double inv : cfg.inv_sigma_list) {
    const double c = c_l1_of(inv);
    const TheoryPoint tp = point(cfg, inv, c);
    const auto s = theory::solve_stationary(tp);
    const auto r = interval::delta_interval(tp);
    out.table.rows.push_back(
        {inv, 1.0 / inv, cfg.r_sc, c, r.xi_ub, r.delta_lb, r.delta_ub, static_cast<long>(r.crossings), s.delta});
  }
  return out;
}

Output theory_limits(const ExperimentConfig& cfg) {
  const double aw = theory::phase_transition_alpha_w(cfg.beta);
  const auto k = theory::sigma0_limits(cfg.alpha, cfg.beta, aw);
  const auto ml = theory::ideal_ml_theory(cfg.alpha, cfg.beta);
  Output out;
  out.table.columns = {"alpha", "beta", "alpha_w", "r_sc_opt", "c_l1_opt", "delta_over_sigma", "ideal_ml_over_sigma",
                       "r_sc", "c_l1", "limit_ratio"};
  out.table.rows.push_back({cfg.alpha, cfg.beta, aw, k.r_sc_opt, k.c_l1_opt, k.delta_ratio, ml.delta_over_sigma,
                            cfg.r_sc, cfg.c_l1, theory::limit_mse_ratio(cfg.alpha, cfg.beta, cfg.r_sc, cfg.c_l1)});
  return out;
}

Output theory_pt(const ExperimentConfig& cfg) {
  const double aw = theory::phase_transition_alpha_w(cfg.beta);
  Output out;
  out.table.columns = {"alpha", "beta", "alpha_w", "pt_residual", "plain_cl1", "plain_delta_over_sigma"};
  out.table.rows.push_back({cfg.alpha, cfg.beta, aw, theory::phase_transition_residual(aw, cfg.beta),
                            theory::plain_cl1(aw, cfg.beta), theory::plain_worst_mse(cfg.alpha, aw, 1.0)});
  return out;
}

Output sim_clup(const ExperimentConfig& cfg) {
  const auto knobs = clup_knobs(cfg, [&](double) { return cfg.c_l1; });
  Output out;
  out.table = clup_trials(cfg, knobs);
  return out;
}

Output sim_baseline(const ExperimentConfig& cfg) {
  const double aw = theory::phase_transition_alpha_w(cfg.beta);
  const double c = theory::plain_cl1(aw, cfg.beta);
  const auto& inv = cfg.inv_sigma_list;
  using Rows = std::vector<std::vector<Cell>>;
  auto body = [&](const TrialTask& task) {
    Rows rows;
    std::optional<ProblemInstance> base;
    for (double s : inv) {
      const double sigma = 1.0 / s;
      std::vector<Cell> row = {s,
                               sigma,
                               static_cast<long>(task.trial),
                               seed_text(task.instance_seed.base),
                               seed_text(task.instance_seed.stream),
                               std::string(method_name(cfg.method))};
      try {
        if (!base) base = generate(cfg.n, cfg.alpha, cfg.beta, sigma, task.instance_seed);
        const ProblemInstance inst = with_sigma(*base, sigma);
        Eigen::VectorXd x;
        switch (cfg.method) {
          case Method::Socp:
            x = solvers::socp_linear(inst, Eigen::VectorXd::Zero(inst.n), c, solvers::r_socp(inst, aw));
            break;
          case Method::Lasso: x = solvers::lasso_solve(inst, c); break;
          case Method::IdealMl: x = solvers::ideal_ml_estimate(inst); break;
        }
        const Metrics mt = metrics(inst, x);
        row.insert(row.end(), {1L, mt.c1, mt.c2, mt.delta, mt.delta / sigma, mt.residual_norm, std::string()});
      } catch (const std::exception& e) {
        row.insert(row.end(), {0L, kNaN, kNaN, kNaN, kNaN, kNaN, std::string(e.what())});
      }
      rows.push_back(std::move(row));
    }
    return rows;
  };
  const auto per_trial = monte_carlo<Rows>(cfg.trials, cfg.base_seed, body);
  Output out;
  out.table.columns = {"inv_sigma", "sigma", "trial",    "seed_base",      "seed_stream", "method", "ok",
                       "c1",        "c2",    "delta",    "delta_over_sigma", "residual_norm", "error"};
  for (std::size_t j = 0; j < inv.size(); ++j) {
    for (const auto& rows : per_trial) out.table.rows.push_back(rows[j]);
  }
  return out;
}

Output repro_table1(const ExperimentConfig& cfg) {
  Output out;
  out.table.columns = {"row", "inv_sigma", "sigma", "r_sc", "c_l1", "c2", "c1", "xi", "delta", "delta_over_sigma"};
  for (double inv : cfg.inv_sigma_list) {
    const auto t = theory::tune_very_ultimate(cfg.alpha, cfg.beta, 1.0 / inv);
    out.table.rows.push_back({std::string("sigma"), inv, 1.0 / inv, t.r_sc, t.c_l1, t.sol.dv.c2, t.sol.dv.c1,
                              t.sol.xi, t.sol.delta, t.sol.delta * inv});
  }
  const auto k = theory::sigma0_limits(cfg.alpha, cfg.beta, theory::phase_transition_alpha_w(cfg.beta));
  out.table.rows.push_back({std::string("limit"), std::numeric_limits<double>::infinity(), 0.0, k.r_sc_opt,
                            k.c_l1_opt, kNaN, kNaN, kNaN, 0.0, k.delta_ratio});
  return out;
}

Output repro_table3(const ExperimentConfig& cfg) {
  const auto knobs = clup_knobs(cfg, [&](double inv) { return table3_cl1(inv, cfg.c_l1); });
  Output out;
  out.trials = clup_trials(cfg, knobs);
  const std::vector<std::string> fields = {"c2", "c1", "xi_ls", "delta"};
  const auto groups = group_stats(out.trials, fields);
  out.table.columns = {"inv_sigma", "sigma", "r_sc", "c_l1", "gamma1", "c2", "c1", "xi", "delta"};
  for (const auto& f : fields) {
    out.table.columns.push_back("sim_" + f + "_mean");
    out.table.columns.push_back("sim_" + f + "_median");
  }
  out.table.columns.insert(out.table.columns.end(), {"trials_ok", "trials_failed", "trials_converged"});
  for (std::size_t j = 0; j < knobs.size(); ++j) {
    const double inv = cfg.inv_sigma_list[j];
    const auto& s = knobs[j].sol;
    std::vector<Cell> row = {inv, 1.0 / inv, cfg.r_sc, knobs[j].c_l1, s.dv.gamma1, s.dv.c2, s.dv.c1, s.xi, s.delta};
    const Group& g = groups[j];
    for (const auto& f : fields) {
      row.push_back(g.stats.at(f).mean);
      row.push_back(g.stats.at(f).median);
    }
    row.insert(row.end(), {static_cast<long>(g.stats.at("delta").count), static_cast<long>(g.failures),
                           static_cast<long>(g.converged)});
    out.table.rows.push_back(std::move(row));
  }
  return out;
}

Output repro_figure(const ExperimentConfig& cfg) {
  const double aw = theory::phase_transition_alpha_w(cfg.beta);
  const double ml = theory::ideal_ml_theory(cfg.alpha, cfg.beta).delta_over_sigma;
  Output out;
  out.table.columns = {"inv_sigma", "sigma", "lasso_socp", "very_ultimate", "ultimate", "ideal_ml", "interval_lb",
                       "interval_ub"};
  for (double inv : cfg.inv_sigma_list) {
    const double sigma = 1.0 / inv;
    const TheoryPoint tp = point(cfg, inv, cfg.c_l1);
    const double vu = theory::tune_very_ultimate(cfg.alpha, cfg.beta, sigma).sol.delta;
    const double u = theory::solve_stationary(tp).delta;
    double lb = kNaN, ub = kNaN;
    try {
      const auto r = interval::delta_interval(tp);
      lb = r.delta_lb;
      ub = r.delta_ub;
    } catch (const Error&) {
    }
    out.table.rows.push_back({inv, sigma, theory::plain_worst_mse(cfg.alpha, aw, sigma), vu, u, ml * sigma, lb, ub});
  }
  return out;
}

std::string to_csv_text(const Table& t) {
  std::ostringstream ss;
  write_csv(t, ss);
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::Io, "cannot open " + path);
  f << text;
  if (!f) throw Error(ErrorKind::Io, "cannot write " + path);
}

}  // namespace

Aggregate aggregate(std::vector<double> v) {
  Aggregate a;
  a.count = static_cast<int>(v.size());
  if (v.empty()) {
    a.mean = a.median = a.stddev = kNaN;
    return a;
  }
  std::sort(v.begin(), v.end());
  double sum = 0.0;
  for (double x : v) sum += x;
  a.mean = sum / a.count;
  const std::size_t h = v.size() / 2;
  a.median = v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
  double ss = 0.0;
  for (double x : v) ss += (x - a.mean) * (x - a.mean);
  a.stddev = a.count > 1 ? std::sqrt(ss / (a.count - 1)) : 0.0;
  return a;
}

int worker_count(int cap) {
  int w = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (const char* env = std::getenv("CLUP_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) w = std::min<long>(w, v);
  }
  return std::max(1, std::min(w, cap));
}

void write_csv(const Table& t, std::ostream& out) {
  auto field = [&](const Cell& c) {
    if (const double* d = std::get_if<double>(&c)) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", *d);
      out << buf;
    } else if (const long* l = std::get_if<long>(&c)) {
      out << *l;
    } else {
      const auto& s = std::get<std::string>(c);
      if (s.find_first_of(",\"\n") == std::string::npos) {
        out << s;
      } else {
        out << '"';
        for (char ch : s) {
          if (ch == '"') out << '"';
          out << (ch == '\n' ? ' ' : ch);
        }
        out << '"';
      }
    }
  };
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
  out << '\n';
  for (const auto& r : t.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) out << ',';
      field(r[i]);
    }
    out << '\n';
  }
}

Output run(const ExperimentConfig& raw) {
  const ExperimentConfig cfg = resolve(raw);
  const auto fixed = [&](double) { return cfg.c_l1; };
  Output out;
  switch (cfg.mode) {
    case Mode::TheoryStationary: out = theory_stationary(cfg, fixed); break;
    case Mode::TheoryTune: out = theory_tune(cfg); break;
    case Mode::TheoryInterval: out = theory_interval(cfg, fixed); break;
    case Mode::TheoryLimits: out = theory_limits(cfg); break;
    case Mode::TheoryPt: out = theory_pt(cfg); break;
    case Mode::SimClup: out = sim_clup(cfg); break;
    case Mode::SimBaseline: out = sim_baseline(cfg); break;
    case Mode::Repro:
      switch (cfg.table) {
        case ReproTable::Table1: out = repro_table1(cfg); break;
        case ReproTable::Table2: {
          ExperimentConfig c2 = cfg;
          c2.r_sc = 2.0;
          c2.model = theory::Model::Clup;
          out = theory_stationary(c2, table2_cl1);
          break;
        }
        case ReproTable::Table3: out = repro_table3(cfg); break;
        case ReproTable::Table4: out = theory_interval(cfg, fixed); break;
        case ReproTable::FigureData: out = repro_figure(cfg); break;
      }
      break;
  }

  ordered_json j;
  j["config"] = config_json(cfg);
  if (cfg.mode == Mode::SimClup || cfg.mode == Mode::SimBaseline || !out.trials.rows.empty()) {
    j["seeds"] = seed_policy(cfg);
    const Table& per_trial = out.trials.rows.empty() ? out.table : out.trials;
    const std::vector<std::string> fields =
        cfg.mode == Mode::SimBaseline ? std::vector<std::string>{"c1", "c2", "delta", "delta_over_sigma"}
                                      : std::vector<std::string>{"c1", "c2", "delta", "xi_ls", "iterations"};
    const auto groups = group_stats(per_trial, fields);
    int failures = 0;
    for (const auto& g : groups) failures += g.failures;
    j["failures"] = failures;
    j["aggregates"] = groups_json(groups);
  }
  if (out.trials.rows.empty() && cfg.mode != Mode::SimClup && cfg.mode != Mode::SimBaseline) {
    j["rows"] = rows_json(out.table);
  }
  out.json = j.dump(2) + "\n";
  return out;
}

void emit(const ExperimentConfig& cfg, const Output& out, std::ostream& fallback) {
  if (cfg.output_path.empty()) {
    write_csv(out.table, fallback);
    return;
  }
  std::string stem = cfg.output_path;
  if (stem.size() > 4 && stem.compare(stem.size() - 4, 4, ".csv") == 0) stem.resize(stem.size() - 4);
  write_file(cfg.output_path, to_csv_text(out.table));
  write_file(stem + ".json", out.json);
  if (!out.trials.rows.empty()) write_file(stem + "_trials.csv", to_csv_text(out.trials));
}

}  // namespace clup::harness

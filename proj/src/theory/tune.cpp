#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "clup/error.hpp"
#include "clup/numerics.hpp"
#include "clup/theory.hpp"
#include "stationary_internal.hpp"

namespace clup::theory {

namespace {

struct Probe {
  double delta = std::numeric_limits<double>::infinity();
  Eigen::Vector2d u = Eigen::Vector2d::Zero();
  bool ok = false;
};

/// Best admissible root at tp among Newton runs from the candidate starts.
Probe probe(const TheoryPoint& tp, const std::vector<Eigen::Vector2d>& starts) {
  Probe best;
  for (const auto& s : starts) {
    const auto u = detail::newton(tp, Model::Clup, s);
    if (!u) continue;
    const auto r = detail::reduce(tp, Model::Clup, *u);
    if (!detail::admissible(r)) continue;
    const double d = std::sqrt(std::max(0.0, 1.0 - 2.0 * r.dv.c1 + r.dv.c2));
    if (d < best.delta) {
      best.delta = d;
      best.u = *u;
      best.ok = true;
    }
  }
  return best;
}

Probe probe_cold(const TheoryPoint& tp) {
  try {
    const auto sol = solve_stationary(tp, Model::Clup);
    return {sol.delta, detail::to_reduced(sol.dv, tp.sigma), true};
  } catch (const Error&) {
    return {};
  }
}

}  // namespace

TuneResult tune_very_ultimate(double alpha, double beta, double sigma, const TuneOptions& opt) {
  TheoryPoint tp;
  tp.alpha = alpha;
  tp.beta = beta;
  tp.sigma = sigma;
  tp.alpha_w = phase_transition_alpha_w(beta);

  const double c_lo = 1.0 / std::sqrt(beta);
  const int nr = static_cast<int>(std::floor((opt.r_sc_hi - opt.r_sc_lo) / opt.coarse_step + 1e-9)) + 1;
  const int nc = static_cast<int>(std::floor((opt.c_hi - c_lo) / opt.coarse_step + 1e-9)) + 1;

  TuneResult out;
  std::vector<Probe> prev_row(nc);
  Probe best;
  Probe last;
  double best_r = 0.0, best_c = 0.0;

  for (int i = 0; i < nr; ++i) {
    tp.r_sc = opt.r_sc_lo + i * opt.coarse_step;
    std::vector<Probe> row(nc);
    for (int j = 0; j < nc; ++j) {
      tp.c_l1 = c_lo + j * opt.coarse_step;
      std::vector<Eigen::Vector2d> starts;
      if (j > 0 && row[j - 1].ok) starts.push_back(row[j - 1].u);
      if (prev_row[j].ok) starts.push_back(prev_row[j].u);
      if (last.ok) starts.push_back(last.u);
      Probe p = probe(tp, starts);
      if (!last.ok) p = probe_cold(tp);
      ++out.grid_points;
      if (!p.ok) {
        ++out.grid_failures;
        continue;
      }
      row[j] = p;
      last = p;
      if (p.delta < best.delta) {
        best = p;
        best_r = tp.r_sc;
        best_c = tp.c_l1;
      }
    }
    prev_row = std::move(row);
  }
  if (!best.ok) throw Error(ErrorKind::Diverged, "no admissible stationary point on the tuning grid");

  // Coordinate refinement with halving steps.
  for (double h = 0.5 * opt.coarse_step; h >= opt.fine_step * (1.0 - 1e-9); h *= 0.5) {
    bool moved = true;
    while (moved) {
      moved = false;
      const double cand[4][2] = {{best_r - h, best_c}, {best_r + h, best_c},
                                 {best_r, best_c - h}, {best_r, best_c + h}};
      for (const auto& rc : cand) {
        if (rc[1] < c_lo || rc[0] <= 0.0) continue;
        tp.r_sc = rc[0];
        tp.c_l1 = rc[1];
        const Probe p = probe(tp, {best.u});
        if (p.ok && p.delta < best.delta) {
          best = p;
          best_r = rc[0];
          best_c = rc[1];
          moved = true;
          break;
        }
      }
    }
  }

  tp.r_sc = best_r;
  tp.c_l1 = best_c;
  out.r_sc = best_r;
  out.c_l1 = best_c;
  out.sol = detail::finish(tp, Model::Clup, detail::reduce(tp, Model::Clup, best.u));
  return out;
}

LimitKnobs sigma0_limits(double alpha, double beta, double alpha_w) {
  if (!(0.0 < beta && beta < alpha_w && alpha_w < alpha)) {
    throw Error(ErrorKind::Domain, "requires 0 < beta < alpha_w < alpha");
  }
  return {std::sqrt((alpha - beta) / (alpha - alpha_w)), 1.0 / std::sqrt(beta),
          std::sqrt(beta / (alpha - beta))};
}

LimitAux limit_aux(const TheoryPoint& tp, const DualVariables& dv) {
  const double s = tp.sigma;
  const double b = tp.beta;
  const double g = dv.gamma1;
  LimitAux a;
  a.c1s = (1.0 - dv.c1) / (s * s);
  a.c2s = (1.0 - dv.c2) / (s * s);
  a.nu_s = dv.nu * s;
  a.cl1s = (tp.c_l1 * std::sqrt(b) - 1.0) / s;
  a.F = (1.0 - b) * ((g * g + 1.0 / b) * std::erfc(1.0 / (g * std::sqrt(2.0 * b))) -
                     2.0 * g / std::sqrt(b) / std::sqrt(2.0 * numerics::kPi) *
                         std::exp(-1.0 / (2.0 * b * g * g)));
  a.D = 2.0 * b * dv.nu * tp.c_l1 + b * g * g + b * tp.c_l1 * tp.c_l1 + a.F;
  a.A_lim = b * g * g + a.F;
  return a;
}

double limit_mse_ratio(double alpha, double beta, double r_sc, double c_l1) {
  constexpr double s1 = 1e-2;
  constexpr double s2 = 1e-3;
  TheoryPoint tp;
  tp.alpha = alpha;
  tp.beta = beta;
  tp.alpha_w = phase_transition_alpha_w(beta);
  tp.r_sc = r_sc;
  tp.c_l1 = c_l1;
  tp.sigma = s1;
  Bounds bounds = Bounds::Strict;
  StationarySolution a;
  try {
    a = solve_stationary(tp, Model::Clup);
  } catch (const Error&) {
    bounds = Bounds::AllowC2AboveOne;
    a = solve_stationary(tp, Model::Clup, std::nullopt, bounds);
  }
  const StationarySolution b = continue_in_sigma(tp, Model::Clup, a, {s2}, bounds).front();
  const double f1 = a.delta / s1;
  const double f2 = b.delta / s2;
  // delta/sigma = L + k sigma + O(sigma^2)
  return f2 + (f2 - f1) * s2 / (s1 - s2);
}

IdealMlTheory ideal_ml_theory(double alpha, double beta) {
  if (!(0.0 <= beta && beta < alpha)) throw Error(ErrorKind::Domain, "requires beta < alpha");
  IdealMlTheory t;
  t.lambda_sp = beta / alpha;
  const double sl = std::sqrt(t.lambda_sp);
  t.lambda_plus = (1.0 + sl) * (1.0 + sl);
  t.lambda_minus = (1.0 - sl) * (1.0 - sl);
  if (beta == 0.0) return t;
  // Marchenko-Pastur density sqrt((l+ - x)(x - l-)) / (2 pi lambda x).
  const double lam = t.lambda_sp;
  const double inv_mean = numerics::quad_sqrt_endpoints(
      [lam](double x) { return 1.0 / (2.0 * numerics::kPi * lam * x * x); }, t.lambda_minus,
      t.lambda_plus);
  t.delta_over_sigma = std::sqrt(lam * inv_mean);
  return t;
}

}  // namespace clup::theory

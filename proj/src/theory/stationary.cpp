#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "clup/error.hpp"
#include "clup/numerics.hpp"
#include "clup/theory.hpp"
#include "stationary_internal.hpp"

namespace clup::theory {

namespace {

constexpr double kNewtonTol = 1e-10;
constexpr double kSeedSigma = 1e-3;
constexpr double kMaxSigmaFactor = 1.5;

}  // namespace

double phase_transition_residual(double alpha_w, double beta) {
  const double e = numerics::erf_inv((1.0 - alpha_w) / (1.0 - beta));
  return (1.0 - beta) * std::exp(-e * e) / (std::sqrt(numerics::kPi) * alpha_w * e) - 1.0;
}

double phase_transition_alpha_w(double beta) {
  if (!(beta > 0.0 && beta < 1.0)) throw Error(ErrorKind::Domain, "beta must lie in (0, 1)");
  const double lo = beta + 1e-9 * beta * (1.0 - beta);
  const double hi = 1.0 - 1e-12;
  auto f = [beta](double aw) { return phase_transition_residual(aw, beta); };
  try {
    return numerics::root_bracketed(f, {lo, hi}, {1e-15, 400});
  } catch (const Error& e) {
    throw Error(ErrorKind::NoRoot, std::string("phase transition: ") + e.what());
  }
}

double plain_cl1(double alpha_w, double beta) {
  return numerics::kSqrt2 * numerics::erf_inv((1.0 - alpha_w) / (1.0 - beta));
}

double plain_worst_mse(double alpha, double alpha_w, double sigma) {
  if (!(alpha_w < alpha)) throw Error(ErrorKind::Domain, "alpha_w must be below alpha");
  if (alpha_w <= 0.0) return 0.0;
  return sigma * std::sqrt(alpha_w / (alpha - alpha_w));
}

std::array<double, 4> stationary_residuals(const TheoryPoint& tp, const DualVariables& dv,
                                           Model model) {
  const double I = rdt::big_i(tp, dv);
  const double sb = std::sqrt(tp.beta);
  const double lead = model == Model::Clup ? 1.0 : 0.0;
  const double q = (lead + std::sqrt(I)) / (dv.nu * sb);
  const double p = dv.gamma1 * std::sqrt(tp.alpha) / (dv.nu * sb);
  return {rdt::d_xi_dnu(tp, dv), rdt::d_xi_dgamma1(tp, dv), dv.c2 - q * q,
          dv.c1 - 0.5 * (1.0 + dv.c2 + tp.sigma * tp.sigma - p * p)};
}

namespace detail {

Reduced reduce(const TheoryPoint& tp, Model model, const Eigen::Vector2d& u) {
  Reduced r;
  const double s = tp.sigma;
  const double g = std::exp(u[0]);
  const double nu = u[1] / s;
  const double sb = std::sqrt(tp.beta);
  const double sa = std::sqrt(tp.alpha);
  DualVariables dv{0.0, 0.0, g, nu};
  const double I = rdt::big_i(tp, dv);
  const double sI = std::sqrt(I);
  const double lead = model == Model::Clup ? 1.0 : 0.0;
  const double q = (lead + sI) / (nu * sb);
  dv.c2 = q * q;
  const double root_rr = g * sa / (std::abs(nu) * sb);  // sqrt(1 - 2c1 + c2 + sigma^2)
  r.delta2 = root_rr * root_rr - s * s;
  dv.c1 = 0.5 * (1.0 + dv.c2 - r.delta2);
  const double w = std::sqrt(dv.c2) / (2.0 * sI);
  const double e1 = -w * rdt::di_dnu(tp, dv) - dv.c1 * sb;
  const double e2 = sa * root_rr - tp.radius() - w * rdt::di_dgamma1(tp, dv);
  r.f = Eigen::Vector2d(e1 / s, e2 / s);
  r.dv = dv;
  return r;
}

bool admissible(const Reduced& r, Bounds bounds) {
  const DualVariables& dv = r.dv;
  const bool cap = bounds == Bounds::AllowC2AboveOne || dv.c2 <= 1.0;
  return dv.nu < 0.0 && dv.c2 >= 0.0 && cap && dv.c1 >= 0.0 && dv.c1 <= std::sqrt(dv.c2) &&
         r.delta2 >= 0.0 && std::isfinite(r.f[0]) && std::isfinite(r.f[1]);
}

std::optional<Eigen::Vector2d> newton(const TheoryPoint& tp, Model model, const Eigen::Vector2d& u0) {
  if (!(u0[1] < 0.0)) return std::nullopt;
  auto F = [&](const Eigen::VectorXd& u) -> Eigen::VectorXd {
    if (!(u[1] < 0.0) || !std::isfinite(u[0]) || std::abs(u[0]) > 50.0) {
      return Eigen::VectorXd::Constant(2, std::numeric_limits<double>::infinity());
    }
    return reduce(tp, model, Eigen::Vector2d(u[0], u[1])).f;
  };
  numerics::NewtonOptions opt;
  opt.tol = kNewtonTol;
  opt.max_iter = 60;
  try {
    const auto res = numerics::solve_system(F, Eigen::VectorXd(u0), opt);
    return Eigen::Vector2d(res.x[0], res.x[1]);
  } catch (const Error&) {
  }
  // Near-singular Jacobians at small sigma defeat the one-sided difference;
  // the symmetric one recovers full accuracy.
  opt.differences = numerics::Differences::Central;
  opt.fd_rel_step = 1e-5;
  try {
    const auto res = numerics::solve_system(F, Eigen::VectorXd(u0), opt);
    return Eigen::Vector2d(res.x[0], res.x[1]);
  } catch (const Error&) {
    return std::nullopt;
  }
}

Eigen::Vector2d to_reduced(const DualVariables& dv, double sigma) {
  return {std::log(dv.gamma1), dv.nu * sigma};
}

StationarySolution finish(const TheoryPoint& tp, Model model, const Reduced& r) {
  StationarySolution sol;
  sol.dv = r.dv;
  sol.delta = std::sqrt(std::max(0.0, 1.0 - 2.0 * r.dv.c1 + r.dv.c2));
  sol.xi = model == Model::Clup ? rdt::xi_rd(tp, r.dv) : rdt::xi_rd_socp(tp, r.dv);
  const auto e = stationary_residuals(tp, r.dv, model);
  double m = 0.0;
  for (double v : e) m = std::max(m, std::abs(v));
  sol.residual = m;
  return sol;
}

std::optional<Eigen::Vector2d> seed_scan(const TheoryPoint& tp, Model model, Bounds bounds) {
  constexpr int kGrid = 25;
  const double lg_lo = std::log(0.05);
  const double lg_hi = std::log(30.0);
  const double ns_lo = std::log(0.01);
  const double ns_hi = std::log(30.0);
  std::optional<Eigen::Vector2d> best;
  double best_delta = std::numeric_limits<double>::infinity();
  for (int i = 0; i < kGrid; ++i) {
    const double lg = lg_lo + (lg_hi - lg_lo) * i / (kGrid - 1);
    for (int j = 0; j < kGrid; ++j) {
      const double ns = -std::exp(ns_lo + (ns_hi - ns_lo) * j / (kGrid - 1));
      const auto u = newton(tp, model, {lg, ns});
      if (!u) continue;
      const Reduced r = reduce(tp, model, *u);
      if (!admissible(r, bounds)) continue;
      const double d = std::sqrt(r.delta2);
      if (d < best_delta) {
        best_delta = d;
        best = *u;
      }
    }
  }
  return best;
}

/// Moves a root at tp.sigma = from to sigma = to in bounded multiplicative steps.
/// Steps shrink on failure; throws when the branch is lost.
Eigen::Vector2d track(TheoryPoint tp, Model model, Eigen::Vector2d u, double from, double to,
                      Bounds bounds) {
  double s = from;
  double factor = kMaxSigmaFactor;
  while (s != to) {
    double next = to > s ? std::min(to, s * factor) : std::max(to, s / factor);
    tp.sigma = next;
    const auto v = newton(tp, model, u);
    if (v && admissible(reduce(tp, model, *v), bounds)) {
      u = *v;
      s = next;
      factor = std::min(kMaxSigmaFactor, factor * 1.2);
      continue;
    }
    factor = 1.0 + 0.5 * (factor - 1.0);
    if (factor < 1.0 + 1e-4) {
      throw Error(ErrorKind::Diverged, "stationary branch lost at sigma = " + std::to_string(next));
    }
  }
  return u;
}

}  // namespace detail

StationarySolution solve_stationary(const TheoryPoint& tp, Model model,
                                    const std::optional<DualVariables>& warm, Bounds bounds) {
  using namespace detail;
  if (!tp.valid()) throw Error(ErrorKind::Domain, "invalid theory point");
  Eigen::Vector2d u;
  if (warm) {
    const auto v = newton(tp, model, to_reduced(*warm, tp.sigma));
    if (!v) throw Error(ErrorKind::Diverged, "Newton from warm start did not converge");
    u = *v;
  } else {
    TheoryPoint seed_tp = tp;
    seed_tp.sigma = kSeedSigma;
    const auto s0 = seed_scan(seed_tp, model, bounds);
    if (!s0) throw Error(ErrorKind::Diverged, "no admissible root at the seed sigma");
    u = track(tp, model, *s0, seed_tp.sigma, tp.sigma, bounds);
  }
  const Reduced r = reduce(tp, model, u);
  if (!admissible(r, bounds)) throw Error(ErrorKind::InvalidBranch, "root violates nu < 0 or c-bounds");
  return finish(tp, model, r);
}

std::vector<StationarySolution> continue_in_sigma(const TheoryPoint& tp, Model model,
                                                  const StationarySolution& start,
                                                  const std::vector<double>& targets,
                                                  Bounds bounds) {
  using namespace detail;
  std::vector<StationarySolution> out;
  out.reserve(targets.size());
  double s = tp.sigma;
  Eigen::Vector2d u = to_reduced(start.dv, s);
  for (double t : targets) {
    u = track(tp, model, u, s, t, bounds);
    s = t;
    TheoryPoint at = tp;
    at.sigma = t;
    out.push_back(finish(at, model, reduce(at, model, u)));
  }
  return out;
}

}  // namespace clup::theory

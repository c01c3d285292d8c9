#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <boost/math/tools/minima.hpp>

#include "clup/rdt.hpp"
#include "oracles.hpp"

// Randomised identity checks on the closed forms, shared by the unit and acceptance suites.
namespace props {

using namespace clup;

inline bool close(double a, double b, double rel, double floor) {
  return std::abs(a - b) <= rel * std::max({std::abs(a), std::abs(b), floor});
}

struct Sample {
  TheoryPoint tp;
  DualVariables dv;
};

/// Random valid (tp, dv) in the region the solvers visit.
inline Sample random_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Sample s;
  s.tp.alpha = 0.5;
  s.tp.beta = 0.1625;
  s.tp.alpha_w = 0.45;
  s.tp.sigma = 1.0 / (5.0 + 12.0 * u(rng));
  s.tp.r_sc = 1.0 + 2.5 * u(rng);
  s.tp.c_l1 = 2.0 + 4.0 * u(rng);
  s.dv.c2 = 0.6 + 0.38 * u(rng);
  s.dv.c1 = std::sqrt(s.dv.c2) * (0.85 + 0.14 * u(rng));
  s.dv.gamma1 = 0.5 + 3.5 * u(rng);
  s.dv.nu = -(1.0 + 4.0 * u(rng)) / s.tp.sigma;
  return s;
}

/// Five-point central difference.
inline double fd(const std::function<double(double)>& f, double x, double h) {
  return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
}

/// Points of (0, 5] x [-5, 5] x [0, 10] where i11 + i12 and the soft-threshold
/// moment differ by more than rel; every tenth point is also checked against
/// the test-side Simpson oracle.
inline int moment_mismatches(int points, double rel, unsigned seed = 11) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ug(1e-3, 5.0), un(-5.0, 5.0), uc(0.0, 10.0);
  int bad = 0;
  for (int i = 0; i < points; ++i) {
    const double g = ug(rng), nu = un(rng), c = uc(rng);
    const double lhs = rdt::i11(g, nu, c) + rdt::i12(g, nu, c);
    if (!close(lhs, rdt::soft_threshold_moment(g, nu, c), rel, 1e-200)) ++bad;
    if (i % 10 == 0 && !close(lhs, oracle::soft_threshold_moment(g, nu, c), rel, 1e-200)) ++bad;
  }
  return bad;
}

/// Closed-form partials that disagree with finite differences by more than rel.
inline int partial_mismatches(int points, double rel, std::vector<std::string>* log = nullptr,
                              unsigned seed = 5) {
  std::mt19937_64 rng(seed);
  int bad = 0;
  for (int i = 0; i < points; ++i) {
    const Sample s = random_point(rng);
    const auto& tp = s.tp;
    const DualVariables dv = s.dv;
    auto at = [&](double DualVariables::*field) {
      return [=](double v) {
        DualVariables d = dv;
        d.*field = v;
        return d;
      };
    };
    const auto at_nu = at(&DualVariables::nu);
    const auto at_g = at(&DualVariables::gamma1);
    const auto at_c1 = at(&DualVariables::c1);
    const auto at_c2 = at(&DualVariables::c2);
    const double hn = 1e-4 * std::abs(dv.nu), hg = 1e-4 * dv.gamma1, hc = 1e-5;
    const double c = tp.c_l1, g = dv.gamma1, nu = dv.nu;
    const struct {
      const char* name;
      double exact, numeric;
    } pairs[] = {
        {"di11_dnu", rdt::di11_dnu(g, nu, c), fd([&](double v) { return rdt::i11(g, v, c); }, nu, hn)},
        {"di12_dnu", rdt::di12_dnu(g, nu, c), fd([&](double v) { return rdt::i12(g, v, c); }, nu, hn)},
        {"di11_dgamma1", rdt::di11_dgamma1(g, nu, c), fd([&](double v) { return rdt::i11(v, nu, c); }, g, hg)},
        {"di12_dgamma1", rdt::di12_dgamma1(g, nu, c), fd([&](double v) { return rdt::i12(v, nu, c); }, g, hg)},
        {"di_dnu", rdt::di_dnu(tp, dv), fd([&](double v) { return rdt::big_i(tp, at_nu(v)); }, nu, hn)},
        {"di_dgamma1", rdt::di_dgamma1(tp, dv), fd([&](double v) { return rdt::big_i(tp, at_g(v)); }, g, hg)},
        {"d_xi_dnu", rdt::d_xi_dnu(tp, dv), fd([&](double v) { return rdt::xi_rd(tp, at_nu(v)); }, nu, hn)},
        {"d_xi_dgamma1", rdt::d_xi_dgamma1(tp, dv), fd([&](double v) { return rdt::xi_rd(tp, at_g(v)); }, g, hg)},
        {"d_xi_dc1", rdt::d_xi_dc1(tp, dv), fd([&](double v) { return rdt::xi_rd(tp, at_c1(v)); }, dv.c1, hc)},
        {"d_xi_dc2", rdt::d_xi_dc2(tp, dv), fd([&](double v) { return rdt::xi_rd(tp, at_c2(v)); }, dv.c2, hc)},
        {"d_xi_dc2 socp", rdt::d_xi_dc2(tp, dv, true),
         fd([&](double v) { return rdt::xi_rd_socp(tp, at_c2(v)); }, dv.c2, hc)},
    };
    for (const auto& p : pairs) {
      // relative, with a floor at the finite-difference noise level
      if (!close(p.exact, p.numeric, rel, 1e-6)) {
        ++bad;
        if (log) {
          log->push_back(std::string(p.name) + " at point " + std::to_string(i) + ": " + std::to_string(p.exact) +
                         " vs " + std::to_string(p.numeric));
        }
      }
    }
  }
  return bad;
}

/// Largest |max_gamma xi_rd_gamma - xi_rd| over random points, by Brent maximisation in gamma.
inline double gamma_identity_error(int points, unsigned seed = 9) {
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int i = 0; i < points; ++i) {
    const Sample s = random_point(rng);
    const double g_star = std::sqrt(rdt::big_i(s.tp, s.dv)) / (2.0 * std::sqrt(s.dv.c2));
    const auto best = boost::math::tools::brent_find_minima(
        [&](double g) { return -rdt::xi_rd_gamma(s.tp, s.dv, g); }, 0.05 * g_star, 20.0 * g_star, 52);
    worst = std::max(worst, std::abs(-best.second - rdt::xi_rd(s.tp, s.dv)));
  }
  return worst;
}

}  // namespace props

#include "clup/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "clup/error.hpp"
#include "clup/theory.hpp"

namespace clup::solvers {

namespace {

constexpr double kLn2 = 0.6931471805599453;

double sign(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

Eigen::VectorXd soft(const Eigen::VectorXd& z, double t) {
  return z.unaryExpr([t](double v) { return std::max(std::abs(v) - t, 0.0) * sign(v); });
}

double resolve_alpha_w(const ProblemInstance& inst, double alpha_w) {
  return alpha_w > 0.0 ? alpha_w : theory::phase_transition_alpha_w(inst.beta());
}

/// Shared state of the penalised problems
///   min -a^T x + c ||x||_1 + (mu / 2) ||y - A x||^2
/// solved by FISTA with backtracking and gradient restarts.
class Workspace {
 public:
  explicit Workspace(const ProblemInstance& inst, const Eigen::MatrixXd* AtA = nullptr)
      : inst_(inst), b_(inst.A.transpose() * inst.y) {
    if (AtA) {
      G_ = AtA;
    } else {
      own_ = gram(inst.A);
      G_ = &own_;
    }
    // Power iteration from a fixed start; backtracking covers the underestimate.
    Eigen::VectorXd v = Eigen::VectorXd::Constant(inst.n, 1.0 / std::sqrt(inst.n));
    double lam = 0.0;
    for (int i = 0; i < 60; ++i) {
      Eigen::VectorXd w = G_->selfadjointView<Eigen::Lower>() * v;
      lam = w.norm();
      if (lam == 0.0) break;
      v = w / lam;
    }
    lip_ = std::max(lam, 1e-300);
  }

  double residual(const Eigen::VectorXd& x) const { return (inst_.y - inst_.A * x).norm(); }

  struct Solve {
    Eigen::VectorXd x;
    bool diverged = false;
  };

  Solve penalized(const Eigen::VectorXd& a, double c, double mu, Eigen::VectorXd x,
                  const ProxOptions& opt) const {
    const Eigen::MatrixXd& G = *G_;
    double L = 1.02 * mu * lip_;
    Eigen::VectorXd Gx = G.selfadjointView<Eigen::Lower>() * x;
    Eigen::VectorXd z = x, Gz = Gx;
    double t = 1.0;
    for (int it = 0; it < opt.max_iter; ++it) {
      const Eigen::VectorXd grad = -a + mu * (Gz - b_);
      Eigen::VectorXd xn, Gxn;
      for (;;) {
        xn = soft(z - grad / L, c / L);
        Gxn.noalias() = G.selfadjointView<Eigen::Lower>() * xn;
        const Eigen::VectorXd d = xn - z;
        // the smooth part is quadratic: f(xn) - f(z) - grad.d = mu/2 d^T G d
        if (mu * d.dot(Gxn - Gz) <= L * d.squaredNorm() * (1.0 + 1e-12)) break;
        L *= 2.0;
      }
      if (!xn.allFinite() || xn.norm() > 1e12) return {xn, true};
      const double step = (xn - x).norm();
      const bool restart = (z - xn).dot(xn - x) > 0.0;
      const double tn = restart ? 1.0 : 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
      const double beta = restart ? 0.0 : (t - 1.0) / tn;
      z = xn + beta * (xn - x);
      Gz = Gxn + beta * (Gxn - Gx);
      x = std::move(xn);
      Gx = std::move(Gxn);
      t = tn;
      if (step <= opt.tol * std::max(x.norm(), 1e-300)) return {x, false};
    }
    throw Error(ErrorKind::MaxIterations, "proximal gradient did not reach its tolerance");
  }

  /// Penalty continuation on log mu until ||y - A x|| = r.
  Eigen::VectorXd socp(const Eigen::VectorXd& a, double c, double r, const ProxOptions& opt,
                       double& mu_hint, Eigen::VectorXd& warm) const {
    if (!(r > 0.0)) throw Error(ErrorKind::Domain, "radius must be positive");
    const double ynorm = inst_.y.norm();
    const double amax = a.size() ? a.cwiseAbs().maxCoeff() : 0.0;
    if (amax <= c && ynorm <= r) return Eigen::VectorXd::Zero(inst_.n);

    std::optional<Eigen::VectorXd> best;
    double best_res = -1.0;
    // aim inside the accepted band [r (1 - tol), r]
    const double target = r * (1.0 - 0.5 * opt.constraint_tol);
    auto phi = [&](double s) {
      Solve sol = penalized(a, c, std::exp(s), warm, opt);
      if (sol.diverged) return std::numeric_limits<double>::max();
      const double res = residual(sol.x);
      warm = sol.x;
      if (res <= r && res > best_res) {
        best_res = res;
        best = sol.x;
      }
      return std::log(std::max(res, 1e-300) / target);
    };
    const double s0 = std::log(mu_hint > 0.0 ? mu_hint : std::max(c, amax) / r);
    double lo = s0 - kLn2, hi = s0 + kLn2;
    double flo = phi(lo);
    for (int i = 0; i < 40 && flo < 0.0; ++i) flo = phi(lo -= kLn2);
    double fhi = phi(hi);
    for (int i = 0; i < 40 && fhi > 0.0; ++i) fhi = phi(hi += kLn2);
    if (flo < 0.0 || fhi > 0.0) throw Error(ErrorKind::InnerInfeasible, "residual ball not reachable");
    if (!(best_res >= r * (1.0 - opt.constraint_tol))) {
      const double s = numerics::root_bracketed(phi, {lo, hi}, {1e-13, 200, 0.4 * opt.constraint_tol});
      mu_hint = std::exp(s);
    }
    if (!best || best_res < r * (1.0 - opt.constraint_tol)) {
      throw Error(ErrorKind::MaxIterations, "constraint not matched to tolerance");
    }
    return *best;
  }

  Eigen::VectorXd lasso(double c, const ProxOptions& opt) const {
    if (!(c > 0.0)) throw Error(ErrorKind::Domain, "c must be positive");
    const double ynorm = inst_.y.norm();
    if (ynorm == 0.0 || b_.cwiseAbs().maxCoeff() <= c * ynorm) return Eigen::VectorXd::Zero(inst_.n);
    const Eigen::VectorXd a = Eigen::VectorXd::Zero(inst_.n);
    Eigen::VectorXd warm = Eigen::VectorXd::Zero(inst_.n);
    // Stationarity of the un-squared form: the penalised solution at mu with ||y - A x|| = 1 / mu.
    auto phi = [&](double s) {
      Solve sol = penalized(a, c, std::exp(s), warm, opt);
      warm = sol.x;
      return std::log(std::max(residual(sol.x), 1e-300)) + s;
    };
    const double lo = -std::log(ynorm);
    double hi = lo + kLn2;
    double fhi = phi(hi);
    for (int i = 0; i < 40 && fhi < 0.0; ++i) fhi = phi(hi += kLn2);
    if (fhi < 0.0) throw Error(ErrorKind::NoRoot, "lasso scale equation has no root");
    const double s = numerics::root_bracketed(phi, {lo, hi}, {1e-13, 200, 1e-8});
    return penalized(a, c, std::exp(s), warm, opt).x;
  }

 private:
  const ProblemInstance& inst_;
  const Eigen::MatrixXd* G_ = nullptr;
  Eigen::MatrixXd own_;
  Eigen::VectorXd b_;
  double lip_ = 1.0;
};

Eigen::VectorXd random_sign_start(int n, numerics::RngSeed seed) {
  numerics::GaussianStream g(seed);
  Eigen::VectorXd x(n);
  const double v = 1.0 / std::sqrt(static_cast<double>(n));
  for (int i = 0; i < n; ++i) x[i] = g.uniform_index(2) ? v : -v;
  return x;
}

}  // namespace

double r_socp(const ProblemInstance& inst, double alpha_w) {
  const double aw = resolve_alpha_w(inst, alpha_w);
  if (!(aw < inst.alpha())) throw Error(ErrorKind::Domain, "alpha_w must be below m/n");
  return inst.sigma * std::sqrt((inst.alpha() - aw) * inst.n);
}

Eigen::MatrixXd gram(const Eigen::MatrixXd& A) {
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(A.cols(), A.cols());
  G.selfadjointView<Eigen::Lower>().rankUpdate(A.transpose());
  G.triangularView<Eigen::StrictlyUpper>() = G.transpose();
  return G;
}

ClupResult clup_largescale(const ProblemInstance& inst, const ClupParams& p) {
  return clup_largescale(inst, gram(inst.A), p);
}

ClupResult clup_largescale(const ProblemInstance& inst, const Eigen::MatrixXd& G, const ClupParams& p) {
  const int n = inst.n;
  if (G.rows() != n || G.cols() != n) throw Error(ErrorKind::Dimension, "Gram matrix has wrong size");
  if (p.max_iter < 1 || p.c_q2_period < 1) throw Error(ErrorKind::Config, "max_iter and c_q2_period must be positive");
  if (!(p.c2_hat > 0.0)) throw Error(ErrorKind::Config, "c2_hat must be positive");
  const double sn = std::sqrt(static_cast<double>(n));
  const double r = p.r_sc * r_socp(inst, p.alpha_w);
  double cq = p.c_q2_init > 0.0 ? p.c_q2_init : 7.0 * sn;
  if (!(cq > r)) throw Error(ErrorKind::Config, "c_q2 must exceed r_sc r_socp");
  const double ch = p.c_l1_theory / sn;
  const double gh = p.gamma1_hat / sn;
  const double sc = std::sqrt(p.c2_hat);
  const Eigen::VectorXd b = inst.A.transpose() * inst.y;

  ClupResult res;
  auto record = [&](int it, const Eigen::VectorXd& x) {
    TracePoint tp;
    tp.iteration = it;
    tp.c1 = inst.x_sol.dot(x);
    tp.c2 = x.squaredNorm();
    tp.residual_norm = (inst.y - inst.A * x).norm();
    tp.xi_ls = -x.norm() + ch * x.lpNorm<1>() + gh * (tp.residual_norm - r);
    res.trace.push_back(tp);
  };

  Eigen::VectorXd x = random_sign_start(n, p.seed);
  Eigen::VectorXd Gx(n), xn(n);
  for (int i = 0; i < p.max_iter; ++i) {
    if (i > 0 && i % p.c_q2_period == 0) cq *= p.c_q2_growth;
    if (p.trace_stride > 0 && i % p.trace_stride == 0) record(i, x);
    Gx.noalias() = G.selfadjointView<Eigen::Lower>() * x;
    ++res.matvecs;
    xn = (cq * x - (ch * sc * r) * x.unaryExpr(&sign) + (gh * sc) * (b - Gx)) / (cq - r);
    if (!xn.allFinite()) throw Error(ErrorKind::NonFinite, "contraction iterate overflowed");
    const double xnorm = x.norm();
    res.last_step = (xn - x).norm() / (xnorm > 0.0 ? xnorm : 1.0);
    x.swap(xn);
    res.iterations = i + 1;
    if (res.last_step <= p.conv_tol) {
      res.converged = true;
      break;
    }
  }
  if (p.trace_stride > 0) record(res.iterations, x);
  res.x_hat = std::move(x);
  return res;
}

double fixed_point_residual(const ProblemInstance& inst, const ClupParams& p, const Eigen::VectorXd& x,
                            double zero_tol) {
  const double sn = std::sqrt(static_cast<double>(inst.n));
  const double r = p.r_sc * r_socp(inst, p.alpha_w);
  const double sc = std::sqrt(p.c2_hat);
  const double l1 = p.c_l1_theory / sn * sc * r;
  const Eigen::VectorXd g = inst.A.transpose() * (inst.y - inst.A * x);
  const Eigen::VectorXd smooth = -r * x - (p.gamma1_hat / sn * sc) * g;
  Eigen::VectorXd e(inst.n);
  for (int i = 0; i < inst.n; ++i) {
    // entries within zero_tol of the origin take the subgradient [-1, 1]
    e[i] = std::abs(x[i]) <= zero_tol ? std::max(std::abs(smooth[i]) - l1, 0.0)
                                      : smooth[i] + l1 * sign(x[i]);
  }
  return e.norm();
}

ClupResult clup_basic(const ProblemInstance& inst, double r_sc, double c_l1_theory, int max_outer,
                      numerics::RngSeed seed, double alpha_w) {
  if (max_outer < 1) throw Error(ErrorKind::Config, "max_outer must be positive");
  const int n = inst.n;
  const double r = r_sc * r_socp(inst, alpha_w);
  const double c = c_l1_theory / std::sqrt(static_cast<double>(n));
  Workspace ws(inst);
  ProxOptions opt;
  ClupResult res;
  Eigen::VectorXd x = random_sign_start(n, seed);
  Eigen::VectorXd warm = Eigen::VectorXd::Zero(n);
  double mu = 0.0;
  for (int i = 0; i < max_outer; ++i) {
    const Eigen::VectorXd xs = ws.socp(x, c, r, opt, mu, warm);
    const double rn = ws.residual(xs);
    res.max_inner_excess = i == 0 ? rn - r : std::max(res.max_inner_excess, rn - r);
    const double nrm = xs.norm();
    if (nrm == 0.0) throw Error(ErrorKind::InnerInfeasible, "inner solution vanished");
    TracePoint tp;
    tp.iteration = i + 1;
    tp.c1 = inst.x_sol.dot(xs);
    tp.c2 = xs.squaredNorm();
    tp.residual_norm = rn;
    tp.xi_ls = -nrm + c * xs.lpNorm<1>();
    res.trace.push_back(tp);
    const Eigen::VectorXd next = xs / nrm;
    res.last_step = (next - x).norm();
    x = next;
    res.x_hat = xs;
    res.iterations = i + 1;
    if (res.last_step < 1e-6) {
      res.converged = true;
      break;
    }
  }
  return res;
}

Eigen::VectorXd socp_linear(const ProblemInstance& inst, const Eigen::VectorXd& a, double c, double r,
                            const ProxOptions& opt) {
  if (a.size() != inst.n) throw Error(ErrorKind::Dimension, "a has wrong length");
  Workspace ws(inst);
  double mu = 0.0;
  Eigen::VectorXd warm = Eigen::VectorXd::Zero(inst.n);
  return ws.socp(a, c, r, opt, mu, warm);
}

Eigen::VectorXd lasso_solve(const ProblemInstance& inst, double c, const ProxOptions& opt) {
  return Workspace(inst).lasso(c, opt);
}

Eigen::VectorXd ideal_ml_estimate(const ProblemInstance& inst) {
  const int k = static_cast<int>(inst.support.size());
  if (k == 0 || inst.m < k) throw Error(ErrorKind::Dimension, "support must be non-empty and at most m");
  Eigen::MatrixXd Ak(inst.m, k);
  for (int j = 0; j < k; ++j) Ak.col(j) = inst.A.col(inst.support[j]);
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(k, k);
  M.selfadjointView<Eigen::Lower>().rankUpdate(Ak.transpose());
  const Eigen::LLT<Eigen::MatrixXd> llt(M.selfadjointView<Eigen::Lower>());
  if (llt.info() != Eigen::Success || llt.rcond() < 1e-14) {
    throw Error(ErrorKind::SingularGram, "support Gram matrix is numerically singular");
  }
  const Eigen::VectorXd xk = llt.solve(Ak.transpose() * inst.y);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(inst.n);
  for (int j = 0; j < k; ++j) x[inst.support[j]] = xk[j];
  return x;
}

}  // namespace clup::solvers

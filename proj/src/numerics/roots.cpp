#include <cmath>
#include <cstdint>
#include <limits>

#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "clup/error.hpp"
#include "clup/numerics.hpp"

namespace clup::numerics {

namespace {

struct Accepted {
  double x;
};

}  // namespace

double root_bracketed(const std::function<double(double)>& f, Bracket b, const RootOptions& opt) {
  if (!(b.lo < b.hi)) throw Error(ErrorKind::Domain, "bracket requires lo < hi");
  const double ftol = opt.ftol;
  auto g = [&](double x) {
    const double v = f(x);
    if (ftol > 0.0 && std::abs(v) <= ftol) throw Accepted{x};
    return v;
  };
  try {
    const double flo = g(b.lo);
    if (flo == 0.0) return b.lo;
    const double fhi = g(b.hi);
    if (fhi == 0.0) return b.hi;
    if (!std::isfinite(flo) || !std::isfinite(fhi) || flo * fhi > 0.0) {
      throw Error(ErrorKind::NoSignChange, "f(lo) and f(hi) have the same sign");
    }
    const double tol = opt.tol;
    auto tolfn = [tol](double a, double c) { return std::abs(c - a) <= tol; };
    std::uintmax_t iters = static_cast<std::uintmax_t>(opt.max_iter);
    const auto r = boost::math::tools::toms748_solve(g, b.lo, b.hi, flo, fhi, tolfn, iters);
    if (!tolfn(r.first, r.second)) {
      throw Error(ErrorKind::MaxIterations, "bracket did not shrink to tolerance");
    }
    return 0.5 * (r.first + r.second);
  } catch (const Accepted& a) {
    return a.x;
  }
}

namespace {

double inf_norm(const Eigen::VectorXd& v) {
  if (v.size() == 0) return 0.0;
  if (!v.allFinite()) return std::numeric_limits<double>::infinity();
  return v.cwiseAbs().maxCoeff();
}

}  // namespace

NewtonResult solve_system(const VectorFn& F, const Eigen::VectorXd& x0, const NewtonOptions& opt) {
  NewtonResult res;
  Eigen::VectorXd x = x0;
  if (opt.project) opt.project(x);
  Eigen::VectorXd fx = F(x);
  double norm = inf_norm(fx);
  if (!std::isfinite(norm)) throw Error(ErrorKind::Diverged, "residual not finite at the start point");
  const Eigen::Index d = x.size();
  Eigen::MatrixXd J(fx.size(), d);

  for (int it = 0; it < opt.max_iter; ++it) {
    if (norm <= opt.tol) {
      res.x = x;
      res.residual = norm;
      res.iterations = it;
      return res;
    }
    for (Eigen::Index j = 0; j < d; ++j) {
      const double h = opt.fd_rel_step * std::max(1.0, std::abs(x[j]));
      Eigen::VectorXd xp = x;
      xp[j] += h;
      if (opt.differences == Differences::Forward) {
        J.col(j) = (F(xp) - fx) / (xp[j] - x[j]);
      } else {
        Eigen::VectorXd xm = x;
        xm[j] -= h;
        J.col(j) = (F(xp) - F(xm)) / (xp[j] - xm[j]);
      }
    }
    if (!J.allFinite()) throw Error(ErrorKind::Diverged, "non-finite Jacobian");
    Eigen::VectorXd step = J.colPivHouseholderQr().solve(-fx);
    if (!step.allFinite()) throw Error(ErrorKind::Diverged, "singular Jacobian");

    double t = 1.0;
    bool accepted = false;
    for (int h = 0; h <= opt.max_halvings; ++h, t *= 0.5) {
      Eigen::VectorXd xt = x + t * step;
      if (opt.project) opt.project(xt);
      Eigen::VectorXd ft = F(xt);
      const double nt = inf_norm(ft);
      if (nt < norm) {
        x = std::move(xt);
        fx = std::move(ft);
        norm = nt;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  if (norm <= opt.tol) {
    res.x = x;
    res.residual = norm;
    res.iterations = opt.max_iter;
    return res;
  }
  throw Error(ErrorKind::Diverged, "residual stalled at " + std::to_string(norm));
}

}  // namespace clup::numerics

#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "clup/error.hpp"
#include "clup/numerics.hpp"

namespace clup::numerics {

double quad_finite(const std::function<double(double)>& f, double lo, double hi, double rel_tol) {
  if (!(lo < hi)) throw Error(ErrorKind::Domain, "quadrature requires lo < hi");
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  return GK::integrate(f, lo, hi, 15, rel_tol);
}

double quad_sqrt_endpoints(const std::function<double(double)>& g, double lo, double hi,
                           double rel_tol) {
  if (!(lo < hi)) throw Error(ErrorKind::Domain, "quadrature requires lo < hi");
  const double w = hi - lo;
  // x = lo + w sin^2 t, dx = 2w sin t cos t dt, sqrt((hi-x)(x-lo)) = w sin t cos t.
  auto integrand = [&](double t) {
    const double s = std::sin(t);
    const double c = std::cos(t);
    const double sc = s * c;
    return 2.0 * w * w * sc * sc * g(lo + w * s * s);
  };
  return quad_finite(integrand, 0.0, 0.5 * kPi, rel_tol);
}

}  // namespace clup::numerics

#include <cmath>
#include <limits>

#include "clup/error.hpp"
#include "clup/numerics.hpp"

namespace clup {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Domain: return "domain error";
    case ErrorKind::NoSignChange: return "no sign change";
    case ErrorKind::MaxIterations: return "max iterations";
    case ErrorKind::Diverged: return "diverged";
    case ErrorKind::InvalidBranch: return "invalid branch";
    case ErrorKind::NoRoot: return "no root";
    case ErrorKind::EmptyLevelSet: return "empty level set";
    case ErrorKind::Dimension: return "dimension error";
    case ErrorKind::NonFinite: return "non-finite iterate";
    case ErrorKind::InnerInfeasible: return "inner problem infeasible";
    case ErrorKind::SingularGram: return "singular Gram matrix";
    case ErrorKind::Config: return "invalid configuration";
    case ErrorKind::Io: return "i/o error";
  }
  return "error";
}

}  // namespace clup

namespace clup::numerics {

double erf(double x) noexcept { return std::erf(x); }
double erfc(double x) noexcept { return std::erfc(x); }

double erf_inv(double p) {
  if (!(p > -1.0 && p < 1.0)) {
    throw Error(ErrorKind::Domain, "erf_inv requires -1 < p < 1");
  }
  if (p == 0.0) return 0.0;

  // Giles' single-precision rational approximation as the starting point.
  double w = -std::log((1.0 - p) * (1.0 + p));
  double x;
  if (w < 5.0) {
    w -= 2.5;
    double q = 2.81022636e-08;
    q = 3.43273939e-07 + q * w;
    q = -3.5233877e-06 + q * w;
    q = -4.39150654e-06 + q * w;
    q = 0.00021858087 + q * w;
    q = -0.00125372503 + q * w;
    q = -0.00417768164 + q * w;
    q = 0.246640727 + q * w;
    q = 1.50140941 + q * w;
    x = q * p;
  } else {
    w = std::sqrt(w) - 3.0;
    double q = -0.000200214257;
    q = 0.000100950558 + q * w;
    q = 0.00134934322 + q * w;
    q = -0.00367342844 + q * w;
    q = 0.00573950773 + q * w;
    q = -0.0076224613 + q * w;
    q = 0.00943887047 + q * w;
    q = 1.00167406 + q * w;
    q = 2.83297682 + q * w;
    x = q * p;
  }

  // Newton polish. In the tails it runs on log erfc, which is nearly linear
  // there and keeps 1 - |p| exact where erf saturates.
  const double two_over_sqrt_pi = 2.0 / std::sqrt(kPi);
  const double a = std::abs(p);
  const double log_q = std::log1p(-a);
  double z = std::abs(x);
  for (int i = 0; i < 20; ++i) {
    double step;
    if (a > 0.5) {
      const double ec = std::erfc(z);
      step = (std::log(ec) - log_q) * ec / (two_over_sqrt_pi * std::exp(-z * z));
    } else {
      step = (std::erf(z) - a) / (two_over_sqrt_pi * std::exp(-z * z));
    }
    z += a > 0.5 ? step : -step;
    if (std::abs(step) <= 1e-16 * z) break;
  }
  return p < 0.0 ? -z : z;
}

double normal_pdf(double x) noexcept { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double normal_tail(double a) noexcept { return 0.5 * std::erfc(a / kSqrt2); }

TruncatedMoments truncated_moments(double a) noexcept {
  constexpr double kSwitch = 3.0;
  TruncatedMoments m{};
  if (a < kSwitch) {
    const double q = normal_tail(a);
    const double phi = normal_pdf(a);
    m.tail = q;
    m.psi1 = phi - a * q;
    m.psi2 = (1.0 + a * a) * q - a * phi;
    return m;
  }
  // Mills-ratio continued fraction R(a) = 1/(a+ 1/(a+ 2/(a+ 3/(a+ ...)))).
  // With T = 1/(a + U), U = 2/(a + 3/(a + ...)):
  //   psi1 / phi = T R,   psi2 / phi = T U R
  // and no subtraction is involved.
  constexpr int kTerms = 120;
  double t = 0.0;
  double u = 0.0;
  for (int k = kTerms; k >= 1; --k) {
    t = k / (a + t);
    if (k == 2) u = t;
  }
  const double tt = t;
  const double r = 1.0 / (a + tt);
  const double phi = normal_pdf(a);
  m.tail = normal_tail(a);
  m.psi1 = phi * tt * r;
  m.psi2 = phi * tt * u * r;
  return m;
}

}  // namespace clup::numerics

#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace clup::numerics {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSqrt2 = 1.41421356237309504880;
inline constexpr double kInvSqrt2Pi = 0.39894228040143267794;

// ---------------------------------------------------------------------------
// Special functions

double erf(double x) noexcept;
double erfc(double x) noexcept;

/// Inverse error function on (-1, 1). Throws Error(Domain) for |p| >= 1.
double erf_inv(double p);

/// Standard normal density.
double normal_pdf(double x) noexcept;

/// Upper tail P(h > a) of a standard normal.
double normal_tail(double a) noexcept;

/// First and second truncated moments of a standard normal h:
///   psi1(a) = E[(h - a)_+],  psi2(a) = E[(h - a)_+^2].
/// For large positive `a` these are evaluated through continued fractions so
/// the result keeps full relative precision deep into the tail.
struct TruncatedMoments {
  double tail;  // P(h > a)
  double psi1;
  double psi2;
};
TruncatedMoments truncated_moments(double a) noexcept;

// ---------------------------------------------------------------------------
// Root finding

struct Bracket {
  double lo;
  double hi;
};

struct RootOptions {
  double tol = 1e-12;
  int max_iter = 200;
  double ftol = 0.0;  // also accept any iterate with |f| <= ftol
};

/// Bracketed scalar root (TOMS 748). Returns a point inside a final bracket of
/// width <= tol. Throws NoSignChange / MaxIterations.
double root_bracketed(const std::function<double(double)>& f, Bracket b,
                      const RootOptions& opt = {});

using VectorFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

enum class Differences { Forward, Central };

struct NewtonOptions {
  double tol = 1e-10;            // on the infinity norm of F
  int max_iter = 100;
  int max_halvings = 30;         // per iteration
  double fd_rel_step = 1e-7;     // h_i = step * max(1, |x_i|)
  Differences differences = Differences::Forward;
  /// Optional projection applied to every trial iterate (box clipping).
  std::function<void(Eigen::VectorXd&)> project;
};

struct NewtonResult {
  Eigen::VectorXd x;
  double residual = 0.0;
  int iterations = 0;
};

/// Damped Newton with forward-difference Jacobian and step halving.
/// Throws Error(Diverged) when the residual cannot be reduced or the iteration
/// budget is exhausted above `tol`.
NewtonResult solve_system(const VectorFn& F, const Eigen::VectorXd& x0,
                          const NewtonOptions& opt = {});

// ---------------------------------------------------------------------------
// Quadrature

/// Integral over [lo, hi] of sqrt((hi - x)(x - lo)) * g(x).
/// The endpoint singularity is removed by x = lo + (hi - lo) sin^2(t); the
/// smooth remainder is integrated by adaptive 61-point Gauss-Kronrod.
double quad_sqrt_endpoints(const std::function<double(double)>& g, double lo, double hi,
                           double rel_tol = 1e-12);

/// Adaptive Gauss-Kronrod on a finite interval (thin wrapper used by oracles).
double quad_finite(const std::function<double(double)>& f, double lo, double hi,
                   double rel_tol = 1e-12);

// ---------------------------------------------------------------------------
// Random numbers

struct RngSeed {
  std::uint64_t base = 0;
  std::uint64_t stream = 0;
};

/// Standard normal variates.
///
/// Engine: std::mt19937_64 initialised from a std::seed_seq over the four
/// 32-bit halves of (base, stream). Uniforms on (-1, 1) take the top 53 bits
/// of one engine output. Normals come from the Marsaglia polar method: draw
/// (u, v) until 0 < s = u^2 + v^2 < 1, then emit u*f and v*f with
/// f = sqrt(-2 ln s / s), in that order.
class GaussianStream {
 public:
  explicit GaussianStream(RngSeed seed);

  double next();
  void fill(std::span<double> out);
  /// Uniform integer in [0, bound) by rejection; used for permutations.
  std::uint64_t uniform_index(std::uint64_t bound);

 private:
  double uniform_pm1();

  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

std::vector<double> gaussian_stream(RngSeed seed, std::size_t count);

}  // namespace clup::numerics

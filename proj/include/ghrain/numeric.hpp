#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace ghrain {

using Rng = std::mt19937_64;

/// Derives an independent seed for a worker from a base seed and an index
/// (splitmix64 finalizer), so ensemble members get decorrelated streams.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

struct QuadResult {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error
  int evaluations = 0;
  bool converged = false;
};

/// Adaptive Gauss-Kronrod (7,15) integration of f over [a, b].
QuadResult integrate_gk(const std::function<double(double)>& f, double a,
                        double b, double abs_tol = 1e-10,
                        double rel_tol = 1e-10, int max_subdivisions = 2000);

/// Integrates f over the half line going left (direction = -1) or right
/// (direction = +1) from `start`, using width-doubling panels that stop once
/// the panel contributions decay geometrically below abs_tol. Intended for
/// integrands that eventually decrease monotonically toward the tail.
QuadResult integrate_tail(const std::function<double(double)>& f, double start,
                          int direction, double initial_width,
                          double abs_tol = 1e-11, int max_panels = 200);

/// Brent root bracketing solve of f(x) = 0 on [a, b]; f(a), f(b) must have
/// opposite signs.
double brent_root(const std::function<double(double)>& f, double a, double b,
                  double xtol = 1e-12, int max_iter = 200);

/// Type-7 (linear interpolation) sample quantile; sorts a copy.
double quantile(std::vector<double> values, double prob);
/// Quantile of already ascending-sorted data.
double quantile_sorted(const std::vector<double>& sorted, double prob);

double mean(const std::vector<double>& v);
double variance(const std::vector<double>& v);  // unbiased

/// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

struct NelderMeadResult {
  std::vector<double> x;
  double fmin = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Nelder-Mead minimization; `init_step` sets the initial simplex spread per
/// coordinate.
NelderMeadResult nelder_mead(
    const std::function<double(const std::vector<double>&)>& f,
    std::vector<double> start, std::vector<double> init_step,
    double ftol = 1e-10, int max_iter = 5000);

/// Central-difference Hessian of f at x.
std::vector<std::vector<double>> numeric_hessian(
    const std::function<double(const std::vector<double>&)>& f,
    const std::vector<double>& x, double rel_step = 1e-4);

/// Inverse of a small symmetric positive definite matrix (Cholesky).
/// Throws numerical_error if not positive definite.
std::vector<std::vector<double>> spd_inverse(
    std::vector<std::vector<double>> a);

/// True when all roots of 1 - c1 z - c2 z^2 - ... lie outside the unit
/// circle (stationarity of an AR polynomial with the given coefficients).
bool poly_roots_outside_unit_circle(const std::vector<double>& coeffs);

/// Monotone cubic (Fritsch-Carlson) interpolant of an increasing function.
class MonotoneCubic {
 public:
  MonotoneCubic() = default;
  MonotoneCubic(std::vector<double> x, std::vector<double> y);

  double operator()(double x) const;
  /// Inverse evaluation; valid because the data are monotone increasing.
  double inverse(double y) const;

  double x_front() const { return x_.front(); }
  double x_back() const { return x_.back(); }
  double y_front() const { return y_.front(); }
  double y_back() const { return y_.back(); }
  bool empty() const { return x_.empty(); }

 private:
  std::vector<double> x_, y_, slope_;
  std::size_t locate(double x) const;
  double eval_segment(std::size_t i, double x) const;
};

}  // namespace ghrain

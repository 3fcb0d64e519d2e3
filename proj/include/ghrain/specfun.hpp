#pragma once

#include <array>

namespace ghrain {

/// ln K_nu(x), the log of the modified Bessel function of the third kind.
/// Evaluated entirely in log scale so it neither overflows nor underflows
/// anywhere in x in (0, 1e12], |nu| <= a few hundred. Exactly symmetric in
/// nu -> -nu by construction. Throws domain_error for x <= 0 or non-finite
/// inputs.
double log_bessel_k(double order, double argument);

/// K_{nu+1}(x) / K_nu(x), computed as exp of a log difference. Strictly
/// positive.
double bessel_ratio_m(double order, double argument);

/// K_{nu+2}(x) K_nu(x) / K_{nu+1}(x)^2. Always > 1 for real nu and x > 0.
double bessel_ratio_n(double order, double argument);

/// expm1 of the log of bessel_ratio_n, i.e. N_{nu+2} - 1 without cancellation
/// when the ratio is close to 1 (large arguments).
double bessel_ratio_n_minus_1(double order, double argument);

/// Relative deviation of log_bessel_k from one closed-form small/large
/// argument limit, measured on the log values.
struct AsymptoticProbe {
  const char* regime;  // "small-x order>0", "small-x order<0", "large-x", "order->0"
  double order;
  double argument;
  double log_value;      // implementation result
  double log_asymptote;  // closed-form limit
  double rel_deviation;  // |log_value - log_asymptote| / max(1, |log_asymptote|)
};

/// Evaluates log_bessel_k against its four closed-form asymptotic regimes at
/// fixed probe points (documented in the struct) and reports the deviations.
/// Intended for diagnostics and the test suite.
std::array<AsymptoticProbe, 4> check_asymptotic_regimes(double order);

}  // namespace ghrain

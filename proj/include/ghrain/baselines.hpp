#pragma once

#include <vector>

namespace ghrain {

/// Generalised Pareto. Support [mu, inf) for kappa >= 0 and
/// [mu, mu - sigma/kappa] for kappa < 0.
struct GPParams {
  double kappa = 0.1;  // shape
  double mu = 0.0;     // threshold / location
  double sigma = 1.0;  // scale, > 0
};

/// Generalised Weibull (extended Burr XII). r = 0 is the Weibull branch.
struct GWParams {
  double c = 1.0;   // > 0
  double r = 0.0;
  double nu = 1.0;  // > 0
};

double gp_logpdf(const GPParams& params, double x);
double gw_logpdf(const GWParams& params, double x);
double burr_logpdf(double c, double k, double sigma, double x);

/// Survival functions (used for return levels).
double gp_survival(const GPParams& params, double x);
double gw_survival(const GWParams& params, double x);
/// Exceedance quantile: x with survival(x) = p.
double gw_survival_inverse(const GWParams& params, double p);

struct GPFit {
  GPParams params;
  double se_kappa = 0.0;
  double se_sigma = 0.0;
  double cov_kappa_sigma = 0.0;
  std::size_t n_exceedances = 0;
  double log_likelihood = 0.0;
};

/// Maximum-likelihood GP fit to the exceedances of `data` over `threshold`
/// (values strictly above it). Requires at least 30 exceedances; standard
/// errors come from the inverse observed information.
GPFit fit_gp_exceedances(const std::vector<double>& data, double threshold);

struct GWFit {
  GWParams params;
  std::vector<std::vector<double>> covariance;  // of (c, r, nu)
  std::size_t n = 0;
  double log_likelihood = 0.0;
};

/// Maximum-likelihood GW fit to positive values; the r = 0 Weibull branch is
/// handled as an interior limit of the optimizer.
GWFit fit_gw(const std::vector<double>& values);

/// Report from fitting the decay of the heavy-tail GH limit construction.
struct TailSlopeReport {
  double kappa = 0.0;
  double fitted_slope = 0.0;
  double expected_slope = 0.0;
  double rel_deviation = 0.0;
  bool semi_log = false;  // true for the exponential (kappa -> 0) branch
  std::vector<double> probe_x;
};

/// Builds the limiting GH regime that matches a generalised Pareto tail and
/// fits its density decay over [probe_lo, probe_hi]. For kappa > 0 the
/// density's log-log slope must approach -(1/kappa + 1); pass kappa = 0 for
/// the exponential branch, where the semi-log slope approaches -delta.
/// Bounded tails (kappa < 0) are unsupported and throw domain_error.
TailSlopeReport verify_tail_matching(double kappa, double probe_lo,
                                     double probe_hi, double delta = 1e-8);

}  // namespace ghrain

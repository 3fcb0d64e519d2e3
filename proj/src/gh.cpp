#include "ghrain/gh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "ghrain/errors.hpp"
#include "ghrain/specfun.hpp"

namespace ghrain {

namespace {
constexpr double kLog2Pi = 1.8378770664093454836;

std::string param_string(const GHParams& p) {
  return "lambda=" + std::to_string(p.lambda) + " chi=" + std::to_string(p.chi) +
         " psi=" + std::to_string(p.psi) + " mu=" + std::to_string(p.mu) +
         " sigma=" + std::to_string(p.sigma) + " gamma=" + std::to_string(p.gamma);
}
}  // namespace

void GHParams::validate() const {
  if (!(chi > 0.0) || !(psi > 0.0) || !(sigma > 0.0) || !std::isfinite(lambda) ||
      !std::isfinite(mu) || !std::isfinite(gamma) || !std::isfinite(chi) ||
      !std::isfinite(psi) || !std::isfinite(sigma))
    throw std::domain_error("GHParams: require chi, psi, sigma > 0 and finite fields (" +
                            param_string(*this) + ")");
}

void GIGParams::validate() const {
  if (!(chi > 0.0) || !(psi > 0.0) || !std::isfinite(lambda))
    throw std::domain_error("GIGParams: require chi > 0, psi > 0, finite lambda");
}

GHParams StandardizedGHParams::to_gh() const {
  return GHParams{lambda, 1.0, psi, mu, sigma, tau * sigma};
}

GhDensity::GhDensity(const GHParams& p) : params_(p) {
  p.validate();
  tail_coef_ = p.psi + p.gamma * p.gamma / p.sigma;
  order_ = p.lambda - 0.5;
  skew_slope_ = p.gamma / p.sigma;
  half_minus_lambda_ = 0.5 - p.lambda;
  log_const_ = 0.5 * p.lambda * (std::log(p.psi) - std::log(p.chi)) +
               half_minus_lambda_ * std::log(tail_coef_) - 0.5 * kLog2Pi -
               0.5 * std::log(p.sigma) -
               log_bessel_k(p.lambda, std::sqrt(p.chi * p.psi));
  const double root = std::sqrt(tail_coef_ / p.sigma);
  right_rate_ = root - skew_slope_;
  left_rate_ = root + skew_slope_;
}

double GhDensity::logpdf(double x) const {
  const double dx = x - params_.mu;
  const double q =
      std::sqrt((params_.chi + dx * dx / params_.sigma) * tail_coef_);
  return log_const_ + log_bessel_k(order_, q) + dx * skew_slope_ -
         half_minus_lambda_ * std::log(q);
}

double gh_logpdf(const GHParams& params, double x) {
  return GhDensity(params).logpdf(x);
}

double gh_logpdf(const StandardizedGHParams& params, double x) {
  return GhDensity(params.to_gh()).logpdf(x);
}

double gig_moment(const GIGParams& params, int k) {
  params.validate();
  const double omega = std::sqrt(params.chi * params.psi);
  return std::exp(0.5 * k * (std::log(params.chi) - std::log(params.psi)) +
                  log_bessel_k(params.lambda + k, omega) -
                  log_bessel_k(params.lambda, omega));
}

MeanVar gig_mean_var(const GIGParams& params) {
  const double ew = gig_moment(params, 1);
  // Var = E(W)^2 (N_{lambda+2} - 1); the expm1 form keeps precision when the
  // Bessel ratio is close to 1.
  const double omega = std::sqrt(params.chi * params.psi);
  const double n1 = bessel_ratio_n_minus_1(params.lambda, omega);
  return {ew, ew * ew * n1};
}

MeanVar gh_mean_var(const GHParams& params) {
  params.validate();
  const MeanVar w = gig_mean_var({params.lambda, params.chi, params.psi});
  return {params.mu + params.gamma * w.mean,
          params.gamma * params.gamma * w.variance + params.sigma * w.mean};
}

MeanVar gh_mean_var(const StandardizedGHParams& params) {
  return gh_mean_var(params.to_gh());
}

StandardizedGHParams gh_standardize(double lambda, double psi, double tau) {
  if (!(psi > 0.0) || !std::isfinite(lambda) || !std::isfinite(tau))
    throw std::domain_error("gh_standardize: psi must be positive; lambda, tau finite");
  const double sqrt_psi = std::sqrt(psi);
  const double m = bessel_ratio_m(lambda, sqrt_psi);
  const double n1 = bessel_ratio_n_minus_1(lambda, sqrt_psi);
  // Positive root of  tau^2 m^2 n1 / psi * S^2 + m / sqrt(psi) * S - 1 = 0,
  // rearranged so the tau -> 0 limit S = sqrt(psi)/m is exact.
  const double sigma =
      2.0 * sqrt_psi / (m * (1.0 + std::sqrt(1.0 + 4.0 * n1 * tau * tau)));
  const double mu = -tau * sigma * m / sqrt_psi;
  return {lambda, psi, tau, sigma, mu};
}

double gh_lower_mass(const GHParams& params, double x) {
  const GhDensity d(params);
  const MeanVar mv = gh_mean_var(params);
  const double scale = std::sqrt(std::max(mv.variance, 1e-12));
  auto f = [&](double t) { return std::exp(d.logpdf(t)); };
  QuadResult r = integrate_tail(f, x, -1, 0.25 * scale, 1e-16, 400);
  if (!r.converged)
    throw numerical_error("gh_lower_mass: tail quadrature did not converge at x=" +
                          std::to_string(x) + " (" + param_string(params) + ")");
  return std::min(std::max(r.value, 0.0), 1.0);
}

double gh_cdf(const GHParams& params, double x) {
  const GhDensity d(params);
  const MeanVar mv = gh_mean_var(params);
  const double scale = std::sqrt(std::max(mv.variance, 1e-12));
  auto f = [&](double t) { return std::exp(d.logpdf(t)); };
  if (x <= mv.mean) {
    QuadResult r = integrate_tail(f, x, -1, 0.25 * scale, 1e-12, 400);
    if (!r.converged)
      throw numerical_error("gh_cdf: lower-tail quadrature did not converge at x=" +
                            std::to_string(x));
    return std::min(std::max(r.value, 0.0), 1.0);
  }
  QuadResult r = integrate_tail(f, x, +1, 0.25 * scale, 1e-12, 400);
  if (!r.converged)
    throw numerical_error("gh_cdf: upper-tail quadrature did not converge at x=" +
                          std::to_string(x));
  return std::min(std::max(1.0 - r.value, 0.0), 1.0);
}

// ---------------------------------------------------------------------------
// GIG sampling: Hormann & Leydold's three-regime generator in the two
// parameter form  v^{lambda-1} exp(-omega (v + 1/v) / 2 ), with ratio-of-
// uniforms (mode-shifted or plain) in the well-behaved regimes and a
// three-piece composition-rejection envelope for tiny omega.
// ---------------------------------------------------------------------------
namespace {

double unit_uniform(Rng& rng) {
  // (0, 1) open; avoids log(0) downstream.
  std::uniform_real_distribution<double> u(std::numeric_limits<double>::min(), 1.0);
  return u(rng);
}

// log unnormalized two-parameter GIG density
double gig2_log_density(double p, double omega, double v) {
  return (p - 1.0) * std::log(v) - 0.5 * omega * (v + 1.0 / v);
}

// mode of the two-parameter density for shape p >= 0
double gig2_mode(double p, double omega) {
  if (p >= 1.0)
    return (std::sqrt((p - 1.0) * (p - 1.0) + omega * omega) + (p - 1.0)) / omega;
  return omega / (std::sqrt((1.0 - p) * (1.0 - p) + omega * omega) + (1.0 - p));
}

// Mode-shifted ratio-of-uniforms; valid regime omega > 1 or p > 1.
double gig2_sample_rou_shift(double p, double omega, Rng& rng) {
  const double m = gig2_mode(p, omega);
  const double lg_m = gig2_log_density(p, omega, m);
  // Bounding u-range: roots of a cubic (stationary points of
  // (v - m) exp(g(v)/2)), solved with Cardano.
  const double two_over_omega = 2.0 / omega;
  const double c1 = (-two_over_omega * (p + 1.0) - m) / 3.0;
  const double c2 = two_over_omega * (p - 1.0) * m - 1.0;
  double c3 = c2 / 3.0 - c1 * c1;
  c3 = std::sqrt(-std::min(c3, 0.0));
  const double c4 = c1 * (2.0 * c1 * c1 - c2) + m;
  double c5 = (c3 > 0.0) ? -c4 / (2.0 * c3 * c3 * c3) : 0.0;
  c5 = std::acos(std::min(std::max(c5, -1.0), 1.0)) / 3.0;
  const double c6 = 2.0 * c3;
  double v_minus = c6 * std::cos(c5 + 4.0 * std::numbers::pi / 3.0) - c1;
  double v_plus = c6 * std::cos(c5) - c1;
  v_plus = std::max(v_plus, v_minus);

  auto half_ratio = [&](double v) {
    return std::exp(0.5 * (gig2_log_density(p, omega, v) - lg_m));
  };
  const double u_minus = (v_minus - m) * half_ratio(v_minus);
  const double u_plus = (v_plus - m) * half_ratio(v_plus);
  const double u_span = u_plus - u_minus;

  for (;;) {
    const double u = u_span * unit_uniform(rng) + u_minus;
    const double w = unit_uniform(rng);
    const double v = u / w + m;
    if (v <= 0.0) continue;
    if (2.0 * std::log(w) <= gig2_log_density(p, omega, v) - lg_m) return v;
  }
}

// Plain ratio-of-uniforms (no shift); regime min(1/2, 2/3 sqrt(1-p)) < omega
// <= 1 and p <= 1.
double gig2_sample_rou(double p, double omega, Rng& rng) {
  const double m = gig2_mode(p, omega);
  const double lg_m = gig2_log_density(p, omega, m);
  const double x_peak =
      ((1.0 + p) + std::sqrt((1.0 + p) * (1.0 + p) + omega * omega)) / omega;
  const double u_plus =
      x_peak * std::exp(0.5 * (gig2_log_density(p, omega, x_peak) - lg_m));
  for (;;) {
    const double u = u_plus * unit_uniform(rng);
    const double w = unit_uniform(rng);
    const double v = u / w;
    if (2.0 * std::log(w) <= gig2_log_density(p, omega, v) - lg_m) return v;
  }
}

// Composition-rejection with a three-piece envelope (power head, power
// middle, exponential tail); regime omega <= min(1/2, 2/3 sqrt(1-p)), p < 1.
double gig2_sample_composition(double p, double omega, Rng& rng) {
  const double m = gig2_mode(p, omega);
  const double lg_m = gig2_log_density(p, omega, m);
  const double x0 = omega / (1.0 - p);
  const double two_over_omega = 2.0 / omega;
  const double xs = std::max(x0, two_over_omega);

  // Piece weights, all relative to the density scaled by exp(-lg_m).
  const double k1 = 1.0;  // envelope exp(g(x)-g(m)) <= 1 on (0, x0)
  const double a1 = k1 * x0;
  double k2 = 0.0, a2 = 0.0, x0_pow_p = 0.0;
  if (x0 < two_over_omega) {
    k2 = std::exp(-omega - lg_m);
    if (p > 0.0) {
      x0_pow_p = std::pow(x0, p);
      a2 = k2 * (std::pow(two_over_omega, p) - x0_pow_p) / p;
    } else {
      a2 = k2 * std::log(two_over_omega / x0);
    }
  }
  const double k3 = std::exp((p - 1.0) * std::log(xs) - lg_m);
  const double a3 = k3 * std::exp(-0.5 * xs * omega) * two_over_omega;
  const double total = a1 + a2 + a3;

  for (;;) {
    const double u = unit_uniform(rng);
    double v = unit_uniform(rng) * total;
    double x, envelope_log;
    if (v <= a1) {
      x = x0 * v / a1;
      envelope_log = 0.0;  // relative to lg_m
    } else if (v <= a1 + a2) {
      v -= a1;
      x = (p > 0.0) ? std::pow(x0_pow_p + v * p / k2, 1.0 / p)
                    : x0 * std::exp(v / k2);
      envelope_log = std::log(k2) + (p - 1.0) * std::log(x);
    } else {
      v -= a1 + a2;
      x = -two_over_omega *
          std::log(std::exp(-0.5 * xs * omega) - v * 0.5 * omega / k3);
      envelope_log = std::log(k3) - 0.5 * x * omega;
    }
    if (std::log(u) + envelope_log <= gig2_log_density(p, omega, x) - lg_m)
      return x;
  }
}

}  // namespace

double gig_sample(const GIGParams& params, Rng& rng) {
  params.validate();
  const double omega = std::sqrt(params.chi * params.psi);
  const double scale = std::sqrt(params.chi / params.psi);
  const double p = std::abs(params.lambda);
  double v;
  if (omega > 1.0 || p > 1.0)
    v = gig2_sample_rou_shift(p, omega, rng);
  else if (omega <= std::min(0.5, (2.0 / 3.0) * std::sqrt(1.0 - p)))
    v = gig2_sample_composition(p, omega, rng);
  else
    v = gig2_sample_rou(p, omega, rng);
  if (params.lambda < 0.0) v = 1.0 / v;
  return scale * v;
}

double gh_sample(const GHParams& params, Rng& rng) {
  params.validate();
  const double w = gig_sample({params.lambda, params.chi, params.psi}, rng);
  std::normal_distribution<double> normal(0.0, 1.0);
  return params.mu + params.gamma * w + std::sqrt(params.sigma * w) * normal(rng);
}

double gh_sample(const StandardizedGHParams& params, Rng& rng) {
  return gh_sample(params.to_gh(), rng);
}

namespace {

double inversion_sample(const GhDensity& dens, const GHParams& params,
                        double upper, double mass, Rng& rng) {
  const MeanVar mv = gh_mean_var(params);
  const double scale = std::sqrt(std::max(mv.variance, 1e-12));
  const double target = unit_uniform(rng) * mass;
  // Bracket: walk left until the lower mass falls below the target.
  double lo = upper - 0.5 * scale;
  double width = 0.5 * scale;
  while (gh_lower_mass(params, lo) > target) {
    width *= 2.0;
    lo -= width;
    if (width > 1e9 * scale)
      throw numerical_error("truncated_gh_sample: bracket search ran away");
  }
  auto f = [&](double x) { return gh_lower_mass(params, x) - target; };
  return brent_root(f, lo, upper, 1e-11 * scale);
}

}  // namespace

double truncated_gh_sample(const GHParams& params, double upper, Rng& rng) {
  params.validate();
  const GhDensity dens(params);
  const double mass = gh_lower_mass(params, upper);
  if (mass < 1e-12)
    throw numerical_error(
        "truncated_gh_sample: truncation mass " + std::to_string(mass) +
        " below 1e-12 at upper=" + std::to_string(upper) +
        "; the region is numerically unreachable");
  if (mass >= 0.2) {
    for (int i = 0; i < 10000; ++i) {
      const double x = gh_sample(params, rng);
      if (x <= upper) return x;
    }
    // fall through to inversion; should be unreachable at this mass
  }
  return inversion_sample(dens, params, upper, mass, rng);
}

GhCdfTable::GhCdfTable(const GHParams& params) : density_(params) {
  params.validate();
  const MeanVar mv = gh_mean_var(params);
  const double scale = std::sqrt(std::max(mv.variance, 1e-12));
  auto f = [&](double t) { return std::exp(density_.logpdf(t)); };

  // Panel boundaries: width-doubling outward from the mean, each panel split
  // into four sub-panels so the interpolant stays accurate near the centre.
  std::vector<double> breaks{mv.mean};
  for (int dir : {-1, +1}) {
    double edge = mv.mean;
    double width = 0.25 * scale;
    double prev = std::numeric_limits<double>::infinity();
    int decayed = 0;
    for (int k = 0; k < 120; ++k) {
      const double next = edge + dir * width;
      for (int j = 1; j <= 4; ++j)
        breaks.push_back(edge + dir * width * j / 4.0);
      const double seg =
          integrate_gk(f, std::min(edge, next), std::max(edge, next), 1e-15, 1e-12)
              .value;
      if (std::abs(seg) < 1e-16 && std::abs(seg) < 0.5 * prev) {
        if (++decayed >= 2) break;
      } else {
        decayed = 0;
      }
      prev = std::max(std::abs(seg), 1e-300);
      edge = next;
      width *= 2.0;
    }
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  std::vector<double> xs, cum;
  xs.push_back(breaks.front());
  cum.push_back(0.0);
  double running = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    running += integrate_gk(f, breaks[i], breaks[i + 1], 1e-15, 1e-13).value;
    xs.push_back(breaks[i + 1]);
    cum.push_back(running);
  }
  // Normalize to the computed total so the table is a proper CDF; the total
  // itself is 1 within quadrature error.
  const double total = cum.back();
  if (!(total > 0.0))
    throw numerical_error("GhCdfTable: non-positive total mass");
  for (auto& c : cum) c /= total;
  // Enforce strict monotonicity for the interpolant.
  std::vector<double> xs2{xs.front()}, cum2{cum.front()};
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (cum[i] > cum2.back() + 1e-300) {
      xs2.push_back(xs[i]);
      cum2.push_back(cum[i]);
    }
  }
  table_ = MonotoneCubic(std::move(xs2), std::move(cum2));
}

double GhCdfTable::cdf(double x) const { return table_(x); }

double GhCdfTable::inverse_cdf(double prob) const {
  return table_.inverse(prob);
}

double GhCdfTable::sample_truncated(double upper, Rng& rng) const {
  const double mass = cdf(upper);
  if (mass < 1e-12)
    throw numerical_error(
        "GhCdfTable: truncation mass " + std::to_string(mass) +
        " below 1e-12 at upper=" + std::to_string(upper));
  if (mass >= 0.2) {
    for (int i = 0; i < 10000; ++i) {
      const double x = gh_sample(density_.params(), rng);
      if (x <= upper) return x;
    }
  }
  const double u = unit_uniform(rng) * mass;
  return table_.inverse(u);
}

}  // namespace ghrain

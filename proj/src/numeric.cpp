#include "ghrain/numeric.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <deque>
#include <limits>

#include "ghrain/errors.hpp"

namespace ghrain {

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

// Gauss-Kronrod 15-point nodes/weights on [-1, 1] and embedded 7-point Gauss
// weights (Kronrod odd indices).
constexpr std::array<double, 15> kGkNodes = {
    -0.991455371120813, -0.949107912342759, -0.864864423359769,
    -0.741531185599394, -0.586087235467691, -0.405845151377397,
    -0.207784955007898, 0.0,                0.207784955007898,
    0.405845151377397,  0.586087235467691,  0.741531185599394,
    0.864864423359769,  0.949107912342759,  0.991455371120813};
constexpr std::array<double, 15> kGkWeights = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728, 0.204432940075298,
    0.190350578064785, 0.169004726639267, 0.140653259715525,
    0.104790010322250, 0.063092092629979, 0.022935322010529};
constexpr std::array<double, 7> kGaussWeights = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469, 0.381830050505119, 0.279705391489277,
    0.129484966168870};

struct Panel {
  double a, b, value, error;
};

Panel gk15(const std::function<double(double)>& f, double a, double b,
           int* evals) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double kronrod = 0.0, gauss = 0.0;
  for (int i = 0; i < 15; ++i) {
    const double v = f(mid + half * kGkNodes[i]);
    kronrod += kGkWeights[i] * v;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * v;
  }
  *evals += 15;
  kronrod *= half;
  gauss *= half;
  double err = std::abs(kronrod - gauss);
  // Standard QUADPACK-style sharpening of the error estimate.
  err = std::pow(200.0 * err, 1.5);
  if (err > std::abs(kronrod) * 1e-14) err = std::min(err, std::abs(kronrod));
  return {a, b, kronrod, std::max(err, std::abs(kronrod) * 5e-16)};
}

}  // namespace

QuadResult integrate_gk(const std::function<double(double)>& f, double a,
                        double b, double abs_tol, double rel_tol,
                        int max_subdivisions) {
  QuadResult out;
  if (a == b) {
    out.converged = true;
    return out;
  }
  std::vector<Panel> panels;
  panels.push_back(gk15(f, a, b, &out.evaluations));
  for (int iter = 0; iter < max_subdivisions; ++iter) {
    double total = 0.0, err = 0.0;
    std::size_t worst = 0;
    for (std::size_t i = 0; i < panels.size(); ++i) {
      total += panels[i].value;
      err += panels[i].error;
      if (panels[i].error > panels[worst].error) worst = i;
    }
    const double tol = std::max(abs_tol, rel_tol * std::abs(total));
    if (err <= tol) {
      out.value = total;
      out.error = err;
      out.converged = true;
      return out;
    }
    const Panel p = panels[worst];
    const double mid = 0.5 * (p.a + p.b);
    panels[worst] = gk15(f, p.a, mid, &out.evaluations);
    panels.push_back(gk15(f, mid, p.b, &out.evaluations));
  }
  double total = 0.0, err = 0.0;
  for (const auto& p : panels) {
    total += p.value;
    err += p.error;
  }
  out.value = total;
  out.error = err;
  out.converged = err <= std::max(abs_tol, rel_tol * std::abs(total));
  return out;
}

QuadResult integrate_tail(const std::function<double(double)>& f, double start,
                          int direction, double initial_width, double abs_tol,
                          int max_panels) {
  QuadResult out;
  double width = initial_width;
  double edge = start;
  double prev = std::numeric_limits<double>::infinity();
  int decayed = 0;
  for (int k = 0; k < max_panels; ++k) {
    const double next = edge + direction * width;
    const double lo = std::min(edge, next), hi = std::max(edge, next);
    QuadResult seg = integrate_gk(f, lo, hi, abs_tol * 0.1, 1e-12, 200);
    out.value += seg.value;
    out.error += seg.error;
    out.evaluations += seg.evaluations;
    const double mag = std::abs(seg.value);
    // Stop once panel masses shrink geometrically below tolerance; the
    // geometric ratio bounds the remaining tail.
    if (mag < abs_tol && mag < 0.5 * prev) {
      if (++decayed >= 2) {
        out.converged = true;
        return out;
      }
    } else {
      decayed = 0;
    }
    prev = std::max(mag, 1e-300);
    edge = next;
    width *= 2.0;
  }
  return out;  // converged stays false
}

double brent_root(const std::function<double(double)>& f, double a, double b,
                  double xtol, int max_iter) {
  double fa = f(a), fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0) == (fb > 0))
    throw numerical_error("brent_root: endpoints do not bracket a root");
  double c = a, fc = fa, d = b - a, e = d;
  for (int i = 0; i < max_iter; ++i) {
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol = 2.0 * std::numeric_limits<double>::epsilon() *
                           std::abs(b) +
                       0.5 * xtol;
    const double m = 0.5 * (c - b);
    if (std::abs(m) <= tol || fb == 0.0) return b;
    if (std::abs(e) < tol || std::abs(fa) <= std::abs(fb)) {
      d = e = m;
    } else {
      double s = fb / fa, p, q;
      if (a == c) {
        p = 2.0 * m * s;
        q = 1.0 - s;
      } else {
        const double qq = fa / fc, r = fb / fc;
        p = s * (2.0 * m * qq * (qq - r) - (b - a) * (r - 1.0));
        q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0) q = -q;
      p = std::abs(p);
      if (2.0 * p < std::min(3.0 * m * q - std::abs(tol * q), std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = e = m;
      }
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > tol) ? d : (m > 0 ? tol : -tol);
    fb = f(b);
    if ((fb > 0) == (fc > 0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
  }
  return b;
}

double quantile_sorted(const std::vector<double>& s, double prob) {
  if (s.empty()) throw numerical_error("quantile of empty sample");
  if (prob <= 0.0) return s.front();
  if (prob >= 1.0) return s.back();
  const double h = (static_cast<double>(s.size()) - 1.0) * prob;
  const std::size_t lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, s.size() - 1);
  const double w = h - static_cast<double>(lo);
  return (1.0 - w) * s[lo] + w * s[hi];
}

double quantile(std::vector<double> values, double prob) {
  std::sort(values.begin(), values.end());
  return quantile_sorted(values, prob);
}

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

double variance(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s / static_cast<double>(v.size() - 1);
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double mx = mean(x), my = mean(y);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  return sxy / sxx;
}

NelderMeadResult nelder_mead(
    const std::function<double(const std::vector<double>&)>& f,
    std::vector<double> start, std::vector<double> init_step, double ftol,
    int max_iter) {
  const std::size_t n = start.size();
  std::vector<std::vector<double>> simplex(n + 1, start);
  std::vector<double> fv(n + 1);
  for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += init_step[i];
  for (std::size_t i = 0; i <= n; ++i) fv[i] = f(simplex[i]);

  NelderMeadResult out;
  auto order = [&] {
    std::vector<std::size_t> idx(n + 1);
    for (std::size_t i = 0; i <= n; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    std::vector<std::vector<double>> s2;
    std::vector<double> f2;
    for (auto i : idx) {
      s2.push_back(simplex[i]);
      f2.push_back(fv[i]);
    }
    simplex.swap(s2);
    fv.swap(f2);
  };

  for (int iter = 0; iter < max_iter; ++iter) {
    order();
    if (std::abs(fv[n] - fv[0]) <=
        ftol * (std::abs(fv[0]) + std::abs(fv[n]) + 1e-30)) {
      out.converged = true;
      out.iterations = iter;
      break;
    }
    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        centroid[j] += simplex[i][j] / static_cast<double>(n);
    auto blend = [&](double t) {
      std::vector<double> p(n);
      for (std::size_t j = 0; j < n; ++j)
        p[j] = centroid[j] + t * (simplex[n][j] - centroid[j]);
      return p;
    };
    std::vector<double> xr = blend(-1.0);
    double fr = f(xr);
    if (fr < fv[0]) {
      std::vector<double> xe = blend(-2.0);
      double fe = f(xe);
      if (fe < fr) {
        simplex[n] = xe;
        fv[n] = fe;
      } else {
        simplex[n] = xr;
        fv[n] = fr;
      }
    } else if (fr < fv[n - 1]) {
      simplex[n] = xr;
      fv[n] = fr;
    } else {
      std::vector<double> xc = blend(fr < fv[n] ? -0.5 : 0.5);
      double fc = f(xc);
      if (fc < std::min(fr, fv[n])) {
        simplex[n] = xc;
        fv[n] = fc;
      } else {
        for (std::size_t i = 1; i <= n; ++i) {
          for (std::size_t j = 0; j < n; ++j)
            simplex[i][j] = simplex[0][j] + 0.5 * (simplex[i][j] - simplex[0][j]);
          fv[i] = f(simplex[i]);
        }
      }
    }
    out.iterations = iter + 1;
  }
  order();
  out.x = simplex[0];
  out.fmin = fv[0];
  return out;
}

std::vector<std::vector<double>> numeric_hessian(
    const std::function<double(const std::vector<double>&)>& f,
    const std::vector<double>& x, double rel_step) {
  const std::size_t n = x.size();
  std::vector<double> h(n);
  for (std::size_t i = 0; i < n; ++i)
    h[i] = rel_step * std::max(1.0, std::abs(x[i]));
  std::vector<std::vector<double>> hess(n, std::vector<double>(n, 0.0));
  const double f0 = f(x);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      std::vector<double> p = x;
      if (i == j) {
        p[i] = x[i] + h[i];
        const double fp = f(p);
        p[i] = x[i] - h[i];
        const double fm = f(p);
        hess[i][i] = (fp - 2.0 * f0 + fm) / (h[i] * h[i]);
      } else {
        p[i] = x[i] + h[i];
        p[j] = x[j] + h[j];
        const double fpp = f(p);
        p[j] = x[j] - h[j];
        const double fpm = f(p);
        p[i] = x[i] - h[i];
        const double fmm = f(p);
        p[j] = x[j] + h[j];
        const double fmp = f(p);
        hess[i][j] = hess[j][i] = (fpp - fpm - fmp + fmm) / (4.0 * h[i] * h[j]);
      }
    }
  }
  return hess;
}

std::vector<std::vector<double>> spd_inverse(std::vector<std::vector<double>> a) {
  const std::size_t n = a.size();
  // Cholesky a = L L^T
  std::vector<std::vector<double>> l(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double s = a[i][j];
      for (std::size_t k = 0; k < j; ++k) s -= l[i][k] * l[j][k];
      if (i == j) {
        if (s <= 0.0)
          throw numerical_error("spd_inverse: matrix not positive definite");
        l[i][i] = std::sqrt(s);
      } else {
        l[i][j] = s / l[j][j];
      }
    }
  }
  // Invert L, then inv(a) = L^-T L^-1
  std::vector<std::vector<double>> li(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    li[i][i] = 1.0 / l[i][i];
    for (std::size_t j = 0; j < i; ++j) {
      double s = 0.0;
      for (std::size_t k = j; k < i; ++k) s -= l[i][k] * li[k][j];
      li[i][j] = s / l[i][i];
    }
  }
  std::vector<std::vector<double>> inv(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      double s = 0.0;
      for (std::size_t k = i; k < n; ++k) s += li[k][i] * li[k][j];
      inv[i][j] = inv[j][i] = s;
    }
  return inv;
}

bool poly_roots_outside_unit_circle(const std::vector<double>& coeffs) {
  // Roots of 1 - c1 z - ... - cp z^p. Strip trailing zeros first.
  std::vector<double> c = coeffs;
  while (!c.empty() && c.back() == 0.0) c.pop_back();
  if (c.empty()) return true;
  if (c.size() == 1) return std::abs(c[0]) < 1.0;
  // Durand-Kerner on p(z) = -c_p z^p - ... - c_1 z + 1, monic-normalized.
  const std::size_t p = c.size();
  std::vector<std::complex<double>> a(p + 1);
  a[0] = 1.0;
  for (std::size_t i = 1; i <= p; ++i) a[i] = -c[i - 1];
  const std::complex<double> lead = a[p];
  for (auto& v : a) v /= lead;
  auto eval = [&](std::complex<double> z) {
    std::complex<double> acc = 0.0;
    for (std::size_t i = p + 1; i-- > 0;) acc = acc * z + a[i];
    return acc;
  };
  std::vector<std::complex<double>> roots(p);
  std::complex<double> seed(0.4, 0.9);
  std::complex<double> cur(1.0, 0.0);
  for (std::size_t i = 0; i < p; ++i) {
    cur *= seed;
    roots[i] = cur;
  }
  for (int iter = 0; iter < 500; ++iter) {
    double moved = 0.0;
    for (std::size_t i = 0; i < p; ++i) {
      std::complex<double> denom = 1.0;
      for (std::size_t j = 0; j < p; ++j)
        if (j != i) denom *= roots[i] - roots[j];
      const std::complex<double> delta = eval(roots[i]) / denom;
      roots[i] -= delta;
      moved = std::max(moved, std::abs(delta));
    }
    if (moved < 1e-13) break;
  }
  for (const auto& r : roots)
    if (std::abs(r) <= 1.0 + 1e-12) return false;
  return true;
}

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  const std::size_t n = x_.size();
  if (n < 2 || y_.size() != n)
    throw numerical_error("MonotoneCubic: need >= 2 matching nodes");
  std::vector<double> d(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double dx = x_[i + 1] - x_[i];
    if (dx <= 0.0) throw numerical_error("MonotoneCubic: x not increasing");
    d[i] = (y_[i + 1] - y_[i]) / dx;
  }
  slope_.assign(n, 0.0);
  slope_[0] = d[0];
  slope_[n - 1] = d[n - 2];
  for (std::size_t i = 1; i + 1 < n; ++i)
    slope_[i] = (d[i - 1] * d[i] <= 0.0)
                    ? 0.0
                    : 2.0 * d[i - 1] * d[i] / (d[i - 1] + d[i]);  // harmonic
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (d[i] == 0.0) {
      slope_[i] = slope_[i + 1] = 0.0;
      continue;
    }
    const double a = slope_[i] / d[i], b = slope_[i + 1] / d[i];
    const double s = a * a + b * b;
    if (s > 9.0) {
      const double t = 3.0 / std::sqrt(s);
      slope_[i] = t * a * d[i];
      slope_[i + 1] = t * b * d[i];
    }
  }
}

std::size_t MonotoneCubic::locate(double x) const {
  auto it = std::upper_bound(x_.begin(), x_.end(), x);
  std::size_t i = static_cast<std::size_t>(it - x_.begin());
  if (i == 0) return 0;
  if (i >= x_.size()) return x_.size() - 2;
  return i - 1;
}

double MonotoneCubic::eval_segment(std::size_t i, double x) const {
  const double h = x_[i + 1] - x_[i];
  const double t = (x - x_[i]) / h;
  const double t2 = t * t, t3 = t2 * t;
  const double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t,
               h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
  return h00 * y_[i] + h10 * h * slope_[i] + h01 * y_[i + 1] +
         h11 * h * slope_[i + 1];
}

double MonotoneCubic::operator()(double x) const {
  if (x <= x_.front()) return y_.front();
  if (x >= x_.back()) return y_.back();
  return eval_segment(locate(x), x);
}

double MonotoneCubic::inverse(double y) const {
  if (y <= y_.front()) return x_.front();
  if (y >= y_.back()) return x_.back();
  auto it = std::upper_bound(y_.begin(), y_.end(), y);
  std::size_t i = static_cast<std::size_t>(it - y_.begin());
  i = (i == 0) ? 0 : std::min(i - 1, x_.size() - 2);
  double lo = x_[i], hi = x_[i + 1];
  // Bisection + secant polish within the segment.
  for (int k = 0; k < 80; ++k) {
    const double mid = 0.5 * (lo + hi);
    if (eval_segment(i, mid) < y)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < 1e-14 * (1.0 + std::abs(hi))) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace ghrain

#include "latgad/identities.hpp"

#include "latgad/exact.hpp"
#include "latgad/numeric.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/math/special_functions/zeta.hpp>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include <array>
#include <cmath>
#include <numbers>

namespace latgad {

using std::numbers::pi;

double binom_sum(const SumSpec& s) {
  if (s.k < 0) throw Error(ErrorKind::InvalidInput, "k must be non-negative");
  if (s.alternating) {
    // The terms cancel down to roughly 2^-k of their size, so accumulate in
    // 50 significant digits.
    using Big = boost::multiprecision::cpp_bin_float_50;
    Big acc = 0;
    Big binom = 1;
    const Big p = s.p;
    for (int i = 0; i <= s.k; ++i) {
      const Big term = binom * pow(abs(Big(i) - Big(s.tau)), p);
      acc += (i & 1) ? -term : term;
      binom = binom * (s.k - i) / (i + 1);
    }
    return static_cast<double>(acc);
  }
  CompensatedSum acc;
  for (int i = 0; i <= s.k; ++i) {
    const double term = binomial(s.k, i) * std::pow(std::fabs(i - s.tau), s.p);
    acc.add(s.alternating && (i & 1) ? -term : term);
  }
  return acc.value();
}

double alt_sum_direct(int n, int m, double p) {
  const double sign = (n & 1) ? -1.0 : 1.0;  // (-1)^{n-i} = (-1)^n (-1)^i
  return sign * binom_sum(SumSpec{2 * n - m, static_cast<double>(n), p, true});
}

std::complex<double> lgamma_complex(std::complex<double> z) {
  static constexpr std::array<double, 9> c = {0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
                                              771.32342877765313,   -176.61502916214059,   12.507343278686905,
                                              -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  if (z.real() < 0.5) {
    // Gamma(z) Gamma(1-z) = pi / sin(pi z)
    return std::log(pi) - std::log(std::sin(pi * z)) - lgamma_complex(1.0 - z);
  }
  z -= 1.0;
  std::complex<double> x = c[0];
  for (int i = 1; i < 9; ++i) x += c[i] / (z + static_cast<double>(i));
  const std::complex<double> t = z + 7.5;
  return 0.5 * std::log(2.0 * pi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

double alt_sum_integral(int n, int m, double p) {
  if (n < 1 || m < 0 || m > n) throw Error(ErrorKind::InvalidInput, "need n >= 1 and 0 <= m <= n");
  if (!(p >= 1.0 && p < 2 * n - m)) throw Error(ErrorKind::InvalidInput, "need 1 <= p < 2n - m");
  const double s = std::sin(pi * p / 2.0);
  if (is_even_integer(p)) return 0.0;
  // For integer arguments Gamma(a+ix) = Gamma(1+ix) prod_{j<a}(j+ix) and
  // Gamma(1+ix)Gamma(1-ix) = pi x / sinh(pi x), so the integrand reduces to
  // (n-m)! n! x^{p-1} Re(1/P(x)) / pi with P the two finite products. This
  // avoids the e^{pi x} growth of the Gamma ratio altogether.
  const double scale = std::exp(std::lgamma(n - m + 1.0) + std::lgamma(n + 1.0)) / pi;
  auto f = [&](double x) -> double {
    if (x <= 0.0) return p == 1.0 ? scale / (std::tgamma(n - m + 1.0) * std::tgamma(n + 1.0)) : 0.0;
    double log_mag = (p - 1.0) * std::log(x);
    double angle = 0.0;
    for (int j = 1; j <= n - m; ++j) {
      log_mag -= 0.5 * std::log(j * static_cast<double>(j) + x * x);
      angle -= std::atan2(x, j);
    }
    for (int j = 1; j <= n; ++j) {
      log_mag -= 0.5 * std::log(j * static_cast<double>(j) + x * x);
      angle += std::atan2(x, j);
    }
    return scale * std::exp(log_mag) * std::cos(angle);
  };
  boost::math::quadrature::exp_sinh<double> integrator;
  double err = 0.0;
  const double I = integrator.integrate(f, 1e-14, &err);
  return -2.0 * s * binomial(2 * n - m, n) * I;
}

Skp s_kp(int k, double p) {
  if (k < 3 || !(p >= 1.0) || !(p < k)) throw Error(ErrorKind::InvalidInput, "need k >= 3 and 1 <= p < k");
  Skp out;
  const int half = k / 2;
  const double central = binomial(k, half);
  if (is_integer(p)) {
    const auto exact = exact::alternating_binom_sum(static_cast<unsigned>(k), half, static_cast<unsigned>(p));
    out.exact = true;
    out.value = static_cast<double>(exact) / central;
  } else {
    out.value = binom_sum(SumSpec{k, static_cast<double>(half), p, true}) / central;
  }
  out.sign = out.value > 0 ? 1 : out.value < 0 ? -1 : 0;
  if (is_even_integer(p)) {
    out.predicted_sign = 0;
  } else {
    const int e = half + static_cast<int>(std::floor(p / 2.0)) + 1;
    out.predicted_sign = (e % 2 == 0) ? 1 : -1;
  }
  out.lower_bound = c_p_limit(p).value;
  return out;
}

CpLimit c_p_limit(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw Error(ErrorKind::InvalidInput, "need finite p >= 1");
  CpLimit out;
  const double s = is_even_integer(p) ? 0.0 : std::fabs(std::sin(pi * p / 2.0));
  out.value = 2.0 * s * boost::math::zeta(p + 1.0) * (2.0 - std::pow(2.0, -p)) * std::tgamma(p + 1.0) /
              std::pow(pi, p + 1.0);
  out.weaker = 4.0 * s * std::pow(p / (std::numbers::e * pi), p);
  out.holds = out.value >= out.weaker;
  return out;
}

NonAltBound non_alt_bound_check(int k, double p, int c) {
  if (k < 2 || !(p >= 1.0) || !(p < k) || c < 0) {
    throw Error(ErrorKind::InvalidInput, "need k >= 2, 1 <= p < k and c >= 0");
  }
  NonAltBound out;
  out.lhs = binom_sum(SumSpec{k, (k - c) / 2.0, p, false});
  const int kc = k + c;
  out.bound11 = 11.0 * binomial(kc, kc / 2) * std::pow(p * kc / 2.0, (p + 1.0) / 2.0);
  out.pass = out.lhs <= out.bound11;
  if (c == 1) {
    out.bound44 = 44.0 * binomial(k, k / 2) * std::pow(p * k / 2.0, (p + 1.0) / 2.0);
    out.pass = out.pass && out.lhs <= *out.bound44;
  }
  return out;
}

RamanujanCheck ramanujan_check(int k, double x) {
  if (k < 0 || x == 0.0 || !std::isfinite(x)) throw Error(ErrorKind::InvalidInput, "need k >= 0 and finite x != 0");
  auto log_lhs = [x](int kk) {
    const std::complex<double> L =
        2.0 * std::lgamma(kk + 1.0) - lgamma_complex({kk + 1.0, x}) - lgamma_complex({kk + 1.0, -x});
    return L.real();
  };
  // log(sinh(pi x)/(pi x)) without overflow
  const double ax = std::fabs(x);
  double log_rhs = ax * pi + std::log1p(-std::exp(-2.0 * pi * ax)) - std::log(2.0 * pi * ax);
  for (int j = 1; j <= k; ++j) log_rhs -= std::log1p((x / j) * (x / j));
  RamanujanCheck out;
  const double ll = log_lhs(k);
  out.lhs = std::exp(ll);
  out.rhs = std::exp(log_rhs);
  out.residual = std::fabs(std::expm1(ll - log_rhs));
  double prev = log_lhs(0);
  for (int kk = 1; kk <= k; ++kk) {
    const double cur = log_lhs(kk);
    out.monotone = out.monotone && cur < prev;
    prev = cur;
  }
  return out;
}

double theta_p(double p, double tau) {
  if (!(tau > 0.0) || !(p > 0.0)) throw Error(ErrorKind::InvalidInput, "need tau > 0 and p > 0");
  CompensatedSum acc;
  acc.add(1.0);
  for (long long z = 1;; ++z) {
    const double term = 2.0 * std::exp(-tau * std::pow(static_cast<double>(z), p));
    acc.add(term);
    if (term < 1e-18) break;
  }
  return acc.value();
}

SvpConstants svp_constants(double p) {
  if (!(p > 2.0) || !std::isfinite(p)) throw Error(ErrorKind::InvalidInput, "need finite p > 2");
  const double scale = std::pow(2.0, -p);
  auto objective = [&](double log_tau) {
    const double tau = std::exp(log_tau);
    return tau * scale + std::log(theta_p(p, tau));
  };
  const auto [arg, val] = boost::math::tools::brent_find_minima(objective, -12.0, 12.0, 50);
  SvpConstants out;
  out.p = p;
  out.tau = std::exp(arg);
  out.W = std::exp(val);
  if (out.W < 2.0) out.C = 1.0 / (1.0 - std::log2(out.W));
  return out;
}

double find_p0(double tol) {
  auto g = [](double p) { return svp_constants(p).W - 2.0; };
  auto stop = [tol](double lo, double hi) { return hi - lo < tol; };
  const auto [lo, hi] = boost::math::tools::bisect(g, 2.0 + 1e-9, 3.0, stop);
  return 0.5 * (lo + hi);
}

}  // namespace latgad

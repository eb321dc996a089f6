#pragma once

#include <complex>
#include <optional>

namespace latgad {

struct SumSpec {
  int k = 1;
  double tau = 0.0;
  double p = 1.0;
  bool alternating = false;
};

// sum_i (+-1)^i C(k,i) |i - tau|^p. The alternating form is accumulated in
// 50-digit arithmetic, the plain one with compensated summation.
double binom_sum(const SumSpec& s);

// sum_i (-1)^{n-i} C(2n-m, i) |n-i|^p
double alt_sum_direct(int n, int m, double p);

// Same quantity through the integral representation over [0, inf). The Gamma
// ratio is expanded into finite products, valid because n and m are integers.
// Needs n >= 1, 0 <= m <= n, 1 <= p < 2n - m.
double alt_sum_integral(int n, int m, double p);

// log Gamma on the complex plane (Lanczos, with reflection for Re z < 1/2).
// The imaginary part is only defined modulo 2 pi.
std::complex<double> lgamma_complex(std::complex<double> z);

struct Skp {
  double value = 0.0;
  int sign = 0;            // sign of value, 0 when it vanishes
  int predicted_sign = 0;  // (-1)^{floor(k/2)+floor(p/2)+1}, 0 for even p
  double lower_bound = 0.0;
  bool exact = false;      // integer p: value derived from an exact integer sum
};

// S_{k,p} = sum_i (-1)^i C(k,i)|i - floor(k/2)|^p / C(k, floor(k/2)).
Skp s_kp(int k, double p);

struct CpLimit {
  double value = 0.0;   // 2|sin(pi p/2)| zeta(p+1) (2 - 2^-p) Gamma(p+1) / pi^{p+1}
  double weaker = 0.0;  // 4|sin(pi p/2)| (p/(e pi))^p
  bool holds = true;    // value >= weaker
};
CpLimit c_p_limit(double p);

struct NonAltBound {
  double lhs = 0.0;
  double bound11 = 0.0;
  std::optional<double> bound44;  // only for c = 1
  bool pass = true;
};
// sum_i C(k,i)|i - (k-c)/2|^p against the constant-11 bound (and 44 when c = 1).
NonAltBound non_alt_bound_check(int k, double p, int c);

struct RamanujanCheck {
  double lhs = 0.0;  // Gamma(k+1)^2 / (Gamma(k+1+ix) Gamma(k+1-ix))
  double rhs = 0.0;  // sinh(pi x)/(pi x) prod_j (1 + x^2/j^2)^-1
  double residual = 0.0;
  bool monotone = true;  // lhs(k') strictly decreasing for k' = 0..k
};
RamanujanCheck ramanujan_check(int k, double x);

// sum_{z in Z} exp(-tau |z|^p)
double theta_p(double p, double tau);

struct SvpConstants {
  double p = 0.0;
  double W = 0.0;    // min over tau > 0 of exp(tau/2^p) Theta_p(tau)
  double tau = 0.0;  // minimiser
  std::optional<double> C;  // 1/(1 - log2 W), defined only when W < 2
};
SvpConstants svp_constants(double p);
// Root of W_p = 2 on (2, 3].
double find_p0(double tol = 1e-10);

}  // namespace latgad

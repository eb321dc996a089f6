#include "latgad/exact.hpp"

namespace latgad::exact {

BigInt ipow(const BigInt& base, unsigned exponent) {
  BigInt result = 1;
  BigInt b = base;
  while (exponent) {
    if (exponent & 1U) result *= b;
    exponent >>= 1;
    if (exponent) b *= b;
  }
  return result;
}

BigInt abs_pow_sum(const std::vector<long long>& v, unsigned p) {
  BigInt s = 0;
  for (long long x : v) s += ipow(BigInt(x < 0 ? -x : x), p);
  return s;
}

BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r *= (n - k + i);
    r /= i;
  }
  return r;
}

BigInt alternating_binom_sum(unsigned k, long long tau, unsigned p) {
  BigInt s = 0;
  BigInt c = 1;
  for (unsigned i = 0; i <= k; ++i) {
    const long long d = static_cast<long long>(i) - tau;
    const BigInt term = c * ipow(BigInt(d < 0 ? -d : d), p);
    if (i & 1U) {
      s -= term;
    } else {
      s += term;
    }
    c = c * (k - i) / (i + 1);
  }
  return s;
}

}  // namespace latgad::exact

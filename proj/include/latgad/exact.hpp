#pragma once

// Arbitrary-precision integer helpers for identities that must vanish exactly.

#include <boost/multiprecision/cpp_int.hpp>

#include <vector>

namespace latgad::exact {

using BigInt = boost::multiprecision::cpp_int;

BigInt ipow(const BigInt& base, unsigned exponent);
BigInt abs_pow_sum(const std::vector<long long>& v, unsigned p);
BigInt binomial(unsigned n, unsigned k);

// Alternating sum  sum_i (-1)^i C(k,i) |i - tau|^p  for integer tau and p.
BigInt alternating_binom_sum(unsigned k, long long tau, unsigned p);

}  // namespace latgad::exact

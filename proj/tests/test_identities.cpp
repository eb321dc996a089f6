#include <doctest.h>

#include "latgad/exact.hpp"
#include "latgad/hmatrix.hpp"
#include "latgad/identities.hpp"
#include "latgad/numeric.hpp"

#include <boost/math/special_functions/zeta.hpp>

#include <cmath>
#include <numbers>

using namespace latgad;
using std::numbers::pi;

TEST_CASE("hand-computed alternating sums") {
  CHECK(binom_sum({3, 1.0, 1.0, true}) == doctest::Approx(2.0));
  CHECK(binom_sum({4, 2.0, 1.0, true}) == doctest::Approx(-4.0));
  CHECK(binom_sum({4, 2.0, 2.0, true}) == doctest::Approx(0.0));
  CHECK(binom_sum({4, 2.0, 1.0, false}) == doctest::Approx(12.0));
}

TEST_CASE("integral representation agrees with the direct sum") {
  CHECK(alt_sum_direct(2, 1, 1.0) == doctest::Approx(binom_sum({3, 2.0, 1.0, true})));
  CHECK(alt_sum_direct(2, 1, 1.0) == doctest::Approx(-2.0));
  CHECK(alt_sum_integral(2, 1, 1.0) == doctest::Approx(alt_sum_direct(2, 1, 1.0)).epsilon(1e-6));
  CHECK(alt_sum_integral(3, 0, 1.5) == doctest::Approx(alt_sum_direct(3, 0, 1.5)).epsilon(1e-6));
  CHECK(alt_sum_integral(3, 0, 2.0) == 0.0);
  CHECK(std::fabs(alt_sum_direct(3, 0, 2.0)) < 1e-9);
  for (int n = 1; n <= 10; ++n) {
    for (int m = 0; m <= n; ++m) {
      for (double p = 1.0; p < 2 * n - m; p += 0.25) {
        const double direct = alt_sum_direct(n, m, p);
        const double integral = alt_sum_integral(n, m, p);
        if (is_even_integer(p)) {
          CHECK(std::fabs(direct) < 1e-6 * binomial(2 * n - m, n) * std::pow(n, p));
          continue;
        }
        CHECK_MESSAGE(integral == doctest::Approx(direct).epsilon(1e-6), "n=", n, " m=", m, " p=", p);
      }
    }
  }
  CHECK_THROWS_AS(alt_sum_integral(2, 1, 3.0), Error);
  CHECK_THROWS_AS(alt_sum_integral(2, 3, 1.0), Error);
  CHECK_THROWS_AS(alt_sum_integral(0, 0, 1.0), Error);
}

TEST_CASE("product form of the Gamma ratio matches complex log-Gamma") {
  // Gamma(a)Gamma(b) / (Gamma(a+ix)Gamma(b-ix)) * pi x / sinh(pi x) = (a-1)!(b-1)! / P(x)
  for (int a = 1; a <= 5; ++a) {
    for (int b = 1; b <= 5; ++b) {
      for (double x : {0.1, 0.7, 2.0, 5.5, 11.0}) {
        const std::complex<double> L = std::lgamma(a) + std::lgamma(b) - lgamma_complex({double(a), x}) -
                                       lgamma_complex({double(b), -x});
        const std::complex<double> lhs = std::exp(L + std::log(pi * x / std::sinh(pi * x)));
        std::complex<double> rhs = std::tgamma(a) * std::tgamma(b);
        for (int j = 1; j < a; ++j) rhs /= std::complex<double>(j, x);
        for (int j = 1; j < b; ++j) rhs /= std::complex<double>(j, -x);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(rhs));
      }
    }
  }
  // Gamma(1/2) = sqrt(pi), Gamma(5) = 24, reflection branch
  CHECK(std::exp(lgamma_complex({0.5, 0.0})).real() == doctest::Approx(std::sqrt(pi)).epsilon(1e-13));
  CHECK(std::exp(lgamma_complex({5.0, 0.0})).real() == doctest::Approx(24.0).epsilon(1e-13));
  CHECK(std::exp(lgamma_complex({-0.5, 0.0})).real() == doctest::Approx(-2.0 * std::sqrt(pi)).epsilon(1e-13));
}

TEST_CASE("S_{k,p} values and signs") {
  const auto a = s_kp(3, 1.0);
  CHECK(a.value == doctest::Approx(2.0 / 3.0));
  CHECK(a.sign == 1);
  CHECK(a.predicted_sign == 1);
  CHECK(a.exact);
  CHECK(std::fabs(s_kp(4, 1.0).value) == doctest::Approx(2.0 / 3.0));
  CHECK(a.value >= c_p_limit(1.0).value);
  CHECK(s_kp(5, 2.0).value == 0.0);
  CHECK(s_kp(5, 2.0).predicted_sign == 0);
  CHECK_THROWS_AS(s_kp(2, 1.0), Error);
  CHECK_THROWS_AS(s_kp(4, 4.0), Error);
}

TEST_CASE("S_{k,p} sign rule, pair equality, monotone decrease and limit bound") {
  for (double p : {1.0, 1.5, 2.5, 3.0, 3.5, 5.0, 6.5}) {
    double prev_even = std::numeric_limits<double>::infinity();
    for (int k = 3; k <= 40; ++k) {
      if (!(p < k)) continue;
      const auto s = s_kp(k, p);
      CHECK_MESSAGE(s.sign == s.predicted_sign, "k=", k, " p=", p);
      CHECK(std::fabs(s.value) >= s.lower_bound * (1 - 1e-12));
      if (k % 2 == 0) {
        CHECK(std::fabs(s.value) <= prev_even);
        prev_even = std::fabs(s.value);
        if (p < k - 1) {
          CHECK(std::fabs(s.value) == doctest::Approx(std::fabs(s_kp(k - 1, p).value)).epsilon(1e-12));
        }
      }
    }
  }
}

TEST_CASE("pair equality is exact for integer p") {
  for (unsigned p : {1U, 3U, 5U}) {
    for (unsigned k = 2; 2 * k <= 30; ++k) {
      if (p >= 2 * k - 1) continue;
      const auto even = exact::alternating_binom_sum(2 * k, k, p);
      const auto odd = exact::alternating_binom_sum(2 * k - 1, k - 1, p);
      // |even| / C(2k,k) == |odd| / C(2k-1,k-1) and C(2k,k) = 2 C(2k-1,k-1)
      CHECK(abs(even) == 2 * abs(odd));
    }
  }
}

TEST_CASE("limit constant") {
  CHECK(c_p_limit(1.0).value == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(c_p_limit(2.0).value == 0.0);
  CHECK(c_p_limit(4.0).value == 0.0);
  const auto three = c_p_limit(3.0);
  CHECK(three.weaker == doctest::Approx(4.0 * std::pow(3.0 / (std::numbers::e * pi), 3.0)));
  CHECK(three.weaker == doctest::Approx(0.173417).epsilon(1e-5));
  CHECK(three.value > 0.177);
  CHECK(three.value > three.weaker);
  for (double p = 1.0; p <= 20.0; p += 0.125) CHECK(c_p_limit(p).holds);
  // zeta cross-check: series with an integral tail estimate
  for (double s : {2.0, 2.5, 3.0, 4.5}) {
    double sum = 0.0;
    const int N = 200000;
    for (int j = 1; j < N; ++j) sum += std::pow(j, -s);
    sum += std::pow(N, 1 - s) / (s - 1) + 0.5 * std::pow(N, -s);
    CHECK(boost::math::zeta(s) == doctest::Approx(sum).epsilon(1e-12));
  }
}

TEST_CASE("non-alternating bounds") {
  const auto a = non_alt_bound_check(4, 1.0, 0);
  CHECK(a.lhs == doctest::Approx(12.0));
  CHECK(a.bound11 == doctest::Approx(132.0));
  CHECK(a.pass);
  const auto b = non_alt_bound_check(5, 2.0, 1);
  REQUIRE(b.bound44);
  CHECK(b.pass);
  for (int k = 2; k <= 30; ++k) {
    for (double p = 1.0; p < k; p += 0.5) {
      for (int c : {0, 1, 2, 3}) CHECK(non_alt_bound_check(k, p, c).pass);
    }
  }
  CHECK_THROWS_AS(non_alt_bound_check(3, 3.0, 0), Error);
}

TEST_CASE("Ramanujan product") {
  const auto one = ramanujan_check(1, 1.0);
  CHECK(one.rhs == doctest::Approx(std::sinh(pi) / pi * 0.5).epsilon(1e-13));
  CHECK(one.residual <= 1e-10);
  CHECK(ramanujan_check(10, 2.5).residual <= 1e-10);
  const auto tiny = ramanujan_check(4, 1e-7);
  CHECK(tiny.lhs == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(tiny.rhs == doctest::Approx(1.0).epsilon(1e-10));
  for (int k = 1; k <= 30; k += 3) {
    for (double x : {-3.0, 0.3, 1.0, 4.0, 9.0}) {
      const auto r = ramanujan_check(k, x);
      CHECK(r.residual <= 1e-10);
      CHECK(r.monotone);
    }
  }
  CHECK_THROWS_AS(ramanujan_check(3, 0.0), Error);
}

TEST_CASE("theta and SVP constants") {
  for (double p : {2.5, 3.0, 5.0})
    for (double tau : {1e-3, 0.5, 4.0, 50.0}) CHECK(theta_p(p, tau) >= 1.0);
  CHECK(theta_p(2.0, 1.0) == doctest::Approx(1 + 2 * (std::exp(-1) + std::exp(-4) + std::exp(-9) + std::exp(-16)))
                                 .epsilon(1e-9));
  double prev = 1e9;
  for (double p = 2.05; p <= 8.0; p += 0.25) {
    const auto c = svp_constants(p);
    CHECK(c.W < prev);
    prev = c.W;
    CHECK(c.W >= 1.0);
    CHECK(c.C.has_value() == (c.W < 2.0));
  }
  CHECK(svp_constants(3.0).W == doctest::Approx(1.589).epsilon(1e-3));
  CHECK(find_p0() == doctest::Approx(2.13972).epsilon(1e-3 / 2.13972));
  CHECK_FALSE(svp_constants(2.1).C.has_value());
  CHECK_THROWS_AS(svp_constants(2.0), Error);
}

TEST_CASE("parity eigenvalue equals 2^p times the alternating sum") {
  for (int k = 2; k <= 9; ++k) {
    for (double p : {1.0, 1.5, 2.5, 3.0}) {
      const double ts = (1 + ((k + 1) % 2 == 0 ? 1 : -1)) / 2.0;
      const HSpec spec{k, p, ts};
      const double lpar = eigenvalue(spec, (std::uint64_t{1} << k) - 1);
      const double want = std::pow(2.0, p) * binom_sum({k, double(k / 2), p, true});
      CHECK_MESSAGE(std::fabs(lpar) == doctest::Approx(std::fabs(want)).epsilon(1e-10), "k=", k, " p=", p);
    }
  }
}

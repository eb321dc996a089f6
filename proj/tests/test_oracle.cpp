#include <doctest.h>

#include "latgad/gadgets.hpp"
#include "latgad/oracle.hpp"
#include "latgad/reductions.hpp"

#include <cmath>
#include <random>
#include <sstream>

using namespace latgad;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an exception");
  return ErrorKind::Internal;
}

CspFormula parse(const std::string& text) {
  std::istringstream is(text);
  return parse_dimacs(is);
}

const IsolatingGadget& ip3() {
  static const IsolatingGadget g = find_isolating_parallelepiped(3, 3.0);
  return g;
}

}  // namespace

TEST_CASE("identity lattice with a corner target") {
  const Mat B = Mat::Identity(2, 2);
  const Vec t = Vec::Constant(2, 0.5);
  const auto two = cvp_enumerate(B, t, PNorm::finite(2.0), uniform_box(2, 0, 1));
  CHECK(two.distance == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
  CHECK(two.closest.size() == 4);
  const auto inf = cvp_enumerate(B, t, PNorm::infinity(), uniform_box(2, 0, 1));
  CHECK(inf.distance == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(inf.closest.size() == 4);
  CHECK(inf.closest.front() == std::vector<int>{0, 0});
  CHECK(inf.closest.back() == std::vector<int>{1, 1});
}

TEST_CASE("distance is monotone in the box and independent of the worker count") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> gauss;
  for (int trial = 0; trial < 5; ++trial) {
    Mat B(5, 3);
    Vec t(5);
    for (Eigen::Index i = 0; i < B.size(); ++i) B.data()[i] = gauss(rng);
    for (Eigen::Index i = 0; i < t.size(); ++i) t[i] = 3.0 * gauss(rng);
    const PNorm p = PNorm::finite(1.0 + trial * 0.7);
    double prev = std::numeric_limits<double>::infinity();
    for (int R = 0; R <= 3; ++R) {
      const auto sol = cvp_enumerate(B, t, p, uniform_box(3, -R, R));
      CHECK(sol.distance <= prev);
      prev = sol.distance;
      const auto par = cvp_enumerate(B, t, p, uniform_box(3, -R, R), 3);
      CHECK(par.distance == sol.distance);
      CHECK(par.closest == sol.closest);
    }
  }
}

TEST_CASE("oracle limits") {
  const Mat B = Mat::Identity(8, 8);
  const Vec t = Vec::Zero(8);
  CHECK(kind_of([&] { cvp_enumerate(B, t, PNorm::finite(2), uniform_box(8, -10, 10)); }) == ErrorKind::Resource);
  CHECK(kind_of([&] { cvp_enumerate(B, t, PNorm::finite(2), uniform_box(3, 0, 1)); }) == ErrorKind::InvalidInput);
  CspFormula big;
  big.n = 25;
  CHECK(kind_of([&] { max_sat_brute(big); }) == ErrorKind::Resource);
  CHECK(parse_box("-1..2", 2) == Box{{-1, 2}, {-1, 2}});
  CHECK(kind_of([] { parse_box("1-2", 2); }) == ErrorKind::InvalidInput);
  CHECK(kind_of([] { parse_box("2..1", 2); }) == ErrorKind::InvalidInput);
}

TEST_CASE("brute-force Max-SAT") {
  const auto single = max_sat_brute(parse("p cnf 3 1\n1 -2 3 0\n"));
  CHECK(single.best == 1);
  CHECK(single.count == 7);
  // x1 + x2 = 0 and x1 + x2 = 1 cannot both hold
  const auto xr = max_sat_brute(parse("p xor 3 3\n2 1 2 0\n2 1 2 1\n2 2 3 1\n"));
  CHECK(xr.best == 2);
  CspFormula empty;
  empty.n = 4;
  const auto e = max_sat_brute(empty);
  CHECK(e.best == 0);
  CHECK(e.count == 16);
  CHECK(e.optimal.front() == 0);
  CHECK(e.optimal.back() == 15);
  const auto f = random_ksat(10, 3, 60, 5);
  const auto a = max_sat_brute(f, 1);
  const auto b = max_sat_brute(f, 4);
  CHECK(a.best == b.best);
  CHECK(a.optimal == b.optimal);
}

TEST_CASE("padded 3-SAT at n=8, p=3: validation passes on 20 formulas") {
  int yes = 0, no = 0;
  for (int seed = 0; seed < 20; ++seed) {
    const auto f = random_ksat(8, 3, 20 + 2 * seed, 100 + seed);
    const auto inst = sat_to_cvp(f, ip3());
    const auto rep = validate_reduction(f, inst);
    CHECK_MESSAGE(rep.pass, rep.summary());
    (max_sat_brute(f).best == f.total_weight() ? yes : no)++;
    const auto sol = cvp_enumerate(inst.B, inst.t, inst.p, uniform_box(8, 0, 1));
    CHECK(sol.closest.size() <= 256);
  }
  CHECK(yes > 0);
  CHECK(no > 0);
}

TEST_CASE("lowering the radius by 1% on a YES instance is caught") {
  const auto f = random_ksat(6, 3, 10, 1);
  REQUIRE(max_sat_brute(f).best == f.total_weight());
  auto inst = sat_to_cvp(f, ip3());
  CHECK(validate_reduction(f, inst).pass);
  inst.r *= 0.99;
  const auto rep = validate_reduction(f, inst);
  CHECK_FALSE(rep.pass);
  REQUIRE(rep.find("decision") != nullptr);
  CHECK_FALSE(rep.find("decision")->pass);
}

TEST_CASE("validation notices a formula that does not match the instance") {
  const auto f = random_ksat(6, 3, 10, 1);
  const auto g = random_ksat(6, 3, 10, 2);
  const auto rep = validate_reduction(g, sat_to_cvp(f, ip3()));
  CHECK_FALSE(rep.pass);
  CHECK_FALSE(rep.find("instance-matches-formula")->pass);
}

#include <doctest.h>

#include "latgad/combinatorics.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

using namespace latgad;

namespace {

std::vector<std::uint64_t> random_set(std::mt19937_64& rng, int n, std::size_t size) {
  std::set<std::uint64_t> s;
  std::uniform_int_distribution<std::uint64_t> pick(0, (std::uint64_t{1} << n) - 1);
  while (s.size() < size) s.insert(pick(rng));
  return {s.begin(), s.end()};
}

}  // namespace

TEST_CASE("affine cubes: trivial cases") {
  const auto one = find_affine_cube({5, 9}, 4, 1);
  REQUIRE(one);
  CHECK(one->points().size() == 2);
  CHECK(cube_within(*one, {5, 9}));
  CHECK_FALSE(find_affine_cube({5}, 4, 1));

  std::vector<std::uint64_t> all(64);
  for (std::uint64_t i = 0; i < 64; ++i) all[i] = i;
  const auto three = find_affine_cube(all, 6, 3);
  REQUIRE(three);
  CHECK(f2_rank(three->directions) == 3);
  CHECK(cube_within(*three, all));
  // a 2-dim subspace has no 3-cube
  CHECK_FALSE(find_affine_cube({0, 1, 2, 3}, 6, 3));
}

TEST_CASE("affine cubes above the size bound are always found") {
  std::mt19937_64 rng(17);
  for (int d : {2, 3}) {
    for (int n : {8, 10, 12, 16}) {
      const auto size = static_cast<std::size_t>(std::ceil(affine_cube_bound(n, d)));
      if (size > (std::size_t{1} << n)) continue;
      int ok = 0;
      for (int trial = 0; trial < 100; ++trial) {
        const auto S = random_set(rng, n, size);
        const auto c = find_affine_cube(S, n, d);
        if (c && cube_within(*c, S) && c->directions.size() == static_cast<std::size_t>(d)) ++ok;
      }
      CHECK_MESSAGE(ok == 100, "n=", n, " d=", d);
    }
  }
}

TEST_CASE("affine cube input checks") {
  CHECK_THROWS_AS(find_affine_cube({1, 2}, 25, 1), Error);
  CHECK_THROWS_AS(find_affine_cube({1, 64}, 6, 1), Error);
  CHECK(f2_rank({1, 2, 3}) == 2);
  CHECK(f2_rank({0}) == 0);
}

TEST_CASE("clauses isolating one element") {
  auto count = [](const CspConstraint& c, const std::vector<std::uint64_t>& S) {
    return std::count_if(S.begin(), S.end(), [&](auto x) { return c.satisfied(x); });
  };
  const auto single = clause_isolating_one({0b101}, 3, 3);
  CHECK_FALSE(single.satisfied(std::uint64_t{0b101}));
  CHECK(single.literals.size() == 3);

  std::vector<std::uint64_t> cube(8);
  for (std::uint64_t i = 0; i < 8; ++i) cube[i] = i;
  const auto c8 = clause_isolating_one(cube, 3, 3);
  CHECK(count(c8, cube) == 7);

  const std::vector<std::uint64_t> four{0b00, 0b01, 0b10, 0b11};
  const auto c4 = clause_isolating_one(four, 2, 2);
  CHECK(count(c4, four) == 3);
  CHECK(c4.literals.size() == 2);

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 4 + trial % 7;
    const int k = 1 + trial % 4;
    std::uniform_int_distribution<std::size_t> sz(1, std::min<std::size_t>(std::size_t{1} << k, std::size_t{1} << n));
    const auto S = random_set(rng, n, sz(rng));
    const auto c = clause_isolating_one(S, n, k);
    CHECK(count(c, S) == static_cast<long>(S.size()) - 1);
    CHECK(static_cast<int>(c.literals.size()) <= k);
  }
  CHECK_THROWS_AS(clause_isolating_one(cube, 3, 2), Error);
  CHECK_THROWS_AS(clause_isolating_one({}, 3, 2), Error);
  CHECK_THROWS_AS(clause_isolating_one({1, 1}, 3, 2), Error);
}

TEST_CASE("separating 3-clauses") {
  // face x1 = 0 of the 3-cube against the opposite face
  const std::vector<std::uint64_t> S{0b000, 0b010, 0b100, 0b110};
  const std::vector<std::uint64_t> T{0b001, 0b011, 0b101, 0b111};
  const auto sep = separating_3cnf(S, T, 3);
  CHECK(sep.clause.literals.size() == 1);
  CHECK(sep.clause.literals[0] == Literal{1, true});

  // T containing the majority string of S
  const std::vector<std::uint64_t> S2{0b0011, 0b0101, 0b0110, 0b1111};
  const auto maj = separating_3cnf(S2, {0b0111, 0b0000}, 4);
  CHECK(maj.majority == 0b0111);
  CHECK(maj.falsified == 0b0000);

  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    auto pts = random_set(rng, 8, 4 + 2 + trial % 5);
    std::shuffle(pts.begin(), pts.end(), rng);
    const std::vector<std::uint64_t> s(pts.begin(), pts.begin() + 4), t(pts.begin() + 4, pts.end());
    const auto r = separating_3cnf(s, t, 8);
    CHECK(r.clause.literals.size() <= 3);
    for (auto x : s) CHECK(r.clause.satisfied(x));
    CHECK_FALSE(r.clause.satisfied(r.falsified));
    CHECK(std::find(t.begin(), t.end(), r.falsified) != t.end());
  }
  CHECK_THROWS_AS(separating_3cnf({1, 2, 3}, {4, 5}, 3), Error);
  CHECK_THROWS_AS(separating_3cnf({1, 2, 3, 4}, {4, 5}, 3), Error);
  CHECK_THROWS_AS(separating_3cnf({1, 2, 3, 4}, {5}, 3), Error);
}

TEST_CASE("closest squares on the half-integer cube target") {
  const int n = 3;
  const Mat B = Mat::Identity(n, n);
  const Vec t = Vec::Constant(n, 0.5);
  // corners {0, e1, e2, e1+e2} with v = 0: z4 = e1 + e2 requires z1 + z2 + z3 = e1 + e2
  const auto sq = closest_square_structure(B, t, {1, 0, 0}, {0, 1, 0}, {0, 0, 0}, {0, 0, 0});
  CHECK(sq.report.pass);
  CHECK(sq.set_size == 4);
  CHECK(sq.parallelogram);

  // a mod-2 square that is not a parallelogram: z1 + z2 + z3 - z4 = 2v with v != 0
  const auto eight = closest_square_structure(B, t, {1, 1, 0}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1});
  CHECK(eight.z[3] == std::vector<int>{0, 0, 0});
  CHECK(eight.report.pass);
  CHECK(eight.set_size == 8);
  CHECK_FALSE(eight.parallelogram);

  // every mod-2 square of cube corners with a consistent v
  int checked = 0;
  for (int a = 0; a < 8; ++a)
    for (int b = a + 1; b < 8; ++b)
      for (int c = b + 1; c < 8; ++c) {
        std::vector<int> za(3), zb(3), zc(3), v(3);
        bool ok = true;
        for (int i = 0; i < 3; ++i) {
          za[i] = (a >> i) & 1;
          zb[i] = (b >> i) & 1;
          zc[i] = (c >> i) & 1;
        }
        // pick z4 as the fourth point of the F2 square, v from the integer identity
        std::vector<int> z4(3);
        for (int i = 0; i < 3; ++i) z4[i] = za[i] ^ zb[i] ^ zc[i];
        for (int i = 0; i < 3; ++i) {
          const int s = za[i] + zb[i] + zc[i] - z4[i];
          ok = ok && s % 2 == 0;
          v[i] = s / 2;
        }
        if (!ok || z4 == za || z4 == zb || z4 == zc) continue;
        const auto r = closest_square_structure(B, t, za, zb, zc, v);
        CHECK(r.report.pass);
        ++checked;
      }
  CHECK(checked > 0);

  Vec bad = t;
  bad[0] += 1e-3;
  CHECK_THROWS_AS(closest_square_structure(B, bad, {1, 0, 0}, {0, 1, 0}, {0, 0, 0}, {0, 0, 0}), Error);
}

TEST_CASE("three equidistant rectangle vertices force the fourth") {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 3 + trial % 4;
    Vec v1(d), v2(d), extra(d);
    for (int i = 0; i < d; ++i) {
      v1[i] = g(rng);
      v2[i] = g(rng);
      extra[i] = g(rng);
    }
    v2 -= v2.dot(v1) / v1.squaredNorm() * v1;  // rectangle
    // t with ||t|| = ||t - v1|| = ||t - v2||, plus a component normal to the plane
    Mat A(2, d);
    A.row(0) = 2 * v1.transpose();
    A.row(1) = 2 * v2.transpose();
    Vec rhs(2);
    rhs << v1.squaredNorm(), v2.squaredNorm();
    Vec t = A.completeOrthogonalDecomposition().solve(rhs);
    Vec normal = extra - extra.dot(v1) / v1.squaredNorm() * v1 - extra.dot(v2) / v2.squaredNorm() * v2;
    t += normal;
    const double r0 = t.norm();
    CHECK((t - v1).norm() == doctest::Approx(r0).epsilon(1e-10));
    CHECK((t - v2).norm() == doctest::Approx(r0).epsilon(1e-10));
    CHECK((t - v1 - v2).norm() == doctest::Approx(r0).epsilon(1e-10));

    // a skewed parallelogram with the same construction misses the fourth vertex
    Vec w2 = v2 + 0.5 * v1;
    A.row(1) = 2 * w2.transpose();
    rhs[1] = w2.squaredNorm();
    Vec s = A.completeOrthogonalDecomposition().solve(rhs);
    CHECK(std::fabs((s - v1 - w2).norm() - s.norm()) > 1e-6);
  }
}

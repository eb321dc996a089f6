#pragma once

#include "latgad/formula.hpp"
#include "latgad/gadgets.hpp"
#include "latgad/numeric.hpp"
#include "latgad/oracle.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace latgad {

// Points of F_2^n (and of {0,1}^n) are bit masks with bit j-1 holding
// coordinate j, matching CspFormula assignments.
inline constexpr int kMaxCubeDim = 24;
inline constexpr std::uint64_t kMaxCubePairs = 50'000'000;
// Dense inputs in dimension up to this use the autocorrelation path (2^n doubles).
inline constexpr int kMaxAutocorrDim = 22;

struct AffineCube {
  int n = 0;
  std::uint64_t base = 0;
  std::vector<std::uint64_t> directions;

  // base + sum_{j in W} y_j for W in increasing mask order
  std::vector<std::uint64_t> points() const;
};

// Rank of a set of F_2 vectors.
int f2_rank(const std::vector<std::uint64_t>& vs);

// Bound 2^{n(1 - 2^{-(d-1)}) + 2} above which a d-cube must exist.
double affine_cube_bound(int n, int d);

// Pigeonhole recursion: bucket pairs by their sum, recurse on the largest
// class (ties to the smaller sum), and fall back to smaller classes when a
// branch fails below the guaranteed size.
std::optional<AffineCube> find_affine_cube(const std::vector<std::uint64_t>& S, int n, int d);
bool cube_within(const AffineCube& c, const std::vector<std::uint64_t>& S);

// A clause on exactly min(k, n) distinct variables satisfied by exactly
// |S| - 1 elements of S. Needs 1 <= |S| <= 2^k and distinct points.
CspConstraint clause_isolating_one(const std::vector<std::uint64_t>& S, int n, int k);

struct Separation {
  CspConstraint clause;  // at most three literals
  std::uint64_t falsified = 0;  // the element of T that fails it
  std::uint64_t majority = 0;
};
// A single 3-clause satisfied by all of S (|S| = 4) and falsified by some t in T.
Separation separating_3cnf(const std::vector<std::uint64_t>& S, const std::vector<std::uint64_t>& T, int n);

struct SquareStructure {
  std::vector<std::vector<int>> z;       // z1..z4
  std::vector<std::vector<int>> zprime;  // z1'..z4'
  double distance = 0.0;
  std::size_t set_size = 0;
  bool parallelogram = false;
  VerificationReport report;
};

// Given closest-vector coordinates z1, z2, z3 and v with z4 = z1 + z2 + z3 - 2v,
// checks (l2, by enumeration) that the four derived points are closest too.
// `box` must contain every point involved; it defaults to their bounding box
// widened by one. InvalidInput if some z_i is not closest.
SquareStructure closest_square_structure(const Mat& B, const Vec& t, const std::vector<int>& z1,
                                         const std::vector<int>& z2, const std::vector<int>& z3,
                                         const std::vector<int>& v, std::optional<Box> box = std::nullopt,
                                         double tie_rel = 1e-9, int threads = 1);

}  // namespace latgad

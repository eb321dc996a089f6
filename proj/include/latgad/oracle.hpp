#pragma once

#include "latgad/formula.hpp"
#include "latgad/gadgets.hpp"
#include "latgad/numeric.hpp"
#include "latgad/reductions.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace latgad {

inline constexpr std::uint64_t kMaxOracleBox = 10'000'000;
inline constexpr int kMaxSatVars = 24;
inline constexpr std::size_t kMaxStoredOptima = 1U << 20;

// Inclusive integer interval per coordinate.
using Box = std::vector<std::pair<int, int>>;

Box uniform_box(int n, int lo, int hi);
// Parses "lo..hi" into a uniform box of dimension n.
Box parse_box(const std::string& text, int n);
std::uint64_t box_size(const Box& box);

struct CvpSolution {
  double distance = 0.0;
  std::vector<std::vector<int>> closest;  // lexicographic by box index
  std::uint64_t examined = 0;
};

// Exhaustive minimum of ||Bz - t|| over the box. Points within a relative
// band `tie_rel` of the minimum are all reported. The result does not depend
// on the worker count.
CvpSolution cvp_enumerate(const Mat& B, const Vec& t, const PNorm& p, const Box& box, int threads = 1,
                          double tie_rel = 1e-9);

struct MaxSatResult {
  long long best = 0;
  std::uint64_t count = 0;               // number of optimal assignments
  std::vector<std::uint64_t> optimal;    // increasing, truncated at kMaxStoredOptima
};

MaxSatResult max_sat_brute(const CspFormula& f, int threads = 1);

struct ValidateOptions {
  std::optional<Box> box;   // defaults depend on the instance mode
  bool non_binary = true;   // run the [-1,2]^n exclusion when n <= 6
  int threads = 1;
  Tolerance tol{};
};

VerificationReport validate_reduction(const CspFormula& f, const CvpInstance& inst,
                                      const ValidateOptions& opt = ValidateOptions{});

// Smallest distance over [-1,2]^n minus {0,1}^n; the witness is the argmin.
std::pair<double, std::vector<int>> min_non_binary(const Mat& B, const Vec& t, const PNorm& p, int threads = 1);

}  // namespace latgad

#include "latgad/combinatorics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace latgad {

std::vector<std::uint64_t> AffineCube::points() const {
  const std::size_t d = directions.size();
  std::vector<std::uint64_t> out;
  out.reserve(std::size_t{1} << d);
  for (std::uint64_t w = 0; w < (std::uint64_t{1} << d); ++w) {
    std::uint64_t p = base;
    for (std::size_t j = 0; j < d; ++j) {
      if ((w >> j) & 1U) p ^= directions[j];
    }
    out.push_back(p);
  }
  return out;
}

int f2_rank(const std::vector<std::uint64_t>& vs) {
  std::vector<std::uint64_t> basis;  // kept with distinct leading bits
  for (std::uint64_t v : vs) {
    for (std::uint64_t b : basis) v = std::min(v, v ^ b);
    if (v) {
      basis.push_back(v);
      std::sort(basis.rbegin(), basis.rend());
    }
  }
  return static_cast<int>(basis.size());
}

double affine_cube_bound(int n, int d) { return std::pow(2.0, n * (1.0 - std::pow(2.0, -(d - 1))) + 2.0); }

bool cube_within(const AffineCube& c, const std::vector<std::uint64_t>& S) {
  const std::unordered_set<std::uint64_t> set(S.begin(), S.end());
  if (f2_rank(c.directions) != static_cast<int>(c.directions.size())) return false;
  for (auto p : c.points()) {
    if (!set.count(p)) return false;
  }
  return true;
}

namespace {

struct CubeSearch {
  int n;
  std::uint64_t budget = 2'000'000;  // recursion nodes before giving up

  std::optional<AffineCube> run(std::vector<std::uint64_t> S, int d) {
    if (budget == 0) return std::nullopt;
    --budget;
    if (S.size() < (std::size_t{1} << d)) return std::nullopt;
    if (d == 0) return AffineCube{n, S.front(), {}};
    if (d == 1) return AffineCube{n, S[0], {S[0] ^ S[1]}};
    const std::uint64_t N = S.size();
    const std::uint64_t pairs = N * (N - 1) / 2;
    const std::uint64_t need = std::uint64_t{1} << (d - 1);
    std::vector<std::pair<std::uint64_t, std::uint64_t>> classes;
    const std::uint64_t space = std::uint64_t{1} << n;
    if (n <= kMaxAutocorrDim && static_cast<std::uint64_t>(n) * space < pairs) {
      // Dense set: |S cap (S + z)| for every z from the Walsh-Hadamard
      // autocorrelation, then halve to count unordered pairs.
      std::vector<double> f(space, 0.0);
      for (auto x : S) f[x] = 1.0;
      walsh_hadamard(f);
      for (auto& v : f) v *= v;
      walsh_hadamard(f);
      for (std::uint64_t z = 1; z < space; ++z) {
        const auto c = static_cast<std::uint64_t>(std::llround(f[z] / static_cast<double>(space))) / 2;
        if (c >= need) classes.emplace_back(c, z);
      }
    } else {
      if (pairs > kMaxCubePairs) {
        throw Error(ErrorKind::Resource, "too many point pairs to bucket (" + std::to_string(N) + " points)");
      }
      std::unordered_map<std::uint64_t, std::uint64_t> count;
      count.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(pairs, 1U << 22)));
      for (std::size_t i = 0; i < S.size(); ++i) {
        for (std::size_t j = i + 1; j < S.size(); ++j) ++count[S[i] ^ S[j]];
      }
      for (const auto& [z, c] : count) {
        if (c >= need) classes.emplace_back(c, z);
      }
    }
    // Largest classes first, ties to the smaller sum.
    std::sort(classes.begin(), classes.end(), [](const auto& a, const auto& b) {
      return a.first != b.first ? a.first > b.first : a.second < b.second;
    });
    const std::unordered_set<std::uint64_t> set(S.begin(), S.end());
    for (const auto& [c, z0] : classes) {
      // one representative per pair: the smaller endpoint
      std::vector<std::uint64_t> reps;
      for (auto x : S) {
        if (x < (x ^ z0) && set.count(x ^ z0)) reps.push_back(x);
      }
      auto sub = run(std::move(reps), d - 1);
      if (sub) {
        sub->directions.insert(sub->directions.begin(), z0);
        return sub;
      }
      if (budget == 0) break;
    }
    return std::nullopt;
  }
};

}  // namespace

std::optional<AffineCube> find_affine_cube(const std::vector<std::uint64_t>& S, int n, int d) {
  if (n < 1 || n > kMaxCubeDim) throw Error(ErrorKind::InvalidInput, "need 1 <= n <= 24");
  if (d < 0 || d > n) throw Error(ErrorKind::InvalidInput, "need 0 <= d <= n");
  std::vector<std::uint64_t> pts;
  const std::uint64_t limit = std::uint64_t{1} << n;
  for (auto x : S) {
    if (x >= limit) throw Error(ErrorKind::InvalidInput, "point outside F_2^n");
    pts.push_back(x);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  CubeSearch search{n};
  auto cube = search.run(std::move(pts), d);
  if (cube && !cube_within(*cube, S)) throw Error(ErrorKind::Internal, "affine cube failed verification");
  return cube;
}

// ---------------------------------------------------------------------------

namespace {

bool bit(std::uint64_t x, int var) { return (x >> (var - 1)) & 1U; }

}  // namespace

CspConstraint clause_isolating_one(const std::vector<std::uint64_t>& S_in, int n, int k) {
  if (n < 1 || n > 63 || k < 1) throw Error(ErrorKind::InvalidInput, "need 1 <= n <= 63 and k >= 1");
  std::vector<std::uint64_t> S = S_in;
  std::sort(S.begin(), S.end());
  if (std::adjacent_find(S.begin(), S.end()) != S.end()) throw Error(ErrorKind::InvalidInput, "points must be distinct");
  if (S.empty()) throw Error(ErrorKind::InvalidInput, "S must be non-empty");
  if (k < 63 && S.size() > (std::size_t{1} << k)) throw Error(ErrorKind::InvalidInput, "|S| exceeds 2^k");
  for (auto x : S) {
    if (n < 64 && x >> n) throw Error(ErrorKind::InvalidInput, "point outside {0,1}^n");
  }

  CspConstraint clause;
  std::vector<bool> used(static_cast<std::size_t>(n + 1), false);
  std::vector<std::uint64_t> cur = S;
  // Peel off the majority side of the lowest splitting coordinate until one
  // point remains; each step adds a literal true exactly on the removed side.
  while (cur.size() > 1) {
    int split = 0;
    std::vector<std::uint64_t> ones, zeros;
    for (int var = 1; var <= n && !split; ++var) {
      ones.clear();
      zeros.clear();
      for (auto x : cur) (bit(x, var) ? ones : zeros).push_back(x);
      if (!ones.empty() && !zeros.empty()) split = var;
    }
    if (!split) throw Error(ErrorKind::Internal, "no splitting coordinate among distinct points");
    const bool keep_ones = ones.size() <= zeros.size();
    // Literal false on the kept (minority) side.
    clause.literals.push_back(Literal{split, keep_ones});
    used[static_cast<std::size_t>(split)] = true;
    cur = keep_ones ? ones : zeros;
  }
  // Remaining single point: falsify it on unused variables up to width k.
  const std::uint64_t last = cur.front();
  for (int var = 1; var <= n && static_cast<int>(clause.literals.size()) < k; ++var) {
    if (used[static_cast<std::size_t>(var)]) continue;
    clause.literals.push_back(Literal{var, bit(last, var)});
    used[static_cast<std::size_t>(var)] = true;
  }
  if (static_cast<int>(clause.literals.size()) > k) throw Error(ErrorKind::Internal, "clause exceeds width k");
  std::sort(clause.literals.begin(), clause.literals.end(),
            [](const Literal& a, const Literal& b) { return a.var < b.var; });
  std::size_t sat = 0;
  for (auto x : S) sat += clause.satisfied(x) ? 1 : 0;
  if (sat + 1 != S.size()) throw Error(ErrorKind::Internal, "isolating clause failed verification");
  return clause;
}

Separation separating_3cnf(const std::vector<std::uint64_t>& S, const std::vector<std::uint64_t>& T, int n) {
  if (n < 1 || n > 63) throw Error(ErrorKind::InvalidInput, "need 1 <= n <= 63");
  const std::set<std::uint64_t> sset(S.begin(), S.end()), tset(T.begin(), T.end());
  if (S.size() != 4 || sset.size() != 4) throw Error(ErrorKind::InvalidInput, "S must hold 4 distinct points");
  if (tset.size() < 2) throw Error(ErrorKind::InvalidInput, "T must hold at least 2 distinct points");
  for (auto x : tset) {
    if (sset.count(x)) throw Error(ErrorKind::InvalidInput, "S and T must be disjoint");
  }
  for (auto x : S)
    if (x >> n) throw Error(ErrorKind::InvalidInput, "point outside {0,1}^n");
  for (auto x : T)
    if (x >> n) throw Error(ErrorKind::InvalidInput, "point outside {0,1}^n");

  Separation out;
  for (int var = 1; var <= n; ++var) {
    int zeros = 0;
    for (auto x : S) zeros += bit(x, var) ? 0 : 1;
    if (zeros < 2) out.majority |= std::uint64_t{1} << (var - 1);
  }
  std::uint64_t t = 0;
  bool found = false;
  for (auto x : T) {
    if (x != out.majority) {
      t = x;
      found = true;
      break;
    }
  }
  if (!found) throw Error(ErrorKind::Internal, "no element of T differs from the majority string");
  out.falsified = t;
  const int j = std::countr_zero(t ^ out.majority) + 1;
  const bool sj = bit(out.majority, j);
  std::vector<Literal> lits{Literal{j, !sj}};  // x_j = s_j
  for (auto u : S) {
    if (bit(u, j) == sj) continue;
    const int pos = std::countr_zero(t ^ u) + 1;  // t differs from u here
    const Literal l{pos, !bit(u, pos)};           // x_pos = u_pos
    if (std::find(lits.begin(), lits.end(), l) == lits.end()) lits.push_back(l);
  }
  std::sort(lits.begin(), lits.end(), [](const Literal& a, const Literal& b) { return a.var < b.var; });
  out.clause.literals = lits;
  if (lits.size() > 3) throw Error(ErrorKind::Internal, "separating clause has more than three literals");
  for (auto x : S) {
    if (!out.clause.satisfied(x)) throw Error(ErrorKind::Internal, "separating clause misses an element of S");
  }
  if (out.clause.satisfied(t)) throw Error(ErrorKind::Internal, "separating clause accepts t");
  return out;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<int> combine(const std::vector<int>& a, const std::vector<int>& b, const std::vector<int>& c, int sc) {
  std::vector<int> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i] + sc * c[i];
  return out;
}

double dist(const Mat& B, const Vec& t, const std::vector<int>& z) {
  Vec r = -t;
  for (std::size_t i = 0; i < z.size(); ++i) r += z[i] * B.col(static_cast<Eigen::Index>(i));
  return r.norm();
}

}  // namespace

SquareStructure closest_square_structure(const Mat& B, const Vec& t, const std::vector<int>& z1,
                                         const std::vector<int>& z2, const std::vector<int>& z3,
                                         const std::vector<int>& v, std::optional<Box> box, double tie_rel,
                                         int threads) {
  const auto n = static_cast<std::size_t>(B.cols());
  if (z1.size() != n || z2.size() != n || z3.size() != n || v.size() != n || t.size() != B.rows()) {
    throw Error(ErrorKind::InvalidInput, "dimension mismatch");
  }
  if (tie_rel > 1e-9) throw Error(ErrorKind::InvalidInput, "tie band must be at most 1e-9 relative");
  SquareStructure out;
  std::vector<int> z4(n);
  for (std::size_t i = 0; i < n; ++i) z4[i] = z1[i] + z2[i] + z3[i] - 2 * v[i];
  out.z = {z1, z2, z3, z4};
  out.zprime = {combine(z2, z3, v, -1), combine(z1, z3, v, -1), combine(z1, z2, v, -1), v};
  if (std::set<std::vector<int>>(out.z.begin(), out.z.end()).size() != 4) {
    throw Error(ErrorKind::InvalidInput, "z1..z4 must be distinct");
  }
  if (!box) {
    Box b(n);
    for (std::size_t i = 0; i < n; ++i) {
      int lo = z1[i], hi = z1[i];
      for (const auto* set : {&out.z, &out.zprime}) {
        for (const auto& z : *set) {
          lo = std::min(lo, z[i]);
          hi = std::max(hi, z[i]);
        }
      }
      b[i] = {lo - 1, hi + 1};
    }
    box = b;
  }
  const CvpSolution sol = cvp_enumerate(B, t, PNorm::finite(2.0), *box, threads, tie_rel);
  out.distance = sol.distance;
  const double band = sol.distance * (1.0 + tie_rel);
  for (std::size_t i = 0; i < 4; ++i) {
    if (dist(B, t, out.z[i]) > band) {
      throw Error(ErrorKind::InvalidInput, "z" + std::to_string(i + 1) + " is not a closest-vector coordinate");
    }
  }
  out.report.tolerance = tie_rel;
  for (std::size_t i = 0; i < 4; ++i) {
    VerificationCheck c;
    c.name = "z" + std::to_string(i + 1) + "'-closest";
    const double d = dist(B, t, out.zprime[i]);
    c.pass = d <= band;
    c.max_residual = d - sol.distance;
    c.witness = out.zprime[i];
    out.report.add(std::move(c));
  }
  std::set<std::vector<int>> C(out.z.begin(), out.z.end());
  C.insert(out.zprime.begin(), out.zprime.end());
  out.set_size = C.size();
  const auto& z = out.z;
  auto sum_eq = [&](int a, int b, int c, int d) {
    for (std::size_t i = 0; i < n; ++i) {
      if (z[a][i] + z[b][i] != z[c][i] + z[d][i]) return false;
    }
    return true;
  };
  out.parallelogram = sum_eq(0, 1, 2, 3) || sum_eq(0, 2, 1, 3) || sum_eq(0, 3, 1, 2);
  {
    VerificationCheck c;
    c.name = "size-4-or-8";
    c.pass = out.set_size == 4 || out.set_size == 8;
    c.detail = "|C| = " + std::to_string(out.set_size);
    out.report.add(std::move(c));
  }
  {
    VerificationCheck c;
    c.name = "size-4-iff-parallelogram";
    c.pass = (out.set_size == 4) == out.parallelogram;
    out.report.add(std::move(c));
  }
  return out;
}

}  // namespace latgad

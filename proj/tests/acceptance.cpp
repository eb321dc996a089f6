// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include "latgad/combinatorics.hpp"
#include "latgad/gadgets.hpp"
#include "latgad/identities.hpp"
#include "latgad/oracle.hpp"
#include "latgad/reductions.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>

using namespace latgad;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  int failures = 0;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    if (failures++ < 3) detail << " [fail: " << what << "]";
    pass = false;
  }
};

using Body = std::function<void(Outcome&)>;

bool run(int id, const std::string& name, double time_limit_s, const Body& body) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail << " [exception: " << e.what() << "]";
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (time_limit_s > 0 && secs > time_limit_s) {
    o.pass = false;
    o.detail << " [time " << secs << " s exceeds " << time_limit_s << " s]";
  }
  std::printf("%s %2d %s:%s (%.2f s)\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), o.detail.str().c_str(), secs);
  std::fflush(stdout);
  return o.pass;
}

bool rel_close(double a, double b, double rel) { return std::fabs(a - b) <= rel * std::max(std::fabs(a), std::fabs(b)); }

// ---------------------------------------------------------------------------

void gadget_grid(Outcome& o) {
  int built = 0;
  for (double p : {1.0, 1.5, 2.5, 3.0, 3.5, std::numbers::pi}) {
    for (int k : {2, 3, 4}) {
      if (is_even_integer(p) && p < k) continue;
      const auto g = find_isolating_parallelepiped(k, p);
      const auto rep = verify_parallelepiped(g, Tolerance{1e-9, 1e-12});
      o.require(rep.pass, "k=" + std::to_string(k) + " p=" + std::to_string(p) + ": " + rep.summary());
      ++built;
    }
  }
  o.detail << " " << built << " gadgets verified at rel 1e-9";
}

void impossibility(Outcome& o) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<long long> small(-5, 5);
  int exact_checks = 0, refused = 0, configs = 0;
  for (unsigned p : {2U, 4U}) {
    for (int k = static_cast<int>(p) + 1; k <= 8; ++k) {
      for (int trial = 0; trial < 20; ++trial) {
        const int d = 1 + trial % 5;
        std::vector<std::vector<long long>> cols(k, std::vector<long long>(d));
        std::vector<long long> t(d);
        for (auto& c : cols)
          for (auto& x : c) x = small(rng);
        for (auto& x : t) x = small(rng);
        o.require(even_p_obstruction_exact(cols, t, p) == 0, "nonzero exact residual");
        ++exact_checks;
      }
      try {
        find_isolating_parallelepiped(k, p);
        o.require(false, "construction accepted k=" + std::to_string(k));
      } catch (const Error& e) {
        o.require(e.kind() == ErrorKind::Unsupported, "wrong error kind");
        ++refused;
      }

      // Equidistant configurations: axis-aligned boxes with the target at the
      // centre, optionally lifted by extra coordinates and (for p=2) rotated.
      std::uniform_real_distribution<double> len(0.3, 3.0), off(-1.0, 1.0);
      for (int trial = 0; trial < 10; ++trial) {
        const int extra = trial % 3;
        const int d = k + extra;
        Mat V = Mat::Zero(d, k);
        Vec t = Vec::Zero(d);
        for (int i = 0; i < k; ++i) {
          const double l = (rng() & 1 ? 1 : -1) * len(rng);
          V(i, i) = l;
          t[i] = l / 2;
        }
        for (int i = k; i < d; ++i) t[i] = off(rng);
        if (p == 2) {
          const Mat Q = Mat::NullaryExpr(d, d, [&] { return off(rng); }).householderQr().householderQ();
          V = Q * V;
          t = Q * t;
        }
        // normalise the common distance of the nonzero vertices to 1
        const double common = pnorm(Vec(t - V.col(0)), PNorm::finite(p));
        V /= common;
        t /= common;
        const auto dist = vertex_distances(V, t, p);
        double spread = 0;
        for (std::size_t z = 1; z < dist.size(); ++z) spread = std::max(spread, std::fabs(dist[z] - 1.0));
        o.require(spread < 1e-12, "configuration not equidistant");
        // derived: the zero-sum identity leaves ||t||_p^p = 1
        const double implied = 1.0 + even_p_obstruction(V, t, p);
        o.require(std::fabs(implied - 1.0) < 1e-9, "identity residual");
        o.require(std::fabs(pnorm(t, PNorm::finite(p)) - 1.0) < 1e-9, "||t|| != 1");
        ++configs;
      }
    }
  }
  o.detail << " " << exact_checks << " exact zero residuals, " << refused << " refusals, " << configs
           << " equidistant configurations with ||t||=1";
}

void parity_levels(Outcome& o) {
  for (int b : {0, 1}) {
    const auto pc = parity_construction(3, 1.0, b);
    o.require(rel_close(pc.low_level, 8.0, 1e-9) && rel_close(pc.high_level, 16.0, 1e-9), "levels");
    o.require(rel_close(pc.lambda, 12.0, 1e-9) && rel_close(std::fabs(pc.lambda_par), 4.0, 1e-9), "lambda");
    o.require(rel_close(pc.gadget.eps, 1.0, 1e-9), "eps");
  }
  int grid = 0;
  double worst = std::numeric_limits<double>::infinity();
  for (int k = 3; k <= 8; ++k) {
    for (double p : {1.0, 1.5, 2.5, 3.0}) {
      if (p >= k) continue;
      for (int b : {0, 1}) {
        const auto pc = parity_construction(k, p, b);
        const double bound = parity_eps_bound(k, p);
        o.require(pc.gadget.eps >= bound * (1 - 1e-9), "eps below bound k=" + std::to_string(k));
        o.require(verify_parallelepiped(pc.gadget, Tolerance{1e-9, 1e-12}).pass, "verify");
        worst = std::min(worst, pc.gadget.eps / bound);
        ++grid;
      }
    }
  }
  o.detail << " k=3,p=1 levels 8/16 eps 1; " << grid << " grid gadgets, min eps/bound " << worst;
}

void skp_suite(Outcome& o) {
  o.require(c_p_limit(1.0).value == 0.5, "c_1 != 0.5");
  int count = 0;
  for (double p : {1.0, 1.5, 2.5, 3.0, 3.5, 5.0, 6.5}) {
    const double cp = c_p_limit(p).value;
    double prev = std::numeric_limits<double>::infinity();
    double prev_abs = 0;
    for (int k = 3; k <= 40; ++k) {
      if (!(p < k)) continue;
      const auto s = s_kp(k, p);
      const int predicted = ((k / 2 + static_cast<int>(std::floor(p / 2)) + 1) % 2 == 0) ? 1 : -1;
      o.require(s.sign == predicted, "sign k=" + std::to_string(k));
      const double a = std::fabs(s.value);
      o.require(a <= prev * (1 + 1e-12), "monotone k=" + std::to_string(k));
      if (k % 2 == 0 && p < k - 1) o.require(rel_close(a, prev_abs, 1e-12), "pair k=" + std::to_string(k));
      o.require(a >= cp * (1 - 1e-12), "limit bound k=" + std::to_string(k));
      prev = a;
      prev_abs = a;
      ++count;
    }
  }
  o.detail << " " << count << " values of S_{k,p}, k <= 40";
}

void integral_identity(Outcome& o) {
  int count = 0;
  double worst = 0;
  for (int n = 1; n <= 6; ++n) {
    for (int m = 0; m <= n; ++m) {
      for (double p : {1.0, 1.5, 2.5}) {
        if (!(p < 2 * n - m)) continue;
        const double direct = alt_sum_direct(n, m, p);
        const double integral = alt_sum_integral(n, m, p);
        // For integer p below the degree bound the sum vanishes identically;
        // there the error is measured against the size of the terms.
        double scale = std::fabs(direct);
        if (direct == 0.0) {
          for (int i = 0; i <= 2 * n - m; ++i) scale += binomial(2 * n - m, i) * std::pow(std::abs(n - i), p);
          scale *= 1e-3;
        }
        const double rel = std::fabs(direct - integral) / scale;
        worst = std::max(worst, rel);
        o.require(rel <= 1e-6, "n=" + std::to_string(n) + " m=" + std::to_string(m) + " p=" + std::to_string(p));
        ++count;
      }
    }
  }
  o.detail << " " << count << " triples, max rel error " << worst;
}

void ramanujan(Outcome& o) {
  double worst = 0;
  for (int k = 1; k <= 20; ++k) {
    for (double x : {0.5, 1.0, 2.5}) {
      const auto r = ramanujan_check(k, x);
      worst = std::max(worst, r.residual);
      o.require(r.residual <= 1e-10, "k=" + std::to_string(k));
    }
  }
  o.detail << " max residual " << worst;
}

void exact_reduction(Outcome& o) {
  const auto g = find_isolating_parallelepiped(3, 3.0);
  int sat = 0, unsat = 0;
  for (int seed = 0; seed < 20; ++seed) {
    const auto f = random_ksat(8, 3, 24 + seed, 1000 + seed);
    const auto inst = sat_to_cvp(f, g);
    ValidateOptions opt;
    opt.box = uniform_box(8, 0, 1);
    opt.non_binary = false;
    const auto rep = validate_reduction(f, inst, opt);
    o.require(rep.pass, "seed " + std::to_string(seed) + ": " + rep.summary());
    o.require(rep.find("decision") && rep.find("witness-bijection"), "missing checks");
    (max_sat_brute(f).best == f.total_weight() ? sat : unsat)++;
  }
  int excl = 0;
  for (int seed = 0; seed < 5; ++seed) {
    const auto f = random_ksat(6, 3, 18 + 3 * seed, 2000 + seed);
    const auto rep = validate_reduction(f, sat_to_cvp(f, g));
    const auto* c = rep.find("non-binary-excluded");
    o.require(rep.pass && c && c->pass, "n=6 seed " + std::to_string(seed));
    ++excl;
  }
  o.detail << " 20 formulas at n=8 (" << sat << " sat, " << unsat << " unsat), " << excl
           << " non-binary exclusions at n=6";
}

void gap_reduction(Outcome& o) {
  const double s = 0.9, c = 0.99;
  int yes = 0, no = 0;
  for (double p : {1.0, 2.5}) {
    const std::vector<IsolatingGadget> L = {to_isolating_lattice(parity_gadget(3, p, 0)),
                                            to_isolating_lattice(parity_gadget(3, p, 1))};
    const double bound = parity_gap_params(p, 3, s, c).gamma_bound;
    for (int n : {6, 8}) {
      int found_no = 0;
      for (int seed = 0; seed < 40 && (found_no < 3 || seed < 3); ++seed) {
        ValidateOptions opt;
        opt.box = uniform_box(n, -1, 2);
        if (seed < 3) {
          const auto f = random_kxor(n, 3, 2 * n + 2, 300 + seed, (0x5a + 7 * seed) & ((1U << n) - 1));
          const auto red = csp_to_cvp_gap(f, L, s, c);
          const auto rep = validate_reduction(f, red.instance, opt);
          o.require(rep.pass && rep.find("yes-within-r"), "planted: " + rep.summary());
          o.require(red.gamma >= bound * (1 - 1e-12), "gamma below closed-form bound");
          ++yes;
        }
        if (found_no >= 3) continue;
        const auto f = random_kxor(n, 3, 3 * n, 400 + seed, std::nullopt);
        const auto ms = max_sat_brute(f);
        if (static_cast<double>(ms.best) >= s * static_cast<double>(f.total_weight())) continue;
        GapReduction red;
        try {
          red = csp_to_cvp_gap(f, L, s, c);
        } catch (const Error&) {
          continue;  // some variable unused by this sample
        }
        const auto rep = validate_reduction(f, red.instance, opt);
        o.require(rep.pass && rep.find("no-beyond-gamma-r"), "noisy: " + rep.summary());
        o.require(red.gamma >= bound * (1 - 1e-12), "gamma below closed-form bound");
        ++found_no;
        ++no;
      }
      o.require(found_no >= 3, "too few val < s samples at n=" + std::to_string(n));
    }
  }
  o.detail << " " << yes << " planted YES, " << no << " NO instances (s=0.9, c=0.99, p in {1, 2.5}, n in {6, 8})";
}

void cvpp(Outcome& o) {
  const auto g = to_on_off(find_isolating_parallelepiped(4, 2.5));
  const auto a = cvpp_preprocess(6, 3, g);
  o.require(a.num_clauses() == 160, "M != 160");
  const std::string digest0 = a.basis_digest();
  const Mat basis = a.B;
  int yes = 0, no = 0;
  for (int seed = 0; seed < 10; ++seed) {
    const auto f = random_ksat(6, 3, 10 + 4 * seed, 500 + seed);
    const auto inst = cvpp_query(a, f);
    o.require(inst.B.size() == basis.size() &&
                  std::memcmp(inst.B.data(), basis.data(), sizeof(double) * basis.size()) == 0,
              "basis bytes differ");
    const auto rep = validate_reduction(f, inst);
    o.require(rep.pass, "query " + std::to_string(seed) + ": " + rep.summary());
    (max_sat_brute(f).best == f.total_weight() ? yes : no)++;
  }
  o.require(a.basis_digest() == digest0, "digest changed");

  int inf = 0;
  for (int n = 4; n <= 10; ++n) {
    const auto b = cvpp_inf_preprocess(n, 3);
    for (int seed = 0; seed < 3; ++seed) {
      const auto f = random_ksat(n, 3, 3 * n + 2 * seed, 600 + 10 * n + seed);
      const auto inst = cvpp_inf_query(b, f);
      o.require(inst.r == 1.5, "r != 1.5");
      const auto rep = validate_reduction(f, inst);
      o.require(rep.pass, "inf n=" + std::to_string(n) + ": " + rep.summary());
      ++inf;
    }
  }
  o.detail << " M=160 basis " << a.B.rows() << "x" << a.B.cols() << ", 10 queries (" << yes << " sat, " << no
           << " unsat), " << inf << " infinity-norm queries";
}

void svp_constant(Outcome& o) {
  const double p0 = find_p0();
  o.require(std::fabs(p0 - 2.13972) <= 1e-3, "p0");
  double prevW = std::numeric_limits<double>::infinity();
  double prevC = std::numeric_limits<double>::infinity();
  int points = 0;
  for (int i = 1; i <= 40; ++i) {
    const double p = p0 + (6.0 - p0) * i / 40.0;
    const auto sc = svp_constants(p);
    o.require(sc.W < prevW, "W_p not decreasing");
    o.require(sc.C && std::isfinite(*sc.C) && *sc.C > 0, "C_p not positive/finite");
    if (sc.C) {
      o.require(*sc.C < prevC, "C_p not decreasing");
      prevC = *sc.C;
    }
    prevW = sc.W;
    ++points;
  }
  o.detail << " p0=" << p0 << ", " << points << " grid points, C_6=" << prevC;
}

void combinatorics(Outcome& o) {
  std::mt19937_64 rng(99);
  auto random_set = [&](int n, std::size_t size) {
    std::set<std::uint64_t> s;
    std::uniform_int_distribution<std::uint64_t> pick(0, (std::uint64_t{1} << n) - 1);
    while (s.size() < size) s.insert(pick(rng));
    return std::vector<std::uint64_t>(s.begin(), s.end());
  };
  int cubes = 0;
  for (int d : {1, 2, 3}) {
    for (int n : {6, 10, 13, 16}) {
      const auto size = static_cast<std::size_t>(std::ceil(affine_cube_bound(n, d)));
      if (size > (std::size_t{1} << n)) continue;
      int ok = 0;
      for (int trial = 0; trial < 100; ++trial) {
        const auto S = random_set(n, size);
        const auto c = find_affine_cube(S, n, d);
        if (c && cube_within(*c, S) && static_cast<int>(c->directions.size()) == d) ++ok;
      }
      o.require(ok == 100, "n=" + std::to_string(n) + " d=" + std::to_string(d) + ": " + std::to_string(ok));
      cubes += ok;
    }
  }
  int clauses = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 4 + trial % 9, k = 1 + trial % 4;
    std::uniform_int_distribution<std::size_t> sz(1, std::size_t{1} << k);
    const auto S = random_set(n, sz(rng));
    const auto c = clause_isolating_one(S, n, k);
    std::size_t sat = 0;
    for (auto x : S) sat += c.satisfied(x);
    o.require(sat + 1 == S.size(), "clause isolation");
    ++clauses;
  }
  // hypercube-corner instances: identity basis, half-integer target
  int squares = 0;
  for (int n : {2, 3, 4}) {
    const Mat B = Mat::Identity(n, n);
    const Vec t = Vec::Constant(n, 0.5);
    const int N = 1 << n;
    for (int a = 0; a < N; ++a)
      for (int b = a + 1; b < N; ++b)
        for (int c2 = b + 1; c2 < N; ++c2) {
          std::vector<int> za(n), zb(n), zc(n), z4(n), v(n);
          bool ok = true;
          for (int i = 0; i < n; ++i) {
            za[i] = (a >> i) & 1;
            zb[i] = (b >> i) & 1;
            zc[i] = (c2 >> i) & 1;
            z4[i] = za[i] ^ zb[i] ^ zc[i];
            const int s = za[i] + zb[i] + zc[i] - z4[i];
            ok = ok && s % 2 == 0;
            v[i] = s / 2;
          }
          if (!ok || z4 == za || z4 == zb || z4 == zc) continue;
          const auto r = closest_square_structure(B, t, za, zb, zc, v);
          o.require(r.report.pass, "square " + r.report.summary());
          ++squares;
        }
  }
  o.detail << " " << cubes << " cubes found, " << clauses << " isolating clauses, " << squares
           << " corner squares";
}

}  // namespace

int main() {
  bool ok = true;
  ok &= run(1, "gadget existence grid", 10, gadget_grid);
  ok &= run(2, "even-p impossibility", 0, impossibility);
  ok &= run(3, "parity gadget levels and eps bound", 0, parity_levels);
  ok &= run(4, "S_{k,p} sign, pairs, monotonicity, limit", 5, skp_suite);
  ok &= run(5, "integral identity", 0, integral_identity);
  ok &= run(6, "Gamma product identity", 0, ramanujan);
  ok &= run(7, "exact SAT reduction end to end", 60, exact_reduction);
  ok &= run(8, "gap reduction on planted parity", 0, gap_reduction);
  ok &= run(9, "CVPP and CVPP infinity", 0, cvpp);
  ok &= run(10, "p0 and C_p", 0, svp_constant);
  ok &= run(11, "affine cubes, clause isolation, closest squares", 0, combinatorics);
  return ok ? 0 : 1;
}

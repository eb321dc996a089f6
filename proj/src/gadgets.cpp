#include "latgad/gadgets.hpp"

#include "latgad/parallel.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace latgad {

const char* to_string(GadgetKind kind) {
  switch (kind) {
    case GadgetKind::IsolatingParallelepiped: return "isolating-parallelepiped";
    case GadgetKind::TwoLevel: return "two-level";
    case GadgetKind::IsolatingLattice: return "isolating-lattice";
  }
  return "unknown";
}

GadgetKind gadget_kind_from_string(const std::string& s) {
  if (s == "isolating-parallelepiped") return GadgetKind::IsolatingParallelepiped;
  if (s == "two-level") return GadgetKind::TwoLevel;
  if (s == "isolating-lattice") return GadgetKind::IsolatingLattice;
  throw Error(ErrorKind::InvalidInput, "unknown gadget kind '" + s + "'");
}

bool GadgetConstraint::satisfied(const std::vector<int>& z) const {
  if (type == Type::Clause) {
    return std::any_of(z.begin(), z.end(), [](int v) { return v != 0; });
  }
  int parity = 0;
  for (int v : z) parity ^= (v & 1);
  return parity == parity_bit;
}

std::string GadgetConstraint::str() const {
  if (type == Type::Clause) return "clause";
  return "parity:" + std::to_string(parity_bit);
}

GadgetConstraint GadgetConstraint::parse(const std::string& s) {
  if (s == "clause") return GadgetConstraint{};
  if (s == "parity:0" || s == "parity:1") {
    return GadgetConstraint{Type::Parity, s.back() == '1' ? 1 : 0};
  }
  throw Error(ErrorKind::InvalidInput, "unknown constraint '" + s + "'");
}

bool IsolatingGadget::near_vertex(const std::vector<int>& z) const {
  if (kind == GadgetKind::IsolatingParallelepiped || !constraint) {
    return std::any_of(z.begin(), z.end(), [](int v) { return v != 0; });
  }
  return constraint->satisfied(z);
}

void VerificationReport::add(VerificationCheck c) {
  pass = pass && c.pass;
  checks.push_back(std::move(c));
}

const VerificationCheck* VerificationReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::string VerificationReport::summary() const {
  std::ostringstream os;
  os.precision(6);
  os << (pass ? "PASS" : "FAIL") << " (tol " << tolerance << ")";
  for (const auto& c : checks) {
    os << "\n  " << (c.pass ? "ok   " : "FAIL ") << c.name << " max_residual=" << c.max_residual;
    if (!c.witness.empty()) {
      os << " witness=(";
      for (std::size_t i = 0; i < c.witness.size(); ++i) os << (i ? "," : "") << c.witness[i];
      os << ")";
    }
    if (!c.detail.empty()) os << " " << c.detail;
  }
  if (column_rank >= 0) os << "\n  column rank " << column_rank;
  if (!note.empty()) os << "\n  " << note;
  return os.str();
}

// ---------------------------------------------------------------------------
// t* search

namespace {

void check_kp(int k, double p) {
  if (k < 1) throw Error(ErrorKind::InvalidInput, "k must be at least 1");
  if (k > kMaxHDimension) throw Error(ErrorKind::Resource, "k exceeds " + std::to_string(kMaxHDimension));
  if (!(p >= 1.0) || !std::isfinite(p)) throw Error(ErrorKind::InvalidInput, "p must be finite and >= 1");
}

}  // namespace

TstarSearch find_tstar_detailed(int k, double p) {
  check_kp(k, p);
  std::vector<int> bases;
  if (is_integer(p) && p < k) {
    if (is_even_integer(p)) {
      throw Error(ErrorKind::Unsupported,
                  "even integer p < k: no isolating parallelepiped exists (the alternating sum over "
                  "the cube vanishes identically)");
    }
    // Odd integer p < k: every t* > k gives lambda_{[k]} = 0, so search the
    // windows (b, b + 1/2] for b = k-1, k-2, ... instead.
    for (int b = k - 1; b >= -k; --b) bases.push_back(b);
  } else {
    bases.push_back(k);
  }
  for (int base : bases) {
    for (int i = 1; i <= 64; ++i) {
      const double ts = base + std::ldexp(1.0, -i);
      if (ts == static_cast<double>(base)) break;
      auto rep = eigen_report(HSpec{k, p, ts});
      if (rep.nonsingular()) return TstarSearch{ts, base, i, std::move(rep)};
    }
  }
  throw Error(ErrorKind::Degenerate, "no nonsingular H found within the t* search depth");
}

double find_tstar(int k, double p) { return find_tstar_detailed(k, p).tstar; }

// ---------------------------------------------------------------------------
// alpha and the +-1 parallelepiped

AlphaSolution solve_alpha(int k, double p, double tstar, const std::vector<double>& b, double eps_scale) {
  const HSpec spec{k, p, tstar};
  spec.validate();
  if (b.size() != (std::size_t{1} << k)) throw Error(ErrorKind::InvalidInput, "b must have length 2^k");
  if (!(eps_scale > 0.0 && eps_scale <= 1.0)) throw Error(ErrorKind::InvalidInput, "eps_scale must lie in (0,1]");
  const auto rep = eigen_report(spec);
  if (!rep.nonsingular()) throw Error(ErrorKind::InvalidInput, "H is singular at this t*");

  AlphaSolution sol;
  sol.lambda = rep.lambda_all;
  sol.alpha_prime = h_solve(spec, b);
  const double mn = *std::min_element(sol.alpha_prime.begin(), sol.alpha_prime.end());
  double mx = 0.0;
  for (double a : sol.alpha_prime) mx = std::max(mx, std::fabs(a));
  if (mx == 0.0) {
    sol.eps = 1.0;
  } else if (mn < 0.0) {
    sol.eps = 1.0 / (sol.lambda * std::fabs(mn));
  } else {
    sol.eps = 1.0 / (sol.lambda * mx);
  }
  sol.eps *= eps_scale;

  sol.alpha.resize(b.size());
  double amax = 0.0;
  for (std::size_t u = 0; u < b.size(); ++u) {
    sol.alpha[u] = 1.0 / sol.lambda + sol.eps * sol.alpha_prime[u];
    amax = std::max(amax, std::fabs(sol.alpha[u]));
  }
  // The most negative entry cancels to zero up to rounding.
  for (double& a : sol.alpha) {
    if (a < 0.0) {
      if (a < -1e-9 * amax) throw Error(ErrorKind::Internal, "alpha has a negative entry");
      a = 0.0;
    }
  }

  const auto ha = h_apply(spec, sol.alpha);
  const Tolerance tol;
  for (std::size_t u = 0; u < b.size(); ++u) {
    const double want = 1.0 + sol.eps * b[u];
    if (std::fabs(ha[u] - want) > 1e3 * tol.allowed(ha[u], want)) {
      throw Error(ErrorKind::Internal, "H alpha deviates from 1 + eps b");
    }
  }
  return sol;
}

PmParallelepiped build_pm_parallelepiped(const std::vector<double>& alpha, double tstar, double p) {
  const std::size_t n = alpha.size();
  if (n == 0 || (n & (n - 1)) != 0) throw Error(ErrorKind::InvalidInput, "alpha length must be 2^k");
  if (!(p >= 1.0)) throw Error(ErrorKind::InvalidInput, "p must be >= 1");
  const int k = std::countr_zero(n);
  PmParallelepiped out{Mat::Zero(static_cast<Eigen::Index>(n), k), Vec::Zero(static_cast<Eigen::Index>(n))};
  for (std::size_t u = 0; u < n; ++u) {
    if (alpha[u] < 0.0) throw Error(ErrorKind::InvalidInput, "alpha must be non-negative");
    const double w = std::pow(alpha[u], 1.0 / p);
    const auto coords = cube_coords(k, u);
    for (int i = 0; i < k; ++i) out.V(static_cast<Eigen::Index>(u), i) = w * coords[i];
    out.t[static_cast<Eigen::Index>(u)] = tstar * w;
  }
  return out;
}

PmParallelepiped to_binary_coords(const Mat& V, const Vec& t) {
  if (V.rows() != t.size()) throw Error(ErrorKind::InvalidInput, "V and t disagree in dimension");
  return PmParallelepiped{2.0 * V, V.rowwise().sum() + t};
}

std::vector<double> vertex_distances(const Mat& V, const Vec& t, double p) {
  const int k = static_cast<int>(V.cols());
  if (k > 30) throw Error(ErrorKind::Resource, "too many columns to enumerate");
  const std::uint64_t n = std::uint64_t{1} << k;
  std::vector<double> d(n);
  const PNorm norm = PNorm::finite(p);
  for (std::uint64_t z = 0; z < n; ++z) {
    Vec r = -t;
    for (int i = 0; i < k; ++i) {
      if ((z >> (k - 1 - i)) & 1U) r += V.col(i);
    }
    d[z] = pnorm(r, norm);
  }
  return d;
}

namespace {

void normalise(IsolatingGadget& g, double scale) {
  g.V /= scale;
  g.t /= scale;
}

}  // namespace

IsolatingGadget find_isolating_parallelepiped(int k, double p) {
  const auto search = find_tstar_detailed(k, p);
  std::vector<double> b(std::size_t{1} << k, 0.0);
  b[0] = 1.0;

  // The largest admissible step can zero out enough rows of V to drop its
  // rank; halve the step until the columns are independent.
  IsolatingGadget g;
  g.p = p;
  g.k = k;
  g.kind = GadgetKind::IsolatingParallelepiped;
  double scale = 1.0;
  for (int attempt = 0;; ++attempt) {
    const auto sol = solve_alpha(k, p, search.tstar, b, scale);
    const auto pm = build_pm_parallelepiped(sol.alpha, search.tstar, p);
    const auto bin = to_binary_coords(pm.V, pm.t);
    if (column_rank(bin.V) == k) {
      g.V = bin.V;
      g.t = bin.t;
      break;
    }
    if (attempt >= 8) throw Error(ErrorKind::Degenerate, "could not obtain a full-rank parallelepiped");
    scale *= 0.5;
  }

  // Vertex index 1 is z = (0,...,0,1), a non-isolated vertex.
  const auto d = vertex_distances(g.V, g.t, p);
  normalise(g, d[1]);
  g.eps = pnorm(g.t, PNorm::finite(p)) - 1.0;
  const auto report = verify_parallelepiped(g);
  if (!report.pass) throw Error(ErrorKind::Internal, "constructed gadget failed verification:\n" + report.summary());
  return g;
}

double parity_eps_bound(int k, double p) {
  using std::numbers::e;
  using std::numbers::pi;
  return std::fabs(std::sin(pi * p / 2.0)) / (p * p) * std::pow(2.0 * p / (e * e * pi * pi * k), (p + 1.0) / 2.0);
}

ParityConstruction parity_construction(int k, double p, int b) {
  check_kp(k, p);
  if (k < 3) throw Error(ErrorKind::InvalidInput, "parity gadgets need k >= 3");
  if (p >= k) throw Error(ErrorKind::InvalidInput, "parity gadgets need p < k");
  if (b != 0 && b != 1) throw Error(ErrorKind::InvalidInput, "parity bit must be 0 or 1");
  if (is_even_integer(p)) {
    throw Error(ErrorKind::Degenerate, "even integer p gives lambda_par = 0 (alternating sum vanishes), so eps = 0");
  }
  ParityConstruction out;
  const int eta = k / 2 + static_cast<int>(std::floor(p / 2.0));
  // In the {-1,1} picture the small level sits at prod u_i = (-1)^{b'}. With
  // y = 2z - 1, prod y_i = (-1)^{k - |z|}, so b' = b + k selects C_b in z.
  const int bprime = (b + k) & 1;
  const double sign = ((eta + bprime) & 1) ? -1.0 : 1.0;
  out.tstar = (k & 1) ? 1.0 : 0.0;

  const std::size_t n = std::size_t{1} << k;
  const std::uint64_t full = n - 1;
  std::vector<double> alpha(n);
  for (std::size_t u = 0; u < n; ++u) alpha[u] = 1.0 + sign * character(full, u);

  const auto rep = eigen_report(HSpec{k, p, out.tstar});
  out.lambda = rep.lambda_all;
  out.lambda_par = rep.lambda_par;
  out.low_level = out.lambda - std::fabs(out.lambda_par);
  out.high_level = out.lambda + std::fabs(out.lambda_par);
  out.eps_bound = parity_eps_bound(k, p);

  const auto pm = build_pm_parallelepiped(alpha, out.tstar, p);
  const auto bin = to_binary_coords(pm.V, pm.t);
  IsolatingGadget& g = out.gadget;
  g.p = p;
  g.k = k;
  g.V = bin.V;
  g.t = bin.t;
  g.kind = GadgetKind::TwoLevel;
  g.constraint = GadgetConstraint{GadgetConstraint::Type::Parity, b};

  // Brute-force the level assignment before normalising.
  const auto d = vertex_distances(g.V, g.t, p);
  const Tolerance tol;
  for (std::size_t z = 0; z < n; ++z) {
    const double want = g.near_vertex(binary_coords(k, z)) ? out.low_level : out.high_level;
    const double got = std::pow(d[z], p);
    if (!tol.close(got, want)) {
      throw Error(ErrorKind::Internal, "parity gadget level mismatch at vertex " + std::to_string(z));
    }
  }
  normalise(g, std::pow(out.low_level, 1.0 / p));
  g.eps = std::pow(out.high_level / out.low_level, 1.0 / p) - 1.0;
  const auto report = verify_parallelepiped(g);
  if (!report.pass) throw Error(ErrorKind::Internal, "parity gadget failed verification:\n" + report.summary());
  return out;
}

IsolatingGadget parity_gadget(int k, double p, int b) { return parity_construction(k, p, b).gadget; }

IsolatingGadget as_clause_gadget(const IsolatingGadget& g) {
  if (g.kind != GadgetKind::IsolatingParallelepiped) return g;
  IsolatingGadget out = g;
  out.kind = GadgetKind::TwoLevel;
  out.constraint = GadgetConstraint{};
  return out;
}

IsolatingGadget to_isolating_lattice(const IsolatingGadget& g) {
  if (!(g.eps > 0.0)) throw Error(ErrorKind::InvalidInput, "eps must be positive");
  if (g.kind == GadgetKind::IsolatingLattice) throw Error(ErrorKind::InvalidInput, "gadget is already a lattice");
  const double p = g.p;
  const int k = g.k;
  const double onep = std::pow(1.0 + g.eps, p);
  const double mu = onep / (std::pow(3.0, p) - 1.0);
  const double mroot = std::pow(mu, 1.0 / p);
  const double shrink = std::pow(1.0 + k * mu, -1.0 / p);

  IsolatingGadget out = as_clause_gadget(g);
  const Eigen::Index d = g.V.rows();
  out.V = Mat::Zero(d + k, k);
  out.V.topRows(d) = g.V;
  out.V.bottomRows(k) = 2.0 * mroot * Mat::Identity(k, k);
  out.t = Vec::Zero(d + k);
  out.t.head(d) = g.t;
  out.t.tail(k).setConstant(mroot);
  out.V *= shrink;
  out.t *= shrink;
  out.kind = GadgetKind::IsolatingLattice;
  out.eps = std::pow((onep + k * mu) / (1.0 + k * mu), 1.0 / p) - 1.0;
  return out;
}

// ---------------------------------------------------------------------------
// on-off gadgets

IsolatingGadget on_off_to_ip(const OnOffGadget& g) {
  IsolatingGadget out;
  out.p = g.p;
  out.k = g.k + 1;
  out.V = Mat::Zero(g.V.rows(), g.k + 1);
  out.V.leftCols(g.k) = g.V;
  out.V.col(g.k) = g.t_on - g.t_off;
  out.t = g.t_on;
  out.eps = g.eps;
  out.kind = GadgetKind::IsolatingParallelepiped;
  return out;
}

OnOffGadget to_on_off(const IsolatingGadget& g, const Tolerance& tol) {
  if (g.kind != GadgetKind::IsolatingParallelepiped) {
    throw Error(ErrorKind::InvalidInput, "on-off gadgets are built from isolating parallelepipeds");
  }
  if (g.k < 2) throw Error(ErrorKind::InvalidInput, "need at least two columns");
  OnOffGadget out;
  out.p = g.p;
  out.k = g.k - 1;
  out.V = g.V.leftCols(g.k - 1);
  out.t_on = g.t;
  out.t_off = g.t - g.V.col(g.k - 1);
  out.eps = g.eps;
  const auto report = verify_on_off(out, tol);
  if (!report.pass) throw Error(ErrorKind::Internal, "on-off gadget failed verification:\n" + report.summary());
  return out;
}

// ---------------------------------------------------------------------------
// verification

namespace {

VerificationCheck level_check(const std::string& name, const std::vector<double>& d,
                              const std::vector<std::uint64_t>& vertices, double want, int k,
                              const Tolerance& tol) {
  VerificationCheck c;
  c.name = name;
  for (auto z : vertices) {
    const double r = std::fabs(d[z] - want);
    if (c.witness.empty() || r > c.max_residual) {
      c.max_residual = r;
      c.witness = binary_coords(k, z);
    }
    if (r > tol.allowed(d[z], want)) c.pass = false;
  }
  std::ostringstream os;
  os.precision(17);
  os << "target=" << want;
  c.detail = os.str();
  return c;
}

}  // namespace

VerificationReport verify_parallelepiped(const IsolatingGadget& g, const Tolerance& tol) {
  VerificationReport rep;
  rep.tolerance = tol.rel;
  if (g.V.cols() != g.k || g.V.rows() != g.t.size()) {
    rep.add(VerificationCheck{"shape", false, 0.0, {}, "V must be d x k with d = len(t)"});
    return rep;
  }
  const auto d = vertex_distances(g.V, g.t, g.p);
  std::vector<std::uint64_t> near, far;
  for (std::uint64_t z = 0; z < d.size(); ++z) {
    (g.near_vertex(binary_coords(g.k, z)) ? near : far).push_back(z);
  }
  VerificationCheck eps_check{"eps-positive", g.eps > 0.0, g.eps > 0.0 ? 0.0 : -g.eps, {}, ""};
  rep.add(eps_check);
  rep.add(level_check("near-vertices-at-1", d, near, 1.0, g.k, tol));
  rep.add(level_check(g.kind == GadgetKind::IsolatingParallelepiped ? "isolated-vertex-at-1+eps"
                                                                     : "far-vertices-at-1+eps",
                      d, far, 1.0 + g.eps, g.k, tol));
  rep.column_rank = column_rank(g.V);
  return rep;
}

VerificationReport verify_on_off(const OnOffGadget& g, const Tolerance& tol) {
  VerificationReport rep;
  rep.tolerance = tol.rel;
  const auto don = vertex_distances(g.V, g.t_on, g.p);
  const auto doff = vertex_distances(g.V, g.t_off, g.p);
  std::vector<std::uint64_t> nonzero, all, origin{0};
  for (std::uint64_t z = 0; z < don.size(); ++z) {
    all.push_back(z);
    if (z) nonzero.push_back(z);
  }
  rep.add(VerificationCheck{"eps-positive", g.eps > 0.0, g.eps > 0.0 ? 0.0 : -g.eps, {}, ""});
  rep.add(level_check("on-nonzero-at-1", don, nonzero, 1.0, g.k, tol));
  rep.add(level_check("on-origin-at-1+eps", don, origin, 1.0 + g.eps, g.k, tol));
  rep.add(level_check("off-all-at-1", doff, all, 1.0, g.k, tol));
  rep.column_rank = column_rank(g.V);
  return rep;
}

VerificationReport verify_lattice_condition(const IsolatingGadget& g, int box_radius, const Tolerance& tol,
                                            int threads) {
  if (box_radius < 1) throw Error(ErrorKind::InvalidInput, "box radius must be at least 1");
  const int k = g.k;
  const std::uint64_t side = 2 * static_cast<std::uint64_t>(box_radius) + 2;
  std::uint64_t total = 1;
  for (int i = 0; i < k; ++i) {
    if (total > kMaxLatticeBox / side) throw Error(ErrorKind::Resource, "lattice box too large to enumerate");
    total *= side;
  }
  const double floor_level = 1.0 + g.eps;
  const PNorm norm = PNorm::finite(g.p);

  struct Partial {
    double min_dist = std::numeric_limits<double>::infinity();
    std::uint64_t argmin = 0;
    std::uint64_t violations = 0;
  };
  const int workers = std::max(1, threads);
  std::vector<Partial> partial(static_cast<std::size_t>(workers));
  parallel_chunks(total, workers, [&](int w, std::uint64_t begin, std::uint64_t end) {
    Partial& part = partial[static_cast<std::size_t>(w)];
    std::vector<int> x(static_cast<std::size_t>(k));
    for (std::uint64_t idx = begin; idx < end; ++idx) {
      std::uint64_t rest = idx;
      bool binary = true;
      for (int i = k - 1; i >= 0; --i) {
        x[i] = static_cast<int>(rest % side) - box_radius;
        rest /= side;
        binary = binary && (x[i] == 0 || x[i] == 1);
      }
      if (binary) continue;
      Vec r = -g.t;
      for (int i = 0; i < k; ++i) {
        if (x[i]) r += x[i] * g.V.col(i);
      }
      const double dist = pnorm(r, norm);
      if (dist < part.min_dist) {
        part.min_dist = dist;
        part.argmin = idx;
      }
      if (dist < floor_level - tol.allowed(dist, floor_level)) ++part.violations;
    }
  });
  Partial best;
  for (const auto& part : partial) {
    best.violations += part.violations;
    if (part.min_dist < best.min_dist) {
      best.min_dist = part.min_dist;
      best.argmin = part.argmin;
    }
  }
  VerificationReport rep;
  rep.tolerance = tol.rel;
  VerificationCheck c;
  c.name = "non-binary-far";
  c.pass = best.violations == 0;
  c.max_residual = std::max(0.0, floor_level - best.min_dist);
  std::uint64_t rest = best.argmin;
  c.witness.assign(static_cast<std::size_t>(k), 0);
  for (int i = k - 1; i >= 0; --i) {
    c.witness[i] = static_cast<int>(rest % side) - box_radius;
    rest /= side;
  }
  std::ostringstream os;
  os.precision(17);
  os << "min distance " << best.min_dist << " over [" << -box_radius << "," << box_radius + 1 << "]^" << k
     << " minus {0,1}^" << k << ", " << best.violations << " violations";
  c.detail = os.str();
  rep.add(std::move(c));
  rep.note = "finite box certificate only; integer points outside the box are not examined";
  return rep;
}

// ---------------------------------------------------------------------------
// even-p obstruction

exact::BigInt even_p_obstruction_exact(const std::vector<std::vector<long long>>& columns,
                                       const std::vector<long long>& t, unsigned p) {
  const std::size_t k = columns.size();
  if (k > 24) throw Error(ErrorKind::Resource, "too many columns for subset enumeration");
  for (const auto& c : columns) {
    if (c.size() != t.size()) throw Error(ErrorKind::InvalidInput, "column length mismatch");
  }
  exact::BigInt total = 0;
  std::vector<long long> r(t.size());
  for (std::uint64_t S = 0; S < (std::uint64_t{1} << k); ++S) {
    r = t;
    for (std::size_t i = 0; i < k; ++i) {
      if ((S >> i) & 1U) {
        for (std::size_t j = 0; j < r.size(); ++j) r[j] -= columns[i][j];
      }
    }
    const auto term = exact::abs_pow_sum(r, p);
    if (std::popcount(S) & 1) {
      total -= term;
    } else {
      total += term;
    }
  }
  return total;
}

double even_p_obstruction(const Mat& V, const Vec& t, double p) {
  if (V.rows() != t.size()) throw Error(ErrorKind::InvalidInput, "V and t disagree in dimension");
  const int k = static_cast<int>(V.cols());
  if (k > 24) throw Error(ErrorKind::Resource, "too many columns for subset enumeration");
  auto integral = [](double x) { return std::fabs(x) < 1e15 && x == std::round(x); };
  bool exact_path = is_integer(p) && p >= 1.0;
  for (Eigen::Index i = 0; exact_path && i < V.size(); ++i) exact_path = integral(V.data()[i]);
  for (Eigen::Index i = 0; exact_path && i < t.size(); ++i) exact_path = integral(t[i]);
  if (exact_path) {
    std::vector<std::vector<long long>> cols(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
      for (Eigen::Index j = 0; j < V.rows(); ++j) cols[i].push_back(static_cast<long long>(V(j, i)));
    }
    std::vector<long long> tt;
    for (Eigen::Index j = 0; j < t.size(); ++j) tt.push_back(static_cast<long long>(t[j]));
    return static_cast<double>(even_p_obstruction_exact(cols, tt, static_cast<unsigned>(std::lround(p))));
  }
  CompensatedSum s;
  for (std::uint64_t S = 0; S < (std::uint64_t{1} << k); ++S) {
    Vec r = t;
    for (int i = 0; i < k; ++i) {
      if ((S >> i) & 1U) r -= V.col(i);
    }
    const double term = pnorm_pow(r, p);
    s.add((std::popcount(S) & 1) ? -term : term);
  }
  return s.value();
}

}  // namespace latgad

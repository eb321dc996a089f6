#include "latgad/reductions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

namespace latgad {

std::string gadget_id(const IsolatingGadget& g) {
  std::uint64_t h = digest(g.V);
  h = digest(g.t, h);
  h = fnv1a(&g.eps, sizeof g.eps, h);
  return std::string(to_string(g.kind)) + "-k" + std::to_string(g.k) + "-" + hex64(h);
}

std::string gadget_id(const OnOffGadget& g) {
  std::uint64_t h = digest(g.V);
  h = digest(g.t_on, h);
  h = digest(g.t_off, h);
  return "on-off-k" + std::to_string(g.k) + "-" + hex64(h);
}

namespace {

// Adds one constraint block: column of variable j gets +-v_s, and the block
// target is t minus the columns of negated literals, so the block residual is
// V x - t with x_s the value of literal s.
void place_block(Mat& B, Vec& t, Eigen::Index row, const Mat& V, const Vec& gt, const CspConstraint& c) {
  const Eigen::Index d = V.rows();
  t.segment(row, d) = gt;
  if (c.kind == CspConstraint::Kind::Xor) {
    for (std::size_t s = 0; s < c.vars.size(); ++s) {
      B.block(row, c.vars[s] - 1, d, 1) += V.col(static_cast<Eigen::Index>(s));
    }
    return;
  }
  for (std::size_t s = 0; s < c.literals.size(); ++s) {
    const auto& l = c.literals[s];
    const auto col = V.col(static_cast<Eigen::Index>(s));
    if (l.negated) {
      B.block(row, l.var - 1, d, 1) -= col;
      t.segment(row, d) -= col;
    } else {
      B.block(row, l.var - 1, d, 1) += col;
    }
  }
}

void check_weight_cap(const CspFormula& f) {
  if (f.total_weight() > kMaxTotalWeight) {
    throw Error(ErrorKind::Resource, "total weight " + std::to_string(f.total_weight()) + " exceeds the cap of " +
                                         std::to_string(kMaxTotalWeight));
  }
}

std::string hash_string(const CspFormula& f) { return hex64(f.hash()); }

}  // namespace

CvpInstance sat_to_cvp(const CspFormula& f, const IsolatingGadget& g) {
  f.validate();
  check_weight_cap(f);
  const bool clause_gadget = g.kind == GadgetKind::IsolatingParallelepiped ||
                             (g.constraint && g.constraint->type == GadgetConstraint::Type::Clause);
  if (!clause_gadget) throw Error(ErrorKind::InvalidInput, "padded mode needs a clause (isolating) gadget");
  if (!(g.eps > 0.0)) throw Error(ErrorKind::InvalidInput, "gadget eps must be positive");
  for (const auto& c : f.constraints) {
    if (c.kind != CspConstraint::Kind::Clause) throw Error(ErrorKind::InvalidInput, "padded mode accepts clauses only");
    if (c.arity() != g.k) {
      throw Error(ErrorKind::InvalidInput, "clause arity " + std::to_string(c.arity()) + " does not match gadget arity " +
                                               std::to_string(g.k));
    }
  }
  const double p = g.p;
  const long long m = f.total_weight();
  const long long W = f.target_weight();
  const int n = f.n;
  const Eigen::Index d = g.V.rows();
  // With no clauses the padding would vanish; keep it at the m = 1 scale so
  // the basis stays nonsingular.
  const double alpha = std::pow(static_cast<double>(std::max<long long>(m, 1)), 1.0 / p) * (1.0 + g.eps);

  CvpInstance inst;
  inst.p = PNorm::finite(p);
  inst.B = Mat::Zero(m * d + n, n);
  inst.t = Vec::Zero(m * d + n);
  Eigen::Index row = 0;
  for (const auto& c : f.constraints) {
    for (long long rep = 0; rep < c.weight; ++rep) {
      place_block(inst.B, inst.t, row, g.V, g.t, c);
      row += d;
    }
  }
  for (int j = 0; j < n; ++j) {
    inst.B(row + j, j) = 2.0 * alpha;
    inst.t[row + j] = alpha;
  }
  const double onep = std::pow(1.0 + g.eps, p);
  inst.r = std::pow(static_cast<double>(W) + static_cast<double>(m - W) * onep + n * std::pow(alpha, p), 1.0 / p);
  inst.meta.mode = "padded";
  inst.meta.formula_hash = hash_string(f);
  inst.meta.gadget_ids = {gadget_id(g)};
  inst.meta.n_vars = n;
  inst.meta.total_weight = m;
  inst.meta.threshold = W;
  inst.meta.eps = g.eps;
  return inst;
}

double gap_gamma(double p, double eps, double s, double c) {
  const double x = 1.0 - std::pow(1.0 + eps, -p);
  return std::pow((1.0 - s * x) / (1.0 - c * x), 1.0 / p);
}

GapReduction csp_to_cvp_gap(const CspFormula& f, const std::vector<IsolatingGadget>& lattices, double s, double c) {
  if (!(0.0 < s && s <= c && c <= 1.0)) throw Error(ErrorKind::InvalidInput, "need 0 < s <= c <= 1");
  f.validate();
  check_weight_cap(f);
  if (lattices.empty()) throw Error(ErrorKind::InvalidInput, "no gadgets supplied");

  auto pick = [&](const CspConstraint& con) -> const IsolatingGadget& {
    for (const auto& g : lattices) {
      if (g.kind != GadgetKind::IsolatingLattice || g.k != con.arity()) continue;
      const auto type = g.constraint ? g.constraint->type : GadgetConstraint::Type::Clause;
      if (con.kind == CspConstraint::Kind::Xor) {
        if (type == GadgetConstraint::Type::Parity && g.constraint->parity_bit == con.parity) return g;
      } else if (type == GadgetConstraint::Type::Clause) {
        return g;
      }
    }
    throw Error(ErrorKind::InvalidInput, "no isolating lattice matches a constraint of arity " +
                                             std::to_string(con.arity()));
  };

  const double p = lattices.front().p;
  for (const auto& g : lattices) {
    if (g.p != p) throw Error(ErrorKind::InvalidInput, "gadgets must share p");
  }
  double eps = 0.0;

  std::vector<const IsolatingGadget*> chosen;
  Eigen::Index rows = 0;
  std::set<std::string> ids;
  std::vector<bool> used(static_cast<std::size_t>(f.n), false);
  for (const auto& con : f.constraints) {
    const auto& g = pick(con);
    if (chosen.empty()) {
      eps = g.eps;
      if (!(eps > 0.0)) throw Error(ErrorKind::InvalidInput, "eps = 0 makes the reduction vacuous");
    }
    // Unsatisfied blocks must all sit at the same level for the YES radius.
    if (std::fabs(g.eps - eps) > 1e-9 * eps) {
      throw Error(ErrorKind::InvalidInput, "gadgets used by the formula must share eps");
    }
    chosen.push_back(&g);
    ids.insert(gadget_id(g));
    rows += g.V.rows() * con.weight;
    if (con.kind == CspConstraint::Kind::Xor) {
      for (int v : con.vars) used[static_cast<std::size_t>(v - 1)] = true;
    } else {
      for (const auto& l : con.literals) used[static_cast<std::size_t>(l.var - 1)] = true;
    }
  }
  for (int j = 0; j < f.n; ++j) {
    if (!used[static_cast<std::size_t>(j)]) {
      throw Error(ErrorKind::InvalidInput, "variable x" + std::to_string(j + 1) +
                                               " occurs in no constraint; the basis would be rank deficient");
    }
  }

  if (chosen.empty()) throw Error(ErrorKind::InvalidInput, "gap mode needs at least one constraint");
  const long long m = f.total_weight();
  GapReduction out;
  CvpInstance& inst = out.instance;
  inst.p = PNorm::finite(p);
  inst.B = Mat::Zero(rows, f.n);
  inst.t = Vec::Zero(rows);
  Eigen::Index row = 0;
  for (std::size_t i = 0; i < f.constraints.size(); ++i) {
    const auto& con = f.constraints[i];
    for (long long rep = 0; rep < con.weight; ++rep) {
      place_block(inst.B, inst.t, row, chosen[i]->V, chosen[i]->t, con);
      row += chosen[i]->V.rows();
    }
  }
  const double onep = std::pow(1.0 + eps, p);
  inst.r = std::pow(onep - c * (onep - 1.0), 1.0 / p) * std::pow(static_cast<double>(m), 1.0 / p);
  out.gamma = gap_gamma(p, eps, s, c);
  inst.meta.mode = "gap";
  inst.meta.formula_hash = hash_string(f);
  inst.meta.gadget_ids.assign(ids.begin(), ids.end());
  inst.meta.n_vars = f.n;
  inst.meta.total_weight = m;
  inst.meta.threshold = f.target_weight();
  inst.meta.eps = eps;
  inst.meta.gamma = out.gamma;
  inst.meta.s = s;
  inst.meta.c = c;
  return out;
}

GapParams parity_gap_params(double p, int k, double s, double c, std::optional<double> eps) {
  using std::numbers::e;
  using std::numbers::pi;
  if (!(p >= 1.0) || !std::isfinite(p)) throw Error(ErrorKind::InvalidInput, "p must be finite and >= 1");
  if (!(k > 2 && k > p)) throw Error(ErrorKind::InvalidInput, "need integer k > max(2, p)");
  if (!(0.5 < s && s <= c && c < 1.0)) throw Error(ErrorKind::InvalidInput, "need 1/2 < s <= c < 1");
  GapParams out;
  if (is_even_integer(p)) {
    out.degenerate = true;
    out.gamma_bound = 1.0;
  } else {
    out.gamma_bound = 1.0 + (c - s) * std::fabs(std::sin(pi * p / 2.0)) / (4.0 * p * p * p * k) *
                                std::pow(2.0 * p / (e * e * pi * pi * k), (p + 1.0) / 2.0);
  }
  if (eps) out.gamma_sharp = gap_gamma(p, *eps, s, c);
  return out;
}

SatGapParams sat_gap_params(double p, int k, double s, double c, std::optional<double> eps) {
  if (k < 1 || k > 60) throw Error(ErrorKind::InvalidInput, "k out of range");
  const double two_k = std::ldexp(1.0, k);
  if (!(1.0 - 1.0 / two_k < s && s <= c && c <= 1.0)) {
    throw Error(ErrorKind::InvalidInput, "need 1 - 2^-k < s <= c <= 1");
  }
  const double factor = (two_k / 2.0) / (two_k - 1.0);
  SatGapParams out;
  out.s_prime = factor * s;
  out.c_prime = factor * c;
  out.parity = parity_gap_params(p, k, out.s_prime, out.c_prime, eps);
  return out;
}

// ---------------------------------------------------------------------------
// CVPP

int CvppArtifacts::block_of(const ClauseKey& key) const {
  const auto it = var_set_rank.find(key.vars);
  if (it == var_set_rank.end() || key.mask >= (1U << k)) return -1;
  return it->second * (1 << k) + static_cast<int>(key.mask);
}

std::string CvppArtifacts::basis_digest() const { return hex64(digest(B)); }

ClauseKey clause_key(const CspConstraint& c) {
  if (c.kind != CspConstraint::Kind::Clause) throw Error(ErrorKind::InvalidInput, "CVPP queries take clauses");
  auto lits = c.literals;
  std::sort(lits.begin(), lits.end(), [](const Literal& a, const Literal& b) { return a.var < b.var; });
  ClauseKey key;
  const int k = static_cast<int>(lits.size());
  for (int s = 0; s < k; ++s) {
    key.vars.push_back(lits[s].var);
    if (lits[s].negated) key.mask |= 1U << (k - 1 - s);
  }
  return key;
}

namespace {

std::vector<std::vector<int>> combinations(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) cur[i] = i + 1;
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[i] == n - k + i + 1) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

CvppArtifacts cvpp_skeleton(int n, int k, int block_rows) {
  if (k < 1 || n < k) throw Error(ErrorKind::InvalidInput, "need 1 <= k <= n");
  if (k > 20) throw Error(ErrorKind::Resource, "k too large");
  const double M = binomial(n, k) * std::ldexp(1.0, k);
  if (M * block_rows + n > static_cast<double>(kMaxCvppRows)) {
    throw Error(ErrorKind::Resource, "CVPP basis would have more than " + std::to_string(kMaxCvppRows) + " rows");
  }
  CvppArtifacts a;
  a.n = n;
  a.k = k;
  a.block_rows = block_rows;
  const auto combos = combinations(n, k);
  for (std::size_t r = 0; r < combos.size(); ++r) {
    a.var_set_rank[combos[r]] = static_cast<int>(r);
    for (unsigned mask = 0; mask < (1U << k); ++mask) a.clauses.push_back(ClauseKey{combos[r], mask});
  }
  return a;
}

struct QueryPlan {
  std::vector<bool> present;
  long long m = 0;
  long long W = 0;
};

QueryPlan plan_query(const CvppArtifacts& a, const CspFormula& f) {
  f.validate();
  if (f.n > a.n) throw Error(ErrorKind::InvalidInput, "formula has more variables than the preprocessing");
  QueryPlan plan;
  plan.present.assign(a.clauses.size(), false);
  for (const auto& c : f.constraints) {
    if (c.weight != 1) throw Error(ErrorKind::InvalidInput, "CVPP queries take unit weights");
    if (c.arity() != a.k) throw Error(ErrorKind::InvalidInput, "clause arity must equal k");
    const int b = a.block_of(clause_key(c));
    if (b < 0) throw Error(ErrorKind::InvalidInput, "clause not in the preprocessing table");
    if (plan.present[static_cast<std::size_t>(b)]) throw Error(ErrorKind::InvalidInput, "duplicate clause");
    plan.present[static_cast<std::size_t>(b)] = true;
  }
  plan.m = static_cast<long long>(f.constraints.size());
  plan.W = f.target_weight();
  return plan;
}

}  // namespace

CvppArtifacts cvpp_preprocess(int n, int k, const OnOffGadget& g) {
  if (g.k != k) throw Error(ErrorKind::InvalidInput, "on-off gadget arity must equal k");
  if (!(g.eps > 0.0)) throw Error(ErrorKind::InvalidInput, "gadget eps must be positive");
  const int d = static_cast<int>(g.V.rows());
  CvppArtifacts a = cvpp_skeleton(n, k, d);
  a.p = PNorm::finite(g.p);
  a.gadget = g;
  const auto M = static_cast<Eigen::Index>(a.clauses.size());
  a.alpha = std::pow(static_cast<double>(M), 1.0 / g.p) * (1.0 + g.eps);
  a.B = Mat::Zero(M * d + n, n);
  for (Eigen::Index i = 0; i < M; ++i) {
    const auto& key = a.clauses[static_cast<std::size_t>(i)];
    for (int s = 0; s < k; ++s) {
      const double sign = ((key.mask >> (k - 1 - s)) & 1U) ? -1.0 : 1.0;
      a.B.block(i * d, key.vars[s] - 1, d, 1) += sign * g.V.col(s);
    }
  }
  for (int j = 0; j < n; ++j) a.B(M * d + j, j) = 2.0 * a.alpha;
  return a;
}

CvpInstance cvpp_query(const CvppArtifacts& a, const CspFormula& f) {
  if (a.infinity) throw Error(ErrorKind::InvalidInput, "use cvpp_inf_query for the infinity-norm artifacts");
  const auto plan = plan_query(a, f);
  const int k = a.k;
  const Eigen::Index d = a.block_rows;
  const auto M = static_cast<Eigen::Index>(a.clauses.size());
  CvpInstance inst;
  inst.p = a.p;
  inst.B = a.B;
  inst.t = Vec::Zero(a.B.rows());
  for (Eigen::Index i = 0; i < M; ++i) {
    const auto& key = a.clauses[static_cast<std::size_t>(i)];
    Vec ti = plan.present[static_cast<std::size_t>(i)] ? a.gadget.t_on : a.gadget.t_off;
    for (int s = 0; s < k; ++s) {
      if ((key.mask >> (k - 1 - s)) & 1U) ti -= a.gadget.V.col(s);
    }
    inst.t.segment(i * d, d) = ti;
  }
  inst.t.tail(a.n).setConstant(a.alpha);
  const double p = a.p.p;
  const double onep = std::pow(1.0 + a.gadget.eps, p);
  const double slack = static_cast<double>(plan.m - plan.W);
  inst.r = std::pow(static_cast<double>(M) - slack + slack * onep + a.n * std::pow(a.alpha, p), 1.0 / p);
  inst.meta.mode = "cvpp";
  inst.meta.formula_hash = hex64(f.hash());
  inst.meta.gadget_ids = {gadget_id(a.gadget)};
  inst.meta.n_vars = a.n;
  inst.meta.total_weight = plan.m;
  inst.meta.threshold = plan.W;
  inst.meta.eps = a.gadget.eps;
  return inst;
}

CvppArtifacts cvpp_inf_preprocess(int n, int k) {
  CvppArtifacts a = cvpp_skeleton(n, k, 1);
  a.p = PNorm::infinity();
  a.infinity = true;
  const auto M = static_cast<Eigen::Index>(a.clauses.size());
  a.B = Mat::Zero(M + n, n);
  for (Eigen::Index i = 0; i < M; ++i) {
    const auto& key = a.clauses[static_cast<std::size_t>(i)];
    for (int s = 0; s < k; ++s) a.B(i, key.vars[s] - 1) = ((key.mask >> (k - 1 - s)) & 1U) ? -1.0 : 1.0;
  }
  for (int j = 0; j < n; ++j) a.B(M + j, j) = k;
  return a;
}

CvpInstance cvpp_inf_query(const CvppArtifacts& a, const CspFormula& f) {
  if (!a.infinity) throw Error(ErrorKind::InvalidInput, "artifacts were not built for the infinity norm");
  const auto plan = plan_query(a, f);
  if (plan.W != plan.m) throw Error(ErrorKind::InvalidInput, "the infinity-norm reduction handles plain k-SAT only");
  const int k = a.k;
  const auto M = static_cast<Eigen::Index>(a.clauses.size());
  CvpInstance inst;
  inst.p = PNorm::infinity();
  inst.B = a.B;
  inst.t = Vec::Zero(a.B.rows());
  for (Eigen::Index i = 0; i < M; ++i) {
    const auto& key = a.clauses[static_cast<std::size_t>(i)];
    const int negs = std::popcount(key.mask);
    inst.t[i] = (plan.present[static_cast<std::size_t>(i)] ? (k + 1) / 2.0 : k / 2.0) - negs;
  }
  inst.t.tail(a.n).setConstant(k / 2.0);
  inst.r = k / 2.0;
  inst.meta.mode = "cvpp-inf";
  inst.meta.formula_hash = hex64(f.hash());
  inst.meta.n_vars = a.n;
  inst.meta.total_weight = plan.m;
  inst.meta.threshold = plan.W;
  return inst;
}

}  // namespace latgad

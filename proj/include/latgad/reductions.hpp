#pragma once

#include "latgad/formula.hpp"
#include "latgad/gadgets.hpp"
#include "latgad/numeric.hpp"

#include <map>
#include <optional>
#include <tuple>
#include <string>
#include <vector>

namespace latgad {

inline constexpr long long kMaxTotalWeight = 10'000;

struct InstanceMeta {
  std::string mode;  // padded | gap | cvpp | cvpp-inf
  std::string formula_hash;
  std::vector<std::string> gadget_ids;
  int n_vars = 0;
  long long total_weight = 0;
  long long threshold = 0;
  double eps = 0.0;
  std::optional<double> gamma;
  std::optional<double> s;
  std::optional<double> c;
  bool operator==(const InstanceMeta&) const = default;
};

struct CvpInstance {
  PNorm p;
  Mat B;
  Vec t;
  double r = 0.0;
  InstanceMeta meta;
};

std::string gadget_id(const IsolatingGadget& g);
std::string gadget_id(const OnOffGadget& g);

// Exact reduction with 2 alpha I_n padding. The gadget may be an isolating
// parallelepiped or a two-level clause gadget of arity k; every clause must
// have arity exactly k. Weighted clauses are expanded into repeated blocks.
CvpInstance sat_to_cvp(const CspFormula& f, const IsolatingGadget& g);

// Gap reduction: one isolating-lattice block per constraint, no padding.
// `lattices` must contain a gadget matching each constraint (parity bit and
// arity for XOR constraints, arity for clauses).
struct GapReduction {
  CvpInstance instance;
  double gamma = 1.0;
};
GapReduction csp_to_cvp_gap(const CspFormula& f, const std::vector<IsolatingGadget>& lattices, double s, double c);

// gamma^p = (1 - s(1 - (1+eps)^-p)) / (1 - c(1 - (1+eps)^-p))
double gap_gamma(double p, double eps, double s, double c);

struct GapParams {
  double gamma_bound = 1.0;
  std::optional<double> gamma_sharp;
  bool degenerate = false;
};
GapParams parity_gap_params(double p, int k, double s, double c, std::optional<double> eps = std::nullopt);

struct SatGapParams {
  double s_prime = 0.0;
  double c_prime = 0.0;
  GapParams parity;
};
SatGapParams sat_gap_params(double p, int k, double s, double c, std::optional<double> eps = std::nullopt);

// ---------------------------------------------------------------------------
// CVPP

struct ClauseKey {
  std::vector<int> vars;  // strictly increasing, 1-based
  unsigned mask = 0;      // bit (k-1-s) set iff literal s is negated
  bool operator<(const ClauseKey& o) const { return std::tie(vars, mask) < std::tie(o.vars, o.mask); }
  bool operator==(const ClauseKey&) const = default;
};

struct CvppArtifacts {
  int n = 0;
  int k = 0;
  PNorm p;
  bool infinity = false;
  Mat B;
  std::vector<ClauseKey> clauses;  // block order
  std::map<std::vector<int>, int> var_set_rank;
  OnOffGadget gadget;  // unused for the infinity variant
  double alpha = 0.0;
  int block_rows = 1;

  std::size_t num_clauses() const { return clauses.size(); }
  int block_of(const ClauseKey& key) const;
  std::string basis_digest() const;
};

inline constexpr long long kMaxCvppRows = 4'000'000;

ClauseKey clause_key(const CspConstraint& c);
CvppArtifacts cvpp_preprocess(int n, int k, const OnOffGadget& g);
CvpInstance cvpp_query(const CvppArtifacts& a, const CspFormula& f);
CvppArtifacts cvpp_inf_preprocess(int n, int k);
CvpInstance cvpp_inf_query(const CvppArtifacts& a, const CspFormula& f);

}  // namespace latgad

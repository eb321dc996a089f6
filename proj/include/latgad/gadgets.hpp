#pragma once

#include "latgad/exact.hpp"
#include "latgad/hmatrix.hpp"
#include "latgad/numeric.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace latgad {

enum class GadgetKind { IsolatingParallelepiped, TwoLevel, IsolatingLattice };

const char* to_string(GadgetKind kind);
GadgetKind gadget_kind_from_string(const std::string& s);

// The k-ary boolean constraint a two-level gadget encodes. For a clause the
// only falsifying {0,1} point is the origin, i.e. the gadget columns are
// thought of as literal values. For parity, C_b(z) = 1 iff z_1 xor ... xor z_k = b.
struct GadgetConstraint {
  enum class Type { Clause, Parity };
  Type type = Type::Clause;
  int parity_bit = 0;

  bool satisfied(const std::vector<int>& z) const;
  std::string str() const;
  static GadgetConstraint parse(const std::string& s);
  bool operator==(const GadgetConstraint&) const = default;
};

struct IsolatingGadget {
  double p = 1.0;
  int k = 0;
  Mat V;
  Vec t;
  double eps = 0.0;
  GadgetKind kind = GadgetKind::IsolatingParallelepiped;
  std::optional<GadgetConstraint> constraint;

  // Whether vertex z should sit at distance 1 (true) or 1 + eps (false).
  bool near_vertex(const std::vector<int>& z) const;
};

struct OnOffGadget {
  double p = 1.0;
  int k = 0;
  Mat V;
  Vec t_on;
  Vec t_off;
  double eps = 0.0;
};

struct VerificationCheck {
  std::string name;
  bool pass = true;
  double max_residual = 0.0;
  std::vector<int> witness;
  std::string detail;
};

struct VerificationReport {
  bool pass = true;
  double tolerance = 0.0;
  std::vector<VerificationCheck> checks;
  int column_rank = -1;
  std::string note;

  void add(VerificationCheck c);
  const VerificationCheck* find(const std::string& name) const;
  std::string summary() const;
};

struct TstarSearch {
  double tstar = 0.0;
  int base = 0;
  int exponent = 0;
  EigenReport eigen;
};

double find_tstar(int k, double p);
TstarSearch find_tstar_detailed(int k, double p);

struct AlphaSolution {
  std::vector<double> alpha;
  std::vector<double> alpha_prime;
  double eps = 0.0;
  double lambda = 0.0;
};

// eps_scale in (0,1] shrinks the step below the largest admissible value.
AlphaSolution solve_alpha(int k, double p, double tstar, const std::vector<double>& b,
                          double eps_scale = 1.0);

struct PmParallelepiped {
  Mat V;
  Vec t;
};

PmParallelepiped build_pm_parallelepiped(const std::vector<double>& alpha, double tstar, double p);
PmParallelepiped to_binary_coords(const Mat& V, const Vec& t);

IsolatingGadget find_isolating_parallelepiped(int k, double p);
IsolatingGadget parity_gadget(int k, double p, int b);

struct ParityConstruction {
  IsolatingGadget gadget;
  double tstar = 0.0;
  double lambda = 0.0;
  double lambda_par = 0.0;
  // ||Vz - t||_p^p before normalisation: lambda -+ |lambda_par|.
  double low_level = 0.0;
  double high_level = 0.0;
  double eps_bound = 0.0;
};

ParityConstruction parity_construction(int k, double p, int b);
// |sin(pi p/2)| / p^2 * (2p / (e^2 pi^2 k))^{(p+1)/2}
double parity_eps_bound(int k, double p);
IsolatingGadget to_isolating_lattice(const IsolatingGadget& g);
// Re-labels an isolating parallelepiped as a two-level gadget for a clause.
IsolatingGadget as_clause_gadget(const IsolatingGadget& g);

OnOffGadget to_on_off(const IsolatingGadget& g, const Tolerance& tol = Tolerance{});
IsolatingGadget on_off_to_ip(const OnOffGadget& g);

VerificationReport verify_parallelepiped(const IsolatingGadget& g, const Tolerance& tol = Tolerance{});
VerificationReport verify_on_off(const OnOffGadget& g, const Tolerance& tol = Tolerance{});
VerificationReport verify_lattice_condition(const IsolatingGadget& g, int box_radius,
                                            const Tolerance& tol = Tolerance{}, int threads = 1);

// Sum over S of (-1)^{|S|} ||t - sum_{i in S} v_i||_p^p. When p is an integer
// and V, t are integer-valued the sum is evaluated exactly.
double even_p_obstruction(const Mat& V, const Vec& t, double p);
exact::BigInt even_p_obstruction_exact(const std::vector<std::vector<long long>>& columns,
                                       const std::vector<long long>& t, unsigned p);

// Distance ||V z - t||_p of every {0,1} vertex, indexed by binary_index.
std::vector<double> vertex_distances(const Mat& V, const Vec& t, double p);

inline constexpr std::uint64_t kMaxLatticeBox = 50'000'000;

}  // namespace latgad

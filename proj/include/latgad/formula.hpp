#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace latgad {

struct Literal {
  int var = 1;  // 1-based
  bool negated = false;
  bool operator==(const Literal&) const = default;
};

struct CspConstraint {
  enum class Kind { Clause, Xor };
  Kind kind = Kind::Clause;
  std::vector<Literal> literals;  // clause
  std::vector<int> vars;          // xor
  int parity = 0;                 // xor right-hand side
  long long weight = 1;

  int arity() const;
  // assignment bit (var-1) holds x_var.
  bool satisfied(std::uint64_t assignment) const;
  bool satisfied(const std::vector<int>& z) const;
};

struct CspFormula {
  int n = 0;
  std::vector<CspConstraint> constraints;
  std::optional<long long> threshold;

  // Checks variable ranges, duplicate variables, non-negative weights.
  void validate() const;
  long long total_weight() const;
  long long satisfied_weight(std::uint64_t assignment) const;
  long long satisfied_weight(const std::vector<int>& z) const;
  // Threshold W, defaulting to the total weight.
  long long target_weight() const;
  // Identifies n and the constraint list; the threshold is not included.
  std::uint64_t hash() const;
};

CspFormula parse_dimacs(std::istream& in);
CspFormula parse_dimacs_file(const std::string& path);
void write_dimacs(std::ostream& out, const CspFormula& f);

// Random k-SAT with m clauses over distinct variables, uniform polarities.
CspFormula random_ksat(int n, int k, int m, std::uint64_t seed);
// Random k-XOR system. With planted set, every parity bit is chosen to agree
// with the planted assignment (bit j-1 = x_j).
CspFormula random_kxor(int n, int k, int m, std::uint64_t seed, std::optional<std::uint64_t> planted);

std::vector<int> assignment_to_vector(std::uint64_t assignment, int n);
std::uint64_t vector_to_assignment(const std::vector<int>& z);

}  // namespace latgad

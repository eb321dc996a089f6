#include "latgad/formula.hpp"

#include "latgad/numeric.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

namespace latgad {

int CspConstraint::arity() const {
  return kind == Kind::Clause ? static_cast<int>(literals.size()) : static_cast<int>(vars.size());
}

bool CspConstraint::satisfied(std::uint64_t a) const {
  if (kind == Kind::Clause) {
    for (const auto& l : literals) {
      const bool v = (a >> (l.var - 1)) & 1U;
      if (v != l.negated) return true;
    }
    return false;
  }
  int x = 0;
  for (int v : vars) x ^= static_cast<int>((a >> (v - 1)) & 1U);
  return x == parity;
}

bool CspConstraint::satisfied(const std::vector<int>& z) const { return satisfied(vector_to_assignment(z)); }

void CspFormula::validate() const {
  if (n < 0) throw Error(ErrorKind::InvalidInput, "negative variable count");
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    const auto& c = constraints[i];
    const std::string where = "constraint " + std::to_string(i + 1);
    if (c.weight < 0) throw Error(ErrorKind::InvalidInput, where + " has a negative weight");
    std::vector<int> vs;
    if (c.kind == CspConstraint::Kind::Clause) {
      for (const auto& l : c.literals) vs.push_back(l.var);
    } else {
      vs = c.vars;
      if (c.parity != 0 && c.parity != 1) throw Error(ErrorKind::InvalidInput, where + " has parity bit outside {0,1}");
    }
    if (vs.empty()) throw Error(ErrorKind::InvalidInput, where + " is empty");
    for (int v : vs) {
      if (v < 1 || v > n) throw Error(ErrorKind::InvalidInput, where + " uses variable outside [1,n]");
    }
    std::sort(vs.begin(), vs.end());
    if (std::adjacent_find(vs.begin(), vs.end()) != vs.end()) {
      throw Error(ErrorKind::InvalidInput, where + " repeats a variable");
    }
  }
  if (threshold && (*threshold < 0 || *threshold > total_weight())) {
    throw Error(ErrorKind::InvalidInput, "threshold must lie in [0, total weight]");
  }
}

long long CspFormula::total_weight() const {
  long long w = 0;
  for (const auto& c : constraints) w += c.weight;
  return w;
}

long long CspFormula::satisfied_weight(std::uint64_t a) const {
  long long w = 0;
  for (const auto& c : constraints) {
    if (c.satisfied(a)) w += c.weight;
  }
  return w;
}

long long CspFormula::satisfied_weight(const std::vector<int>& z) const {
  return satisfied_weight(vector_to_assignment(z));
}

long long CspFormula::target_weight() const { return threshold.value_or(total_weight()); }

std::uint64_t CspFormula::hash() const {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](long long v) {
    for (int i = 0; i < 8; ++i) {
      h ^= static_cast<std::uint64_t>((v >> (8 * i)) & 0xff);
      h *= 1099511628211ULL;
    }
  };
  mix(n);
  for (const auto& c : constraints) {
    mix(c.kind == CspConstraint::Kind::Clause ? 1 : 2);
    mix(c.weight);
    mix(c.parity);
    for (const auto& l : c.literals) mix(l.negated ? -l.var : l.var);
    for (int v : c.vars) mix(v);
    mix(0);
  }
  return h;
}

std::vector<int> assignment_to_vector(std::uint64_t a, int n) {
  std::vector<int> z(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) z[j] = static_cast<int>((a >> j) & 1U);
  return z;
}

std::uint64_t vector_to_assignment(const std::vector<int>& z) {
  std::uint64_t a = 0;
  for (std::size_t j = 0; j < z.size(); ++j) {
    if (z[j] & 1) a |= std::uint64_t{1} << j;
  }
  return a;
}

// ---------------------------------------------------------------------------
// DIMACS-style input

namespace {

std::vector<long long> read_numbers(const std::string& line) {
  std::istringstream is(line);
  std::vector<long long> out;
  std::string tok;
  while (is >> tok) {
    try {
      std::size_t pos = 0;
      out.push_back(std::stoll(tok, &pos));
      if (pos != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw Error(ErrorKind::InvalidInput, "unexpected token '" + tok + "'");
    }
  }
  return out;
}

}  // namespace

CspFormula parse_dimacs(std::istream& in) {
  CspFormula f;
  std::string format;
  long long declared = -1;
  std::vector<long long> pending;  // clause literals spanning lines
  std::optional<long long> pending_weight;
  std::string line;
  int lineno = 0;
  auto flush_clause = [&](long long weight) {
    CspConstraint c;
    c.weight = weight;
    for (long long lit : pending) c.literals.push_back(Literal{static_cast<int>(lit < 0 ? -lit : lit), lit < 0});
    f.constraints.push_back(std::move(c));
    pending.clear();
    pending_weight.reset();
  };
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == 'c' || line[first] == '%') continue;
    if (line[first] == 'p') {
      std::istringstream is(line.substr(first + 1));
      is >> format;
      long long n = -1;
      is >> n >> declared;
      if (!is || n < 0 || declared < 0 || (format != "cnf" && format != "wcnf" && format != "xor")) {
        throw Error(ErrorKind::InvalidInput, "bad problem line at line " + std::to_string(lineno));
      }
      f.n = static_cast<int>(n);
      continue;
    }
    if (format.empty()) throw Error(ErrorKind::InvalidInput, "data before the problem line");
    const auto nums = read_numbers(line);
    if (format == "xor") {
      if (nums.empty()) continue;
      const long long k = nums[0];
      if (k < 1 || static_cast<long long>(nums.size()) != k + 2) {
        throw Error(ErrorKind::InvalidInput, "xor line " + std::to_string(lineno) + " must read 'k i1..ik b'");
      }
      CspConstraint c;
      c.kind = CspConstraint::Kind::Xor;
      for (long long i = 1; i <= k; ++i) c.vars.push_back(static_cast<int>(nums[i]));
      c.parity = static_cast<int>(nums[k + 1]);
      f.constraints.push_back(std::move(c));
      continue;
    }
    std::size_t i = 0;
    while (i < nums.size()) {
      if (format == "wcnf" && !pending_weight) {
        pending_weight = nums[i++];
        continue;
      }
      if (nums[i] == 0) {
        flush_clause(pending_weight.value_or(1));
      } else {
        pending.push_back(nums[i]);
      }
      ++i;
    }
  }
  if (!pending.empty()) throw Error(ErrorKind::InvalidInput, "last clause is not terminated by 0");
  if (format.empty()) throw Error(ErrorKind::InvalidInput, "missing problem line");
  if (declared >= 0 && static_cast<long long>(f.constraints.size()) != declared) {
    throw Error(ErrorKind::InvalidInput, "problem line declares " + std::to_string(declared) + " constraints, found " +
                                             std::to_string(f.constraints.size()));
  }
  f.validate();
  return f;
}

CspFormula parse_dimacs_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot open '" + path + "'");
  return parse_dimacs(in);
}

void write_dimacs(std::ostream& out, const CspFormula& f) {
  const bool is_xor = !f.constraints.empty() && f.constraints.front().kind == CspConstraint::Kind::Xor;
  bool weighted = false;
  for (const auto& c : f.constraints) weighted = weighted || c.weight != 1;
  out << "p " << (is_xor ? "xor" : weighted ? "wcnf" : "cnf") << " " << f.n << " " << f.constraints.size() << "\n";
  for (const auto& c : f.constraints) {
    if (c.kind == CspConstraint::Kind::Xor) {
      out << c.vars.size();
      for (int v : c.vars) out << " " << v;
      out << " " << c.parity << "\n";
      continue;
    }
    if (weighted) out << c.weight << " ";
    for (const auto& l : c.literals) out << (l.negated ? -l.var : l.var) << " ";
    out << "0\n";
  }
}

// ---------------------------------------------------------------------------
// generators

namespace {

std::vector<int> pick_vars(int n, int k, std::mt19937_64& rng) {
  std::vector<int> all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), 1);
  for (int i = 0; i < k; ++i) {
    std::uniform_int_distribution<int> d(i, n - 1);
    std::swap(all[i], all[d(rng)]);
  }
  std::vector<int> vs(all.begin(), all.begin() + k);
  std::sort(vs.begin(), vs.end());
  return vs;
}

}  // namespace

CspFormula random_ksat(int n, int k, int m, std::uint64_t seed) {
  if (k < 1 || k > n) throw Error(ErrorKind::InvalidInput, "need 1 <= k <= n");
  const double possible = binomial(n, k) * std::ldexp(1.0, k);
  if (m > possible) throw Error(ErrorKind::InvalidInput, "more clauses requested than distinct clauses exist");
  std::mt19937_64 rng(seed);
  CspFormula f;
  f.n = n;
  std::set<std::vector<int>> seen;
  while (static_cast<int>(f.constraints.size()) < m) {
    const auto vs = pick_vars(n, k, rng);
    CspConstraint c;
    std::vector<int> key;
    for (int v : vs) {
      const bool neg = rng() & 1U;
      c.literals.push_back(Literal{v, neg});
      key.push_back(neg ? -v : v);
    }
    if (seen.insert(key).second) f.constraints.push_back(std::move(c));
  }
  return f;
}

CspFormula random_kxor(int n, int k, int m, std::uint64_t seed, std::optional<std::uint64_t> planted) {
  if (k < 1 || k > n) throw Error(ErrorKind::InvalidInput, "need 1 <= k <= n");
  std::mt19937_64 rng(seed);
  CspFormula f;
  f.n = n;
  for (int i = 0; i < m; ++i) {
    CspConstraint c;
    c.kind = CspConstraint::Kind::Xor;
    c.vars = pick_vars(n, k, rng);
    if (planted) {
      int x = 0;
      for (int v : c.vars) x ^= static_cast<int>((*planted >> (v - 1)) & 1U);
      c.parity = x;
    } else {
      c.parity = static_cast<int>(rng() & 1U);
    }
    f.constraints.push_back(std::move(c));
  }
  return f;
}

}  // namespace latgad

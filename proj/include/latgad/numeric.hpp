#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace latgad {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

enum class ErrorKind {
  InvalidInput,
  Unsupported,
  Degenerate,
  Resource,
  Internal,
};

const char* to_string(ErrorKind kind);

// Every failure raised by the library carries one of the kinds above so the
// command-line front end can map it to an exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

struct PNorm {
  double p = 2.0;
  bool infinite = false;

  static PNorm finite(double p);
  static PNorm infinity();
  bool is_finite() const { return !infinite; }
  std::string str() const;
  bool operator==(const PNorm&) const = default;
};

struct Tolerance {
  double rel = 1e-9;
  double abs = 1e-12;

  Tolerance() = default;
  Tolerance(double rel_, double abs_);
  bool close(double a, double b) const;
  double allowed(double a, double b) const;
};

double pnorm(const Vec& v, const PNorm& p);
double pnorm(const std::vector<double>& v, const PNorm& p);
// Sum of |v_i|^p; only meaningful for finite p.
double pnorm_pow(const Vec& v, double p);

bool is_integer(double x, double slack = 0.0);
bool is_even_integer(double x);
bool is_odd_integer(double x);

// Hypercube points. A vertex of {-1,+1}^k is identified with an index whose
// bit (k-1-i) is set iff coordinate i equals +1, so index 0 is all minus ones.
std::vector<int> cube_coords(int k, std::uint64_t index);
std::uint64_t cube_index(const std::vector<int>& coords);
// {0,1} coordinates use the same bit order: bit (k-1-i) holds z_i.
std::vector<int> binary_coords(int k, std::uint64_t index);
std::uint64_t binary_index(const std::vector<int>& z);

// Subsets S of {1..k} are encoded as masks with bit (k-i) standing for i.
std::uint64_t subset_mask(const std::vector<int>& S, int k);
std::vector<int> subset_members(std::uint64_t mask, int k);
int character(std::uint64_t mask, std::uint64_t x_index);
std::vector<int> fourier_vector(const std::vector<int>& S, int k);
std::vector<int> fourier_vector_mask(std::uint64_t mask, int k);

// In-place unnormalised Walsh-Hadamard transform, length must be 2^k.
void walsh_hadamard(std::vector<double>& a);

double binomial(int n, int k);

// Neumaier compensated sum.
class CompensatedSum {
 public:
  void add(double x);
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

int column_rank(const Mat& m, double rel = 1e-10);

// FNV-1a over raw bytes; `digest` hashes the binary64 entries of a matrix
// in column-major order, so equal bytes give equal digests.
std::uint64_t fnv1a(const void* data, std::size_t size, std::uint64_t h = 1469598103934665603ULL);
std::uint64_t digest(const Mat& m, std::uint64_t h = 1469598103934665603ULL);
std::uint64_t digest(const Vec& v, std::uint64_t h = 1469598103934665603ULL);
std::string hex64(std::uint64_t v);

}  // namespace latgad

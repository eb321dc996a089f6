#pragma once

#include "latgad/numeric.hpp"

#include <cstdint>
#include <vector>

namespace latgad {

inline constexpr int kMaxHDimension = 14;

struct HSpec {
  int k = 1;
  double p = 1.0;
  double tstar = 0.0;

  void validate() const;
};

// Eigenvalues are indexed by subset mask (see numeric.hpp). Only |S|
// matters, so `by_size[s]` holds the common value for subsets of size s.
struct EigenReport {
  std::vector<double> lambda;
  std::vector<double> by_size;
  double lambda_all = 0.0;
  double lambda_par = 0.0;
  double det = 0.0;
  double min_abs = 0.0;

  bool nonsingular(double rel_threshold = 1e-6) const;
};

// Entry (u, y) equals |<u, y> - t*|^p for u, y in {-1,1}^k.
Mat build_h(const HSpec& spec);

// H is a convolution on the group {0,1}^k: H_{u,y} = f(u xor y). This is f.
std::vector<double> h_kernel(const HSpec& spec);

double eigenvalue(const HSpec& spec, std::uint64_t mask);
double eigenvalue(const HSpec& spec, const std::vector<int>& S);
double eigenvalue_by_size(const HSpec& spec, int size);

// All 2^k eigenvalues via a fast Walsh-Hadamard transform of the kernel.
std::vector<double> all_eigenvalues(const HSpec& spec);

EigenReport eigen_report(const HSpec& spec);
double determinant(const HSpec& spec);

// H * a without materialising H.
std::vector<double> h_apply(const HSpec& spec, const std::vector<double>& a);
// H^{-1} b through the Fourier eigenbasis. Throws on singular H.
std::vector<double> h_solve(const HSpec& spec, const std::vector<double>& b);

}  // namespace latgad

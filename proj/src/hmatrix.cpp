#include "latgad/hmatrix.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace latgad {

void HSpec::validate() const {
  if (k < 1) throw Error(ErrorKind::InvalidInput, "k must be at least 1");
  if (k > kMaxHDimension) {
    throw Error(ErrorKind::Resource, "k = " + std::to_string(k) + " exceeds the H-matrix limit of " +
                                         std::to_string(kMaxHDimension));
  }
  if (!(p >= 1.0) || !std::isfinite(p)) throw Error(ErrorKind::InvalidInput, "p must be finite and >= 1");
  if (!std::isfinite(tstar)) throw Error(ErrorKind::InvalidInput, "t* must be finite");
}

bool EigenReport::nonsingular(double rel_threshold) const {
  return lambda_all > 0.0 && min_abs >= rel_threshold * lambda_all;
}

std::vector<double> h_kernel(const HSpec& spec) {
  spec.validate();
  const std::uint64_t n = std::uint64_t{1} << spec.k;
  std::vector<double> f(n);
  for (std::uint64_t z = 0; z < n; ++z) {
    const int ip = spec.k - 2 * std::popcount(z);
    f[z] = std::pow(std::fabs(ip - spec.tstar), spec.p);
  }
  return f;
}

Mat build_h(const HSpec& spec) {
  const auto f = h_kernel(spec);
  const auto n = static_cast<Eigen::Index>(f.size());
  Mat h(n, n);
  for (Eigen::Index u = 0; u < n; ++u) {
    for (Eigen::Index y = 0; y < n; ++y) h(u, y) = f[static_cast<std::size_t>(u ^ y)];
  }
  return h;
}

double eigenvalue_by_size(const HSpec& spec, int size) {
  spec.validate();
  if (size < 0 || size > spec.k) throw Error(ErrorKind::InvalidInput, "subset size outside [0,k]");
  // a counts the -1 coordinates inside S, b those outside S.
  CompensatedSum s;
  for (int a = 0; a <= size; ++a) {
    for (int b = 0; b <= spec.k - size; ++b) {
      const double sum_x = spec.k - 2.0 * (a + b);
      const double term = binomial(size, a) * binomial(spec.k - size, b) *
                          std::pow(std::fabs(sum_x - spec.tstar), spec.p);
      s.add((a & 1) ? -term : term);
    }
  }
  return s.value();
}

double eigenvalue(const HSpec& spec, std::uint64_t mask) {
  spec.validate();
  if (mask >= (std::uint64_t{1} << spec.k)) throw Error(ErrorKind::InvalidInput, "subset outside [k]");
  return eigenvalue_by_size(spec, std::popcount(mask));
}

double eigenvalue(const HSpec& spec, const std::vector<int>& S) {
  return eigenvalue(spec, subset_mask(S, spec.k));
}

std::vector<double> all_eigenvalues(const HSpec& spec) {
  auto f = h_kernel(spec);
  walsh_hadamard(f);
  return f;
}

EigenReport eigen_report(const HSpec& spec) {
  spec.validate();
  EigenReport r;
  r.by_size.resize(static_cast<std::size_t>(spec.k) + 1);
  for (int s = 0; s <= spec.k; ++s) r.by_size[s] = eigenvalue_by_size(spec, s);
  const std::uint64_t n = std::uint64_t{1} << spec.k;
  r.lambda.resize(n);
  for (std::uint64_t m = 0; m < n; ++m) r.lambda[m] = r.by_size[std::popcount(m)];
  r.lambda_all = r.by_size.front();
  r.lambda_par = r.by_size.back();
  r.det = 1.0;
  r.min_abs = std::fabs(r.lambda_all);
  for (double l : r.lambda) {
    r.det *= l;
    r.min_abs = std::min(r.min_abs, std::fabs(l));
  }
  return r;
}

double determinant(const HSpec& spec) { return eigen_report(spec).det; }

std::vector<double> h_apply(const HSpec& spec, const std::vector<double>& a) {
  const auto f = h_kernel(spec);
  if (a.size() != f.size()) throw Error(ErrorKind::InvalidInput, "vector length must be 2^k");
  std::vector<double> out(a.size());
  for (std::size_t u = 0; u < a.size(); ++u) {
    CompensatedSum s;
    for (std::size_t y = 0; y < a.size(); ++y) s.add(f[u ^ y] * a[y]);
    out[u] = s.value();
  }
  return out;
}

std::vector<double> h_solve(const HSpec& spec, const std::vector<double>& b) {
  const auto rep = eigen_report(spec);
  if (b.size() != rep.lambda.size()) throw Error(ErrorKind::InvalidInput, "vector length must be 2^k");
  if (!rep.nonsingular()) {
    throw Error(ErrorKind::InvalidInput, "H is numerically singular (min |lambda_S| below 1e-6 * lambda)");
  }
  std::vector<double> x = b;
  walsh_hadamard(x);
  for (std::size_t m = 0; m < x.size(); ++m) x[m] /= rep.lambda[m];
  walsh_hadamard(x);
  const double scale = 1.0 / static_cast<double>(x.size());
  for (double& v : x) v *= scale;
  return x;
}

}  // namespace latgad

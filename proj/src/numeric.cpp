#include "latgad/numeric.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <sstream>

namespace latgad {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::Unsupported: return "unsupported-parameters";
    case ErrorKind::Degenerate: return "numeric-degeneracy";
    case ErrorKind::Resource: return "resource";
    case ErrorKind::Internal: return "internal-consistency";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

PNorm PNorm::finite(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw Error(ErrorKind::InvalidInput, "finite p must satisfy p >= 1");
  }
  return PNorm{p, false};
}

PNorm PNorm::infinity() { return PNorm{std::numeric_limits<double>::infinity(), true}; }

std::string PNorm::str() const {
  if (infinite) return "inf";
  std::ostringstream os;
  os.precision(17);
  os << p;
  return os.str();
}

Tolerance::Tolerance(double rel_, double abs_) : rel(rel_), abs(abs_) {
  if (!(rel > 0) || !(abs > 0)) {
    throw Error(ErrorKind::InvalidInput, "tolerances must be positive");
  }
}

double Tolerance::allowed(double a, double b) const {
  return std::max(abs, rel * std::max(std::fabs(a), std::fabs(b)));
}

bool Tolerance::close(double a, double b) const { return std::fabs(a - b) <= allowed(a, b); }

double pnorm_pow(const Vec& v, double p) {
  CompensatedSum s;
  for (Eigen::Index i = 0; i < v.size(); ++i) s.add(std::pow(std::fabs(v[i]), p));
  return s.value();
}

double pnorm(const Vec& v, const PNorm& p) {
  if (v.size() == 0) return 0.0;
  const double m = v.cwiseAbs().maxCoeff();
  if (p.infinite || m == 0.0) return m;
  // Scale by the largest entry so large p does not overflow.
  CompensatedSum s;
  for (Eigen::Index i = 0; i < v.size(); ++i) s.add(std::pow(std::fabs(v[i]) / m, p.p));
  return m * std::pow(s.value(), 1.0 / p.p);
}

double pnorm(const std::vector<double>& v, const PNorm& p) {
  return pnorm(Eigen::Map<const Vec>(v.data(), static_cast<Eigen::Index>(v.size())), p);
}

bool is_integer(double x, double slack) { return std::fabs(x - std::round(x)) <= slack; }

bool is_even_integer(double x) {
  return is_integer(x) && std::fmod(std::fabs(std::round(x)), 2.0) == 0.0;
}

bool is_odd_integer(double x) {
  return is_integer(x) && std::fmod(std::fabs(std::round(x)), 2.0) == 1.0;
}

std::vector<int> cube_coords(int k, std::uint64_t index) {
  std::vector<int> c(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) c[i] = ((index >> (k - 1 - i)) & 1U) ? 1 : -1;
  return c;
}

std::uint64_t cube_index(const std::vector<int>& coords) {
  const int k = static_cast<int>(coords.size());
  std::uint64_t idx = 0;
  for (int i = 0; i < k; ++i) {
    if (coords[i] != 1 && coords[i] != -1) {
      throw Error(ErrorKind::InvalidInput, "cube coordinates must be +1 or -1");
    }
    if (coords[i] == 1) idx |= std::uint64_t{1} << (k - 1 - i);
  }
  return idx;
}

std::vector<int> binary_coords(int k, std::uint64_t index) {
  std::vector<int> z(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) z[i] = static_cast<int>((index >> (k - 1 - i)) & 1U);
  return z;
}

std::uint64_t binary_index(const std::vector<int>& z) {
  const int k = static_cast<int>(z.size());
  std::uint64_t idx = 0;
  for (int i = 0; i < k; ++i) {
    if (z[i] != 0 && z[i] != 1) throw Error(ErrorKind::InvalidInput, "binary coordinates must be 0 or 1");
    if (z[i] == 1) idx |= std::uint64_t{1} << (k - 1 - i);
  }
  return idx;
}

std::uint64_t subset_mask(const std::vector<int>& S, int k) {
  std::uint64_t mask = 0;
  for (int i : S) {
    if (i < 1 || i > k) {
      throw Error(ErrorKind::InvalidInput, "subset element " + std::to_string(i) + " outside [1," +
                                               std::to_string(k) + "]");
    }
    mask |= std::uint64_t{1} << (k - i);
  }
  return mask;
}

std::vector<int> subset_members(std::uint64_t mask, int k) {
  std::vector<int> S;
  for (int i = 1; i <= k; ++i) {
    if ((mask >> (k - i)) & 1U) S.push_back(i);
  }
  return S;
}

int character(std::uint64_t mask, std::uint64_t x_index) {
  // prod_{i in S} x_i = (-1)^{number of i in S with x_i = -1}
  return (std::popcount(mask & ~x_index) & 1) ? -1 : 1;
}

std::vector<int> fourier_vector_mask(std::uint64_t mask, int k) {
  if (k < 1 || k > 30) throw Error(ErrorKind::InvalidInput, "k must lie in [1,30]");
  const std::uint64_t n = std::uint64_t{1} << k;
  if (mask >= n) throw Error(ErrorKind::InvalidInput, "subset mask outside [k]");
  std::vector<int> v(n);
  for (std::uint64_t x = 0; x < n; ++x) v[x] = character(mask, x);
  return v;
}

std::vector<int> fourier_vector(const std::vector<int>& S, int k) {
  return fourier_vector_mask(subset_mask(S, k), k);
}

void walsh_hadamard(std::vector<double>& a) {
  const std::size_t n = a.size();
  if (n == 0 || (n & (n - 1)) != 0) throw Error(ErrorKind::InvalidInput, "length must be a power of two");
  for (std::size_t h = 1; h < n; h <<= 1) {
    for (std::size_t i = 0; i < n; i += 2 * h) {
      for (std::size_t j = i; j < i + h; ++j) {
        const double x = a[j];
        const double y = a[j + h];
        a[j] = x + y;
        a[j + h] = x - y;
      }
    }
  }
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  // Each partial product is itself a binomial coefficient, so it stays exact
  // while below 2^53.
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

void CompensatedSum::add(double x) {
  const double t = sum_ + x;
  if (std::fabs(sum_) >= std::fabs(x)) {
    comp_ += (sum_ - t) + x;
  } else {
    comp_ += (x - t) + sum_;
  }
  sum_ = t;
}

int column_rank(const Mat& m, double rel) {
  if (m.cols() == 0) return 0;
  Eigen::ColPivHouseholderQR<Mat> qr(m);
  qr.setThreshold(rel);
  return static_cast<int>(qr.rank());
}

std::uint64_t fnv1a(const void* data, std::size_t size, std::uint64_t h) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < size; ++i) {
    h ^= bytes[i];
    h *= 1099511628211ULL;
  }
  return h;
}

std::uint64_t digest(const Mat& m, std::uint64_t h) {
  const std::int64_t dims[2] = {static_cast<std::int64_t>(m.rows()), static_cast<std::int64_t>(m.cols())};
  h = fnv1a(dims, sizeof dims, h);
  return fnv1a(m.data(), sizeof(double) * static_cast<std::size_t>(m.size()), h);
}

std::uint64_t digest(const Vec& v, std::uint64_t h) {
  const std::int64_t dim = static_cast<std::int64_t>(v.size());
  h = fnv1a(&dim, sizeof dim, h);
  return fnv1a(v.data(), sizeof(double) * static_cast<std::size_t>(v.size()), h);
}

std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[static_cast<std::size_t>(i)] = digits[v & 0xf];
    v >>= 4;
  }
  return s;
}

}  // namespace latgad

#include "latgad/oracle.hpp"

#include "latgad/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace latgad {

Box uniform_box(int n, int lo, int hi) {
  if (lo > hi) throw Error(ErrorKind::InvalidInput, "empty box interval");
  return Box(static_cast<std::size_t>(n), {lo, hi});
}

Box parse_box(const std::string& text, int n) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) throw Error(ErrorKind::InvalidInput, "box must read 'lo..hi'");
  try {
    std::size_t p1 = 0, p2 = 0;
    const std::string a = text.substr(0, dots), b = text.substr(dots + 2);
    const int lo = std::stoi(a, &p1);
    const int hi = std::stoi(b, &p2);
    if (p1 != a.size() || p2 != b.size()) throw std::invalid_argument(text);
    return uniform_box(n, lo, hi);
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    throw Error(ErrorKind::InvalidInput, "box must read 'lo..hi', got '" + text + "'");
  }
}

std::uint64_t box_size(const Box& box) {
  std::uint64_t total = 1;
  for (const auto& [lo, hi] : box) {
    if (lo > hi) throw Error(ErrorKind::InvalidInput, "empty box interval");
    const auto side = static_cast<std::uint64_t>(static_cast<long long>(hi) - lo + 1);
    if (total > kMaxOracleBox / side) return kMaxOracleBox + 1;
    total *= side;
  }
  return total;
}

namespace {

void decode(std::uint64_t idx, const Box& box, std::vector<int>& z) {
  for (std::size_t i = box.size(); i-- > 0;) {
    const auto side = static_cast<std::uint64_t>(box[i].second - box[i].first + 1);
    z[i] = box[i].first + static_cast<int>(idx % side);
    idx /= side;
  }
}

double distance_at(const Mat& B, const Vec& t, const PNorm& p, const std::vector<int>& z, Vec& r) {
  r = -t;
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (z[i]) r.noalias() += static_cast<double>(z[i]) * B.col(static_cast<Eigen::Index>(i));
  }
  return pnorm(r, p);
}

}  // namespace

CvpSolution cvp_enumerate(const Mat& B, const Vec& t, const PNorm& p, const Box& box, int threads, double tie_rel) {
  if (B.rows() != t.size()) throw Error(ErrorKind::InvalidInput, "basis and target dimensions differ");
  if (static_cast<Eigen::Index>(box.size()) != B.cols()) {
    throw Error(ErrorKind::InvalidInput, "box dimension must equal the number of basis columns");
  }
  const std::uint64_t total = box_size(box);
  if (total > kMaxOracleBox) {
    throw Error(ErrorKind::Resource, "box has more than " + std::to_string(kMaxOracleBox) + " points");
  }
  struct Partial {
    double best = std::numeric_limits<double>::infinity();
    std::vector<std::pair<std::uint64_t, double>> ties;
  };
  const int workers = std::max(1, threads);
  std::vector<Partial> partial(static_cast<std::size_t>(workers));
  parallel_chunks(total, workers, [&](int w, std::uint64_t begin, std::uint64_t end) {
    Partial& part = partial[static_cast<std::size_t>(w)];
    std::vector<int> z(box.size());
    Vec r(t.size());
    for (std::uint64_t idx = begin; idx < end; ++idx) {
      decode(idx, box, z);
      const double d = distance_at(B, t, p, z, r);
      if (d < part.best) {
        part.best = d;
        const double band = d * (1.0 + tie_rel);
        std::erase_if(part.ties, [band](const auto& e) { return e.second > band; });
      }
      if (d <= part.best * (1.0 + tie_rel)) part.ties.emplace_back(idx, d);
    }
  });
  double best = std::numeric_limits<double>::infinity();
  for (const auto& part : partial) best = std::min(best, part.best);
  const double band = best * (1.0 + tie_rel);
  std::vector<std::uint64_t> winners;
  for (const auto& part : partial) {
    for (const auto& [idx, d] : part.ties) {
      if (d <= band) winners.push_back(idx);
    }
  }
  std::sort(winners.begin(), winners.end());
  CvpSolution sol;
  sol.distance = best;
  sol.examined = total;
  for (auto idx : winners) {
    std::vector<int> z(box.size());
    decode(idx, box, z);
    sol.closest.push_back(std::move(z));
  }
  return sol;
}

MaxSatResult max_sat_brute(const CspFormula& f, int threads) {
  f.validate();
  if (f.n > kMaxSatVars) {
    throw Error(ErrorKind::Resource, "brute-force Max-SAT is limited to " + std::to_string(kMaxSatVars) + " variables");
  }
  const std::uint64_t total = std::uint64_t{1} << f.n;
  struct Partial {
    long long best = -1;
    std::uint64_t count = 0;
    std::vector<std::uint64_t> optimal;
  };
  const int workers = std::max(1, threads);
  std::vector<Partial> partial(static_cast<std::size_t>(workers));
  parallel_chunks(total, workers, [&](int w, std::uint64_t begin, std::uint64_t end) {
    Partial& part = partial[static_cast<std::size_t>(w)];
    for (std::uint64_t a = begin; a < end; ++a) {
      const long long v = f.satisfied_weight(a);
      if (v > part.best) {
        part.best = v;
        part.count = 0;
        part.optimal.clear();
      }
      if (v == part.best) {
        ++part.count;
        if (part.optimal.size() < kMaxStoredOptima) part.optimal.push_back(a);
      }
    }
  });
  MaxSatResult out;
  out.best = -1;
  for (const auto& part : partial) out.best = std::max(out.best, part.best);
  for (const auto& part : partial) {
    if (part.best != out.best) continue;
    out.count += part.count;
    for (auto a : part.optimal) {
      if (out.optimal.size() < kMaxStoredOptima) out.optimal.push_back(a);
    }
  }
  return out;
}

std::pair<double, std::vector<int>> min_non_binary(const Mat& B, const Vec& t, const PNorm& p, int threads) {
  const int n = static_cast<int>(B.cols());
  const Box box = uniform_box(n, -1, 2);
  const std::uint64_t total = box_size(box);
  if (total > kMaxOracleBox) throw Error(ErrorKind::Resource, "non-binary box too large");
  struct Partial {
    double best = std::numeric_limits<double>::infinity();
    std::uint64_t arg = 0;
  };
  const int workers = std::max(1, threads);
  std::vector<Partial> partial(static_cast<std::size_t>(workers));
  parallel_chunks(total, workers, [&](int w, std::uint64_t begin, std::uint64_t end) {
    Partial& part = partial[static_cast<std::size_t>(w)];
    std::vector<int> z(box.size());
    Vec r(t.size());
    for (std::uint64_t idx = begin; idx < end; ++idx) {
      decode(idx, box, z);
      if (std::all_of(z.begin(), z.end(), [](int v) { return v == 0 || v == 1; })) continue;
      const double d = distance_at(B, t, p, z, r);
      if (d < part.best) {
        part.best = d;
        part.arg = idx;
      }
    }
  });
  Partial best;
  for (const auto& part : partial) {
    if (part.best < best.best) best = part;
  }
  std::vector<int> z(box.size());
  decode(best.arg, box, z);
  return {best.best, z};
}

// ---------------------------------------------------------------------------
// reduction validation

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

bool binary_box(const Box& box) {
  return std::all_of(box.begin(), box.end(), [](const auto& iv) { return iv.first == 0 && iv.second == 1; });
}

}  // namespace

VerificationReport validate_reduction(const CspFormula& f, const CvpInstance& inst, const ValidateOptions& opt) {
  VerificationReport rep;
  rep.tolerance = opt.tol.rel;
  const auto& meta = inst.meta;
  const int n = f.n;

  {
    VerificationCheck c;
    c.name = "instance-matches-formula";
    c.pass = inst.B.cols() == n && inst.B.rows() == inst.t.size() && meta.n_vars == n &&
             meta.formula_hash == hex64(f.hash()) && inst.r > 0.0;
    c.detail = "formula hash " + hex64(f.hash()) + ", instance records " + meta.formula_hash;
    rep.add(std::move(c));
    if (!rep.pass) return rep;
  }

  const MaxSatResult ms = max_sat_brute(f, opt.threads);
  const double r = inst.r;
  auto within = [&](double d, double radius) { return d <= radius * (1.0 + opt.tol.rel) + opt.tol.abs; };

  if (meta.mode == "gap") {
    const Box box = opt.box.value_or(n <= 6 ? uniform_box(n, -1, 2) : uniform_box(n, 0, 1));
    const CvpSolution sol = cvp_enumerate(inst.B, inst.t, inst.p, box, opt.threads);
    const double m = static_cast<double>(f.total_weight());
    const double val = m > 0 ? static_cast<double>(ms.best) / m : 1.0;
    VerificationCheck c;
    if (!sol.closest.empty()) c.witness = sol.closest.front();
    if (!meta.s || !meta.c || !meta.gamma) {
      c.name = "gap-parameters";
      c.pass = false;
      c.detail = "instance metadata lacks s, c or gamma";
    } else if (val >= *meta.c - 1e-12) {
      c.name = "yes-within-r";
      c.pass = within(sol.distance, r);
      c.max_residual = sol.distance - r;
      c.detail = "val " + fmt(val) + " >= c; dist " + fmt(sol.distance) + " vs r " + fmt(r);
    } else if (val < *meta.s - 1e-12) {
      const double gr = *meta.gamma * r;
      c.name = "no-beyond-gamma-r";
      c.pass = sol.distance > gr * (1.0 - opt.tol.rel) - opt.tol.abs;
      c.max_residual = gr - sol.distance;
      c.detail = "val " + fmt(val) + " < s; dist " + fmt(sol.distance) + " vs gamma*r " + fmt(gr);
    } else {
      c.name = "promise-gap";
      c.pass = true;
      c.detail = "val " + fmt(val) + " lies in [s, c); no claim to check";
    }
    rep.add(std::move(c));
    return rep;
  }

  if (meta.mode != "padded" && meta.mode != "cvpp" && meta.mode != "cvpp-inf") {
    VerificationCheck c;
    c.name = "mode";
    c.pass = false;
    c.detail = "unknown mode '" + meta.mode + "'";
    rep.add(std::move(c));
    return rep;
  }

  const Box box = opt.box.value_or(uniform_box(n, 0, 1));
  const CvpSolution sol = cvp_enumerate(inst.B, inst.t, inst.p, box, opt.threads);
  const bool yes = ms.best >= meta.threshold;
  {
    VerificationCheck c;
    c.name = "decision";
    c.pass = yes == within(sol.distance, r);
    c.max_residual = sol.distance - r;
    if (!sol.closest.empty()) c.witness = sol.closest.front();
    c.detail = "best weight " + std::to_string(ms.best) + " vs threshold " + std::to_string(meta.threshold) +
               "; dist " + fmt(sol.distance) + " vs r " + fmt(r);
    rep.add(std::move(c));
  }

  if (meta.mode == "padded" || meta.mode == "cvpp") {
    const CvpSolution bin =
        binary_box(box) ? sol : cvp_enumerate(inst.B, inst.t, inst.p, uniform_box(n, 0, 1), opt.threads);
    std::vector<std::uint64_t> closest;
    for (const auto& z : bin.closest) closest.push_back(vector_to_assignment(z));
    std::sort(closest.begin(), closest.end());
    VerificationCheck c;
    c.name = "witness-bijection";
    if (ms.count > ms.optimal.size()) {
      c.pass = closest.size() == ms.count;
      c.detail = "optimal set truncated; compared counts only";
    } else {
      c.pass = closest == ms.optimal;
      c.detail = std::to_string(closest.size()) + " closest binary points, " + std::to_string(ms.count) +
                 " optimal assignments";
    }
    rep.add(std::move(c));
  }

  if (opt.non_binary && n >= 1 && n <= 6) {
    const auto [d, z] = min_non_binary(inst.B, inst.t, inst.p, opt.threads);
    VerificationCheck c;
    c.name = "non-binary-excluded";
    c.pass = d > r * (1.0 + opt.tol.rel) + opt.tol.abs;
    c.max_residual = r - d;
    c.witness = z;
    c.detail = "min non-binary dist " + fmt(d) + " over [-1,2]^" + std::to_string(n) + " vs r " + fmt(r);
    rep.add(std::move(c));
  }
  return rep;
}

}  // namespace latgad

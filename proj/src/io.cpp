#include "latgad/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

namespace latgad::io {

std::string format_real(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parse_real(const std::string& s) {
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto res = std::from_chars(s.data(), end, v);
  if (res.ec != std::errc{} || res.ptr != end) throw Error(ErrorKind::InvalidInput, "bad decimal string '" + s + "'");
  return v;
}

double parse_real(const Json& j) {
  if (j.is_string()) return parse_real(j.get<std::string>());
  if (j.is_number()) return j.get<double>();
  throw Error(ErrorKind::InvalidInput, "expected a decimal string, got " + j.dump());
}

namespace {

Json vec_json(const Vec& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(format_real(v[i]));
  return a;
}

Json columns_json(const Mat& m) {
  Json a = Json::array();
  for (Eigen::Index c = 0; c < m.cols(); ++c) a.push_back(vec_json(m.col(c)));
  return a;
}

Vec vec_from(const Json& j) {
  if (!j.is_array()) throw Error(ErrorKind::InvalidInput, "expected an array of decimal strings");
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = parse_real(j[i]);
  return v;
}

Mat columns_from(const Json& j, Eigen::Index rows_hint = -1) {
  if (!j.is_array()) throw Error(ErrorKind::InvalidInput, "expected an array of columns");
  const auto cols = static_cast<Eigen::Index>(j.size());
  Eigen::Index rows = cols > 0 ? static_cast<Eigen::Index>(j[0].size()) : std::max<Eigen::Index>(rows_hint, 0);
  Mat m(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c) {
    const Vec col = vec_from(j[static_cast<std::size_t>(c)]);
    if (col.size() != rows) throw Error(ErrorKind::InvalidInput, "columns have different lengths");
    m.col(c) = col;
  }
  return m;
}

const Json& need(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorKind::InvalidInput, std::string("missing key '") + key + "'");
  return j.at(key);
}

void check_schema(const Json& j, const char* schema) {
  const auto& s = need(j, "schema");
  if (!s.is_string() || s.get<std::string>() != schema) {
    throw Error(ErrorKind::InvalidInput, std::string("expected schema ") + schema + ", got " + s.dump());
  }
}

int int_from(const Json& j, const char* key) {
  const auto& v = need(j, key);
  if (!v.is_number_integer()) throw Error(ErrorKind::InvalidInput, std::string("'") + key + "' must be an integer");
  return v.get<int>();
}

}  // namespace

Json pnorm_to_json(const PNorm& p) { return p.infinite ? Json("inf") : Json(format_real(p.p)); }

PNorm pnorm_from_json(const Json& j) {
  const double p = parse_real(j);
  return std::isinf(p) ? PNorm::infinity() : PNorm::finite(p);
}

Json to_json(const IsolatingGadget& g) {
  Json j;
  j["schema"] = kGadgetSchema;
  j["p"] = format_real(g.p);
  j["k"] = g.k;
  j["kind"] = to_string(g.kind);
  j["constraint"] = g.constraint ? Json(g.constraint->str()) : Json(nullptr);
  j["V"] = columns_json(g.V);
  j["t"] = vec_json(g.t);
  j["eps"] = format_real(g.eps);
  return j;
}

Json to_json(const OnOffGadget& g) {
  Json j;
  j["schema"] = kGadgetSchema;
  j["p"] = format_real(g.p);
  j["k"] = g.k;
  j["kind"] = "on-off";
  j["constraint"] = nullptr;
  j["V"] = columns_json(g.V);
  j["t_on"] = vec_json(g.t_on);
  j["t_off"] = vec_json(g.t_off);
  j["eps"] = format_real(g.eps);
  return j;
}

bool is_on_off(const Json& j) {
  check_schema(j, kGadgetSchema);
  return need(j, "kind").get<std::string>() == "on-off";
}

IsolatingGadget isolating_from_json(const Json& j) {
  if (is_on_off(j)) throw Error(ErrorKind::InvalidInput, "gadget file holds an on-off gadget");
  IsolatingGadget g;
  g.p = parse_real(need(j, "p"));
  g.k = int_from(j, "k");
  g.kind = gadget_kind_from_string(need(j, "kind").get<std::string>());
  const auto& c = need(j, "constraint");
  if (!c.is_null()) g.constraint = GadgetConstraint::parse(c.get<std::string>());
  g.t = vec_from(need(j, "t"));
  g.V = columns_from(need(j, "V"), g.t.size());
  g.eps = parse_real(need(j, "eps"));
  if (g.V.cols() != g.k || g.V.rows() != g.t.size()) throw Error(ErrorKind::InvalidInput, "gadget shape mismatch");
  return g;
}

OnOffGadget on_off_from_json(const Json& j) {
  if (!is_on_off(j)) throw Error(ErrorKind::InvalidInput, "gadget file does not hold an on-off gadget");
  OnOffGadget g;
  g.p = parse_real(need(j, "p"));
  g.k = int_from(j, "k");
  g.t_on = vec_from(need(j, "t_on"));
  g.t_off = vec_from(need(j, "t_off"));
  g.V = columns_from(need(j, "V"), g.t_on.size());
  g.eps = parse_real(need(j, "eps"));
  if (g.V.cols() != g.k || g.V.rows() != g.t_on.size() || g.t_off.size() != g.t_on.size()) {
    throw Error(ErrorKind::InvalidInput, "gadget shape mismatch");
  }
  return g;
}

Json to_json(const CvpInstance& inst) {
  Json j;
  j["schema"] = kCvpSchema;
  j["p"] = pnorm_to_json(inst.p);
  j["basis"] = columns_json(inst.B);
  j["target"] = vec_json(inst.t);
  j["radius"] = format_real(inst.r);
  Json m;
  const auto& meta = inst.meta;
  m["mode"] = meta.mode;
  m["formula_hash"] = meta.formula_hash;
  m["gadget_ids"] = meta.gadget_ids;
  m["n_vars"] = meta.n_vars;
  m["total_weight"] = meta.total_weight;
  m["threshold"] = meta.threshold;
  m["eps"] = format_real(meta.eps);
  if (meta.gamma) m["gamma"] = format_real(*meta.gamma);
  if (meta.s) m["s"] = format_real(*meta.s);
  if (meta.c) m["c"] = format_real(*meta.c);
  j["meta"] = m;
  return j;
}

CvpInstance cvp_from_json(const Json& j) {
  check_schema(j, kCvpSchema);
  CvpInstance inst;
  inst.p = pnorm_from_json(need(j, "p"));
  inst.t = vec_from(need(j, "target"));
  inst.B = columns_from(need(j, "basis"), inst.t.size());
  inst.r = parse_real(need(j, "radius"));
  if (inst.B.rows() != inst.t.size()) throw Error(ErrorKind::InvalidInput, "basis and target dimensions differ");
  const auto& m = need(j, "meta");
  auto& meta = inst.meta;
  meta.mode = need(m, "mode").get<std::string>();
  meta.formula_hash = need(m, "formula_hash").get<std::string>();
  meta.gadget_ids = need(m, "gadget_ids").get<std::vector<std::string>>();
  meta.n_vars = int_from(m, "n_vars");
  meta.total_weight = need(m, "total_weight").get<long long>();
  meta.threshold = need(m, "threshold").get<long long>();
  meta.eps = parse_real(need(m, "eps"));
  if (m.contains("gamma")) meta.gamma = parse_real(m["gamma"]);
  if (m.contains("s")) meta.s = parse_real(m["s"]);
  if (m.contains("c")) meta.c = parse_real(m["c"]);
  return inst;
}

Json to_json(const CvppArtifacts& a) {
  Json j;
  j["schema"] = kCvppSchema;
  j["n"] = a.n;
  j["k"] = a.k;
  j["p"] = pnorm_to_json(a.p);
  j["num_clauses"] = a.num_clauses();
  j["block_rows"] = a.block_rows;
  j["alpha"] = format_real(a.alpha);
  j["basis_digest"] = a.basis_digest();
  j["gadget"] = a.infinity ? Json(nullptr) : to_json(a.gadget);
  j["basis"] = columns_json(a.B);
  return j;
}

CvppArtifacts cvpp_from_json(const Json& j) {
  check_schema(j, kCvppSchema);
  const int n = int_from(j, "n");
  const int k = int_from(j, "k");
  const auto& g = need(j, "gadget");
  CvppArtifacts a = g.is_null() ? cvpp_inf_preprocess(n, k) : cvpp_preprocess(n, k, on_off_from_json(g));
  if (a.basis_digest() != need(j, "basis_digest").get<std::string>()) {
    throw Error(ErrorKind::InvalidInput, "stored basis digest does not match the rebuilt preprocessing");
  }
  if (j.contains("basis")) {
    const Mat stored = columns_from(j["basis"], a.B.rows());
    if (stored.rows() != a.B.rows() || stored.cols() != a.B.cols() || stored != a.B) {
      throw Error(ErrorKind::InvalidInput, "stored basis differs from the rebuilt preprocessing");
    }
  }
  return a;
}

Json to_json(const VerificationReport& r) {
  Json j;
  j["pass"] = r.pass;
  j["tolerance"] = format_real(r.tolerance);
  j["column_rank"] = r.column_rank;
  j["note"] = r.note;
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json e;
    e["name"] = c.name;
    e["pass"] = c.pass;
    e["max_residual"] = format_real(c.max_residual);
    e["witness"] = c.witness;
    e["detail"] = c.detail;
    checks.push_back(e);
  }
  j["checks"] = checks;
  return j;
}

Json to_json(const CvpSolution& s) {
  Json j;
  j["distance"] = format_real(s.distance);
  j["closest"] = s.closest;
  j["examined"] = s.examined;
  return j;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::InvalidInput, "malformed JSON in '" + path + "': " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  if (path == "-") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::InvalidInput, "cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

std::vector<std::uint64_t> read_points(std::istream& in) {
  std::vector<std::uint64_t> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream is(line);
    std::string tok;
    if (!(is >> tok)) continue;
    if (tok.rfind("0x", 0) == 0 || tok.rfind("0X", 0) == 0) tok = tok.substr(2);
    std::uint64_t v = 0;
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v, 16);
    std::string rest;
    if (tok.empty() || res.ec != std::errc{} || res.ptr != tok.data() + tok.size() || (is >> rest)) {
      throw Error(ErrorKind::InvalidInput, "line " + std::to_string(lineno) + ": expected one hex bit string");
    }
    out.push_back(v);
  }
  return out;
}

std::vector<std::uint64_t> read_points_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot open '" + path + "'");
  return read_points(in);
}

std::string format_point(std::uint64_t x, int n) {
  const int digits = std::max(1, (n + 3) / 4);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%0*llx", digits, static_cast<unsigned long long>(x));
  return buf;
}

}  // namespace latgad::io

#pragma once

#include "latgad/combinatorics.hpp"
#include "latgad/gadgets.hpp"
#include "latgad/oracle.hpp"
#include "latgad/reductions.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace latgad::io {

using Json = nlohmann::json;  // std::map backed, so keys come out sorted

inline constexpr const char* kGadgetSchema = "latgad-gadget-v1";
inline constexpr const char* kCvpSchema = "latgad-cvp-v1";
inline constexpr const char* kCvppSchema = "latgad-cvpp-v1";

// Reals travel as decimal strings with 17 significant digits, which
// round-trips every binary64 value. Infinity is written "inf".
std::string format_real(double x);
double parse_real(const std::string& s);
double parse_real(const Json& j);

Json pnorm_to_json(const PNorm& p);
PNorm pnorm_from_json(const Json& j);

Json to_json(const IsolatingGadget& g);
Json to_json(const OnOffGadget& g);
Json to_json(const CvpInstance& inst);
Json to_json(const CvppArtifacts& a);
Json to_json(const VerificationReport& r);
Json to_json(const CvpSolution& s);

// Gadget files hold either kind; `kind` tells them apart ("on-off" for
// on-off gadgets).
bool is_on_off(const Json& j);
IsolatingGadget isolating_from_json(const Json& j);
OnOffGadget on_off_from_json(const Json& j);
CvpInstance cvp_from_json(const Json& j);
// Rebuilds the artifacts from (n, k, gadget) and checks the stored basis
// matches bit for bit.
CvppArtifacts cvpp_from_json(const Json& j);

Json read_json_file(const std::string& path);
// Writes `j.dump(2)` plus a newline; "-" means standard output.
void write_json_file(const std::string& path, const Json& j);

// One hex bit string per line, optional 0x prefix, '#' comments. Bit j-1 of
// the value is coordinate j.
std::vector<std::uint64_t> read_points(std::istream& in);
std::vector<std::uint64_t> read_points_file(const std::string& path);
std::string format_point(std::uint64_t x, int n);

}  // namespace latgad::io

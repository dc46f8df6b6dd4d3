#pragma once

#include "mackey/hom.hpp"

#include <json.hpp>

#include <map>
#include <string>

namespace mackey {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "mackey/1";

Json matrix_to_json(const IntMatrix& m);
IntMatrix matrix_from_json(const Json& j, int rows, int cols, const std::string& path);

Json to_json(const MackeyFunctor& m);
// Validates structure and the Mackey axioms; errors cite the JSON path.
MackeyFunctor from_json(const Json& j);

Json fingerprint_to_json(const Fingerprint& fp);
Fingerprint fingerprint_from_json(const Json& j);

std::string render_lewis(const MackeyFunctor& m);
// A short label such as "B(1,0)" or "Z(1,1) + B(0,1)" when M matches small catalog sums
// by fingerprint; otherwise a levelwise summary.
std::string identify(const MackeyFunctor& m);

using GradedMackey = std::map<int, MackeyFunctor>;
std::string describe_graded(const GradedMackey& g);

}  // namespace mackey

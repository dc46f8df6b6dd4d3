#pragma once

#include "mackey/serialize.hpp"

#include <functional>
#include <string>
#include <vector>

namespace mackey::acceptance {

// {"degrees": [{"degree", "label", "fingerprint", "functor"}, ...]} with zero degrees omitted.
Json graded_to_json(const GradedMackey& g);

struct GoldenCase {
    std::string name;  // file stem, e.g. "ext_c3_B1_Z"
    TowerShape shape;
    std::function<GradedMackey()> compute;
};

const std::vector<GoldenCase>& golden_cases();

enum class GoldenStatus { pass, mismatch, missing, unreadable };

struct GoldenResult {
    std::string name;
    GoldenStatus status = GoldenStatus::pass;
    std::vector<std::string> details;
};

// MACKEY_GOLDEN_DIR if set, otherwise the directory configured at build time.
std::string golden_dir();

// Fingerprints are compared first; with `matrices` set, stored and computed matrices must
// also be identical.
std::vector<GoldenResult> check_golden(const std::string& dir, bool matrices = false);
// Writes one file per case; returns the paths written.
std::vector<std::string> write_golden(const std::string& dir);

std::string status_name(GoldenStatus s);

}  // namespace mackey::acceptance

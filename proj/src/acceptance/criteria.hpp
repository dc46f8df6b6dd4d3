#pragma once

#include <string>
#include <vector>

namespace mackey::acceptance {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    std::vector<std::string> failures;  // one line per mismatch
    std::vector<std::string> notes;     // informational lines printed with the result
    double seconds = 0.0;
    double budget_seconds = 0.0;        // 0 means no time bound
};

struct AcceptanceOptions {
    std::vector<int> primes_cp2{2, 3, 5};  // primes for the C_{p^2} grid and the duality check
    int jobs = 1;                          // workers for the sphere grids
};

constexpr int kCriterionCount = 15;

std::string criterion_title(int id);
CriterionResult run_criterion(int id, const AcceptanceOptions& options = {});

// Runs the C_{p^2} grid check alone (criterion 8) for the given primes.
CriterionResult run_cp2_grid(const AcceptanceOptions& options);

// "criterion  3 PASS  ext of forms into Z  (0.41 s)"
std::string summary_line(const CriterionResult& r);

}  // namespace mackey::acceptance

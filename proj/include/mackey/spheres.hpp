#pragma once

#include "mackey/cells.hpp"
#include "mackey/replabel.hpp"

#include <string>
#include <vector>

namespace mackey {

// Smash of building blocks (dualized for negative coefficients), reduced after every step,
// then shifted by the trivial part.
CellComplex sphere_chain(const TowerShape& shape, const RepLabel& v);
// One orbit per cell with stabilizers shrinking as the degree grows; V must be actual.
CellComplex reduced_model(const TowerShape& shape, const RepLabel& v);

// Homology of S^V in every degree of its chain complex. For actual V the reduced model is
// computed as well and a mismatch throws std::logic_error.
GradedMackey bredon_homology(const TowerShape& shape, const RepLabel& v, bool cross_check = true);

// The V with S^V smash HZ = HM for a form M of Z.
RepLabel form_to_rep(const MackeyFunctor& m);

struct DualityReport {
    bool ok = true;
    std::vector<std::string> mismatches;
    std::vector<int> nonsplit_degrees;  // degrees where the sequence exists but does not split
};
// Compares H = H(S^V) with H' = H(S^{(2 - lambda_0) - V}): for every d the torsion part of H'_{-d}
// is Ext_L(H_{d-1}) and the torsion-free quotient is Hom_L(H_d).
DualityReport anderson_check(const TowerShape& shape, const RepLabel& v);

// Ext^i(M, N) against H_{-i}(S^{V_N - V_M}) and Tor_i(M, N) against H_i(S^{V_M + V_N}).
CompatReport ext_sphere_crosscheck(const MackeyFunctor& m, const MackeyFunctor& n);

}  // namespace mackey

#pragma once

#include "mackey/resolution.hpp"

#include <string>
#include <vector>

namespace mackey::acceptance {

// Expected graded values written out independently of the engines. Degrees are homological:
// the entry at d is H_d(S^V), i.e. pi_{d-V} of HZ.
using Expected = GradedMackey;

// Adds `m` at degree d, summing with whatever is already there.
void put(Expected& e, int d, const MackeyFunctor& m);

// Empty when g and e agree at every degree (missing entries are zero), compared by fingerprint.
std::vector<std::string> compare_graded(const GradedMackey& g, const Expected& e, const TowerShape& shape);

// C_p, V = a lambda + b.
Expected cp_sphere(int p, long a, long b);
// C_2, V = s sigma + b.
Expected c2_sphere(long s, long b);
// C_{p^2}, V = n lambda_1 + m lambda_0. Returns false when (n, m) lies outside the six
// sign regions (n < 0 with m = 0 is a pullback from C_p and is not one of them).
bool cp2_sphere(int p, long n, long m, Expected* out);
// C_{p^2}, V = n lambda_1 with n < 0, as the pullback of the C_p answer.
Expected cp2_pulled_back(int p, long n);

// C_4 examples, in homological degree.
Expected c4_four_sigma();
// The values as stated for the 3 sigma - 3 lambda_0 example: M1 at -1, B(0,1) + B-bar at 0,
// B(0,1) at 1, B(1,0) at 2.
Expected c4_three_sigma_stated();
// The nonsplit extension of the sign-twisted Z(1,0) by B(0,1), and the middle-level Z/2.
MackeyFunctor c4_m1();
MackeyFunctor c4_bullet_bar();

// Torsion modules with vanishing bottom level: B(t) and B(t)^E for t != 0.
std::vector<MackeyFunctor> torsion_catalog(const TowerShape& shape);
// Forms of Z, the torsion catalog, Z[G/e], and for p = 2 the signed modules.
std::vector<MackeyFunctor> corpus(const TowerShape& shape);

}  // namespace mackey::acceptance

#pragma once

#include "mackey/mackey.hpp"

#include <string>
#include <vector>

namespace mackey {

// Every level Z, trivial weyl; res[k] = p^{t[k]} and tr[k] = p^{1-t[k]} (t[k] describes
// the restriction from level k+1 to level k).
MackeyFunctor form_z(const TowerShape& shape, const std::vector<int>& t);
MackeyFunctor constant_z(const TowerShape& shape);
// Cokernel of form_z(t) -> Z: level k is Z/p^{t[0]+...+t[k-1]}.
MackeyFunctor torsion_b(const TowerShape& shape, const std::vector<int>& t);
// Fixed points / coinvariants of an integral representation given by the matrix of the generator.
MackeyFunctor fixed_point_rep(const TowerShape& shape, const IntMatrix& gamma);
MackeyFunctor orbit_rep(const TowerShape& shape, const IntMatrix& gamma);
// p = 2 only: fixed points and coinvariants of the sign representation.
MackeyFunctor signed_z(const TowerShape& shape);
MackeyFunctor signed_z_dot(const TowerShape& shape);
MackeyFunctor burnside(const TowerShape& shape);

// True when M has all levels Z, trivial weyl and adjacent res in {1, p}; fills t.
bool is_form_of_z(const MackeyFunctor& m, std::vector<int>* t = nullptr);
std::vector<std::vector<int>> all_t_vectors(int n);

// Named operands: 0, Z, Z*, Z<t...> (e.g. Z10), B<t...> (e.g. B1, B01), Zm, Zmdot, A,
// P<k> (fixed points of Z[G/C_{p^k}]), optionally followed by ^E or ^*.
MackeyFunctor catalog_by_name(const std::string& name, const TowerShape& shape);
std::string t_vector_name(const std::vector<int>& t);

}  // namespace mackey

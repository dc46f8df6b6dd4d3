#pragma once

#include "mackey/gset.hpp"
#include "mackey/resolution.hpp"

#include <vector>

namespace mackey {

// Cellular chains of a G-CW spectrum: permutation modules Z[cells[i]] in degree low + i.
struct CellComplex {
    TowerShape shape;
    int low = 0;
    std::vector<GSet> cells;
    std::vector<EquivMatrix> d;  // d[i]: Z[cells[i]] -> Z[cells[i-1]]; d[0] maps to the empty set

    int high() const { return low + static_cast<int>(cells.size()) - 1; }
    int cell_count() const;
    void validate() const;  // throws ValidationError unless d o d = 0
    // The complex of fixed-point functors used for homology with constant Z coefficients.
    MackeyComplex mackey() const;
};

CellComplex point_complex(const TowerShape& shape);  // S^0
// S^{lambda(r p^k)}: Z <-fold- Z[G/C_{p^k}] <-(1 - gamma^r)- Z[G/C_{p^k}].
CellComplex chain_lambda(const TowerShape& shape, int k, long r = 1);
// S^sigma for p = 2: Z <-fold- Z[G/C_{2^{n-1}}].
CellComplex chain_sigma(const TowerShape& shape);
CellComplex dualize(const CellComplex& c);
CellComplex suspend(const CellComplex& c, int t);
// Tensor product with Koszul sign (-1)^{degree of the left factor} on the right differential.
CellComplex smash(const CellComplex& a, const CellComplex& b);
// Cancels pairs of cells joined by an invertible block (a unit multiple of a group element).
CellComplex reduce(const CellComplex& c);

GradedMackey bredon_homology(const CellComplex& c);

}  // namespace mackey

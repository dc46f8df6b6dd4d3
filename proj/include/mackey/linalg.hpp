#pragma once

#include "mackey/integer.hpp"

#include <optional>
#include <vector>

namespace mackey {

struct SmithForm {
    IntMatrix U, D, V;
    IntMatrix U_inverse;           // filled only when requested
    std::vector<Integer> d;        // nonzero invariant factors, d[i] | d[i+1]
};

struct SmithOptions {
    bool track_u = true;
    bool track_v = true;
    bool track_u_inverse = false;
};

SmithForm smith_normal_form(const IntMatrix& a, SmithOptions opts = {});
std::vector<Integer> invariant_factors(const IntMatrix& a);
Integer determinant(const IntMatrix& a);  // exact, fraction-free

// Column echelon form H = A * V with V unimodular. The first `rank` columns of H are
// nonzero with strictly increasing pivot rows and positive pivots; the rest are zero.
struct ColumnEchelon {
    IntMatrix H, V;
    int rank = 0;
    std::vector<int> pivot_rows;
};
ColumnEchelon column_echelon(const IntMatrix& a, bool track_v);

// A sublattice of Z^ambient stored by an echelon basis (columns).
class Lattice {
public:
    Lattice() = default;
    static Lattice span(int ambient, const IntMatrix& generators);
    static Lattice full(int ambient);
    static Lattice kernel(const IntMatrix& a);  // {x : a x = 0}

    int ambient() const { return ambient_; }
    int rank() const { return static_cast<int>(basis_.cols()); }
    const IntMatrix& basis() const { return basis_; }

    std::optional<IntVector> coordinates(const IntVector& v) const;
    bool contains(const IntVector& v) const { return coordinates(v).has_value(); }
    bool contains(const Lattice& other) const;
    bool operator==(const Lattice& other) const;
    // Throws ValidationError when some column is outside the lattice.
    IntMatrix coordinates_of_columns(const IntMatrix& m) const;

private:
    int ambient_ = 0;
    IntMatrix basis_;
    std::vector<int> pivots_;
};

struct IntegerSolution {
    IntVector particular;
    IntMatrix kernel;  // basis of {x : A x = 0} as columns
};
std::optional<IntegerSolution> solve_integer(const IntMatrix& a, const IntVector& b);

}  // namespace mackey

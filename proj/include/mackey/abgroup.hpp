#pragma once

#include "mackey/linalg.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mackey {

// Canonical isomorphism data: invariant factors (> 1, dividing chain) and free rank.
struct CanonicalForm {
    std::vector<Integer> torsion;
    int free_rank = 0;
    bool operator==(const CanonicalForm&) const = default;
    bool is_zero() const { return torsion.empty() && free_rank == 0; }
    std::string to_string() const;  // "Z/2 + Z/4 + Z^2", "0"
};

// Diagonal presentation: generator i has order orders[i] (0 means infinite order).
// Orders equal to 1 are allowed and denote generators that are zero.
class FgAbGroup {
public:
    FgAbGroup() = default;
    explicit FgAbGroup(std::vector<Integer> orders);
    static FgAbGroup free(int rank);
    static FgAbGroup cyclic(const Integer& order);

    int num_generators() const { return static_cast<int>(orders_.size()); }
    const std::vector<Integer>& orders() const { return orders_; }
    const Integer& order(int i) const { return orders_[i]; }
    IntMatrix relations() const;  // one column per finite-order generator
    const CanonicalForm& canonical() const { return canonical_; }

    bool is_zero() const { return canonical_.is_zero(); }
    int free_rank() const { return canonical_.free_rank; }
    bool is_finite() const { return canonical_.free_rank == 0; }
    bool is_torsion_free() const { return canonical_.torsion.empty(); }
    Integer cardinality() const;  // product of torsion orders, only meaningful when finite

    IntVector reduce(const IntVector& v) const;   // entries mod orders
    IntMatrix reduce(const IntMatrix& m) const;   // rows mod orders
    bool is_zero_element(const IntVector& v) const;
    bool equal_maps(const IntMatrix& a, const IntMatrix& b) const;  // as maps into this group

    FgAbGroup direct_sum(const FgAbGroup& other) const;
    bool operator==(const FgAbGroup& o) const { return orders_ == o.orders_; }

private:
    std::vector<Integer> orders_;
    CanonicalForm canonical_;
};

CanonicalForm canonical_from_relations(int num_generators, const IntMatrix& relations);

struct GroupHom {
    FgAbGroup source, target;
    IntMatrix matrix;  // target.num_generators() x source.num_generators()

    bool is_well_defined() const;
    GroupHom compose_after(const GroupHom& first) const;  // this o first
};

// A / B for lattices B <= A <= Z^ambient, normalized to a diagonal group.
struct Subquotient {
    FgAbGroup group;
    Lattice top;
    IntMatrix lift;      // ambient x group gens: chosen representatives
    IntMatrix to_group;  // group gens x rank(top): coordinates in top -> group coordinates

    IntVector project(const IntVector& v) const;  // v must lie in top
    IntMatrix project_columns(const IntMatrix& m) const;
};

Subquotient subquotient(const Lattice& top, const IntMatrix& bottom_generators);

// Normalizes the group Z^n / span(R).
struct Presentation {
    FgAbGroup group;
    IntMatrix to_group;    // group gens x n
    IntMatrix from_group;  // n x group gens
};
Presentation present(int n, const IntMatrix& relations);

// Kernel of f, with the inclusion given by Subquotient::lift (as source elements).
Subquotient kernel_of(const FgAbGroup& source, const FgAbGroup& target, const IntMatrix& f);
// Cokernel of f; the projection from the target is Subquotient::to_group.
Subquotient cokernel_of(const FgAbGroup& source, const FgAbGroup& target, const IntMatrix& f);
Subquotient image_of(const FgAbGroup& source, const FgAbGroup& target, const IntMatrix& f);
// All sums of relations of `g` as lattice generators.
IntMatrix relation_columns(const FgAbGroup& g);

struct HomGroup {
    FgAbGroup group;
    std::vector<GroupHom> basis;  // one representative per generator of `group`
};
HomGroup hom_ab(const FgAbGroup& a, const FgAbGroup& b);
FgAbGroup ext1_ab(const FgAbGroup& a, const FgAbGroup& b);

struct TensorProduct {
    FgAbGroup group;  // generator index i * b.num_generators() + j is a_i (x) b_j
    int pair_index(int i, int j) const { return i * right_generators + j; }
    int right_generators = 0;
};
TensorProduct tensor_ab(const FgAbGroup& a, const FgAbGroup& b);

// Chain complex C_low <- C_{low+1} <- ... ; differential[i] maps terms[i] -> terms[i-1].
struct AbComplex {
    int low = 0;
    std::vector<FgAbGroup> terms;
    std::vector<IntMatrix> differential;  // differential[0] unused (may be empty)

    int high() const { return low + static_cast<int>(terms.size()) - 1; }
    void validate() const;  // throws ValidationError
};

struct ChainMap {
    const AbComplex* target = nullptr;
    std::vector<IntMatrix> f;  // per term index of the source complex
};

struct AbHomology {
    std::vector<Subquotient> groups;                // per term index
    std::vector<std::vector<IntMatrix>> induced;    // per supplied chain map, per degree
};
AbHomology homology_ab(const AbComplex& c, const std::vector<ChainMap>& maps = {});

}  // namespace mackey

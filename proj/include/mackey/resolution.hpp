#pragma once

#include "mackey/gset.hpp"
#include "mackey/serialize.hpp"

#include <string>
#include <vector>

namespace mackey {

// Chain complex of Mackey functors; terms[i] sits in degree low + i and
// differential[i][k] is the level-k matrix of terms[i] -> terms[i-1].
struct MackeyComplex {
    int low = 0;
    std::vector<MackeyFunctor> terms;
    std::vector<std::vector<IntMatrix>> differential;

    int high() const { return low + static_cast<int>(terms.size()) - 1; }
    void validate() const;  // throws ValidationError
};

// Homology in every degree of the complex, with structure maps induced on cycle lifts.
GradedMackey mackey_homology(const MackeyComplex& c);

struct Cover {
    GSet orbits;
    MackeyHom map;  // fixed_point_functor(orbits) -> M, levelwise surjective
};
Cover cover(const MackeyFunctor& m);

struct Resolution {
    MackeyFunctor target;
    std::vector<GSet> terms;       // X_0 .. X_L
    std::vector<EquivMatrix> d;    // d[i]: Z[X_i] -> Z[X_{i-1}] for i >= 1; d[0] maps to the empty set
    MackeyHom augmentation;        // fixed_point_functor(X_0) -> target
    std::vector<bool> exact;       // exact[i] for 0 <= i < L, checked by lattice equality

    int length() const { return static_cast<int>(terms.size()) - 1; }
    bool certified() const;
};

constexpr int kDefaultResolutionLength = 6;

Resolution resolve(const MackeyFunctor& m, int length = kDefaultResolutionLength);

// Degrees 0 .. L-1 of the resolution are returned, including zero values.
GradedMackey ext_z(const Resolution& resolution_of_m, const MackeyFunctor& n);
GradedMackey ext_z(const MackeyFunctor& m, const MackeyFunctor& n);
GradedMackey tor_z(const MackeyFunctor& m, const Resolution& resolution_of_n);
GradedMackey tor_z(const MackeyFunctor& m, const MackeyFunctor& n);

// Value at a degree, or the zero functor when absent.
MackeyFunctor graded_at(const GradedMackey& g, int degree, const TowerShape& shape);

struct CompatReport {
    bool ok = true;
    std::vector<std::string> mismatches;
};
// Compares pulling back Ext/Tor along the quotient by C_{p^k} with Ext/Tor of pulled-back inputs.
CompatReport pullback_compat_check(const MackeyFunctor& m, const MackeyFunctor& n, int k);

}  // namespace mackey

#pragma once

#include "mackey/abgroup.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace mackey {

// G = C_{p^n}; level k is the orbit G/C_{p^k}, level n is G/G.
struct TowerShape {
    int p = 2;
    int n = 1;

    std::int64_t orbit_size(int k) const { return ipow64(p, n - k); }
    std::int64_t order() const { return ipow64(p, n); }
    void validate() const;  // throws ValidationError
    bool operator==(const TowerShape&) const = default;
};

bool is_prime(int p);

struct MackeyFunctor {
    TowerShape shape;
    std::vector<FgAbGroup> level;  // n + 1 entries
    std::vector<IntMatrix> res;    // res[k]: level[k+1] -> level[k]
    std::vector<IntMatrix> tr;     // tr[k]: level[k] -> level[k+1]
    std::vector<IntMatrix> weyl;   // action of the chosen generator of G on level[k]

    int gens(int k) const { return level[k].num_generators(); }
    bool is_zero() const;
    // Composite restriction from level `from` down to level `to` (from >= to).
    IntMatrix res_chain(int from, int to) const;
    // Composite transfer from level `from` up to level `to` (from <= to).
    IntMatrix tr_chain(int from, int to) const;
    IntMatrix weyl_power(int k, std::int64_t e) const;
    // The double coset sum sum_{i<p} weyl[k]^{i p^{n-k-1}} on level k < n.
    IntMatrix coset_sum(int k) const;
};

MackeyFunctor zero_functor(const TowerShape& shape);

// Empty iff every Mackey axiom holds modulo target relations.
std::vector<std::string> validate(const MackeyFunctor& m);
void require_valid(const MackeyFunctor& m, const std::string& what);

bool is_cohomological(const MackeyFunctor& m);
void require_cohomological(const MackeyFunctor& m, const std::string& what);

struct MackeyHom {
    MackeyFunctor source, target;
    std::vector<IntMatrix> f;  // f[k]: source.level[k] -> target.level[k]
};

std::vector<std::string> validate(const MackeyHom& h);
MackeyHom compose(const MackeyHom& second, const MackeyHom& first);  // second o first
MackeyHom identity_hom(const MackeyFunctor& m);
bool is_zero_hom(const MackeyHom& h);

// Structure maps induced on levelwise subquotients of M (tops and bottoms must be preserved).
MackeyFunctor induced_subquotient(const MackeyFunctor& m, const std::vector<Subquotient>& q);

// Inclusion of the kernel (its source is the kernel functor).
MackeyHom kernel_inclusion(const MackeyHom& f);
// Projection onto the cokernel (its target is the cokernel functor).
MackeyHom cokernel_projection(const MackeyHom& f);
MackeyFunctor kernel_m(const MackeyHom& f);
MackeyFunctor cokernel_m(const MackeyHom& f);
MackeyFunctor image_m(const MackeyHom& f);
MackeyFunctor direct_sum_m(const MackeyFunctor& a, const MackeyFunctor& b);
MackeyFunctor direct_sum_m(const std::vector<MackeyFunctor>& parts, const TowerShape& shape);

// Quotient of M by the sub-Mackey functor generated by the given elements (columns per level).
MackeyHom quotient_by_elements(const MackeyFunctor& m, const std::vector<IntMatrix>& elements);

// Inclusion of the levelwise torsion subfunctor.
MackeyHom torsion_inclusion(const MackeyFunctor& m);

enum class DualMode { star, E };
MackeyFunctor dual_levelwise(const MackeyFunctor& m, DualMode mode);

// Inflation along C_{p^{n+k}} -> C_{p^{n+k}} / C_{p^k}.
MackeyFunctor pullback_psi(const MackeyFunctor& m, int k);

}  // namespace mackey

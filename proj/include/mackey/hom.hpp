#pragma once

#include "mackey/mackey.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mackey {

// Hom(M, N) in the category of Mackey functors. Homs are encoded as vectors that
// concatenate the row-major entries of f[0], ..., f[n].
struct MackeyHomGroup {
    FgAbGroup group;
    std::vector<MackeyHom> basis;
    Subquotient solutions;        // solution lattice modulo maps that vanish
    std::vector<int> offsets;     // start of f[k] in the vector encoding

    IntVector encode(const std::vector<IntMatrix>& f) const;
    std::vector<IntMatrix> decode(const IntVector& v) const;
    IntVector project(const std::vector<IntMatrix>& f) const;  // coordinates in `group`
    MackeyHom element(const IntVector& coords) const;
    const MackeyFunctor& source() const { return source_; }
    const MackeyFunctor& target() const { return target_; }

    MackeyFunctor source_, target_;
};

MackeyHomGroup hom_group(const MackeyFunctor& m, const MackeyFunctor& n);

struct MapInvariant {
    std::string label;
    CanonicalForm kernel, image, cokernel;
    bool operator==(const MapInvariant&) const = default;
};

struct Fingerprint {
    TowerShape shape;
    std::vector<CanonicalForm> levels;
    std::vector<MapInvariant> maps;

    bool operator==(const Fingerprint&) const = default;
    std::string describe() const;
    std::vector<std::string> diff(const Fingerprint& other) const;
};

Fingerprint fingerprint(const MackeyFunctor& m);
bool same_fingerprint(const MackeyFunctor& a, const MackeyFunctor& b);

bool is_levelwise_iso(const MackeyHom& h);
// Bounded search over small combinations of Hom(M, N) generators; throws ResourceLimit
// when more than `max_candidates` candidates would be needed.
std::optional<MackeyHom> find_isomorphism(const MackeyFunctor& m, const MackeyFunctor& n,
                                          long max_candidates = 200000);
bool is_isomorphic(const MackeyFunctor& m, const MackeyFunctor& n, long max_candidates = 200000);

}  // namespace mackey

#pragma once

#include "mackey/mackey.hpp"

#include <cstdint>
#include <map>
#include <unordered_map>
#include <utility>
#include <vector>

namespace mackey {

// Finite G-set as a list of orbit types k (orbit G/C_{p^k}, size p^{n-k}).
// Orbit a has basis x_0..x_{N-1} with gamma x_i = x_{i+1 mod N}.
struct GSet {
    std::vector<int> orbits;

    int size() const { return static_cast<int>(orbits.size()); }
    std::int64_t cardinality(const TowerShape& shape) const;
    std::vector<std::int64_t> offsets(const TowerShape& shape) const;  // size()+1 entries
    GSet disjoint_union(const GSet& other) const;
    bool operator==(const GSet&) const = default;
};

// G/C_{p^j} x G/C_{p^k} as `copies` orbits of type min(j,k), with an explicit bijection.
struct OrbitProduct {
    int j = 0, k = 0;
    std::int64_t nj = 1, nk = 1;
    int type = 0;
    int copies = 1;

    std::pair<int, std::int64_t> locate(std::int64_t x, std::int64_t y) const;  // (copy, position)
    std::pair<std::int64_t, std::int64_t> element(int copy, std::int64_t pos) const;
};
OrbitProduct orbit_product(const TowerShape& shape, int j, int k);

struct ProductGSet {
    GSet set;
    std::vector<std::vector<int>> offset;  // first product orbit of the pair (a, b)
    std::vector<std::vector<OrbitProduct>> pieces;

    std::pair<int, std::int64_t> locate(int a, std::int64_t x, int b, std::int64_t y) const;
};
ProductGSet product(const TowerShape& shape, const GSet& x, const GSet& y);

using OrbitVector = std::vector<Integer>;

// An equivariant map Z[source] -> Z[target], stored by the images of orbit base points.
struct EquivMatrix {
    TowerShape shape;
    GSet source, target;
    // blocks[a][b]: image of x_0 of source orbit a, as coefficients on target orbit b
    std::vector<std::map<int, OrbitVector>> blocks;

    static EquivMatrix zero(const TowerShape& shape, const GSet& source, const GSet& target);
    static EquivMatrix identity(const TowerShape& shape, const GSet& x);
    static EquivMatrix from_dense(const TowerShape& shape, const GSet& source, const GSet& target,
                                  const IntMatrix& m);  // throws unless equivariant

    void add_to_block(int a, int b, const OrbitVector& v, const Integer& scale = Integer(1));
    const OrbitVector* block(int a, int b) const;
    IntMatrix dense() const;
    void validate() const;
    bool is_zero() const;

    EquivMatrix compose_after(const EquivMatrix& first) const;  // this o first
    EquivMatrix transpose() const;
    EquivMatrix scaled(const Integer& c) const;
    EquivMatrix plus(const EquivMatrix& other) const;
};

// Tensor product over the products of the source sets and of the target sets.
EquivMatrix tensor(const EquivMatrix& a, const EquivMatrix& b, const ProductGSet& source_product,
                   const ProductGSet& target_product);
EquivMatrix tensor(const EquivMatrix& a, const EquivMatrix& b);

// Shifts a vector on an orbit of size v.size(): result_u = v_{u-s}.
OrbitVector shift(const OrbitVector& v, std::int64_t s);

struct SpanWord {
    int j = 0, k = 0;  // source orbit type, target orbit type
    std::int64_t t = 0;
    bool operator==(const SpanWord&) const = default;
};

std::vector<SpanWord> span_basis(const TowerShape& shape, int j, int k);
EquivMatrix span_matrix(const TowerShape& shape, const SpanWord& w);
std::vector<std::pair<SpanWord, Integer>> span_decompose(const EquivMatrix& single_orbit_map);
std::vector<std::pair<SpanWord, Integer>> span_decompose_block(const TowerShape& shape, int j, int k,
                                                               const OrbitVector& v);

// Evaluates a cohomological Mackey functor on equivariant maps (contravariantly).
class MackeyEvaluator {
public:
    explicit MackeyEvaluator(const MackeyFunctor& m);

    const MackeyFunctor& functor() const { return m_; }
    // M(level k) -> M(level j)
    const IntMatrix& word(const SpanWord& w);
    // M(target) -> M(source) on the orbit-indexed sums of levels
    IntMatrix apply(const EquivMatrix& phi);
    FgAbGroup group_of(const GSet& x) const;
    std::vector<int> offsets(const GSet& x) const;

private:
    const MackeyFunctor& m_;
    std::vector<std::vector<IntMatrix>> weyl_powers_;
    std::map<std::tuple<int, int, std::int64_t>, IntMatrix> cache_;
};

GroupHom eval_module(const MackeyFunctor& m, const SpanWord& w);
GroupHom eval_module(const MackeyFunctor& m, const EquivMatrix& phi);

// M_X(level l) = M(G/C_{p^l} x X).
MackeyFunctor lift(const MackeyFunctor& m, const GSet& x);
// For phi: Z[X] -> Z[X'], the induced hom M_{X'} -> M_X.
MackeyHom lift_map(const MackeyFunctor& m, const EquivMatrix& phi);
MackeyHom lift_map(MackeyEvaluator& ev, const EquivMatrix& phi, const MackeyFunctor& source,
                   const MackeyFunctor& target);

// Fixed points of Z[X]: level l has the C_{p^l}-orbit sums as basis.
MackeyFunctor fixed_point_functor(const TowerShape& shape, const GSet& x);
// The hom of fixed-point functors induced by phi: Z[X] -> Z[Y].
MackeyHom fixed_point_map(const EquivMatrix& phi);
IntMatrix fixed_point_level_matrix(const EquivMatrix& phi, int level);
int fixed_point_rank(const TowerShape& shape, int orbit_type, int level);

}  // namespace mackey

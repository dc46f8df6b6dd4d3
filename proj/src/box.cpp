#include "mackey/box.hpp"

#include "mackey/errors.hpp"

#include <atomic>
#include <iostream>

namespace mackey {

namespace {
using Index = Eigen::Index;

std::atomic<long> g_nontrivial_quotients{0};

struct BoxLevel {
    int a = 0, b = 0;  // generator counts of M and N at this level
    int pairs = 0;
    int carried = 0;   // generators of the previous level's result
    Subquotient sq;
    int ambient() const { return pairs + carried; }
};

class BoxBuilder {
public:
    BoxBuilder(const MackeyFunctor& m, const MackeyFunctor& n) : m_(m), n_(n), shape_(m.shape) {}

    MackeyFunctor run() {
        const int top = shape_.n;
        levels_.resize(top + 1);
        out_.shape = shape_;
        out_.level.resize(top + 1);
        out_.weyl.resize(top + 1);
        out_.res.resize(top);
        out_.tr.resize(top);
        build_level0();
        for (int k = 0; k < top; ++k) build_next(k);
        return out_;
    }

private:
    // x (x) y as an ambient vector at level k (pair block only).
    IntVector pair_vector(int k, const IntVector& x, const IntVector& y) const {
        const BoxLevel& L = levels_[k];
        IntVector v = zero_vector(L.ambient());
        for (int i = 0; i < L.a; ++i) {
            if (x(i) == 0) continue;
            for (int j = 0; j < L.b; ++j)
                if (y(j) != 0) v(i * L.b + j) += x(i) * y(j);
        }
        return v;
    }

    IntVector unit(int size, int i) const {
        IntVector v = zero_vector(size);
        v(i) = 1;
        return v;
    }

    // Box element at level k given by an ambient vector.
    IntVector element(int k, const IntVector& v) const { return levels_[k].sq.project(v); }

    // Transfer of box elements from level `from` to level `to`.
    IntVector box_transfer(int from, int to, IntVector x) const {
        for (int l = from; l < to; ++l) x = out_.level[l + 1].reduce(IntVector(multiply(out_.tr[l], x)));
        return x;
    }

    void build_level0() {
        BoxLevel& L = levels_[0];
        L.a = m_.gens(0);
        L.b = n_.gens(0);
        L.pairs = L.a * L.b;
        std::vector<IntVector> rels;
        for (int i = 0; i < L.a; ++i)
            for (int j = 0; j < L.b; ++j) {
                const Integer g = gcd(m_.level[0].order(i), n_.level[0].order(j));
                if (g != 0) rels.push_back(unit(L.pairs, i * L.b + j) * g);
            }
        L.sq = subquotient(Lattice::full(L.pairs), columns(L.pairs, rels));
        out_.level[0] = L.sq.group;
        out_.weyl[0] = weyl_on_level(0);
    }

    static IntMatrix columns(int rows, const std::vector<IntVector>& vs) {
        IntMatrix m(rows, vs.size());
        for (std::size_t c = 0; c < vs.size(); ++c) m.col(c) = vs[c];
        return m;
    }

    IntMatrix weyl_on_level(int k) const {
        const BoxLevel& L = levels_[k];
        const int q = L.sq.group.num_generators();
        IntMatrix out(q, q);
        for (int g = 0; g < q; ++g) {
            IntVector v = L.sq.lift.col(g);
            IntVector w = zero_vector(L.ambient());
            for (int i = 0; i < L.a; ++i)
                for (int j = 0; j < L.b; ++j) {
                    const Integer& c = v(i * L.b + j);
                    if (c == 0) continue;
                    w += pair_vector(k, IntVector(m_.weyl[k].col(i)), IntVector(n_.weyl[k].col(j))) * c;
                }
            if (L.carried > 0) {
                IntVector carried = v.tail(L.carried);
                IntVector moved = multiply(out_.weyl[k - 1], carried);
                w.tail(L.carried) += moved;
            }
            out.col(g) = element(k, w);
        }
        return out;
    }

    void build_next(int k) {
        const int kk = k + 1;
        BoxLevel& L = levels_[kk];
        L.a = m_.gens(kk);
        L.b = n_.gens(kk);
        L.pairs = L.a * L.b;
        L.carried = out_.level[k].num_generators();
        const int amb = L.ambient();
        std::vector<IntVector> rels;
        auto carried_vector = [&](const IntVector& coords) {
            IntVector v = zero_vector(amb);
            v.tail(L.carried) = coords;
            return v;
        };
        for (int i = 0; i < L.a; ++i)
            for (int j = 0; j < L.b; ++j) {
                const Integer g = gcd(m_.level[kk].order(i), n_.level[kk].order(j));
                if (g != 0) rels.push_back(unit(amb, i * L.b + j) * g);
            }
        for (int q = 0; q < L.carried; ++q)
            if (out_.level[k].order(q) != 0) rels.push_back(unit(amb, L.pairs + q) * out_.level[k].order(q));
        // coinvariants under the Weyl group of C_{p^k} in C_{p^{k+1}}
        IntMatrix w = out_.weyl_power(k, shape_.orbit_size(kk));
        for (int q = 0; q < L.carried; ++q) {
            IntVector diff = unit(L.carried, q) - IntVector(w.col(q));
            rels.push_back(carried_vector(diff));
        }
        // Frobenius reciprocity against every lower level
        for (int low = 0; low <= k; ++low) {
            IntMatrix res_m = m_.res_chain(kk, low), tr_n = n_.tr_chain(low, kk);
            for (int a = 0; a < L.a; ++a)
                for (int b = 0; b < n_.gens(low); ++b) {
                    IntVector lhs = pair_vector(kk, unit(L.a, a), IntVector(tr_n.col(b)));
                    IntVector x = element(low, pair_vector(low, IntVector(res_m.col(a)), unit(n_.gens(low), b)));
                    rels.push_back(lhs - carried_vector(box_transfer(low, k, x)));
                }
            IntMatrix tr_m = m_.tr_chain(low, kk), res_n = n_.res_chain(kk, low);
            for (int c = 0; c < m_.gens(low); ++c)
                for (int d = 0; d < L.b; ++d) {
                    IntVector lhs = pair_vector(kk, IntVector(tr_m.col(c)), unit(L.b, d));
                    IntVector x = element(low, pair_vector(low, unit(m_.gens(low), c), IntVector(res_n.col(d))));
                    rels.push_back(lhs - carried_vector(box_transfer(low, k, x)));
                }
        }
        L.sq = subquotient(Lattice::full(amb), columns(amb, rels));
        out_.level[kk] = L.sq.group;

        const int qk = out_.level[k].num_generators(), qkk = L.sq.group.num_generators();
        IntMatrix tr(qkk, qk);
        for (int g = 0; g < qk; ++g) tr.col(g) = element(kk, carried_vector(unit(qk, g)));
        out_.tr[k] = tr;

        IntMatrix coset = out_.coset_sum(k);
        IntMatrix res(qk, qkk);
        for (int g = 0; g < qkk; ++g) {
            IntVector v = L.sq.lift.col(g);
            IntVector low_amb = zero_vector(levels_[k].ambient());
            for (int i = 0; i < L.a; ++i)
                for (int j = 0; j < L.b; ++j) {
                    const Integer& c = v(i * L.b + j);
                    if (c == 0) continue;
                    low_amb += pair_vector(k, IntVector(m_.res[k].col(i)), IntVector(n_.res[k].col(j))) * c;
                }
            IntVector r = element(k, low_amb);
            r += multiply(coset, IntVector(v.tail(L.carried)));
            res.col(g) = out_.level[k].reduce(r);
        }
        out_.res[k] = res;
        out_.weyl[kk] = weyl_on_level(kk);
    }

    const MackeyFunctor& m_;
    const MackeyFunctor& n_;
    TowerShape shape_;
    std::vector<BoxLevel> levels_;
    MackeyFunctor out_;
};

}  // namespace

long box_nontrivial_quotient_count() { return g_nontrivial_quotients.load(); }

MackeyFunctor box(const MackeyFunctor& m, const MackeyFunctor& n, BoxDiagnostics* diag) {
    if (!(m.shape == n.shape)) throw ValidationError("box of functors over different groups");
    require_cohomological(m, "box");
    require_cohomological(n, "box");
    MackeyFunctor raw = BoxBuilder(m, n).run();
    require_valid(raw, "box");
    const bool cohomological = is_cohomological(raw);
    if (diag) diag->cohomological_before_quotient = cohomological;
    if (cohomological) return raw;
    ++g_nontrivial_quotients;
    std::cerr << "box: the cohomological quotient was nontrivial\n";
    std::vector<IntMatrix> elems(raw.shape.n + 1);
    elems[0] = IntMatrix(raw.gens(0), 0);
    for (int k = 0; k < raw.shape.n; ++k) {
        const int g = raw.gens(k + 1);
        elems[k + 1] = IntMatrix(scalar_matrix(g, raw.shape.p) - multiply(raw.tr[k], raw.res[k]));
    }
    return quotient_by_elements(raw, elems).target;
}

MackeyFunctor internal_hom(const MackeyFunctor& m, const MackeyFunctor& n) {
    if (!(m.shape == n.shape)) throw ValidationError("internal Hom of functors over different groups");
    require_cohomological(m, "internal Hom");
    require_cohomological(n, "internal Hom");
    const TowerShape& shape = m.shape;
    const int top = shape.n;
    MackeyEvaluator ev(n);
    std::vector<MackeyFunctor> lifts;
    std::vector<MackeyHomGroup> homs;
    for (int k = 0; k <= top; ++k) {
        lifts.push_back(lift(n, GSet{{k}}));
        homs.push_back(hom_group(m, lifts.back()));
    }
    // postcomposition of every generator of level `from` with a hom of lifts, projected into `to`
    auto induced = [&](int from, int to, const EquivMatrix& phi) {
        MackeyHom post = lift_map(ev, phi, lifts[from], lifts[to]);
        const MackeyHomGroup& src = homs[from];
        const MackeyHomGroup& dst = homs[to];
        IntMatrix out(dst.group.num_generators(), src.group.num_generators());
        for (int g = 0; g < src.group.num_generators(); ++g) {
            std::vector<IntMatrix> f;
            for (int l = 0; l <= top; ++l) f.push_back(multiply(post.f[l], src.basis[g].f[l]));
            out.col(g) = dst.project(f);
        }
        return out;
    };
    MackeyFunctor out;
    out.shape = shape;
    for (int k = 0; k <= top; ++k) {
        out.level.push_back(homs[k].group);
        out.weyl.push_back(induced(k, k, span_matrix(shape, SpanWord{k, k, 1})));
    }
    for (int k = 0; k < top; ++k) {
        out.res.push_back(induced(k + 1, k, span_matrix(shape, SpanWord{k, k + 1, 0})));
        out.tr.push_back(induced(k, k + 1, span_matrix(shape, SpanWord{k + 1, k, 0})));
    }
    require_valid(out, "internal Hom");
    return out;
}

}  // namespace mackey

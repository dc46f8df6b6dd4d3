#include "doctest.h"

#include "mackey/catalog.hpp"
#include "mackey/errors.hpp"
#include "mackey/gset.hpp"
#include "mackey/hom.hpp"

#include <random>
#include <set>

using namespace mackey;

namespace {

std::vector<MackeyFunctor> modules(const TowerShape& s) {
    std::vector<MackeyFunctor> out;
    for (const auto& t : all_t_vectors(s.n)) {
        out.push_back(form_z(s, t));
        out.push_back(torsion_b(s, t));
    }
    out.push_back(fixed_point_functor(s, GSet{{0}}));
    if (s.p == 2) out.push_back(signed_z(s));
    return out;
}

EquivMatrix random_equiv(std::mt19937& rng, const TowerShape& s, const GSet& x, const GSet& y) {
    EquivMatrix e = EquivMatrix::zero(s, x, y);
    std::uniform_int_distribution<int> coef(-2, 2);
    for (int a = 0; a < x.size(); ++a)
        for (int b = 0; b < y.size(); ++b)
            for (const auto& w : span_basis(s, x.orbits[a], y.orbits[b])) {
                int c = coef(rng);
                if (c) e.add_to_block(a, b, span_matrix(s, w).blocks[0].at(0), Integer(c));
            }
    return e;
}

}  // namespace

TEST_CASE("orbit products") {
    for (int p : {2, 3})
        for (int n = 1; n <= 3; ++n) {
            TowerShape s{p, n};
            for (int j = 0; j <= n; ++j)
                for (int k = 0; k <= n; ++k) {
                    OrbitProduct o = orbit_product(s, j, k);
                    CHECK(o.type == std::min(j, k));
                    CHECK(o.copies * s.orbit_size(o.type) == s.orbit_size(j) * s.orbit_size(k));
                    // bijection, equivariant
                    std::set<std::pair<int, std::int64_t>> seen;
                    for (std::int64_t x = 0; x < o.nj; ++x)
                        for (std::int64_t y = 0; y < o.nk; ++y) {
                            auto [c, pos] = o.locate(x, y);
                            seen.insert({c, pos});
                            CHECK(o.element(c, pos) == std::make_pair(x, y));
                            auto [c2, pos2] = o.locate((x + 1) % o.nj, (y + 1) % o.nk);
                            CHECK(c2 == c);
                            CHECK(pos2 == (pos + 1) % s.orbit_size(o.type));
                        }
                    CHECK(static_cast<std::int64_t>(seen.size()) == o.nj * o.nk);
                }
            CHECK(orbit_product(s, 0, n).copies == 1);
            CHECK(orbit_product(s, 0, 0).copies == s.order());
        }
    TowerShape s{3, 2};
    OrbitProduct o = orbit_product(s, 1, 1);
    CHECK(o.copies == 3);
    CHECK(o.type == 1);
}

TEST_CASE("span bases and decompositions") {
    for (int p : {2, 3})
        for (int n = 1; n <= 3; ++n) {
            TowerShape s{p, n};
            CHECK(span_basis(s, 0, n).size() == 1);
            CHECK(static_cast<std::int64_t>(span_basis(s, 0, 0).size()) == s.order());
            for (int j = 0; j <= n; ++j)
                for (int k = 0; k <= n; ++k)
                    for (const auto& w : span_basis(s, j, k)) {
                        auto d = span_decompose(span_matrix(s, w));
                        REQUIRE(d.size() == 1);
                        CHECK(d[0].first == w);
                        CHECK(d[0].second == 1);
                    }
            for (int k = 0; k <= n; ++k) {
                auto d = span_decompose(EquivMatrix::identity(s, GSet{{k}}));
                REQUIRE(d.size() == 1);
                CHECK(d[0].first == SpanWord{k, k, 0});
            }
        }
}

TEST_CASE("dense conversion, composition, transpose and tensor agree with plain matrices") {
    std::mt19937 rng(3);
    for (int p : {2, 3}) {
        TowerShape s{p, 2};
        GSet x{{0, 2, 1}}, y{{1, 1}}, z{{0, 2}};
        for (int trial = 0; trial < 5; ++trial) {
            EquivMatrix f = random_equiv(rng, s, x, y), g = random_equiv(rng, s, y, z);
            f.validate();
            CHECK(matrices_equal(EquivMatrix::from_dense(s, x, y, f.dense()).dense(), f.dense()));
            CHECK(matrices_equal(g.compose_after(f).dense(), multiply(g.dense(), f.dense())));
            CHECK(matrices_equal(f.transpose().dense(), IntMatrix(f.dense().transpose())));
            // tensor against the Kronecker product transported through the product bijections
            ProductGSet sp = product(s, x, y), tp = product(s, y, z);
            EquivMatrix t = tensor(f, g, sp, tp);
            IntMatrix kr = kronecker(f.dense(), g.dense());
            auto index = [&](const ProductGSet& pr, const GSet& a, const GSet& b) {
                std::vector<std::int64_t> idx;
                auto off = pr.set.offsets(s);
                for (int oa = 0; oa < a.size(); ++oa)
                    for (std::int64_t i = 0; i < s.orbit_size(a.orbits[oa]); ++i)
                        for (int ob = 0; ob < b.size(); ++ob)
                            for (std::int64_t j = 0; j < s.orbit_size(b.orbits[ob]); ++j) {
                                auto [orb, pos] = pr.locate(oa, i, ob, j);
                                idx.push_back(off[orb] + pos);
                            }
                return idx;
            };
            auto si = index(sp, x, y), ti = index(tp, y, z);
            IntMatrix td = t.dense();
            bool ok = true;
            for (std::size_t r = 0; r < ti.size(); ++r)
                for (std::size_t c = 0; c < si.size(); ++c)
                    if (td(ti[r], si[c]) != kr(r, c)) ok = false;
            CHECK(ok);
        }
        IntMatrix bad = zero_matrix(s.orbit_size(0), s.orbit_size(0));
        bad(0, 0) = 1;
        CHECK_THROWS_AS(EquivMatrix::from_dense(s, GSet{{0}}, GSet{{0}}, bad), ValidationError);
    }
}

TEST_CASE("evaluation on restriction and transfer spans") {
    for (int p : {2, 3}) {
        TowerShape s{p, 2};
        for (const auto& m : modules(s))
            for (int k = 0; k < s.n; ++k) {
                CHECK(m.level[k].equal_maps(eval_module(m, SpanWord{k, k + 1, 0}).matrix, m.res[k]));
                CHECK(m.level[k + 1].equal_maps(eval_module(m, SpanWord{k + 1, k, 0}).matrix, m.tr[k]));
            }
        CHECK_THROWS_AS(eval_module(burnside(s), SpanWord{0, 1, 0}), ValidationError);
    }
}

TEST_CASE("evaluation is contravariantly functorial") {
    for (int p : {2, 3})
        for (int n = 1; n <= 2; ++n) {
            TowerShape s{p, n};
            for (const auto& m : modules(s))
                for (int a = 0; a <= n; ++a)
                    for (int b = 0; b <= n; ++b)
                        for (int c = 0; c <= n; ++c)
                            for (const auto& w1 : span_basis(s, a, b))
                                for (const auto& w2 : span_basis(s, b, c)) {
                                    EquivMatrix comp = span_matrix(s, w2).compose_after(span_matrix(s, w1));
                                    IntMatrix lhs = eval_module(m, comp).matrix;
                                    IntMatrix rhs = multiply(eval_module(m, w1).matrix, eval_module(m, w2).matrix);
                                    CHECK(m.level[a].equal_maps(lhs, rhs));
                                }
        }
}

TEST_CASE("the sum map from the free orbit to the point") {
    for (int p : {2, 3})
        for (int n = 1; n <= 2; ++n) {
            TowerShape s{p, n};
            MackeyFunctor z = constant_z(s);
            EquivMatrix sum = span_matrix(s, SpanWord{0, n, 0});
            EquivMatrix diag = span_matrix(s, SpanWord{n, 0, 0});
            CHECK(eval_module(z, sum).matrix(0, 0) == 1);
            CHECK(eval_module(z, sum.compose_after(diag)).matrix(0, 0) == s.order());
        }
}

TEST_CASE("lifts") {
    for (int p : {2, 3})
        for (int n = 1; n <= 2; ++n) {
            TowerShape s{p, n};
            for (const auto& m : modules(s)) {
                MackeyFunctor l = lift(m, GSet{{n}});
                CHECK(validate(l).empty());
                for (int k = 0; k < n; ++k) {
                    CHECK(matrices_equal(l.res[k], m.res[k]));
                    CHECK(matrices_equal(l.tr[k], m.tr[k]));
                }
                GSet x{{0}}, y{{n - 1, n}};
                MackeyFunctor lx = lift(m, x), ly = lift(m, y), lxy = lift(m, x.disjoint_union(y));
                CHECK(validate(lxy).empty());
                CHECK(is_cohomological(lxy));
                CHECK(same_fingerprint(lxy, direct_sum_m(lx, ly)));
            }
            for (int k = 0; k <= n; ++k)
                CHECK(is_isomorphic(lift(constant_z(s), GSet{{k}}), fixed_point_functor(s, GSet{{k}})));
            CHECK(lift(torsion_b(s, std::vector<int>(n, 1)), GSet{{0}}).is_zero());
        }
}

TEST_CASE("fixed point functors of G-sets") {
    for (int p : {2, 3})
        for (int n = 1; n <= 3; ++n) {
            TowerShape s{p, n};
            CHECK(is_isomorphic(fixed_point_functor(s, GSet{{n}}), constant_z(s)));
            for (int k = 0; k <= n; ++k) {
                MackeyFunctor f = fixed_point_functor(s, GSet{{k}});
                CHECK(validate(f).empty());
                CHECK(is_cohomological(f));
            }
        }
}

TEST_CASE("fixed point maps are Mackey homs and Yoneda holds") {
    std::mt19937 rng(9);
    for (int p : {2, 3}) {
        TowerShape s{p, 2};
        GSet x{{0, 1}}, y{{2, 1, 0}};
        EquivMatrix f = random_equiv(rng, s, x, y);
        CHECK(validate(fixed_point_map(f)).empty());
        for (const auto& m : modules(s))
            for (int k = 0; k <= 2; ++k)
                CHECK(hom_group(fixed_point_functor(s, GSet{{k}}), m).group.canonical() == m.level[k].canonical());
    }
}

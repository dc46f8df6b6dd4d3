#include "doctest.h"

#include "mackey/catalog.hpp"
#include "mackey/errors.hpp"
#include "mackey/gset.hpp"
#include "mackey/hom.hpp"
#include "mackey/serialize.hpp"

#include <random>

using namespace mackey;

namespace {

IntMatrix m1(long v) { return from_rows({{v}}); }

// Hand-written tower with cyclic or free levels given bottom to top.
MackeyFunctor tower(int p, const std::vector<long>& orders, const std::vector<long>& res,
                    const std::vector<long>& tr, const std::vector<long>& weyl = {}) {
    MackeyFunctor m;
    m.shape = TowerShape{p, static_cast<int>(orders.size()) - 1};
    for (std::size_t k = 0; k < orders.size(); ++k) {
        const bool zero = orders[k] == 1;
        m.level.push_back(zero ? FgAbGroup() : FgAbGroup({Integer(orders[k])}));
        long w = k < weyl.size() ? weyl[k] : 1;
        m.weyl.push_back(zero ? IntMatrix(0, 0) : m1(w));
    }
    for (std::size_t k = 0; k + 1 < orders.size(); ++k) {
        const int lo = orders[k] == 1 ? 0 : 1, hi = orders[k + 1] == 1 ? 0 : 1;
        m.res.push_back(lo && hi ? m1(res[k]) : IntMatrix(lo, hi));
        m.tr.push_back(lo && hi ? m1(tr[k]) : IntMatrix(hi, lo));
    }
    return m;
}

MackeyHom scalar_hom(const MackeyFunctor& s, const MackeyFunctor& t, const std::vector<long>& f) {
    MackeyHom h{s, t, {}};
    for (std::size_t k = 0; k < f.size(); ++k) {
        IntMatrix m(t.gens(k), s.gens(k));
        if (m.size()) m(0, 0) = f[k];
        h.f.push_back(m);
    }
    return h;
}

std::vector<MackeyFunctor> corpus(const TowerShape& shape) {
    std::vector<MackeyFunctor> out;
    for (const auto& t : all_t_vectors(shape.n)) {
        out.push_back(form_z(shape, t));
        out.push_back(torsion_b(shape, t));
        out.push_back(dual_levelwise(torsion_b(shape, t), DualMode::E));
    }
    out.push_back(fixed_point_functor(shape, GSet{{0}}));
    if (shape.p == 2) {
        out.push_back(signed_z(shape));
        out.push_back(signed_z_dot(shape));
    }
    return out;
}

}  // namespace

TEST_CASE("validate accepts the constant functor and rejects a broken double coset law") {
    for (int p : {2, 3, 5}) {
        CHECK(validate(tower(p, {0, 0}, {1}, {p})).empty());
        CHECK_FALSE(validate(tower(p, {0, 0}, {1}, {1})).empty());
    }
}

TEST_CASE("fixed points of the free orbit for C_p") {
    for (int p : {2, 3, 5}) {
        TowerShape s{p, 1};
        MackeyFunctor m = fixed_point_functor(s, GSet{{0}});
        CHECK(validate(m).empty());
        CHECK(is_cohomological(m));
        REQUIRE(m.gens(1) == 1);
        REQUIRE(m.gens(0) == p);
        for (int i = 0; i < p; ++i) {
            CHECK(m.res[0](i, 0) == 1);  // diagonal inclusion
            CHECK(m.tr[0](0, i) == 1);   // sum
        }
    }
}

TEST_CASE("catalog examples match hand-written diagrams") {
    for (int p : {2, 3}) {
        TowerShape s{p, 2};
        CHECK(same_fingerprint(form_z(s, {1, 0}), tower(p, {0, 0, 0}, {p, 1}, {1, p})));
        MackeyFunctor b = torsion_b(s, {1, 0});
        CHECK(b.level[0].is_zero());
        CHECK(b.level[1].canonical().torsion == std::vector<Integer>{p});
        CHECK(b.level[2].canonical().torsion == std::vector<Integer>{p});
        CHECK(mod_floor(b.res[1](0, 0), p) == 1);
        CHECK(mod_floor(b.tr[1](0, 0), p) == 0);
        CHECK(zero_functor(s).is_zero());
        CHECK(validate(zero_functor(s)).empty());
    }
}

TEST_CASE("catalog outputs are valid and cohomological") {
    for (int p : {2, 3})
        for (int n = 1; n <= 3; ++n) {
            TowerShape s{p, n};
            for (const auto& t : all_t_vectors(n)) {
                CHECK(validate(form_z(s, t)).empty());
                CHECK(validate(torsion_b(s, t)).empty());
                CHECK(is_cohomological(form_z(s, t)));
                CHECK(is_cohomological(torsion_b(s, t)));
            }
        }
    CHECK_THROWS_AS(form_z(TowerShape{2, 2}, {1}), ValidationError);
    CHECK_THROWS_AS(torsion_b(TowerShape{2, 2}, {1, 2}), ValidationError);
}

TEST_CASE("the Burnside functor is valid but not cohomological") {
    for (int p : {2, 3})
        for (int n = 1; n <= 2; ++n) {
            MackeyFunctor a = burnside(TowerShape{p, n});
            CHECK(validate(a).empty());
            CHECK_FALSE(is_cohomological(a));
        }
}

TEST_CASE("signed modules for p = 2") {
    MackeyFunctor zm = signed_z(TowerShape{2, 1});
    CHECK(validate(zm).empty());
    CHECK(zm.level[1].is_zero());
    CHECK(zm.level[0].canonical() == FgAbGroup::free(1).canonical());
    CHECK(zm.weyl[0](0, 0) == -1);
    MackeyFunctor zd = signed_z_dot(TowerShape{2, 1});
    CHECK(validate(zd).empty());
    CHECK(zd.level[1].canonical().torsion == std::vector<Integer>{2});
    CHECK_THROWS_AS(signed_z(TowerShape{3, 1}), ValidationError);
}

TEST_CASE("cokernel of a form included in Z is the matching B") {
    for (int p : {2, 3})
        for (int n = 1; n <= 2; ++n) {
            TowerShape s{p, n};
            for (const auto& t : all_t_vectors(n)) {
                std::vector<long> f{1};
                for (int k = 0; k < n; ++k) f.push_back(f.back() * (t[k] ? p : 1));
                MackeyHom inc = scalar_hom(form_z(s, t), constant_z(s), f);
                CHECK(validate(inc).empty());
                MackeyFunctor c = cokernel_m(inc);
                CHECK(validate(c).empty());
                CHECK(is_isomorphic(c, torsion_b(s, t)));
            }
        }
}

TEST_CASE("kernels of identity and of Z onto B(1)") {
    TowerShape s{3, 1};
    CHECK(kernel_m(identity_hom(constant_z(s))).is_zero());
    MackeyHom q = scalar_hom(constant_z(s), torsion_b(s, {1}), {0, 1});
    CHECK(validate(q).empty());
    CHECK(is_isomorphic(kernel_m(q), form_z(s, {1})));
}

TEST_CASE("levelwise duals") {
    for (int p : {2, 3}) {
        TowerShape s{p, 2};
        for (const auto& t : all_t_vectors(2)) {
            std::vector<int> u{1 - t[0], 1 - t[1]};
            CHECK(is_isomorphic(dual_levelwise(form_z(s, t), DualMode::star), form_z(s, u)));
            MackeyFunctor b = torsion_b(s, t);
            MackeyFunctor bee = dual_levelwise(dual_levelwise(b, DualMode::E), DualMode::E);
            CHECK(is_isomorphic(bee, b));
        }
        MackeyFunctor be = dual_levelwise(torsion_b(s, {1, 0}), DualMode::E);
        CHECK(validate(be).empty());
        CHECK(same_fingerprint(be, tower(p, {1, p, p}, {0, 0}, {0, 1})));
        MackeyFunctor z = constant_z(s);
        CHECK(is_isomorphic(dual_levelwise(dual_levelwise(z, DualMode::star), DualMode::star), z));
    }
}

TEST_CASE("pullback along a quotient") {
    for (int p : {2, 3}) {
        MackeyFunctor b = pullback_psi(torsion_b(TowerShape{p, 1}, {1}), 1);
        CHECK(validate(b).empty());
        CHECK(is_cohomological(b));
        CHECK(is_isomorphic(b, torsion_b(TowerShape{p, 2}, {0, 1})));
        CHECK(is_isomorphic(pullback_psi(constant_z(TowerShape{p, 1}), 1), constant_z(TowerShape{p, 2})));
        // a free orbit of the quotient is the orbit G/C_p upstairs
        MackeyFunctor x = pullback_psi(fixed_point_functor(TowerShape{p, 1}, GSet{{0}}), 1);
        CHECK(is_isomorphic(x, fixed_point_functor(TowerShape{p, 2}, GSet{{1}})));
        CHECK_THROWS_AS(pullback_psi(burnside(TowerShape{p, 1}), 1), ValidationError);
    }
}

TEST_CASE("fingerprints and isomorphism search") {
    TowerShape s{2, 2};
    CHECK_FALSE(fingerprint(form_z(s, {1, 0})) == fingerprint(form_z(s, {0, 1})));
    for (const auto& m : corpus(s)) CHECK(is_isomorphic(m, m));
    CHECK_FALSE(is_isomorphic(torsion_b(s, {1, 0}), dual_levelwise(torsion_b(s, {1, 0}), DualMode::E)));
}

TEST_CASE("hom group from Z is the top level") {
    for (int p : {2, 3}) {
        TowerShape s{p, 2};
        for (const auto& n : corpus(s)) {
            MackeyHomGroup h = hom_group(constant_z(s), n);
            CHECK(h.group.canonical() == n.level[2].canonical());
            for (const auto& f : h.basis) CHECK(validate(f).empty());
        }
    }
}

TEST_CASE("json round trip and schema errors") {
    TowerShape s{3, 2};
    for (const auto& m : corpus(s)) {
        MackeyFunctor r = from_json(to_json(m));
        CHECK(fingerprint(r) == fingerprint(m));
        for (int k = 0; k < s.n; ++k) {
            CHECK(matrices_equal(r.res[k], m.res[k]));
            CHECK(matrices_equal(r.tr[k], m.tr[k]));
        }
    }
    Json bad = to_json(constant_z(TowerShape{3, 1}));
    bad["tr"][0][0][0] = "1";
    CHECK_THROWS_AS(from_json(bad), ValidationError);
    Json missing = to_json(constant_z(TowerShape{3, 1}));
    missing.erase("weyl");
    try {
        from_json(missing);
        CHECK(false);
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("weyl") != std::string::npos);
    }
    Json wrong = to_json(constant_z(TowerShape{3, 1}));
    wrong["res"][0][0] = Json::array({"1", "2"});
    try {
        from_json(wrong);
        CHECK(false);
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("$.res[0][0]") != std::string::npos);
    }
    std::string text = render_lewis(form_z(TowerShape{3, 1}, {1}));
    CHECK(text.find("G/G: Z") != std::string::npos);
    CHECK(text.find("res [3]") != std::string::npos);
}

TEST_CASE("random sums, kernels and cokernels stay valid; torsion at the bottom spreads upward") {
    std::mt19937 rng(23);
    for (int p : {2, 3}) {
        TowerShape s{p, 2};
        auto c = corpus(s);
        std::uniform_int_distribution<std::size_t> pick(0, c.size() - 1);
        for (int trial = 0; trial < 20; ++trial) {
            MackeyFunctor a = c[pick(rng)], b = c[pick(rng)];
            MackeyFunctor sum = direct_sum_m(a, b);
            CHECK(validate(sum).empty());
            MackeyHomGroup h = hom_group(a, b);
            if (h.group.num_generators() == 0) continue;
            IntVector coef(h.group.num_generators());
            std::uniform_int_distribution<int> cd(-2, 2);
            for (int g = 0; g < coef.size(); ++g) coef(g) = cd(rng);
            MackeyHom f = h.element(coef);
            CHECK(validate(f).empty());
            MackeyFunctor k = kernel_m(f), q = cokernel_m(f);
            CHECK(validate(k).empty());
            CHECK(validate(q).empty());
            for (const auto& m : {k, q, sum}) {
                CHECK(is_cohomological(m));
                if (m.level[0].is_finite())
                    for (int l = 0; l <= s.n; ++l) CHECK(m.level[l].free_rank() == 0);
            }
        }
    }
}

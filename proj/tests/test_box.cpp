#include "doctest.h"

#include "mackey/box.hpp"
#include "mackey/catalog.hpp"
#include "mackey/errors.hpp"

using namespace mackey;

namespace {

std::vector<MackeyFunctor> small_modules(const TowerShape& s) {
    std::vector<MackeyFunctor> out;
    for (const auto& t : all_t_vectors(s.n)) {
        out.push_back(form_z(s, t));
        out.push_back(torsion_b(s, t));
    }
    if (s.p == 2) out.push_back(signed_z(s));
    return out;
}

std::vector<TowerShape> shapes() { return {{2, 1}, {3, 1}, {2, 2}, {3, 2}}; }

}  // namespace

TEST_CASE("Z is a unit for the box product") {
    for (const auto& s : shapes())
        for (const auto& m : small_modules(s)) {
            BoxDiagnostics d;
            MackeyFunctor b = box(constant_z(s), m, &d);
            CHECK(d.cohomological_before_quotient);
            CHECK(is_isomorphic(b, m));
        }
}

TEST_CASE("box of forms of Z") {
    const TowerShape s{3, 1};
    MackeyFunctor b = box(form_z(s, {0}), form_z(s, {0}));
    CHECK(is_isomorphic(b, form_z(s, {0})));
    const TowerShape s2{2, 2};
    MackeyFunctor z10 = form_z(s2, {1, 0});
    MackeyFunctor expected = direct_sum_m(form_z(s2, {1, 1}), torsion_b(s2, {0, 1}));
    CHECK(is_isomorphic(box(z10, z10), expected));
    const TowerShape s3{5, 2};
    CHECK(is_isomorphic(box(form_z(s3, {1, 0}), form_z(s3, {1, 0})),
                        direct_sum_m(form_z(s3, {1, 1}), torsion_b(s3, {0, 1}))));
}

TEST_CASE("box is symmetric and associative up to isomorphism") {
    for (const auto& s : shapes()) {
        auto mods = small_modules(s);
        for (std::size_t i = 0; i < mods.size(); ++i)
            for (std::size_t j = i; j < mods.size(); ++j) {
                MackeyFunctor ab = box(mods[i], mods[j]);
                MackeyFunctor ba = box(mods[j], mods[i]);
                CHECK(same_fingerprint(ab, ba));
            }
        for (std::size_t i = 0; i + 2 < mods.size(); i += 2) {
            const auto& a = mods[i];
            const auto& b = mods[i + 1];
            const auto& c = mods[(i + 2) % mods.size()];
            CHECK(same_fingerprint(box(box(a, b), c), box(a, box(b, c))));
        }
    }
}

TEST_CASE("bottom level of box is the tensor product") {
    for (const auto& s : shapes())
        for (const auto& a : small_modules(s))
            for (const auto& b : small_modules(s)) {
                MackeyFunctor x = box(a, b);
                TensorProduct t = tensor_ab(a.level[0], b.level[0]);
                CHECK(x.level[0].canonical() == t.group.canonical());
            }
}

TEST_CASE("boxing with a fixed point functor is lifting") {
    for (const auto& s : shapes())
        for (int k = 0; k < s.n; ++k) {
            GSet x{{k}};
            MackeyFunctor fx = fixed_point_functor(s, x);
            for (const auto& m : small_modules(s)) {
                MackeyFunctor b = box(m, fx);
                MackeyFunctor l = lift(m, x);
                CHECK(same_fingerprint(b, l));
            }
        }
}

TEST_CASE("internal hom examples") {
    for (const auto& s : shapes())
        for (const auto& m : small_modules(s)) {
            CHECK(is_isomorphic(internal_hom(constant_z(s), m), m));
            for (int k = 0; k < s.n; ++k) {
                MackeyFunctor fx = fixed_point_functor(s, GSet{{k}});
                CHECK(same_fingerprint(internal_hom(fx, m), lift(m, GSet{{k}})));
            }
        }
    const TowerShape s{2, 2};
    // Hom(B, Z) vanishes levelwise since Z is torsion free
    MackeyFunctor h = internal_hom(torsion_b(s, {1, 1}), constant_z(s));
    CHECK(h.is_zero());
}

TEST_CASE("box and internal hom are adjoint on hom groups") {
    for (const auto& s : shapes()) {
        auto mods = small_modules(s);
        for (std::size_t i = 0; i < mods.size(); ++i)
            for (std::size_t j = 0; j < mods.size(); j += 2)
                for (std::size_t l = 1; l < mods.size(); l += 3) {
                    CanonicalForm lhs = hom_group(box(mods[i], mods[j]), mods[l]).group.canonical();
                    CanonicalForm rhs = hom_group(mods[i], internal_hom(mods[j], mods[l])).group.canonical();
                    CHECK(lhs == rhs);
                }
    }
}

TEST_CASE("box rejects mismatched groups") {
    CHECK_THROWS_AS(box(constant_z({2, 1}), constant_z({3, 1})), ValidationError);
    CHECK_THROWS_AS(box(burnside({2, 1}), constant_z({2, 1})), ValidationError);
}

TEST_CASE("no nontrivial cohomological quotient was needed") {
    CHECK(box_nontrivial_quotient_count() == 0);
}

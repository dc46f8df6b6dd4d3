#include "doctest.h"

#include "mackey/abgroup.hpp"
#include "mackey/errors.hpp"

#include <functional>
#include <random>

using namespace mackey;

namespace {

IntMatrix random_matrix(std::mt19937& rng, int rows, int cols, int bound) {
    std::uniform_int_distribution<int> dist(-bound, bound);
    IntMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = dist(rng);
    return m;
}

IntMatrix random_unimodular(std::mt19937& rng, int n) {
    IntMatrix u = identity_matrix(n);
    std::uniform_int_distribution<int> idx(0, n - 1), coef(-3, 3);
    for (int step = 0; step < 3 * n; ++step) {
        int i = idx(rng), j = idx(rng);
        if (i == j) continue;
        Integer c = coef(rng);
        for (int k = 0; k < n; ++k) u(i, k) += c * u(j, k);
    }
    return u;
}

// Number of elements x of the canonical group with k*x = 0.
Integer count_killed_by(const CanonicalForm& c, long k) {
    if (c.free_rank > 0 && k == 0) return -1;
    Integer total = 1;
    for (const auto& d : c.torsion) total *= gcd(d, Integer(k));
    return total;
}

// Enumerates every element of the finite group prod Z/orders[i].
void for_each_element(const std::vector<long>& orders, const std::function<void(const std::vector<long>&)>& f) {
    std::vector<long> x(orders.size(), 0);
    for (;;) {
        f(x);
        std::size_t i = 0;
        while (i < x.size() && ++x[i] == orders[i]) x[i++] = 0;
        if (i == x.size()) return;
    }
}

struct SmallGroup {
    std::vector<long> torsion;  // cyclic factors
    int free_rank;
    FgAbGroup group() const {
        std::vector<Integer> o;
        for (long t : torsion) o.push_back(t);
        for (int i = 0; i < free_rank; ++i) o.push_back(0);
        return FgAbGroup(o);
    }
};

std::vector<SmallGroup> small_groups() {
    std::vector<std::vector<long>> factor_lists = {{}, {2}, {3}, {4}, {2, 2}, {2, 4}, {3, 4}};
    std::vector<SmallGroup> out;
    for (auto& f : factor_lists)
        for (int r = 0; r <= 1; ++r) out.push_back({f, r});
    return out;
}

}  // namespace

TEST_CASE("smith normal form examples") {
    SmithForm s = smith_normal_form(from_rows({{2, 0}, {0, 3}}));
    CHECK(s.d == std::vector<Integer>{1, 6});
    s = smith_normal_form(identity_matrix(3));
    CHECK(s.d == std::vector<Integer>{1, 1, 1});
    CHECK(matrices_equal(s.D, identity_matrix(3)));
    s = smith_normal_form(zero_matrix(1, 1));
    CHECK(s.d.empty());
    CHECK(s.D(0, 0) == 0);
}

TEST_CASE("smith normal form certificates on random matrices") {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        std::uniform_int_distribution<int> dim(1, 7);
        int r = dim(rng), c = dim(rng);
        IntMatrix a = random_matrix(rng, r, c, 20);
        SmithOptions opts;
        opts.track_u_inverse = true;
        SmithForm s = smith_normal_form(a, opts);
        CHECK(matrices_equal(multiply(multiply(s.U, a), s.V), s.D));
        CHECK(abs(determinant(s.U)) == 1);
        CHECK(abs(determinant(s.V)) == 1);
        CHECK(matrices_equal(multiply(s.U, s.U_inverse), identity_matrix(r)));
        for (std::size_t i = 0; i + 1 < s.d.size(); ++i) CHECK(s.d[i + 1] % s.d[i] == 0);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j)
                if (i != j || i >= static_cast<int>(s.d.size())) CHECK(s.D(i, j) == 0);
    }
}

TEST_CASE("canonical form is invariant under unimodular change of presentation") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        int n = 1 + trial % 5, m = 1 + (trial * 7) % 5;
        IntMatrix a = random_matrix(rng, n, m, 6);
        IntMatrix b = multiply(multiply(random_unimodular(rng, n), a), random_unimodular(rng, m));
        CHECK(canonical_from_relations(n, a) == canonical_from_relations(n, b));
    }
}

TEST_CASE("solve_integer") {
    IntVector b(1);
    b(0) = 4;
    auto s = solve_integer(from_rows({{2}}), b);
    REQUIRE(s);
    CHECK(s->particular(0) == 2);
    CHECK(s->kernel.cols() == 0);
    b(0) = 3;
    CHECK_FALSE(solve_integer(from_rows({{2}}), b));
    b(0) = 0;
    s = solve_integer(from_rows({{1, 1}}), b);
    REQUIRE(s);
    CHECK(s->particular(0) == 0);
    CHECK(s->particular(1) == 0);
    REQUIRE(s->kernel.cols() == 1);
    // every small solution of x + y = 0 is a multiple of the kernel vector
    for (int x = -3; x <= 3; ++x) {
        IntVector v(2);
        v(0) = x;
        v(1) = -x;
        CHECK(Lattice::span(2, s->kernel).contains(v));
    }
}

TEST_CASE("lattice membership and equality") {
    Lattice l = Lattice::span(2, from_rows({{2, 0}, {0, 3}}));
    IntVector v(2);
    v(0) = 4;
    v(1) = 3;
    CHECK(l.contains(v));
    v(0) = 1;
    CHECK_FALSE(l.contains(v));
    Lattice l2 = Lattice::span(2, from_rows({{2, 2}, {3, 0}}));
    CHECK(l == l2);
}

TEST_CASE("hom, ext and tensor examples") {
    CHECK(hom_ab(FgAbGroup::cyclic(2), FgAbGroup::free(1)).group.is_zero());
    FgAbGroup b({4, 0});
    CHECK(hom_ab(FgAbGroup::free(1), b).group.canonical() == b.canonical());
    CHECK(hom_ab(FgAbGroup::cyclic(4), FgAbGroup::cyclic(6)).group.canonical().torsion ==
          std::vector<Integer>{2});
    CHECK(ext1_ab(FgAbGroup::free(1), b).is_zero());
    CHECK(ext1_ab(FgAbGroup::cyclic(5), FgAbGroup::free(1)).canonical().torsion == std::vector<Integer>{5});
    CHECK(ext1_ab(FgAbGroup::cyclic(4), FgAbGroup::cyclic(6)).canonical().torsion == std::vector<Integer>{2});
    CHECK(tensor_ab(FgAbGroup::free(1), b).group.canonical() == b.canonical());
    CHECK(tensor_ab(FgAbGroup::cyclic(2), FgAbGroup::cyclic(3)).group.is_zero());
    CHECK(tensor_ab(FgAbGroup::cyclic(4), FgAbGroup::cyclic(6)).group.canonical().torsion ==
          std::vector<Integer>{2});
}

TEST_CASE("hom_ab basis elements are well defined homomorphisms") {
    for (const auto& a : small_groups())
        for (const auto& b : small_groups()) {
            HomGroup h = hom_ab(a.group(), b.group());
            for (const auto& f : h.basis) CHECK(f.is_well_defined());
        }
}

TEST_CASE("hom_ab and ext1_ab agree with brute-force enumeration") {
    for (const auto& a : small_groups())
        for (const auto& b : small_groups()) {
            // Hom: enumerate images of A's generators in the torsion of B.
            std::vector<long> bt = b.torsion;
            std::vector<std::vector<long>> candidates_per_gen;
            std::vector<std::vector<long>> bt_elements;
            for_each_element(bt, [&](const std::vector<long>& x) { bt_elements.push_back(x); });
            auto order_of = [&](const std::vector<long>& x) {
                long o = 1;
                for (std::size_t i = 0; i < x.size(); ++i) {
                    long oi = bt[i] / std::gcd(bt[i], x[i]);
                    o = std::lcm(o, oi);
                }
                return o;
            };
            std::vector<long> gen_orders = a.torsion;
            for (int i = 0; i < a.free_rank; ++i) gen_orders.push_back(0);
            std::vector<std::vector<int>> allowed;
            for (long go : gen_orders) {
                std::vector<int> ok;
                for (std::size_t e = 0; e < bt_elements.size(); ++e)
                    if (go == 0 || go % order_of(bt_elements[e]) == 0) ok.push_back(static_cast<int>(e));
                allowed.push_back(ok);
            }
            std::vector<long> sizes;
            for (auto& v : allowed) sizes.push_back(static_cast<long>(v.size()));
            std::map<long, long> killed;  // k -> #homs phi with k*phi = 0
            for (long k = 1; k <= 12; ++k) killed[k] = 0;
            for_each_element(sizes, [&](const std::vector<long>& choice) {
                long o = 1;
                for (std::size_t g = 0; g < choice.size(); ++g) o = std::lcm(o, order_of(bt_elements[allowed[g][choice[g]]]));
                for (long k = 1; k <= 12; ++k)
                    if (k % o == 0) ++killed[k];
            });
            CanonicalForm hom = hom_ab(a.group(), b.group()).group.canonical();
            CHECK(hom.free_rank == a.free_rank * b.free_rank);
            for (long k = 1; k <= 12; ++k) CHECK(count_killed_by(hom, k) == killed[k]);

            // Ext: sum over cyclic factors Z/a of B / aB, enumerated as cosets.
            std::map<long, Integer> ext_killed;
            for (long k = 1; k <= 12; ++k) ext_killed[k] = 1;
            for (long ai : a.torsion) {
                std::vector<long> mods = bt;
                for (int i = 0; i < b.free_rank; ++i) mods.push_back(ai);  // Z / aZ for free factors
                std::vector<std::vector<long>> elements;
                for_each_element(mods, [&](const std::vector<long>& x) { elements.push_back(x); });
                auto in_aB = [&](const std::vector<long>& x) {
                    // x in a*B iff each coordinate is a multiple of gcd(a, modulus)
                    for (std::size_t i = 0; i < x.size(); ++i)
                        if (x[i] % std::gcd(ai, mods[i]) != 0) return false;
                    return true;
                };
                for (long k = 1; k <= 12; ++k) {
                    long count = 0, classes = 0;
                    for (auto& x : elements) {
                        std::vector<long> kx = x;
                        for (std::size_t i = 0; i < kx.size(); ++i) kx[i] = (kx[i] * k) % mods[i];
                        if (in_aB(kx)) ++count;
                        if (in_aB(x)) ++classes;
                    }
                    ext_killed[k] *= count / classes;
                }
            }
            CanonicalForm ext = ext1_ab(a.group(), b.group()).canonical();
            CHECK(ext.free_rank == 0);
            for (long k = 1; k <= 12; ++k) CHECK(count_killed_by(ext, k) == ext_killed[k]);
        }
}

TEST_CASE("homology of small complexes") {
    AbComplex c;
    c.low = 0;
    c.terms = {FgAbGroup::free(1), FgAbGroup::free(1)};
    c.differential = {IntMatrix(), from_rows({{2}})};
    AbHomology h = homology_ab(c);
    CHECK(h.groups[0].group.canonical().torsion == std::vector<Integer>{2});
    CHECK(h.groups[1].group.is_zero());

    AbComplex z;
    z.low = -1;
    z.terms = {FgAbGroup(), FgAbGroup()};
    z.differential = {IntMatrix(), IntMatrix(0, 0)};
    for (auto& g : homology_ab(z).groups) CHECK(g.group.is_zero());

    AbComplex bad;
    bad.terms = {FgAbGroup::free(1), FgAbGroup::free(1), FgAbGroup::free(1)};
    bad.differential = {IntMatrix(), from_rows({{1}}), from_rows({{1}})};
    CHECK_THROWS_AS(homology_ab(bad), ValidationError);
}

TEST_CASE("underlying chain of the dual lambda sphere") {
    for (int p : {2, 3, 5}) {
        IntMatrix one_minus_gamma_t = zero_matrix(p, p);
        for (int i = 0; i < p; ++i) {
            one_minus_gamma_t(i, i) += 1;
            one_minus_gamma_t((i + 1) % p, i) -= 1;
        }
        one_minus_gamma_t.transposeInPlace();
        IntMatrix diag = IntMatrix::Constant(p, 1, Integer(1));
        AbComplex c;
        c.low = -2;
        c.terms = {FgAbGroup::free(p), FgAbGroup::free(p), FgAbGroup::free(1)};
        c.differential = {IntMatrix(), one_minus_gamma_t, diag};
        AbHomology h = homology_ab(c);
        CHECK(h.groups[0].group.canonical() == FgAbGroup::free(1).canonical());
        CHECK(h.groups[1].group.is_zero());
        CHECK(h.groups[2].group.is_zero());
    }
}

TEST_CASE("adjoining a contractible summand does not change homology") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        // random complex Z^a <- Z^b <- Z^c with d1 d2 = 0: choose d2, take d1 from its cokernel
        int a = 1 + trial % 3, b = 2 + trial % 3, c = 1 + trial % 2;
        IntMatrix d2 = random_matrix(rng, b, c, 3);
        Lattice left_kernel = Lattice::kernel(IntMatrix(d2.transpose()));
        IntMatrix rows = zero_matrix(a, b);
        std::uniform_int_distribution<int> coef(-2, 2);
        for (int i = 0; i < a; ++i)
            for (int k = 0; k < left_kernel.rank(); ++k) {
                int cf = coef(rng);
                for (int j = 0; j < b; ++j) rows(i, j) += cf * left_kernel.basis()(j, k);
            }
        AbComplex base;
        base.terms = {FgAbGroup::free(a), FgAbGroup::free(b), FgAbGroup::free(c)};
        base.differential = {IntMatrix(), rows, d2};
        AbHomology h1 = homology_ab(base);

        // adjoin Z --1--> Z between degrees 1 and 2
        AbComplex ext = base;
        ext.terms = {FgAbGroup::free(a), FgAbGroup::free(b + 1), FgAbGroup::free(c + 1)};
        IntMatrix e1 = zero_matrix(a, b + 1);
        e1.leftCols(b) = rows;
        IntMatrix e2 = zero_matrix(b + 1, c + 1);
        e2.topLeftCorner(b, c) = d2;
        e2(b, c) = 1;
        ext.differential = {IntMatrix(), e1, e2};
        AbHomology h2 = homology_ab(ext);
        for (int i = 0; i < 3; ++i) CHECK(h1.groups[i].group.canonical() == h2.groups[i].group.canonical());
    }
}

TEST_CASE("induced maps on homology") {
    // multiplication by 3 on the complex Z <-2- Z induces the identity on H_0 = Z/2
    AbComplex c;
    c.terms = {FgAbGroup::free(1), FgAbGroup::free(1)};
    c.differential = {IntMatrix(), from_rows({{2}})};
    ChainMap m{&c, {from_rows({{3}}), from_rows({{3}})}};
    AbHomology h = homology_ab(c, {m});
    REQUIRE(h.induced[0][0].rows() == 1);
    CHECK(mod_floor(h.induced[0][0](0, 0), 2) == 1);
    ChainMap bad{&c, {from_rows({{1}}), from_rows({{2}})}};
    CHECK_THROWS_AS(homology_ab(c, {bad}), ValidationError);
}

#include "acceptance/oracles.hpp"

#include "mackey/catalog.hpp"
#include "mackey/hom.hpp"

namespace mackey::acceptance {

namespace {

IntMatrix scalar(long v) { return from_rows({{v}}); }

// Tower with cyclic or free levels (order 1 means zero), listed bottom to top.
MackeyFunctor tower(int p, const std::vector<long>& orders, const std::vector<long>& res,
                    const std::vector<long>& tr, const std::vector<long>& weyl) {
    MackeyFunctor m;
    m.shape = TowerShape{p, static_cast<int>(orders.size()) - 1};
    for (std::size_t k = 0; k < orders.size(); ++k) {
        const bool zero = orders[k] == 1;
        m.level.push_back(zero ? FgAbGroup() : FgAbGroup({Integer(orders[k])}));
        m.weyl.push_back(zero ? IntMatrix(0, 0) : scalar(weyl[k]));
    }
    for (std::size_t k = 0; k + 1 < orders.size(); ++k) {
        const int lo = orders[k] == 1 ? 0 : 1, hi = orders[k + 1] == 1 ? 0 : 1;
        m.res.push_back(lo && hi ? scalar(res[k]) : IntMatrix(lo, hi));
        m.tr.push_back(lo && hi ? scalar(tr[k]) : IntMatrix(hi, lo));
    }
    require_valid(m, "oracle tower");
    return m;
}

MackeyFunctor e_dual(const MackeyFunctor& m) { return dual_levelwise(m, DualMode::E); }

}  // namespace

void put(Expected& e, int d, const MackeyFunctor& m) {
    auto it = e.find(d);
    if (it == e.end())
        e.emplace(d, m);
    else
        it->second = direct_sum_m(it->second, m);
}

std::vector<std::string> compare_graded(const GradedMackey& g, const Expected& e, const TowerShape& shape) {
    std::vector<std::string> out;
    std::vector<int> degrees;
    for (const auto& [d, v] : g) degrees.push_back(d);
    for (const auto& [d, v] : e)
        if (!g.count(d)) degrees.push_back(d);
    for (int d : degrees) {
        MackeyFunctor got = graded_at(g, d, shape), want = graded_at(e, d, shape);
        if (!same_fingerprint(got, want))
            out.push_back("degree " + std::to_string(d) + ": got " + identify(got) + ", expected " +
                          identify(want));
    }
    return out;
}

Expected cp_sphere(int p, long a, long b) {
    const TowerShape s{p, 1};
    Expected e;
    const MackeyFunctor bullet = torsion_b(s, {1});
    if (a >= 0) {
        put(e, static_cast<int>(2 * a + b), constant_z(s));
        for (long i = 1; i <= a; ++i) put(e, static_cast<int>(2 * (a - i) + b), bullet);
    } else {
        put(e, static_cast<int>(2 * a + b), form_z(s, {1}));
        // Sigma^{-1} u^{-j} a^{-k} with j, k > 0 and j + k = |a|
        for (long j = 1; j < -a; ++j) put(e, static_cast<int>(-2 * j - 1 + b), bullet);
    }
    return e;
}

Expected c2_sphere(long s_coef, long b) {
    const TowerShape s{2, 1};
    Expected e;
    const MackeyFunctor bullet = torsion_b(s, {1});
    if (s_coef >= 0) {
        // u^i a^l with 2i + l = s sits in degree 2i
        for (long i = 0; 2 * i <= s_coef; ++i)
            put(e, static_cast<int>(2 * i + b), 2 * i == s_coef ? constant_z(s) : bullet);
        if (s_coef % 2 != 0) put(e, static_cast<int>(s_coef + b), signed_z(s));
    } else {
        const long m = -s_coef;
        if (m % 2 == 0) put(e, static_cast<int>(s_coef + b), form_z(s, {1}));
        // Sigma^{-1} u^{-j} a^{-k} with j, k > 0 and 2j + k = m sits in degree -2j - 1
        for (long j = 1; 2 * j < m; ++j)
            put(e, static_cast<int>(-2 * j - 1 + b), m - 2 * j == 1 ? signed_z_dot(s) : bullet);
        // the bottom cell of S^{-sigma} is not seen at the top level
        if (m == 1) put(e, static_cast<int>(-1 + b), signed_z(s));
    }
    return e;
}

bool cp2_sphere(int p, long n, long m, Expected* out) {
    const TowerShape s{p, 2};
    const MackeyFunctor b01 = torsion_b(s, {0, 1}), b11 = torsion_b(s, {1, 1}), b10 = torsion_b(s, {1, 0});
    Expected e;
    auto at = [&](long d, const MackeyFunctor& v) { put(e, static_cast<int>(d), v); };
    if (m >= 0 && n >= 0) {
        at(2 * (n + m), constant_z(s));
        for (long i = 1; i <= n; ++i) at(2 * (n - i), b01);
        for (long j = 1; j <= m; ++j) at(2 * (n + m - j), b11);
    } else if (m < 0 && n < 0) {
        at(2 * (m + n), form_z(s, {1, 1}));
        for (long i = 1; i < -m; ++i) at(2 * (m + n + i) - 1, b11);
        for (long j = 0; j < -n; ++j) at(2 * (n + j) - 1, b01);
    } else if (n == 0 && m < 0) {
        at(2 * m, form_z(s, {1, 1}));
        for (long i = 1; i < -m; ++i) at(2 * (m + i) - 1, b11);
    } else if (n < 0 && m > 0) {
        at(2 * (m + n), constant_z(s));
        at(2 * n, e_dual(b10));
        for (long i = 1; i < -n; ++i) at(2 * (n + i) - 1, b01);
        for (long j = 1; j < m; ++j) at(2 * (n + j), b11);
    } else if (n > 0 && m < -1) {
        at(2 * (m + n), form_z(s, {1, 1}));
        at(2 * n - 3, b10);
        for (long i = 2; i <= n; ++i) at(2 * (n - i), b01);
        for (long i = 1; i < -m - 1; ++i) at(2 * (m + n + i) - 1, b11);
    } else if (n > 0 && m == -1) {
        at(2 * (n - 1), form_z(s, {1, 0}));
        for (long i = 2; i <= n; ++i) at(2 * (n - i), b01);
    } else {
        return false;
    }
    *out = std::move(e);
    return true;
}

Expected cp2_pulled_back(int p, long n) {
    Expected e;
    for (const auto& [d, v] : cp_sphere(p, n, 0)) e.emplace(d, pullback_psi(v, 1));
    return e;
}

MackeyFunctor c4_m1() { return tower(2, {0, 0, 2}, {2, 0}, {1, 1}, {-1, -1, 1}); }

MackeyFunctor c4_bullet_bar() { return tower(2, {1, 2, 1}, {0, 0}, {0, 0}, {1, 1, 1}); }

Expected c4_four_sigma() {
    const TowerShape s{2, 2};
    Expected e;
    put(e, -2, form_z(s, {1, 1}));
    put(e, -1, torsion_b(s, {1, 1}));
    put(e, 0, torsion_b(s, {0, 1}));
    put(e, 1, torsion_b(s, {1, 0}));
    return e;
}

Expected c4_three_sigma_stated() {
    const TowerShape s{2, 2};
    Expected e;
    put(e, -1, c4_m1());
    put(e, 0, torsion_b(s, {0, 1}));
    put(e, 0, c4_bullet_bar());
    put(e, 1, torsion_b(s, {0, 1}));
    put(e, 2, torsion_b(s, {1, 0}));
    return e;
}

std::vector<MackeyFunctor> torsion_catalog(const TowerShape& shape) {
    std::vector<MackeyFunctor> out;
    for (const auto& t : all_t_vectors(shape.n)) {
        MackeyFunctor b = torsion_b(shape, t);
        if (b.is_zero()) continue;
        out.push_back(b);
        out.push_back(e_dual(b));
    }
    return out;
}

std::vector<MackeyFunctor> corpus(const TowerShape& shape) {
    std::vector<MackeyFunctor> out;
    for (const auto& t : all_t_vectors(shape.n)) out.push_back(form_z(shape, t));
    for (auto& m : torsion_catalog(shape)) out.push_back(std::move(m));
    out.push_back(fixed_point_functor(shape, GSet{{0}}));
    if (shape.p == 2) {
        out.push_back(signed_z(shape));
        out.push_back(signed_z_dot(shape));
    }
    return out;
}

}  // namespace mackey::acceptance

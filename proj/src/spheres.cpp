#include "mackey/spheres.hpp"

#include "mackey/catalog.hpp"
#include "mackey/errors.hpp"

#include <set>
#include <stdexcept>

namespace mackey {

namespace {

// p = 2: lambda_{n-1} (with any odd twist) becomes 2 sigma; other twists are kept.
RepLabel prepare(const TowerShape& shape, const RepLabel& v) {
    if (static_cast<int>(v.a.size()) != shape.n) throw ValidationError("representation label has wrong length");
    RepLabel out = v;
    if (shape.p != 2) return out;
    out.s += 2 * out.a[shape.n - 1];
    out.a[shape.n - 1] = 0;
    std::vector<TwistedLambda> kept;
    for (const auto& tw : out.twisted) {
        if (tw.k == shape.n - 1)
            out.s += 2 * tw.coefficient;
        else
            kept.push_back(tw);
    }
    out.twisted = kept;
    return out;
}

CellComplex smash_reduced(const CellComplex& a, const CellComplex& b) { return reduce(smash(a, b)); }

void check_underlying(const GradedMackey& h, long dimension) {
    for (const auto& [deg, m] : h) {
        const FgAbGroup& g = m.level[0];
        const bool expected = deg == dimension;
        if (expected ? !(g.canonical() == CanonicalForm{{}, 1}) : !g.is_zero())
            throw std::logic_error("sphere: underlying homology is not Z in degree " + std::to_string(dimension));
    }
    if (!h.count(static_cast<int>(dimension)))
        throw std::logic_error("sphere: underlying homology is not Z in degree " + std::to_string(dimension));
}

}  // namespace

CellComplex sphere_chain(const TowerShape& shape, const RepLabel& raw) {
    const RepLabel v = prepare(shape, raw);
    CellComplex c = point_complex(shape);
    std::vector<std::pair<CellComplex, long>> blocks;
    for (int k = shape.n - 1; k >= 0; --k)
        if (v.a[k] != 0) blocks.push_back({chain_lambda(shape, k), v.a[k]});
    for (const auto& tw : v.twisted) blocks.push_back({chain_lambda(shape, tw.k, tw.r), tw.coefficient});
    if (v.s != 0) blocks.push_back({chain_sigma(shape), v.s});
    for (const auto& [block, coef] : blocks)
        if (coef > 0)
            for (long i = 0; i < coef; ++i) c = smash_reduced(c, block);
    for (const auto& [block, coef] : blocks)
        if (coef < 0) {
            const CellComplex dual = dualize(block);
            for (long i = 0; i < -coef; ++i) c = smash_reduced(c, dual);
        }
    return suspend(c, static_cast<int>(v.t));
}

CellComplex reduced_model(const TowerShape& shape, const RepLabel& raw) {
    const RepLabel v = canonicalize(raw, shape);
    if (!v.is_actual()) throw ValidationError("the reduced model needs an actual representation");
    CellComplex c = point_complex(shape);
    c.low = static_cast<int>(v.t);
    OrbitVector top{Integer(1)};  // fundamental cycle on the last cell orbit
    int eigen = 1;                // gamma acts on it by this sign
    auto attach = [&](int type, const OrbitVector& image) {
        GSet cell{{type}};
        EquivMatrix d = EquivMatrix::zero(shape, cell, c.cells.back());
        d.add_to_block(0, 0, image);
        c.cells.push_back(cell);
        c.d.push_back(d);
    };
    auto alternating = [&](int type, int sign) {
        OrbitVector out(shape.orbit_size(type), Integer(0));
        for (std::size_t u = 0; u < out.size(); ++u) out[u] = (u % 2 == 1 && sign < 0) ? -1 : 1;
        return out;
    };
    for (long i = 0; i < v.s; ++i) {
        attach(shape.n - 1, top);
        OrbitVector next(2, Integer(0));
        next[0] = 1;
        next[1] = -eigen;
        top = next;
        eigen = -eigen;
    }
    for (int k = shape.n - 1; k >= 0; --k)
        for (long i = 0; i < v.a[k]; ++i) {
            attach(k, top);
            OrbitVector d2(shape.orbit_size(k), Integer(0));
            d2[0] += 1;
            d2[1 % d2.size()] -= eigen;
            attach(k, d2);
            top = alternating(k, eigen);
        }
    return c;
}

GradedMackey bredon_homology(const TowerShape& shape, const RepLabel& v, bool cross_check) {
    GradedMackey h = bredon_homology(sphere_chain(shape, v));
    check_underlying(h, v.dimension());
    const RepLabel canonical = canonicalize(v, shape);
    if (cross_check && canonical.is_actual()) {
        GradedMackey r = bredon_homology(reduced_model(shape, canonical));
        std::set<int> degrees;
        for (const auto& [d, m] : h) degrees.insert(d);
        for (const auto& [d, m] : r) degrees.insert(d);
        for (int d : degrees)
            if (!same_fingerprint(graded_at(h, d, shape), graded_at(r, d, shape)))
                throw std::logic_error("sphere: smash model and reduced model disagree in degree " + std::to_string(d) +
                                       " for " + to_string(v));
    }
    return h;
}

RepLabel form_to_rep(const MackeyFunctor& m) {
    std::vector<int> t;
    if (!is_form_of_z(m, &t)) throw ValidationError("form_to_rep: not a form of Z");
    const TowerShape& shape = m.shape;
    RepLabel v = zero_rep(shape);
    for (int k = 0; k < shape.n; ++k) {
        if (t[k] == 0) continue;
        if (k + 1 < shape.n)
            v.a[k + 1] += 1;
        else
            v.t += 2;
        v.a[k] -= 1;
    }
    return canonicalize(v, shape);
}

DualityReport anderson_check(const TowerShape& shape, const RepLabel& v) {
    DualityReport report;
    RepLabel dual_rep = add(trivial_rep(shape, 2), negate(add(lambda_rep(shape, 0), v)));
    GradedMackey h = bredon_homology(shape, v);
    GradedMackey hd = bredon_homology(shape, dual_rep);
    std::set<int> degrees;
    for (const auto& [d, m] : h) {
        degrees.insert(d);
        degrees.insert(d + 1);
    }
    for (const auto& [d, m] : hd) degrees.insert(-d);
    for (int d : degrees) {
        const MackeyFunctor ext = dual_levelwise(graded_at(h, d - 1, shape), DualMode::E);
        const MackeyFunctor hom = dual_levelwise(graded_at(h, d, shape), DualMode::star);
        const MackeyFunctor middle = graded_at(hd, -d, shape);
        const MackeyHom incl = torsion_inclusion(middle);
        const MackeyFunctor torsion = incl.source;
        const MackeyFunctor free_part = cokernel_m(incl);
        const bool ok = is_isomorphic(torsion, ext) && is_isomorphic(free_part, hom);
        if (!ok) {
            report.ok = false;
            report.mismatches.push_back("degree " + std::to_string(d) + ": H'_" + std::to_string(-d) + " = " +
                                        identify(middle) + ", expected an extension of " + identify(hom) + " by " +
                                        identify(ext));
        } else if (!torsion.is_zero() && !free_part.is_zero() && !is_isomorphic(middle, direct_sum_m(ext, hom))) {
            report.nonsplit_degrees.push_back(d);
        }
    }
    return report;
}

CompatReport ext_sphere_crosscheck(const MackeyFunctor& m, const MackeyFunctor& n) {
    const TowerShape& shape = m.shape;
    const RepLabel vm = form_to_rep(m), vn = form_to_rep(n);
    CompatReport report;
    auto compare = [&](const std::string& what, const GradedMackey& algebra, const GradedMackey& sphere, int sign) {
        std::set<int> degrees;
        for (const auto& [d, x] : algebra) degrees.insert(d);
        for (const auto& [d, x] : sphere) degrees.insert(sign * d);
        for (int i : degrees) {
            const MackeyFunctor a = graded_at(algebra, i, shape), s = graded_at(sphere, sign * i, shape);
            if (!same_fingerprint(a, s)) {
                report.ok = false;
                report.mismatches.push_back(what + " degree " + std::to_string(i) + ": algebra " + identify(a) +
                                            ", sphere " + identify(s));
            }
        }
    };
    compare("Ext", ext_z(m, n), bredon_homology(shape, add(vn, negate(vm))), -1);
    compare("Tor", tor_z(m, n), bredon_homology(shape, add(vm, vn)), 1);
    return report;
}

}  // namespace mackey

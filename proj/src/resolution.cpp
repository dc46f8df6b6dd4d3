#include "mackey/resolution.hpp"

#include "mackey/errors.hpp"

namespace mackey {

namespace {

AbComplex level_complex(const MackeyComplex& c, int k) {
    AbComplex a;
    a.low = c.low;
    for (std::size_t i = 0; i < c.terms.size(); ++i) {
        a.terms.push_back(c.terms[i].level[k]);
        a.differential.push_back(i == 0 ? IntMatrix(0, c.terms[0].gens(k)) : c.differential[i][k]);
    }
    return a;
}

// Matrix of the map induced on homology by a levelwise map of cycles.
IntMatrix induced(const Subquotient& from, const Subquotient& to, const FgAbGroup& target_term,
                  const IntMatrix& f) {
    return to.project_columns(target_term.reduce(IntMatrix(multiply(f, from.lift))));
}

MackeyHom compose_levels(const MackeyHom& second, const MackeyHom& first) {
    MackeyHom h;
    h.source = first.source;
    h.target = second.target;
    for (std::size_t k = 0; k < first.f.size(); ++k) h.f.push_back(multiply(second.f[k], first.f[k]));
    return h;
}

}  // namespace

void MackeyComplex::validate() const {
    if (differential.size() != terms.size()) throw ValidationError("Mackey complex: differential count mismatch");
    for (std::size_t i = 0; i < terms.size(); ++i) {
        require_valid(terms[i], "Mackey complex term");
        if (i == 0) continue;
        const MackeyFunctor& s = terms[i];
        const MackeyFunctor& t = terms[i - 1];
        const int top = s.shape.n;
        for (int k = 0; k <= top; ++k) {
            const IntMatrix& d = differential[i][k];
            if (!t.level[k].equal_maps(multiply(d, s.weyl[k]), multiply(t.weyl[k], d)))
                throw ValidationError("Mackey complex: differential does not commute with weyl at degree " +
                                      std::to_string(low + static_cast<int>(i)));
            if (k < top) {
                if (!t.level[k].equal_maps(multiply(d, s.res[k]), multiply(t.res[k], differential[i][k + 1])) ||
                    !t.level[k + 1].equal_maps(multiply(differential[i][k + 1], s.tr[k]), multiply(t.tr[k], d)))
                    throw ValidationError("Mackey complex: differential is not a Mackey hom at degree " +
                                          std::to_string(low + static_cast<int>(i)));
            }
            if (i >= 2) {
                IntMatrix dd = multiply(differential[i - 1][k], d);
                if (!terms[i - 2].level[k].equal_maps(dd, zero_matrix(dd.rows(), dd.cols())))
                    throw ValidationError("Mackey complex: d o d != 0 at degree " +
                                          std::to_string(low + static_cast<int>(i)));
            }
        }
    }
}

GradedMackey mackey_homology(const MackeyComplex& c) {
    c.validate();
    GradedMackey out;
    if (c.terms.empty()) return out;
    const TowerShape shape = c.terms[0].shape;
    const int top = shape.n;
    std::vector<AbHomology> h;
    for (int k = 0; k <= top; ++k) h.push_back(homology_ab(level_complex(c, k)));
    for (std::size_t i = 0; i < c.terms.size(); ++i) {
        const MackeyFunctor& term = c.terms[i];
        MackeyFunctor m;
        m.shape = shape;
        for (int k = 0; k <= top; ++k) {
            m.level.push_back(h[k].groups[i].group);
            m.weyl.push_back(induced(h[k].groups[i], h[k].groups[i], term.level[k], term.weyl[k]));
        }
        for (int k = 0; k < top; ++k) {
            m.res.push_back(induced(h[k + 1].groups[i], h[k].groups[i], term.level[k], term.res[k]));
            m.tr.push_back(induced(h[k].groups[i], h[k + 1].groups[i], term.level[k + 1], term.tr[k]));
        }
        require_valid(m, "homology");
        out[c.low + static_cast<int>(i)] = std::move(m);
    }
    return out;
}

namespace {

// Images of the orbit basis of Z[G/C_{p^j}] under the Yoneda map classifying x in M(level j).
std::vector<IntMatrix> yoneda_columns(const MackeyFunctor& m, int j, const IntVector& x) {
    const TowerShape& shape = m.shape;
    std::vector<IntMatrix> out;
    for (int l = 0; l <= shape.n; ++l) {
        const int rank = fixed_point_rank(shape, j, l);
        IntMatrix cols(m.gens(l), rank);
        if (l <= j) {
            IntVector base = multiply(m.res_chain(j, l), x);
            for (int t = 0; t < rank; ++t) {
                cols.col(t) = m.level[l].reduce(base);
                base = multiply(m.weyl[l], base);
            }
        } else {
            IntMatrix tr = m.tr_chain(j, l);
            IntVector y = x;
            for (int t = 0; t < rank; ++t) {
                cols.col(t) = m.level[l].reduce(IntVector(multiply(tr, y)));
                y = multiply(m.weyl[j], y);
            }
        }
        out.push_back(cols);
    }
    return out;
}

// Span of the given columns together with the relations of M(level k).
Lattice image_lattice(const MackeyFunctor& m, int k, const std::vector<const IntMatrix*>& parts) {
    const int g = m.gens(k);
    IntMatrix rel = relation_columns(m.level[k]);
    Eigen::Index width = rel.cols();
    for (const auto* p : parts) width += p->cols();
    IntMatrix all(g, width);
    Eigen::Index c = 0;
    for (const auto* p : parts) {
        all.middleCols(c, p->cols()) = *p;
        c += p->cols();
    }
    all.rightCols(rel.cols()) = rel;
    return Lattice::span(g, all);
}

}  // namespace

Cover cover(const MackeyFunctor& m) {
    require_cohomological(m, "cover");
    const TowerShape& shape = m.shape;
    const int top = shape.n;
    struct Candidate {
        int type;
        std::vector<IntMatrix> cols;
    };
    std::vector<Candidate> chosen;
    auto surjects = [&](int k, std::size_t skip) {
        std::vector<const IntMatrix*> parts;
        for (std::size_t c = 0; c < chosen.size(); ++c)
            if (c != skip) parts.push_back(&chosen[c].cols[k]);
        return image_lattice(m, k, parts) == Lattice::full(m.gens(k));
    };
    // greedy pass from the top level down, skipping generators already hit
    for (int k = top; k >= 0; --k) {
        for (int g = 0; g < m.gens(k); ++g) {
            IntVector x = zero_vector(m.gens(k));
            x(g) = 1;
            std::vector<const IntMatrix*> parts;
            for (const auto& c : chosen) parts.push_back(&c.cols[k]);
            const bool hit = image_lattice(m, k, parts).contains(x);
            if (!hit) chosen.push_back({k, yoneda_columns(m, k, x)});
        }
    }
    // drop orbits that later choices made redundant
    for (std::size_t c = 0; c < chosen.size();) {
        bool redundant = true;
        for (int k = 0; k <= top && redundant; ++k) redundant = surjects(k, c);
        if (redundant)
            chosen.erase(chosen.begin() + static_cast<std::ptrdiff_t>(c));
        else
            ++c;
    }
    Cover out;
    for (const auto& c : chosen) out.orbits.orbits.push_back(c.type);
    out.map.source = fixed_point_functor(shape, out.orbits);
    out.map.target = m;
    for (int l = 0; l <= top; ++l) {
        IntMatrix f(m.gens(l), out.map.source.gens(l));
        Eigen::Index c = 0;
        for (const auto& ch : chosen) {
            f.middleCols(c, ch.cols[l].cols()) = ch.cols[l];
            c += ch.cols[l].cols();
        }
        out.map.f.push_back(f);
    }
    return out;
}

bool Resolution::certified() const {
    for (bool e : exact)
        if (!e) return false;
    return true;
}

Resolution resolve(const MackeyFunctor& m, int length) {
    require_cohomological(m, "resolve");
    if (length < 1) throw ValidationError("resolution length must be positive");
    const TowerShape& shape = m.shape;
    const int top = shape.n;
    Resolution r;
    r.target = m;
    Cover c0 = cover(m);
    r.terms.push_back(c0.orbits);
    r.d.push_back(EquivMatrix::zero(shape, c0.orbits, GSet{}));
    r.augmentation = c0.map;
    MackeyHom current = c0.map;  // last map whose kernel is still to be covered
    for (int i = 1; i <= length; ++i) {
        MackeyHom incl = kernel_inclusion(current);
        Cover ci = cover(incl.source);
        MackeyHom di = compose_levels(incl, ci.map);
        EquivMatrix e = EquivMatrix::from_dense(shape, ci.orbits, r.terms.back(), di.f[0]);
        r.terms.push_back(ci.orbits);
        r.d.push_back(e);
        current = fixed_point_map(e);
    }
    // exactness certificates
    for (int i = 0; i < length; ++i) {
        bool ok = true;
        for (int k = 0; k <= top && ok; ++k) {
            IntMatrix next = fixed_point_level_matrix(r.d[i + 1], k);
            const int rows = static_cast<int>(next.rows());
            Lattice image = Lattice::span(rows, next);
            Lattice kernel;
            if (i == 0) {
                const FgAbGroup src = FgAbGroup::free(rows);
                ok = cokernel_of(src, m.level[k], r.augmentation.f[k]).group.is_zero();
                kernel = Lattice::span(rows, kernel_of(src, m.level[k], r.augmentation.f[k]).lift);
            } else {
                kernel = Lattice::kernel(fixed_point_level_matrix(r.d[i], k));
            }
            ok = ok && kernel == image;
        }
        r.exact.push_back(ok);
    }
    return r;
}

GradedMackey ext_z(const Resolution& res, const MackeyFunctor& n) {
    require_cohomological(n, "Ext");
    if (!(res.target.shape == n.shape)) throw ValidationError("Ext of functors over different groups");
    const int len = res.length();
    MackeyEvaluator ev(n);
    std::vector<MackeyFunctor> cochains;
    for (int i = 0; i <= len; ++i) cochains.push_back(lift(n, res.terms[i]));
    // terms[j] holds cochains of degree len - j, placed in homological degree -(len - j)
    MackeyComplex c;
    c.low = -len;
    for (int j = 0; j <= len; ++j) {
        const int i = len - j;
        c.terms.push_back(cochains[i]);
        if (j == 0) {
            c.differential.push_back(std::vector<IntMatrix>(n.shape.n + 1));
            for (int k = 0; k <= n.shape.n; ++k) c.differential[0][k] = IntMatrix(0, cochains[i].gens(k));
        } else {
            c.differential.push_back(lift_map(ev, res.d[i + 1], cochains[i], cochains[i + 1]).f);
        }
    }
    GradedMackey h = mackey_homology(c);
    GradedMackey out;
    for (int i = 0; i < len; ++i) out[i] = h.at(-i);
    return out;
}

GradedMackey ext_z(const MackeyFunctor& m, const MackeyFunctor& n) {
    require_cohomological(n, "Ext");
    return ext_z(resolve(m), n);
}

GradedMackey tor_z(const MackeyFunctor& m, const Resolution& res) {
    require_cohomological(m, "Tor");
    if (!(res.target.shape == m.shape)) throw ValidationError("Tor of functors over different groups");
    const int len = res.length();
    MackeyEvaluator ev(m);
    MackeyComplex c;
    c.low = 0;
    for (int i = 0; i <= len; ++i) {
        c.terms.push_back(lift(m, res.terms[i]));
        if (i == 0) {
            c.differential.push_back(std::vector<IntMatrix>(m.shape.n + 1));
            for (int k = 0; k <= m.shape.n; ++k) c.differential[0][k] = IntMatrix(0, c.terms[0].gens(k));
        } else {
            c.differential.push_back(lift_map(ev, res.d[i].transpose(), c.terms[i], c.terms[i - 1]).f);
        }
    }
    GradedMackey h = mackey_homology(c);
    GradedMackey out;
    for (int i = 0; i < len; ++i) out[i] = h.at(i);
    return out;
}

GradedMackey tor_z(const MackeyFunctor& m, const MackeyFunctor& n) {
    require_cohomological(m, "Tor");
    return tor_z(m, resolve(n));
}

MackeyFunctor graded_at(const GradedMackey& g, int degree, const TowerShape& shape) {
    auto it = g.find(degree);
    return it == g.end() ? zero_functor(shape) : it->second;
}

CompatReport pullback_compat_check(const MackeyFunctor& m, const MackeyFunctor& n, int k) {
    CompatReport report;
    const MackeyFunctor pm = pullback_psi(m, k), pn = pullback_psi(n, k);
    auto compare = [&](const std::string& what, const GradedMackey& low, const GradedMackey& high) {
        for (const auto& [deg, value] : low) {
            MackeyFunctor pulled = pullback_psi(value, k);
            MackeyFunctor direct = graded_at(high, deg, pulled.shape);
            if (!same_fingerprint(pulled, direct)) {
                report.ok = false;
                std::string line = what + " degree " + std::to_string(deg) + ":";
                for (const auto& d : fingerprint(pulled).diff(fingerprint(direct))) line += " " + d + ";";
                report.mismatches.push_back(line);
            }
        }
    };
    compare("Ext", ext_z(m, n), ext_z(pm, pn));
    compare("Tor", tor_z(m, n), tor_z(pm, pn));
    return report;
}

}  // namespace mackey

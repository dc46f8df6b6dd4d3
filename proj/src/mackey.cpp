#include "mackey/mackey.hpp"

#include "mackey/errors.hpp"

namespace mackey {

namespace {
using Index = Eigen::Index;

IntMatrix dense_identity(const FgAbGroup& g) { return identity_matrix(g.num_generators()); }

bool check_dims(const IntMatrix& m, int rows, int cols) { return m.rows() == rows && m.cols() == cols; }
}  // namespace

bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

void TowerShape::validate() const {
    if (!is_prime(p)) throw ValidationError("p = " + std::to_string(p) + " is not prime");
    if (n < 1) throw ValidationError("n must be at least 1");
    if (n > 12 || orbit_size(0) > 100000) throw ValidationError("group order too large");
}

bool MackeyFunctor::is_zero() const {
    for (const auto& l : level)
        if (!l.is_zero()) return false;
    return true;
}

IntMatrix MackeyFunctor::res_chain(int from, int to) const {
    IntMatrix m = dense_identity(level[from]);
    for (int k = from - 1; k >= to; --k) m = level[k].reduce(multiply(res[k], m));
    return m;
}

IntMatrix MackeyFunctor::tr_chain(int from, int to) const {
    IntMatrix m = dense_identity(level[from]);
    for (int k = from; k < to; ++k) m = level[k + 1].reduce(multiply(tr[k], m));
    return m;
}

IntMatrix MackeyFunctor::weyl_power(int k, std::int64_t e) const {
    const std::int64_t period = shape.orbit_size(k);
    e %= period;
    if (e < 0) e += period;
    IntMatrix result = dense_identity(level[k]);
    IntMatrix base = weyl[k];
    while (e > 0) {
        if (e & 1) result = level[k].reduce(multiply(base, result));
        e >>= 1;
        if (e) base = level[k].reduce(multiply(base, base));
    }
    return result;
}

IntMatrix MackeyFunctor::coset_sum(int k) const {
    const std::int64_t step = shape.orbit_size(k + 1);
    IntMatrix w = weyl_power(k, step);
    IntMatrix acc = zero_matrix(gens(k), gens(k));
    IntMatrix pw = dense_identity(level[k]);
    for (int i = 0; i < shape.p; ++i) {
        acc += pw;
        pw = level[k].reduce(multiply(w, pw));
    }
    return level[k].reduce(acc);
}

MackeyFunctor zero_functor(const TowerShape& shape) {
    MackeyFunctor m;
    m.shape = shape;
    m.level.assign(shape.n + 1, FgAbGroup());
    m.res.assign(shape.n, IntMatrix(0, 0));
    m.tr.assign(shape.n, IntMatrix(0, 0));
    m.weyl.assign(shape.n + 1, IntMatrix(0, 0));
    return m;
}

std::vector<std::string> validate(const MackeyFunctor& m) {
    std::vector<std::string> v;
    try {
        m.shape.validate();
    } catch (const ValidationError& e) {
        v.push_back(e.what());
        return v;
    }
    const int n = m.shape.n;
    if (static_cast<int>(m.level.size()) != n + 1 || static_cast<int>(m.weyl.size()) != n + 1 ||
        static_cast<int>(m.res.size()) != n || static_cast<int>(m.tr.size()) != n) {
        v.push_back("wrong number of levels or structure maps");
        return v;
    }
    bool dims_ok = true;
    for (int k = 0; k < n; ++k) {
        if (!check_dims(m.res[k], m.gens(k), m.gens(k + 1))) {
            v.push_back("res[" + std::to_string(k) + "] has wrong dimensions");
            dims_ok = false;
        }
        if (!check_dims(m.tr[k], m.gens(k + 1), m.gens(k))) {
            v.push_back("tr[" + std::to_string(k) + "] has wrong dimensions");
            dims_ok = false;
        }
    }
    for (int k = 0; k <= n; ++k)
        if (!check_dims(m.weyl[k], m.gens(k), m.gens(k))) {
            v.push_back("weyl[" + std::to_string(k) + "] has wrong dimensions");
            dims_ok = false;
        }
    if (!dims_ok) return v;

    auto tag = [](const char* what, int k) { return std::string(what) + "[" + std::to_string(k) + "]"; };
    for (int k = 0; k < n; ++k) {
        if (!GroupHom{m.level[k + 1], m.level[k], m.res[k]}.is_well_defined())
            v.push_back(tag("res", k) + " is not well defined");
        if (!GroupHom{m.level[k], m.level[k + 1], m.tr[k]}.is_well_defined())
            v.push_back(tag("tr", k) + " is not well defined");
    }
    for (int k = 0; k <= n; ++k)
        if (!GroupHom{m.level[k], m.level[k], m.weyl[k]}.is_well_defined())
            v.push_back(tag("weyl", k) + " is not well defined");
    if (!v.empty()) return v;

    if (!m.level[n].equal_maps(m.weyl[n], dense_identity(m.level[n])))
        v.push_back("weyl at the top level is not the identity");
    for (int k = 0; k < n; ++k) {
        IntMatrix r = dense_identity(m.level[k]);
        for (std::int64_t i = 0; i < m.shape.orbit_size(k); ++i) r = m.level[k].reduce(multiply(m.weyl[k], r));
        if (!m.level[k].equal_maps(r, dense_identity(m.level[k])))
            v.push_back(tag("weyl", k) + " has order not dividing the orbit size");
    }

    for (int k = 0; k < n; ++k) {
        const FgAbGroup& lo = m.level[k];
        const FgAbGroup& hi = m.level[k + 1];
        if (!lo.equal_maps(multiply(m.res[k], m.weyl[k + 1]), multiply(m.weyl[k], m.res[k])))
            v.push_back(tag("res", k) + " does not commute with weyl");
        if (!hi.equal_maps(multiply(m.tr[k], m.weyl[k]), multiply(m.weyl[k + 1], m.tr[k])))
            v.push_back(tag("tr", k) + " does not commute with weyl");
        if (!lo.equal_maps(multiply(m.res[k], m.tr[k]), m.coset_sum(k)))
            v.push_back(tag("res o tr", k) + " differs from the double coset sum");
        IntMatrix inner = m.weyl_power(k, m.shape.orbit_size(k + 1));
        if (!hi.equal_maps(multiply(m.tr[k], inner), m.tr[k]))
            v.push_back(tag("tr", k) + " is not invariant under the inner twist");
        if (!lo.equal_maps(multiply(inner, m.res[k]), m.res[k]))
            v.push_back(tag("res", k) + " image is not fixed by the inner twist");
    }
    return v;
}

void require_valid(const MackeyFunctor& m, const std::string& what) {
    auto v = validate(m);
    if (!v.empty()) throw ValidationError(what + ": " + v.front());
}

bool is_cohomological(const MackeyFunctor& m) {
    for (int k = 0; k < m.shape.n; ++k) {
        const FgAbGroup& hi = m.level[k + 1];
        if (!hi.equal_maps(multiply(m.tr[k], m.res[k]), scalar_matrix(hi.num_generators(), m.shape.p)))
            return false;
    }
    return true;
}

void require_cohomological(const MackeyFunctor& m, const std::string& what) {
    if (!is_cohomological(m)) throw ValidationError(what + ": input is not cohomological");
}

std::vector<std::string> validate(const MackeyHom& h) {
    std::vector<std::string> v;
    const auto& s = h.source;
    const auto& t = h.target;
    if (!(s.shape == t.shape)) return {"source and target shapes differ"};
    const int n = s.shape.n;
    if (static_cast<int>(h.f.size()) != n + 1) return {"wrong number of components"};
    for (int k = 0; k <= n; ++k) {
        if (!check_dims(h.f[k], t.gens(k), s.gens(k))) return {"component " + std::to_string(k) + " has wrong dimensions"};
        if (!GroupHom{s.level[k], t.level[k], h.f[k]}.is_well_defined())
            v.push_back("component " + std::to_string(k) + " is not well defined");
    }
    if (!v.empty()) return v;
    for (int k = 0; k <= n; ++k)
        if (!t.level[k].equal_maps(multiply(h.f[k], s.weyl[k]), multiply(t.weyl[k], h.f[k])))
            v.push_back("component " + std::to_string(k) + " does not commute with weyl");
    for (int k = 0; k < n; ++k) {
        if (!t.level[k].equal_maps(multiply(h.f[k], s.res[k]), multiply(t.res[k], h.f[k + 1])))
            v.push_back("does not commute with res[" + std::to_string(k) + "]");
        if (!t.level[k + 1].equal_maps(multiply(h.f[k + 1], s.tr[k]), multiply(t.tr[k], h.f[k])))
            v.push_back("does not commute with tr[" + std::to_string(k) + "]");
    }
    return v;
}

MackeyHom compose(const MackeyHom& second, const MackeyHom& first) {
    MackeyHom out{first.source, second.target, {}};
    for (std::size_t k = 0; k < first.f.size(); ++k)
        out.f.push_back(second.target.level[k].reduce(multiply(second.f[k], first.f[k])));
    return out;
}

MackeyHom identity_hom(const MackeyFunctor& m) {
    MackeyHom h{m, m, {}};
    for (const auto& l : m.level) h.f.push_back(dense_identity(l));
    return h;
}

bool is_zero_hom(const MackeyHom& h) {
    for (std::size_t k = 0; k < h.f.size(); ++k)
        if (!h.target.level[k].equal_maps(h.f[k], zero_matrix(h.f[k].rows(), h.f[k].cols()))) return false;
    return true;
}

MackeyFunctor induced_subquotient(const MackeyFunctor& m, const std::vector<Subquotient>& q) {
    const int n = m.shape.n;
    MackeyFunctor out;
    out.shape = m.shape;
    for (int k = 0; k <= n; ++k) out.level.push_back(q[k].group);
    for (int k = 0; k < n; ++k) {
        out.res.push_back(q[k].project_columns(multiply(m.res[k], q[k + 1].lift)));
        out.tr.push_back(q[k + 1].project_columns(multiply(m.tr[k], q[k].lift)));
    }
    for (int k = 0; k <= n; ++k) out.weyl.push_back(q[k].project_columns(multiply(m.weyl[k], q[k].lift)));
    return out;
}

namespace {
void require_valid_hom(const MackeyHom& f, const std::string& what) {
    auto v = validate(f);
    if (!v.empty()) throw ValidationError(what + ": " + v.front());
}
}  // namespace

MackeyHom kernel_inclusion(const MackeyHom& f) {
    require_valid_hom(f, "kernel");
    std::vector<Subquotient> q;
    for (int k = 0; k <= f.source.shape.n; ++k)
        q.push_back(kernel_of(f.source.level[k], f.target.level[k], f.f[k]));
    MackeyHom inc;
    inc.source = induced_subquotient(f.source, q);
    inc.target = f.source;
    for (int k = 0; k <= f.source.shape.n; ++k) inc.f.push_back(f.source.level[k].reduce(q[k].lift));
    return inc;
}

MackeyHom cokernel_projection(const MackeyHom& f) {
    require_valid_hom(f, "cokernel");
    std::vector<Subquotient> q;
    for (int k = 0; k <= f.source.shape.n; ++k)
        q.push_back(cokernel_of(f.source.level[k], f.target.level[k], f.f[k]));
    MackeyHom proj;
    proj.source = f.target;
    proj.target = induced_subquotient(f.target, q);
    for (int k = 0; k <= f.source.shape.n; ++k) proj.f.push_back(q[k].group.reduce(q[k].to_group));
    return proj;
}

MackeyFunctor kernel_m(const MackeyHom& f) { return kernel_inclusion(f).source; }
MackeyFunctor cokernel_m(const MackeyHom& f) { return cokernel_projection(f).target; }

MackeyFunctor image_m(const MackeyHom& f) {
    require_valid_hom(f, "image");
    std::vector<Subquotient> q;
    for (int k = 0; k <= f.source.shape.n; ++k)
        q.push_back(image_of(f.source.level[k], f.target.level[k], f.f[k]));
    return induced_subquotient(f.target, q);
}

namespace {
IntMatrix block_diag(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix out = zero_matrix(a.rows() + b.rows(), a.cols() + b.cols());
    if (a.size()) out.topLeftCorner(a.rows(), a.cols()) = a;
    if (b.size()) out.bottomRightCorner(b.rows(), b.cols()) = b;
    return out;
}
}  // namespace

MackeyFunctor direct_sum_m(const MackeyFunctor& a, const MackeyFunctor& b) {
    if (!(a.shape == b.shape)) throw ValidationError("direct sum of functors over different groups");
    MackeyFunctor out;
    out.shape = a.shape;
    for (int k = 0; k <= a.shape.n; ++k) {
        out.level.push_back(a.level[k].direct_sum(b.level[k]));
        out.weyl.push_back(block_diag(a.weyl[k], b.weyl[k]));
    }
    for (int k = 0; k < a.shape.n; ++k) {
        out.res.push_back(block_diag(a.res[k], b.res[k]));
        out.tr.push_back(block_diag(a.tr[k], b.tr[k]));
    }
    return out;
}

MackeyFunctor direct_sum_m(const std::vector<MackeyFunctor>& parts, const TowerShape& shape) {
    MackeyFunctor out = zero_functor(shape);
    for (const auto& p : parts) out = direct_sum_m(out, p);
    return out;
}

MackeyHom quotient_by_elements(const MackeyFunctor& m, const std::vector<IntMatrix>& elements) {
    const int n = m.shape.n;
    std::vector<Lattice> sub(n + 1);
    for (int k = 0; k <= n; ++k)
        sub[k] = Lattice::span(m.gens(k), hstack(relation_columns(m.level[k]), elements[k]));
    bool changed = true;
    while (changed) {
        changed = false;
        auto grow = [&](int k, const IntMatrix& cols) {
            bool add = false;
            for (Index j = 0; j < cols.cols() && !add; ++j)
                if (!sub[k].contains(IntVector(cols.col(j)))) add = true;
            if (add) {
                sub[k] = Lattice::span(m.gens(k), hstack(sub[k].basis(), cols));
                changed = true;
            }
        };
        for (int k = 0; k <= n; ++k) {
            if (sub[k].rank() == 0) continue;
            grow(k, multiply(m.weyl[k], sub[k].basis()));
            if (k < n) grow(k + 1, multiply(m.tr[k], sub[k].basis()));
            if (k > 0) grow(k - 1, multiply(m.res[k - 1], sub[k].basis()));
        }
    }
    std::vector<Subquotient> q;
    for (int k = 0; k <= n; ++k) q.push_back(subquotient(Lattice::full(m.gens(k)), sub[k].basis()));
    MackeyHom proj;
    proj.source = m;
    proj.target = induced_subquotient(m, q);
    for (int k = 0; k <= n; ++k) proj.f.push_back(q[k].group.reduce(q[k].to_group));
    return proj;
}

MackeyFunctor dual_levelwise(const MackeyFunctor& m, DualMode mode) {
    const int n = m.shape.n;
    // generator indices kept at each level
    std::vector<std::vector<int>> keep(n + 1);
    for (int k = 0; k <= n; ++k)
        for (int i = 0; i < m.gens(k); ++i) {
            const Integer& o = m.level[k].order(i);
            if (mode == DualMode::star ? o == 0 : o > 1) keep[k].push_back(i);
        }
    // dual of f: level a -> level b, as a map dual(b) -> dual(a)
    auto dualize = [&](const IntMatrix& f, int a, int b) {
        IntMatrix out = zero_matrix(keep[a].size(), keep[b].size());
        for (std::size_t r = 0; r < keep[a].size(); ++r)
            for (std::size_t c = 0; c < keep[b].size(); ++c) {
                const int j = keep[a][r], i = keep[b][c];
                if (mode == DualMode::star) {
                    out(r, c) = f(i, j);
                } else {
                    out(r, c) = mod_floor(f(i, j), m.level[b].order(i)) * m.level[a].order(j) / m.level[b].order(i);
                }
            }
        return out;
    };
    MackeyFunctor out;
    out.shape = m.shape;
    for (int k = 0; k <= n; ++k) {
        std::vector<Integer> orders;
        for (int i : keep[k]) orders.push_back(m.level[k].order(i));
        out.level.push_back(FgAbGroup(orders));
    }
    for (int k = 0; k < n; ++k) {
        out.res.push_back(out.level[k].reduce(dualize(m.tr[k], k, k + 1)));
        out.tr.push_back(out.level[k + 1].reduce(dualize(m.res[k], k + 1, k)));
    }
    for (int k = 0; k <= n; ++k) {
        IntMatrix inv = m.weyl_power(k, m.shape.orbit_size(k) - 1);
        out.weyl.push_back(out.level[k].reduce(dualize(inv, k, k)));
    }
    return out;
}

MackeyHom torsion_inclusion(const MackeyFunctor& m) {
    Integer exponent = 1;
    for (const auto& g : m.level)
        for (const auto& o : g.canonical().torsion) exponent = exponent / gcd(exponent, o) * o;
    MackeyHom mult;
    mult.source = m;
    mult.target = m;
    for (int k = 0; k <= m.shape.n; ++k) mult.f.push_back(scalar_matrix(m.gens(k), exponent));
    return kernel_inclusion(mult);
}

MackeyFunctor pullback_psi(const MackeyFunctor& m, int k) {
    if (k < 0) throw ValidationError("pullback index must be non-negative");
    require_cohomological(m, "pullback");
    const int nm = m.shape.n;
    MackeyFunctor out;
    out.shape = TowerShape{m.shape.p, nm + k};
    out.shape.validate();
    for (int l = 0; l <= nm + k; ++l) {
        const int src = l >= k ? l - k : 0;
        out.level.push_back(m.level[src]);
        out.weyl.push_back(m.weyl[src]);
    }
    for (int l = 0; l < nm + k; ++l) {
        if (l >= k) {
            out.res.push_back(m.res[l - k]);
            out.tr.push_back(m.tr[l - k]);
        } else {
            out.res.push_back(dense_identity(m.level[0]));
            out.tr.push_back(m.level[0].reduce(scalar_matrix(m.gens(0), m.shape.p)));
        }
    }
    return out;
}

}  // namespace mackey

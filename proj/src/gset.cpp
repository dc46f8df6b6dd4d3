#include "mackey/gset.hpp"

#include "mackey/errors.hpp"

namespace mackey {

namespace {
using Index = Eigen::Index;

std::int64_t pmod(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

bool vector_is_zero(const OrbitVector& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}
}  // namespace

std::int64_t GSet::cardinality(const TowerShape& shape) const {
    std::int64_t c = 0;
    for (int k : orbits) c += shape.orbit_size(k);
    return c;
}

std::vector<std::int64_t> GSet::offsets(const TowerShape& shape) const {
    std::vector<std::int64_t> off{0};
    for (int k : orbits) off.push_back(off.back() + shape.orbit_size(k));
    return off;
}

GSet GSet::disjoint_union(const GSet& other) const {
    GSet g = *this;
    g.orbits.insert(g.orbits.end(), other.orbits.begin(), other.orbits.end());
    return g;
}

OrbitProduct orbit_product(const TowerShape& shape, int j, int k) {
    if (j < 0 || k < 0 || j > shape.n || k > shape.n) throw ValidationError("orbit index out of range");
    OrbitProduct o;
    o.j = j;
    o.k = k;
    o.nj = shape.orbit_size(j);
    o.nk = shape.orbit_size(k);
    o.type = std::min(j, k);
    o.copies = static_cast<int>(shape.orbit_size(std::max(j, k)));
    return o;
}

std::pair<int, std::int64_t> OrbitProduct::locate(std::int64_t x, std::int64_t y) const {
    if (j <= k) return {static_cast<int>(pmod(y - x, nk)), x};
    return {static_cast<int>(pmod(x - y, nj)), y};
}

std::pair<std::int64_t, std::int64_t> OrbitProduct::element(int copy, std::int64_t pos) const {
    if (j <= k) return {pos, pmod(copy + pos, nk)};
    return {pmod(copy + pos, nj), pos};
}

ProductGSet product(const TowerShape& shape, const GSet& x, const GSet& y) {
    ProductGSet p;
    p.offset.assign(x.size(), std::vector<int>(y.size()));
    p.pieces.assign(x.size(), std::vector<OrbitProduct>(y.size()));
    for (int a = 0; a < x.size(); ++a)
        for (int b = 0; b < y.size(); ++b) {
            OrbitProduct op = orbit_product(shape, x.orbits[a], y.orbits[b]);
            p.offset[a][b] = p.set.size();
            p.pieces[a][b] = op;
            for (int c = 0; c < op.copies; ++c) p.set.orbits.push_back(op.type);
        }
    return p;
}

std::pair<int, std::int64_t> ProductGSet::locate(int a, std::int64_t x, int b, std::int64_t y) const {
    auto [copy, pos] = pieces[a][b].locate(x, y);
    return {offset[a][b] + copy, pos};
}

OrbitVector shift(const OrbitVector& v, std::int64_t s) {
    const std::int64_t n = static_cast<std::int64_t>(v.size());
    OrbitVector out(v.size());
    for (std::int64_t u = 0; u < n; ++u) out[u] = v[pmod(u - s, n)];
    return out;
}

EquivMatrix EquivMatrix::zero(const TowerShape& shape, const GSet& source, const GSet& target) {
    EquivMatrix e;
    e.shape = shape;
    e.source = source;
    e.target = target;
    e.blocks.assign(source.size(), {});
    return e;
}

EquivMatrix EquivMatrix::identity(const TowerShape& shape, const GSet& x) {
    EquivMatrix e = zero(shape, x, x);
    for (int a = 0; a < x.size(); ++a) {
        OrbitVector v(shape.orbit_size(x.orbits[a]), Integer(0));
        v[0] = 1;
        e.blocks[a][a] = v;
    }
    return e;
}

void EquivMatrix::add_to_block(int a, int b, const OrbitVector& v, const Integer& scale) {
    auto it = blocks[a].find(b);
    if (it == blocks[a].end()) {
        OrbitVector w(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) w[i] = v[i] * scale;
        if (!vector_is_zero(w)) blocks[a].emplace(b, std::move(w));
        return;
    }
    for (std::size_t i = 0; i < v.size(); ++i) it->second[i] += v[i] * scale;
    if (vector_is_zero(it->second)) blocks[a].erase(it);
}

const OrbitVector* EquivMatrix::block(int a, int b) const {
    auto it = blocks[a].find(b);
    return it == blocks[a].end() ? nullptr : &it->second;
}

IntMatrix EquivMatrix::dense() const {
    auto so = source.offsets(shape), to = target.offsets(shape);
    IntMatrix m = zero_matrix(to.back(), so.back());
    for (int a = 0; a < source.size(); ++a) {
        const std::int64_t na = shape.orbit_size(source.orbits[a]);
        for (const auto& [b, v] : blocks[a]) {
            const std::int64_t nb = static_cast<std::int64_t>(v.size());
            for (std::int64_t s = 0; s < na; ++s)
                for (std::int64_t u = 0; u < nb; ++u)
                    if (v[pmod(u - s, nb)] != 0) m(to[b] + u, so[a] + s) = v[pmod(u - s, nb)];
        }
    }
    return m;
}

void EquivMatrix::validate() const {
    if (static_cast<int>(blocks.size()) != source.size()) throw ValidationError("equivariant map: wrong block count");
    for (int a = 0; a < source.size(); ++a)
        for (const auto& [b, v] : blocks[a]) {
            if (b < 0 || b >= target.size()) throw ValidationError("equivariant map: target orbit out of range");
            const int j = source.orbits[a], k = target.orbits[b];
            const std::int64_t nk = shape.orbit_size(k);
            if (static_cast<std::int64_t>(v.size()) != nk) throw ValidationError("equivariant map: block has wrong length");
            if (j > k && shift(v, shape.orbit_size(j)) != v)
                throw ValidationError("equivariant map: image of a base point is not fixed by its stabilizer");
        }
}

bool EquivMatrix::is_zero() const {
    for (const auto& row : blocks)
        if (!row.empty()) return false;
    return true;
}

EquivMatrix EquivMatrix::from_dense(const TowerShape& shape, const GSet& source, const GSet& target,
                                    const IntMatrix& m) {
    auto so = source.offsets(shape), to = target.offsets(shape);
    if (m.rows() != to.back() || m.cols() != so.back())
        throw ValidationError("equivariant map: dense matrix has wrong dimensions");
    EquivMatrix e = zero(shape, source, target);
    for (int a = 0; a < source.size(); ++a)
        for (int b = 0; b < target.size(); ++b) {
            OrbitVector v(shape.orbit_size(target.orbits[b]));
            for (std::size_t u = 0; u < v.size(); ++u) v[u] = m(to[b] + u, so[a]);
            if (!vector_is_zero(v)) e.blocks[a][b] = v;
        }
    e.validate();
    if (!matrices_equal(e.dense(), m)) throw ValidationError("matrix does not commute with the group action");
    return e;
}

EquivMatrix EquivMatrix::compose_after(const EquivMatrix& first) const {
    if (!(first.target == source)) throw ValidationError("composition of non-composable equivariant maps");
    EquivMatrix out = zero(shape, first.source, target);
    for (int a = 0; a < first.source.size(); ++a)
        for (const auto& [b, v] : first.blocks[a])
            for (const auto& [c, w] : blocks[b])
                for (std::size_t s = 0; s < v.size(); ++s)
                    if (v[s] != 0) out.add_to_block(a, c, shift(w, static_cast<std::int64_t>(s)), v[s]);
    return out;
}

EquivMatrix EquivMatrix::transpose() const {
    EquivMatrix out = zero(shape, target, source);
    for (int a = 0; a < source.size(); ++a) {
        const std::int64_t na = shape.orbit_size(source.orbits[a]);
        for (const auto& [b, v] : blocks[a]) {
            const std::int64_t nb = static_cast<std::int64_t>(v.size());
            OrbitVector u(na);
            for (std::int64_t s = 0; s < na; ++s) u[s] = v[pmod(-s, nb)];
            out.add_to_block(b, a, u);
        }
    }
    return out;
}

EquivMatrix EquivMatrix::scaled(const Integer& c) const {
    EquivMatrix out = zero(shape, source, target);
    if (c == 0) return out;
    for (int a = 0; a < source.size(); ++a)
        for (const auto& [b, v] : blocks[a]) out.add_to_block(a, b, v, c);
    return out;
}

EquivMatrix EquivMatrix::plus(const EquivMatrix& other) const {
    if (!(other.source == source) || !(other.target == target)) throw ValidationError("sum of incompatible maps");
    EquivMatrix out = *this;
    for (int a = 0; a < source.size(); ++a)
        for (const auto& [b, v] : other.blocks[a]) out.add_to_block(a, b, v);
    return out;
}

EquivMatrix tensor(const EquivMatrix& a, const EquivMatrix& b, const ProductGSet& sp, const ProductGSet& tp) {
    const TowerShape& shape = a.shape;
    EquivMatrix out = EquivMatrix::zero(shape, sp.set, tp.set);
    for (int oa = 0; oa < a.source.size(); ++oa)
        for (int ob = 0; ob < b.source.size(); ++ob) {
            const OrbitProduct& piece = sp.pieces[oa][ob];
            for (int copy = 0; copy < piece.copies; ++copy) {
                const int src_orbit = sp.offset[oa][ob] + copy;
                auto [x, y] = piece.element(copy, 0);
                std::map<int, OrbitVector> acc;
                for (const auto& [ta, va] : a.blocks[oa]) {
                    OrbitVector sa = shift(va, x);
                    for (const auto& [tb, vb] : b.blocks[ob]) {
                        OrbitVector sb = shift(vb, y);
                        for (std::size_t s = 0; s < sa.size(); ++s) {
                            if (sa[s] == 0) continue;
                            for (std::size_t s2 = 0; s2 < sb.size(); ++s2) {
                                if (sb[s2] == 0) continue;
                                auto [orb, pos] = tp.locate(ta, static_cast<std::int64_t>(s), tb, static_cast<std::int64_t>(s2));
                                auto it = acc.find(orb);
                                if (it == acc.end())
                                    it = acc.emplace(orb, OrbitVector(shape.orbit_size(tp.set.orbits[orb]), Integer(0))).first;
                                it->second[pos] += sa[s] * sb[s2];
                            }
                        }
                    }
                }
                for (auto& [orb, v] : acc) out.add_to_block(src_orbit, orb, v);
            }
        }
    return out;
}

EquivMatrix tensor(const EquivMatrix& a, const EquivMatrix& b) {
    return tensor(a, b, product(a.shape, a.source, b.source), product(a.shape, a.target, b.target));
}

std::vector<SpanWord> span_basis(const TowerShape& shape, int j, int k) {
    std::vector<SpanWord> out;
    const std::int64_t count = shape.orbit_size(std::max(j, k));
    for (std::int64_t t = 0; t < count; ++t) out.push_back(SpanWord{j, k, t});
    return out;
}

EquivMatrix span_matrix(const TowerShape& shape, const SpanWord& w) {
    EquivMatrix e = EquivMatrix::zero(shape, GSet{{w.j}}, GSet{{w.k}});
    const std::int64_t nk = shape.orbit_size(w.k);
    OrbitVector v(nk, Integer(0));
    if (w.j <= w.k) {
        v[pmod(w.t, nk)] = 1;
    } else {
        const std::int64_t nj = shape.orbit_size(w.j);
        for (std::int64_t b = 0; b < nk; b += nj) v[pmod(b + w.t, nk)] = 1;
    }
    e.blocks[0][0] = v;
    return e;
}

std::vector<std::pair<SpanWord, Integer>> span_decompose_block(const TowerShape& shape, int j, int k,
                                                               const OrbitVector& v) {
    const std::int64_t nk = shape.orbit_size(k);
    if (static_cast<std::int64_t>(v.size()) != nk) throw ValidationError("span decomposition: block has wrong length");
    if (j > k && shift(v, shape.orbit_size(j)) != v)
        throw ValidationError("span decomposition: map is not equivariant");
    std::vector<std::pair<SpanWord, Integer>> out;
    const std::int64_t count = shape.orbit_size(std::max(j, k));
    for (std::int64_t t = 0; t < count; ++t)
        if (v[t] != 0) out.push_back({SpanWord{j, k, t}, v[t]});
    return out;
}

std::vector<std::pair<SpanWord, Integer>> span_decompose(const EquivMatrix& e) {
    if (e.source.size() != 1 || e.target.size() != 1)
        throw ValidationError("span decomposition needs a map between single orbits");
    e.validate();
    const OrbitVector* v = e.block(0, 0);
    if (!v) return {};
    return span_decompose_block(e.shape, e.source.orbits[0], e.target.orbits[0], *v);
}

MackeyEvaluator::MackeyEvaluator(const MackeyFunctor& m) : m_(m) {
    require_cohomological(m, "evaluation on equivariant maps");
    weyl_powers_.resize(m.shape.n + 1);
}

const IntMatrix& MackeyEvaluator::word(const SpanWord& w) {
    const std::int64_t period = m_.shape.orbit_size(std::min(w.j, w.k));
    const std::int64_t t = pmod(w.t, period);
    auto key = std::make_tuple(w.j, w.k, t);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    const int lo = std::min(w.j, w.k);
    auto& powers = weyl_powers_[lo];
    if (powers.empty()) {
        powers.push_back(identity_matrix(m_.gens(lo)));
        for (std::int64_t i = 1; i < period; ++i)
            powers.push_back(m_.level[lo].reduce(multiply(m_.weyl[lo], powers.back())));
    }
    IntMatrix r = multiply(powers[t], m_.res_chain(w.k, lo));
    r = m_.level[w.j].reduce(multiply(m_.tr_chain(lo, w.j), r));
    return cache_.emplace(key, std::move(r)).first->second;
}

FgAbGroup MackeyEvaluator::group_of(const GSet& x) const {
    std::vector<Integer> orders;
    for (int k : x.orbits)
        for (const auto& o : m_.level[k].orders()) orders.push_back(o);
    return FgAbGroup(orders);
}

std::vector<int> MackeyEvaluator::offsets(const GSet& x) const {
    std::vector<int> off{0};
    for (int k : x.orbits) off.push_back(off.back() + m_.gens(k));
    return off;
}

IntMatrix MackeyEvaluator::apply(const EquivMatrix& phi) {
    auto so = offsets(phi.source), to = offsets(phi.target);
    IntMatrix out = zero_matrix(so.back(), to.back());
    for (int a = 0; a < phi.source.size(); ++a) {
        const int j = phi.source.orbits[a];
        if (m_.gens(j) == 0) continue;
        for (const auto& [b, v] : phi.blocks[a]) {
            const int k = phi.target.orbits[b];
            if (m_.gens(k) == 0) continue;
            for (const auto& [w, c] : span_decompose_block(m_.shape, j, k, v)) {
                const IntMatrix& e = word(w);
                for (Index r = 0; r < e.rows(); ++r)
                    for (Index col = 0; col < e.cols(); ++col)
                        if (e(r, col) != 0) out(so[a] + r, to[b] + col) += c * e(r, col);
            }
        }
    }
    return group_of(phi.source).reduce(out);
}

GroupHom eval_module(const MackeyFunctor& m, const SpanWord& w) {
    MackeyEvaluator ev(m);
    return GroupHom{m.level[w.k], m.level[w.j], ev.word(w)};
}

GroupHom eval_module(const MackeyFunctor& m, const EquivMatrix& phi) {
    MackeyEvaluator ev(m);
    return GroupHom{ev.group_of(phi.target), ev.group_of(phi.source), ev.apply(phi)};
}

namespace {

// Module maps between single orbits used for the structure of lifts.
EquivMatrix projection_map(const TowerShape& shape, int l) {  // Z[G/C_{p^l}] -> Z[G/C_{p^{l+1}}]
    return span_matrix(shape, SpanWord{l, l + 1, 0});
}
EquivMatrix transfer_map(const TowerShape& shape, int l) {  // Z[G/C_{p^{l+1}}] -> Z[G/C_{p^l}]
    return span_matrix(shape, SpanWord{l + 1, l, 0});
}
EquivMatrix gamma_map(const TowerShape& shape, int l) {
    return span_matrix(shape, SpanWord{l, l, 1});
}

}  // namespace

MackeyFunctor lift(const MackeyFunctor& m, const GSet& x) {
    MackeyEvaluator ev(m);
    const TowerShape& shape = m.shape;
    const int n = shape.n;
    std::vector<ProductGSet> prods;
    for (int l = 0; l <= n; ++l) prods.push_back(product(shape, GSet{{l}}, x));
    MackeyFunctor out;
    out.shape = shape;
    const EquivMatrix idx = EquivMatrix::identity(shape, x);
    for (int l = 0; l <= n; ++l) {
        out.level.push_back(ev.group_of(prods[l].set));
        out.weyl.push_back(ev.apply(tensor(gamma_map(shape, l), idx, prods[l], prods[l])));
    }
    for (int l = 0; l < n; ++l) {
        out.res.push_back(ev.apply(tensor(projection_map(shape, l), idx, prods[l], prods[l + 1])));
        out.tr.push_back(ev.apply(tensor(transfer_map(shape, l), idx, prods[l + 1], prods[l])));
    }
    return out;
}

MackeyHom lift_map(MackeyEvaluator& ev, const EquivMatrix& phi, const MackeyFunctor& source,
                   const MackeyFunctor& target) {
    const TowerShape& shape = phi.shape;
    MackeyHom h;
    h.source = source;
    h.target = target;
    for (int l = 0; l <= shape.n; ++l) {
        EquivMatrix idl = EquivMatrix::identity(shape, GSet{{l}});
        ProductGSet sp = product(shape, GSet{{l}}, phi.source);
        ProductGSet tp = product(shape, GSet{{l}}, phi.target);
        h.f.push_back(ev.apply(tensor(idl, phi, sp, tp)));
    }
    return h;
}

MackeyHom lift_map(const MackeyFunctor& m, const EquivMatrix& phi) {
    MackeyEvaluator ev(m);
    return lift_map(ev, phi, lift(m, phi.target), lift(m, phi.source));
}

int fixed_point_rank(const TowerShape& shape, int orbit_type, int level) {
    return static_cast<int>(shape.orbit_size(std::max(orbit_type, level)));
}

namespace {

// Coefficient vector (on an orbit of type j) of the level-l basis element t.
OrbitVector orbit_sum(const TowerShape& shape, int j, int l, std::int64_t t) {
    const std::int64_t nj = shape.orbit_size(j);
    OrbitVector v(nj, Integer(0));
    if (l <= j) {
        v[t] = 1;
    } else {
        const std::int64_t step = shape.orbit_size(l);
        for (std::int64_t s = t; s < nj; s += step) v[s] = 1;
    }
    return v;
}

// Coordinates of a C_{p^l}-fixed vector on an orbit of type j in the orbit-sum basis.
std::vector<Integer> read_fixed(const TowerShape& shape, int j, int l, const OrbitVector& v) {
    const int r = fixed_point_rank(shape, j, l);
    return std::vector<Integer>(v.begin(), v.begin() + r);
}

}  // namespace

MackeyFunctor fixed_point_functor(const TowerShape& shape, const GSet& x) {
    shape.validate();
    const int n = shape.n;
    MackeyFunctor out;
    out.shape = shape;
    std::vector<std::vector<int>> off(n + 1, std::vector<int>{0});
    for (int l = 0; l <= n; ++l)
        for (int j : x.orbits) off[l].push_back(off[l].back() + fixed_point_rank(shape, j, l));
    for (int l = 0; l <= n; ++l) {
        out.level.push_back(FgAbGroup::free(off[l].back()));
        IntMatrix w = zero_matrix(off[l].back(), off[l].back());
        for (int a = 0; a < x.size(); ++a) {
            const int j = x.orbits[a];
            for (int t = 0; t < fixed_point_rank(shape, j, l); ++t) {
                auto c = read_fixed(shape, j, l, shift(orbit_sum(shape, j, l, t), 1));
                for (std::size_t i = 0; i < c.size(); ++i) w(off[l][a] + i, off[l][a] + t) = c[i];
            }
        }
        out.weyl.push_back(w);
    }
    for (int l = 0; l < n; ++l) {
        IntMatrix res = zero_matrix(off[l].back(), off[l + 1].back());
        IntMatrix tr = zero_matrix(off[l + 1].back(), off[l].back());
        for (int a = 0; a < x.size(); ++a) {
            const int j = x.orbits[a];
            for (int t = 0; t < fixed_point_rank(shape, j, l + 1); ++t) {
                auto c = read_fixed(shape, j, l, orbit_sum(shape, j, l + 1, t));
                for (std::size_t i = 0; i < c.size(); ++i) res(off[l][a] + i, off[l + 1][a] + t) = c[i];
            }
            const std::int64_t step = shape.orbit_size(l + 1);
            for (int t = 0; t < fixed_point_rank(shape, j, l); ++t) {
                OrbitVector base = orbit_sum(shape, j, l, t), sum(base.size(), Integer(0));
                for (int i = 0; i < shape.p; ++i) {
                    OrbitVector s = shift(base, i * step);
                    for (std::size_t u = 0; u < sum.size(); ++u) sum[u] += s[u];
                }
                auto c = read_fixed(shape, j, l + 1, sum);
                for (std::size_t i = 0; i < c.size(); ++i) tr(off[l + 1][a] + i, off[l][a] + t) = c[i];
            }
        }
        out.res.push_back(res);
        out.tr.push_back(tr);
    }
    return out;
}

IntMatrix fixed_point_level_matrix(const EquivMatrix& phi, int l) {
    const TowerShape& shape = phi.shape;
    std::vector<int> so{0}, to{0};
    for (int j : phi.source.orbits) so.push_back(so.back() + fixed_point_rank(shape, j, l));
    for (int k : phi.target.orbits) to.push_back(to.back() + fixed_point_rank(shape, k, l));
    IntMatrix m = zero_matrix(to.back(), so.back());
    for (int a = 0; a < phi.source.size(); ++a) {
        const int j = phi.source.orbits[a];
        for (const auto& [b, v] : phi.blocks[a]) {
            const int k = phi.target.orbits[b];
            const std::int64_t nk = shape.orbit_size(k);
            for (int t = 0; t < fixed_point_rank(shape, j, l); ++t) {
                // image of the orbit sum starting at t
                OrbitVector img(nk, Integer(0));
                OrbitVector sum = orbit_sum(shape, j, l, t);
                for (std::size_t s = 0; s < sum.size(); ++s) {
                    if (sum[s] == 0) continue;
                    for (std::int64_t u = 0; u < nk; ++u) img[u] += v[pmod(u - static_cast<std::int64_t>(s), nk)];
                }
                auto c = read_fixed(shape, k, l, img);
                for (std::size_t i = 0; i < c.size(); ++i) m(to[b] + i, so[a] + t) += c[i];
            }
        }
    }
    return m;
}

MackeyHom fixed_point_map(const EquivMatrix& phi) {
    MackeyHom h;
    h.source = fixed_point_functor(phi.shape, phi.source);
    h.target = fixed_point_functor(phi.shape, phi.target);
    for (int l = 0; l <= phi.shape.n; ++l) h.f.push_back(fixed_point_level_matrix(phi, l));
    return h;
}

}  // namespace mackey

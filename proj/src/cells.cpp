#include "mackey/cells.hpp"

#include "mackey/errors.hpp"

namespace mackey {

namespace {

void place(EquivMatrix& big, const EquivMatrix& part, int src_off, int tgt_off, const Integer& sign) {
    for (std::size_t a = 0; a < part.blocks.size(); ++a)
        for (const auto& [b, v] : part.blocks[a]) big.add_to_block(static_cast<int>(a) + src_off, b + tgt_off, v, sign);
}

bool is_zero_vector(const OrbitVector& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

// Position s and sign when v = +-e_s, otherwise nullopt.
std::optional<std::pair<std::int64_t, int>> unit_position(const OrbitVector& v) {
    std::optional<std::pair<std::int64_t, int>> out;
    for (std::size_t u = 0; u < v.size(); ++u) {
        if (v[u] == 0) continue;
        if (out || (v[u] != 1 && v[u] != -1)) return std::nullopt;
        out = std::make_pair(static_cast<std::int64_t>(u), v[u] == 1 ? 1 : -1);
    }
    return out;
}

GSet erase_orbit(const GSet& x, int index) {
    GSet out = x;
    out.orbits.erase(out.orbits.begin() + index);
    return out;
}

// Removes a source orbit and/or a target orbit (-1 for none), renumbering the rest.
EquivMatrix drop(const EquivMatrix& e, int src, int tgt) {
    EquivMatrix out = EquivMatrix::zero(e.shape, src >= 0 ? erase_orbit(e.source, src) : e.source,
                                        tgt >= 0 ? erase_orbit(e.target, tgt) : e.target);
    for (std::size_t a = 0; a < e.blocks.size(); ++a) {
        if (static_cast<int>(a) == src) continue;
        const int na = src >= 0 && static_cast<int>(a) > src ? static_cast<int>(a) - 1 : static_cast<int>(a);
        for (const auto& [b, v] : e.blocks[a]) {
            if (b == tgt || is_zero_vector(v)) continue;
            const int nb = tgt >= 0 && b > tgt ? b - 1 : b;
            out.blocks[na][nb] = v;
        }
    }
    return out;
}

}  // namespace

int CellComplex::cell_count() const {
    int c = 0;
    for (const auto& x : cells) c += x.size();
    return c;
}

void CellComplex::validate() const {
    if (d.size() != cells.size()) throw ValidationError("cell complex: differential count mismatch");
    for (std::size_t i = 0; i < cells.size(); ++i) {
        d[i].validate();
        if (!(d[i].source == cells[i])) throw ValidationError("cell complex: differential source mismatch");
        if (i > 0 && !(d[i].target == cells[i - 1])) throw ValidationError("cell complex: differential target mismatch");
        if (i >= 2 && !d[i - 1].compose_after(d[i]).is_zero())
            throw ValidationError("cell complex: d o d != 0 at degree " + std::to_string(low + static_cast<int>(i)));
    }
}

MackeyComplex CellComplex::mackey() const {
    MackeyComplex m;
    m.low = low;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        m.terms.push_back(fixed_point_functor(shape, cells[i]));
        std::vector<IntMatrix> levels;
        for (int k = 0; k <= shape.n; ++k) {
            if (i == 0)
                levels.push_back(IntMatrix(0, m.terms.back().gens(k)));
            else
                levels.push_back(fixed_point_level_matrix(d[i], k));
        }
        m.differential.push_back(std::move(levels));
    }
    return m;
}

CellComplex point_complex(const TowerShape& shape) {
    shape.validate();
    CellComplex c;
    c.shape = shape;
    c.cells = {GSet{{shape.n}}};
    c.d = {EquivMatrix::zero(shape, c.cells[0], GSet{})};
    return c;
}

namespace {

EquivMatrix fold(const TowerShape& shape, int k) {
    EquivMatrix f = EquivMatrix::zero(shape, GSet{{k}}, GSet{{shape.n}});
    f.add_to_block(0, 0, OrbitVector{Integer(1)});
    return f;
}

}  // namespace

CellComplex chain_lambda(const TowerShape& shape, int k, long r) {
    shape.validate();
    if (k < 0 || k >= shape.n) throw ValidationError("lambda index out of range");
    if (r % shape.p == 0) throw ValidationError("lambda twist must be prime to p");
    const std::int64_t size = shape.orbit_size(k);
    CellComplex c;
    c.shape = shape;
    c.cells = {GSet{{shape.n}}, GSet{{k}}, GSet{{k}}};
    OrbitVector twist(size, Integer(0));
    twist[0] += 1;
    twist[((r % size) + size) % size] -= 1;
    EquivMatrix d2 = EquivMatrix::zero(shape, c.cells[2], c.cells[1]);
    d2.add_to_block(0, 0, twist);
    c.d = {EquivMatrix::zero(shape, c.cells[0], GSet{}), fold(shape, k), d2};
    return c;
}

CellComplex chain_sigma(const TowerShape& shape) {
    shape.validate();
    if (shape.p != 2) throw ValidationError("sigma only exists for p = 2");
    CellComplex c;
    c.shape = shape;
    c.cells = {GSet{{shape.n}}, GSet{{shape.n - 1}}};
    c.d = {EquivMatrix::zero(shape, c.cells[0], GSet{}), fold(shape, shape.n - 1)};
    return c;
}

CellComplex dualize(const CellComplex& c) {
    CellComplex out;
    out.shape = c.shape;
    out.low = -c.high();
    const int m = static_cast<int>(c.cells.size());
    for (int i = 0; i < m; ++i) out.cells.push_back(c.cells[m - 1 - i]);
    for (int i = 0; i < m; ++i) {
        if (i == 0)
            out.d.push_back(EquivMatrix::zero(c.shape, out.cells[0], GSet{}));
        else
            out.d.push_back(c.d[m - i].transpose());
    }
    return out;
}

CellComplex suspend(const CellComplex& c, int t) {
    CellComplex out = c;
    out.low += t;
    return out;
}

CellComplex smash(const CellComplex& a, const CellComplex& b) {
    if (!(a.shape == b.shape)) throw ValidationError("smash of complexes over different groups");
    const TowerShape& shape = a.shape;
    const int na = static_cast<int>(a.cells.size()), nb = static_cast<int>(b.cells.size());
    CellComplex out;
    out.shape = shape;
    out.low = a.low + b.low;
    const int terms = na + nb - 1;
    // per (i, j): product set and its first orbit index inside the output term of degree i + j
    std::vector<std::vector<ProductGSet>> prod(na, std::vector<ProductGSet>(nb));
    std::vector<std::vector<int>> offset(na, std::vector<int>(nb, 0));
    out.cells.assign(terms, GSet{});
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < nb; ++j) {
            prod[i][j] = product(shape, a.cells[i], b.cells[j]);
            GSet& target = out.cells[i + j];
            offset[i][j] = target.size();
            target = target.disjoint_union(prod[i][j].set);
        }
    for (int t = 0; t < terms; ++t) {
        EquivMatrix dt = EquivMatrix::zero(shape, out.cells[t], t == 0 ? GSet{} : out.cells[t - 1]);
        if (t > 0) {
            for (int i = 0; i < na; ++i) {
                const int j = t - i;
                if (j < 0 || j >= nb) continue;
                if (i > 0) {
                    EquivMatrix part = tensor(a.d[i], EquivMatrix::identity(shape, b.cells[j]), prod[i][j], prod[i - 1][j]);
                    place(dt, part, offset[i][j], offset[i - 1][j], Integer(1));
                }
                if (j > 0) {
                    EquivMatrix part = tensor(EquivMatrix::identity(shape, a.cells[i]), b.d[j], prod[i][j], prod[i][j - 1]);
                    const int deg = a.low + i;
                    place(dt, part, offset[i][j], offset[i][j - 1], Integer(deg % 2 == 0 ? 1 : -1));
                }
            }
        }
        out.d.push_back(std::move(dt));
    }
    return out;
}

CellComplex reduce(const CellComplex& input) {
    CellComplex c = input;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 1; i < c.cells.size() && !changed; ++i) {
            EquivMatrix& di = c.d[i];
            for (int a = 0; a < c.cells[i].size() && !changed; ++a) {
                for (const auto& [b, phi] : di.blocks[a]) {
                    if (c.cells[i].orbits[a] != c.cells[i - 1].orbits[b]) continue;
                    auto unit = unit_position(phi);
                    if (!unit) continue;
                    const auto [s, eps] = *unit;
                    const std::int64_t size = static_cast<std::int64_t>(phi.size());
                    // d' = delta - gamma_ phi^{-1} alpha on the remaining cells
                    EquivMatrix next = di;
                    for (int a2 = 0; a2 < c.cells[i].size(); ++a2) {
                        if (a2 == a) continue;
                        auto it = di.blocks[a2].find(b);
                        if (it == di.blocks[a2].end()) continue;
                        const OrbitVector& alpha = it->second;
                        for (std::int64_t u = 0; u < size; ++u) {
                            if (alpha[u] == 0) continue;
                            const Integer coef = -alpha[u] * eps;
                            const std::int64_t w = ((u - s) % size + size) % size;
                            for (const auto& [b2, g] : di.blocks[a]) {
                                if (b2 == b) continue;
                                next.add_to_block(a2, b2, shift(g, w), coef);
                            }
                        }
                    }
                    const int bb = b;
                    c.d[i] = drop(next, a, bb);
                    if (i + 1 < c.cells.size()) c.d[i + 1] = drop(c.d[i + 1], -1, a);
                    if (i >= 1) c.d[i - 1] = drop(c.d[i - 1], bb, -1);
                    c.cells[i] = erase_orbit(c.cells[i], a);
                    c.cells[i - 1] = erase_orbit(c.cells[i - 1], bb);
                    changed = true;
                    break;
                }
            }
        }
    }
    // trim empty terms at both ends
    while (c.cells.size() > 1 && c.cells.back().size() == 0) {
        c.cells.pop_back();
        c.d.pop_back();
    }
    while (c.cells.size() > 1 && c.cells.front().size() == 0) {
        c.cells.erase(c.cells.begin());
        c.d.erase(c.d.begin());
        c.d[0] = EquivMatrix::zero(c.shape, c.cells[0], GSet{});
        ++c.low;
    }
    return c;
}

GradedMackey bredon_homology(const CellComplex& c) { return mackey_homology(c.mackey()); }

}  // namespace mackey

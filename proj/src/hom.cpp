#include "mackey/hom.hpp"

#include "mackey/errors.hpp"

#include <sstream>

namespace mackey {

namespace {
using Index = Eigen::Index;

struct ConstraintBuilder {
    int unknowns;
    std::vector<std::vector<std::pair<int, Integer>>> rows;
    std::vector<Integer> moduli;

    void add(std::vector<std::pair<int, Integer>> row, const Integer& modulus) {
        if (modulus == 1) return;
        bool nonzero = false;
        for (auto& e : row)
            if (e.second != 0) nonzero = true;
        if (!nonzero) return;
        rows.push_back(std::move(row));
        moduli.push_back(modulus);
    }
};
}  // namespace

IntVector MackeyHomGroup::encode(const std::vector<IntMatrix>& f) const {
    IntVector v = zero_vector(offsets.back());
    for (std::size_t k = 0; k < f.size(); ++k)
        for (Index i = 0; i < f[k].rows(); ++i)
            for (Index j = 0; j < f[k].cols(); ++j) v(offsets[k] + i * f[k].cols() + j) = f[k](i, j);
    return v;
}

std::vector<IntMatrix> MackeyHomGroup::decode(const IntVector& v) const {
    std::vector<IntMatrix> f;
    for (int k = 0; k <= source_.shape.n; ++k) {
        const int a = source_.gens(k), b = target_.gens(k);
        IntMatrix m(b, a);
        for (int i = 0; i < b; ++i)
            for (int j = 0; j < a; ++j) m(i, j) = v(offsets[k] + i * a + j);
        f.push_back(target_.level[k].reduce(m));
    }
    return f;
}

IntVector MackeyHomGroup::project(const std::vector<IntMatrix>& f) const {
    std::vector<IntMatrix> reduced;
    for (std::size_t k = 0; k < f.size(); ++k) reduced.push_back(target_.level[k].reduce(f[k]));
    return solutions.project(encode(reduced));
}

MackeyHom MackeyHomGroup::element(const IntVector& coords) const {
    IntVector v = multiply(solutions.lift, coords);
    return MackeyHom{source_, target_, decode(v)};
}

MackeyHomGroup hom_group(const MackeyFunctor& m, const MackeyFunctor& nf) {
    if (!(m.shape == nf.shape)) throw ValidationError("Hom between functors over different groups");
    const int n = m.shape.n;
    MackeyHomGroup out;
    out.source_ = m;
    out.target_ = nf;
    out.offsets = {0};
    for (int k = 0; k <= n; ++k) out.offsets.push_back(out.offsets.back() + m.gens(k) * nf.gens(k));
    const int total = out.offsets.back();
    auto var = [&](int k, int i, int j) { return out.offsets[k] + i * m.gens(k) + j; };

    ConstraintBuilder cb{total, {}, {}};
    for (int k = 0; k <= n; ++k) {
        const int a = m.gens(k), b = nf.gens(k);
        for (int i = 0; i < b; ++i) {
            const Integer& mod = nf.level[k].order(i);
            for (int j = 0; j < a; ++j) {
                // well-definedness on relators of M
                if (m.level[k].order(j) > 0) cb.add({{var(k, i, j), m.level[k].order(j)}}, mod);
                // f_k w_M - w_N f_k
                std::vector<std::pair<int, Integer>> row;
                for (int l = 0; l < a; ++l)
                    if (m.weyl[k](l, j) != 0) row.push_back({var(k, i, l), m.weyl[k](l, j)});
                for (int l = 0; l < b; ++l)
                    if (nf.weyl[k](i, l) != 0) row.push_back({var(k, l, j), -nf.weyl[k](i, l)});
                cb.add(std::move(row), mod);
            }
        }
    }
    for (int k = 0; k < n; ++k) {
        // f_k res_M - res_N f_{k+1}: M_{k+1} -> N_k
        for (int i = 0; i < nf.gens(k); ++i)
            for (int j = 0; j < m.gens(k + 1); ++j) {
                std::vector<std::pair<int, Integer>> row;
                for (int l = 0; l < m.gens(k); ++l)
                    if (m.res[k](l, j) != 0) row.push_back({var(k, i, l), m.res[k](l, j)});
                for (int l = 0; l < nf.gens(k + 1); ++l)
                    if (nf.res[k](i, l) != 0) row.push_back({var(k + 1, l, j), -nf.res[k](i, l)});
                cb.add(std::move(row), nf.level[k].order(i));
            }
        // f_{k+1} tr_M - tr_N f_k: M_k -> N_{k+1}
        for (int i = 0; i < nf.gens(k + 1); ++i)
            for (int j = 0; j < m.gens(k); ++j) {
                std::vector<std::pair<int, Integer>> row;
                for (int l = 0; l < m.gens(k + 1); ++l)
                    if (m.tr[k](l, j) != 0) row.push_back({var(k + 1, i, l), m.tr[k](l, j)});
                for (int l = 0; l < nf.gens(k); ++l)
                    if (nf.tr[k](i, l) != 0) row.push_back({var(k, l, j), -nf.tr[k](i, l)});
                cb.add(std::move(row), nf.level[k + 1].order(i));
            }
    }

    int mod_cols = 0;
    for (const auto& md : cb.moduli)
        if (md > 0) ++mod_cols;
    IntMatrix sys = zero_matrix(cb.rows.size(), total + mod_cols);
    int mc = 0;
    for (std::size_t r = 0; r < cb.rows.size(); ++r) {
        for (const auto& [c, v] : cb.rows[r]) sys(r, c) += v;
        if (cb.moduli[r] > 0) sys(r, total + mc++) = cb.moduli[r];
    }
    Lattice sol;
    if (cb.rows.empty()) {
        sol = Lattice::full(total);
    } else {
        Lattice k = Lattice::kernel(sys);
        sol = Lattice::span(total, k.basis().topRows(total));
    }
    // homs that vanish: entries divisible by the target generator orders
    int zero_count = 0;
    for (int k = 0; k <= n; ++k)
        for (int i = 0; i < nf.gens(k); ++i)
            if (nf.level[k].order(i) > 0) zero_count += m.gens(k);
    IntMatrix zeros = zero_matrix(total, zero_count);
    int c = 0;
    for (int k = 0; k <= n; ++k)
        for (int i = 0; i < nf.gens(k); ++i)
            if (nf.level[k].order(i) > 0)
                for (int j = 0; j < m.gens(k); ++j) zeros(var(k, i, j), c++) = nf.level[k].order(i);
    out.solutions = subquotient(sol, zeros);
    out.group = out.solutions.group;
    for (int g = 0; g < out.group.num_generators(); ++g)
        out.basis.push_back(MackeyHom{m, nf, out.decode(IntVector(out.solutions.lift.col(g)))});
    return out;
}

std::string Fingerprint::describe() const {
    std::ostringstream os;
    for (std::size_t k = levels.size(); k-- > 0;) os << "level " << k << ": " << levels[k].to_string() << "\n";
    for (const auto& m : maps)
        os << m.label << ": ker " << m.kernel.to_string() << ", im " << m.image.to_string() << ", coker "
           << m.cokernel.to_string() << "\n";
    return os.str();
}

std::vector<std::string> Fingerprint::diff(const Fingerprint& o) const {
    std::vector<std::string> d;
    if (!(shape == o.shape)) return {"shapes differ"};
    for (std::size_t k = 0; k < levels.size(); ++k)
        if (!(levels[k] == o.levels[k]))
            d.push_back("level " + std::to_string(k) + ": " + levels[k].to_string() + " vs " + o.levels[k].to_string());
    for (std::size_t i = 0; i < maps.size() && i < o.maps.size(); ++i)
        if (!(maps[i] == o.maps[i]))
            d.push_back(maps[i].label + ": ker/im/coker " + maps[i].kernel.to_string() + "/" + maps[i].image.to_string() +
                        "/" + maps[i].cokernel.to_string() + " vs " + o.maps[i].kernel.to_string() + "/" +
                        o.maps[i].image.to_string() + "/" + o.maps[i].cokernel.to_string());
    return d;
}

namespace {
MapInvariant map_invariant(std::string label, const FgAbGroup& s, const FgAbGroup& t, const IntMatrix& f) {
    return MapInvariant{std::move(label), kernel_of(s, t, f).group.canonical(), image_of(s, t, f).group.canonical(),
                        cokernel_of(s, t, f).group.canonical()};
}
}  // namespace

Fingerprint fingerprint(const MackeyFunctor& m) {
    Fingerprint fp;
    fp.shape = m.shape;
    const int n = m.shape.n;
    for (int k = 0; k <= n; ++k) fp.levels.push_back(m.level[k].canonical());
    for (int j = 1; j <= n; ++j)
        for (int i = 0; i < j; ++i) {
            fp.maps.push_back(map_invariant("res " + std::to_string(j) + "->" + std::to_string(i), m.level[j], m.level[i],
                                            m.res_chain(j, i)));
            fp.maps.push_back(map_invariant("tr " + std::to_string(i) + "->" + std::to_string(j), m.level[i], m.level[j],
                                            m.tr_chain(i, j)));
        }
    for (int k = 0; k < n; ++k) {
        fp.maps.push_back(map_invariant("tr.res at " + std::to_string(k + 1), m.level[k + 1], m.level[k + 1],
                                        multiply(m.tr[k], m.res[k])));
        fp.maps.push_back(map_invariant("res.tr at " + std::to_string(k), m.level[k], m.level[k],
                                        multiply(m.res[k], m.tr[k])));
    }
    for (int k = 0; k < n; ++k) {
        const int g = m.gens(k);
        fp.maps.push_back(map_invariant("weyl-1 at " + std::to_string(k), m.level[k], m.level[k],
                                        IntMatrix(m.weyl[k] - identity_matrix(g))));
        fp.maps.push_back(map_invariant("weyl+1 at " + std::to_string(k), m.level[k], m.level[k],
                                        IntMatrix(m.weyl[k] + identity_matrix(g))));
        IntMatrix norm = zero_matrix(g, g), pw = identity_matrix(g);
        for (std::int64_t i = 0; i < m.shape.orbit_size(k); ++i) {
            norm += pw;
            pw = m.level[k].reduce(multiply(m.weyl[k], pw));
        }
        fp.maps.push_back(map_invariant("norm at " + std::to_string(k), m.level[k], m.level[k], norm));
    }
    return fp;
}

bool same_fingerprint(const MackeyFunctor& a, const MackeyFunctor& b) { return fingerprint(a) == fingerprint(b); }

bool is_levelwise_iso(const MackeyHom& h) {
    for (std::size_t k = 0; k < h.f.size(); ++k) {
        const FgAbGroup& s = h.source.level[k];
        const FgAbGroup& t = h.target.level[k];
        if (!kernel_of(s, t, h.f[k]).group.is_zero()) return false;
        if (!cokernel_of(s, t, h.f[k]).group.is_zero()) return false;
    }
    return true;
}

std::optional<MackeyHom> find_isomorphism(const MackeyFunctor& m, const MackeyFunctor& nf, long max_candidates) {
    if (!(m.shape == nf.shape)) return std::nullopt;
    if (!(fingerprint(m) == fingerprint(nf))) return std::nullopt;
    MackeyHomGroup h = hom_group(m, nf);
    const int r = h.group.num_generators();
    if (m.is_zero()) return MackeyHom{m, nf, h.decode(zero_vector(h.offsets.back()))};
    if (r == 0) return std::nullopt;
    long tried = 0;
    for (int bound = 1; bound <= 3; ++bound) {
        std::vector<Integer> lo(r), hi(r);
        bool has_free = false;
        for (int g = 0; g < r; ++g) {
            const Integer& o = h.group.order(g);
            if (o == 0) {
                lo[g] = -bound;
                hi[g] = bound;
                has_free = true;
            } else {
                lo[g] = 0;
                hi[g] = o - 1;
            }
        }
        if (bound > 1 && !has_free) break;
        IntVector c(r);
        for (int g = 0; g < r; ++g) c(g) = lo[g];
        for (;;) {
            bool fresh = bound == 1;
            for (int g = 0; g < r && !fresh; ++g)
                if (h.group.order(g) == 0 && abs(c(g)) == bound) fresh = true;
            if (fresh) {
                if (++tried > max_candidates)
                    throw ResourceLimit("isomorphism search exceeded " + std::to_string(max_candidates) + " candidates");
                MackeyHom cand = h.element(c);
                if (is_levelwise_iso(cand)) return cand;
            }
            int g = 0;
            while (g < r && c(g) == hi[g]) {
                c(g) = lo[g];
                ++g;
            }
            if (g == r) break;
            c(g) += 1;
        }
    }
    return std::nullopt;
}

bool is_isomorphic(const MackeyFunctor& m, const MackeyFunctor& nf, long max_candidates) {
    return find_isomorphism(m, nf, max_candidates).has_value();
}

}  // namespace mackey

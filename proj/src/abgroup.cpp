#include "mackey/abgroup.hpp"

#include "mackey/errors.hpp"

#include <sstream>

namespace mackey {

namespace {
using Index = Eigen::Index;

std::vector<Integer> chain_from_orders(std::vector<Integer> t) {
    for (std::size_t i = 0; i < t.size(); ++i)
        for (std::size_t j = i + 1; j < t.size(); ++j) {
            Integer g = gcd(t[i], t[j]);
            Integer l = t[i] / g * t[j];
            t[i] = g;
            t[j] = l;
        }
    std::vector<Integer> out;
    for (auto& v : t)
        if (v > 1) out.push_back(v);
    return out;
}
}  // namespace

std::string CanonicalForm::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& d : torsion) {
        if (!first) os << " + ";
        os << "Z/" << d.str();
        first = false;
    }
    if (free_rank > 0) {
        if (!first) os << " + ";
        os << "Z";
        if (free_rank > 1) os << "^" << free_rank;
    }
    return os.str();
}

FgAbGroup::FgAbGroup(std::vector<Integer> orders) : orders_(std::move(orders)) {
    std::vector<Integer> torsion;
    for (const auto& o : orders_) {
        if (o < 0) throw ValidationError("generator order must be non-negative");
        if (o == 0)
            ++canonical_.free_rank;
        else if (o > 1)
            torsion.push_back(o);
    }
    canonical_.torsion = chain_from_orders(std::move(torsion));
}

FgAbGroup FgAbGroup::free(int rank) { return FgAbGroup(std::vector<Integer>(rank, Integer(0))); }

FgAbGroup FgAbGroup::cyclic(const Integer& order) {
    if (order == 1) return FgAbGroup();
    return FgAbGroup({order});
}

IntMatrix FgAbGroup::relations() const { return relation_columns(*this); }

Integer FgAbGroup::cardinality() const {
    Integer c = 1;
    for (const auto& d : canonical_.torsion) c *= d;
    return c;
}

IntVector FgAbGroup::reduce(const IntVector& v) const {
    IntVector out = v;
    for (Index i = 0; i < out.size(); ++i)
        if (orders_[i] > 0) out(i) = mod_floor(out(i), orders_[i]);
    return out;
}

IntMatrix FgAbGroup::reduce(const IntMatrix& m) const {
    IntMatrix out = m;
    for (Index i = 0; i < out.rows(); ++i) {
        if (orders_[i] == 0) continue;
        for (Index j = 0; j < out.cols(); ++j) out(i, j) = mod_floor(out(i, j), orders_[i]);
    }
    return out;
}

bool FgAbGroup::is_zero_element(const IntVector& v) const {
    for (Index i = 0; i < v.size(); ++i) {
        if (v(i) == 0) continue;
        if (orders_[i] == 0 || v(i) % orders_[i] != 0) return false;
    }
    return true;
}

bool FgAbGroup::equal_maps(const IntMatrix& a, const IntMatrix& b) const {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j) {
            Integer diff = a(i, j) - b(i, j);
            if (diff == 0) continue;
            if (orders_[i] == 0 || diff % orders_[i] != 0) return false;
        }
    return true;
}

FgAbGroup FgAbGroup::direct_sum(const FgAbGroup& other) const {
    std::vector<Integer> o = orders_;
    o.insert(o.end(), other.orders_.begin(), other.orders_.end());
    return FgAbGroup(std::move(o));
}

CanonicalForm canonical_from_relations(int num_generators, const IntMatrix& relations) {
    CanonicalForm c;
    std::vector<Integer> d;
    if (relations.cols() > 0 && num_generators > 0) d = invariant_factors(relations);
    for (auto& v : d)
        if (v > 1) c.torsion.push_back(v);
    c.free_rank = num_generators - static_cast<int>(d.size());
    return c;
}

IntMatrix relation_columns(const FgAbGroup& g) {
    int count = 0;
    for (const auto& o : g.orders())
        if (o > 0) ++count;
    IntMatrix r = zero_matrix(g.num_generators(), count);
    int c = 0;
    for (int i = 0; i < g.num_generators(); ++i)
        if (g.order(i) > 0) r(i, c++) = g.order(i);
    return r;
}

bool GroupHom::is_well_defined() const {
    if (matrix.rows() != target.num_generators() || matrix.cols() != source.num_generators())
        return false;
    for (int j = 0; j < source.num_generators(); ++j) {
        if (source.order(j) == 0) continue;
        IntVector col = matrix.col(j) * source.order(j);
        if (!target.is_zero_element(col)) return false;
    }
    return true;
}

GroupHom GroupHom::compose_after(const GroupHom& first) const {
    if (!(first.target == source)) throw ValidationError("composition of non-composable homomorphisms");
    return GroupHom{first.source, target, target.reduce(multiply(matrix, first.matrix))};
}

IntVector Subquotient::project(const IntVector& v) const {
    auto c = top.coordinates(v);
    if (!c) throw ValidationError("element is outside the subquotient's ambient lattice");
    return group.reduce(IntVector(multiply(to_group, *c)));
}

IntMatrix Subquotient::project_columns(const IntMatrix& m) const {
    IntMatrix out(group.num_generators(), m.cols());
    for (Index j = 0; j < m.cols(); ++j) out.col(j) = project(IntVector(m.col(j)));
    return out;
}

Subquotient subquotient(const Lattice& top, const IntMatrix& bottom_generators) {
    const int r = top.rank();
    IntMatrix coords = bottom_generators.cols() ? top.coordinates_of_columns(bottom_generators)
                                                : IntMatrix(r, 0);
    SmithOptions opts;
    opts.track_v = false;
    opts.track_u_inverse = true;
    SmithForm s = smith_normal_form(coords, opts);
    std::vector<Integer> orders;
    std::vector<Index> keep;
    for (Index i = 0; i < r; ++i) {
        Integer d = i < static_cast<Index>(s.d.size()) ? s.d[i] : Integer(0);
        if (d == 1) continue;
        keep.push_back(i);
        orders.push_back(d);
    }
    Subquotient out;
    out.group = FgAbGroup(std::move(orders));
    out.top = top;
    out.to_group = IntMatrix(keep.size(), r);
    IntMatrix uinv_cols(r, keep.size());
    for (std::size_t k = 0; k < keep.size(); ++k) {
        out.to_group.row(k) = s.U.row(keep[k]);
        uinv_cols.col(k) = s.U_inverse.col(keep[k]);
    }
    out.lift = multiply(top.basis(), uinv_cols);
    return out;
}

Presentation present(int n, const IntMatrix& relations) {
    Subquotient sq = subquotient(Lattice::full(n), relations);
    return Presentation{sq.group, sq.to_group, sq.lift};
}

Subquotient kernel_of(const FgAbGroup& source, const FgAbGroup& target, const IntMatrix& f) {
    const int ns = source.num_generators();
    IntMatrix aug = hstack(f, relation_columns(target));
    if (aug.rows() == 0) aug = IntMatrix(0, aug.cols());
    Lattice k = Lattice::kernel(aug);
    Lattice top = Lattice::span(ns, k.basis().topRows(ns));
    return subquotient(top, relation_columns(source));
}

Subquotient cokernel_of(const FgAbGroup&, const FgAbGroup& target, const IntMatrix& f) {
    return subquotient(Lattice::full(target.num_generators()), hstack(f, relation_columns(target)));
}

Subquotient image_of(const FgAbGroup&, const FgAbGroup& target, const IntMatrix& f) {
    IntMatrix rel = relation_columns(target);
    return subquotient(Lattice::span(target.num_generators(), hstack(f, rel)), rel);
}

HomGroup hom_ab(const FgAbGroup& a, const FgAbGroup& b) {
    HomGroup out;
    std::vector<Integer> orders;
    for (int i = 0; i < b.num_generators(); ++i)
        for (int j = 0; j < a.num_generators(); ++j) {
            const Integer& aj = a.order(j);
            const Integer& bi = b.order(i);
            Integer order, entry;
            if (bi == 0) {
                if (aj != 0) continue;
                order = 0;
                entry = 1;
            } else if (aj == 0) {
                order = bi;
                entry = 1;
            } else {
                order = gcd(aj, bi);
                entry = bi / order;
            }
            if (order == 1) continue;
            IntMatrix m = zero_matrix(b.num_generators(), a.num_generators());
            m(i, j) = entry;
            orders.push_back(order);
            out.basis.push_back(GroupHom{a, b, m});
        }
    out.group = FgAbGroup(std::move(orders));
    return out;
}

FgAbGroup ext1_ab(const FgAbGroup& a, const FgAbGroup& b) {
    IntMatrix r = relation_columns(a);
    const int n = a.num_generators();
    const Index m = r.cols();
    std::vector<Integer> src_orders, dst_orders;
    for (int s = 0; s < n; ++s)
        for (const auto& o : b.orders()) src_orders.push_back(o);
    for (Index c = 0; c < m; ++c)
        for (const auto& o : b.orders()) dst_orders.push_back(o);
    FgAbGroup src(std::move(src_orders)), dst(std::move(dst_orders));
    IntMatrix map = kronecker(IntMatrix(r.transpose()), identity_matrix(b.num_generators()));
    return cokernel_of(src, dst, map).group;
}

TensorProduct tensor_ab(const FgAbGroup& a, const FgAbGroup& b) {
    std::vector<Integer> orders;
    for (const auto& x : a.orders())
        for (const auto& y : b.orders()) orders.push_back(gcd(x, y));
    TensorProduct t;
    t.group = FgAbGroup(std::move(orders));
    t.right_generators = b.num_generators();
    return t;
}

void AbComplex::validate() const {
    if (differential.size() != terms.size())
        throw ValidationError("complex: one differential slot per term is required");
    for (std::size_t i = 1; i < terms.size(); ++i) {
        GroupHom d{terms[i], terms[i - 1], differential[i]};
        if (!d.is_well_defined())
            throw ValidationError("complex: differential out of degree " + std::to_string(low + static_cast<int>(i)) +
                                  " is not well defined");
        if (i >= 2) {
            IntMatrix dd = multiply(differential[i - 1], differential[i]);
            if (!terms[i - 2].equal_maps(dd, zero_matrix(dd.rows(), dd.cols())))
                throw ValidationError("complex: d o d != 0 at degree " + std::to_string(low + static_cast<int>(i)));
        }
    }
}

namespace {

std::vector<Subquotient> homology_groups(const AbComplex& c) {
    std::vector<Subquotient> out;
    for (std::size_t i = 0; i < c.terms.size(); ++i) {
        const FgAbGroup& t = c.terms[i];
        Lattice cycles = Lattice::full(t.num_generators());
        if (i >= 1) cycles = kernel_of(t, c.terms[i - 1], c.differential[i]).top;
        IntMatrix bounds = relation_columns(t);
        if (i + 1 < c.terms.size()) bounds = hstack(c.differential[i + 1], bounds);
        out.push_back(subquotient(cycles, bounds));
    }
    return out;
}

}  // namespace

AbHomology homology_ab(const AbComplex& c, const std::vector<ChainMap>& maps) {
    c.validate();
    AbHomology h;
    h.groups = homology_groups(c);
    for (const auto& m : maps) {
        const AbComplex& t = *m.target;
        t.validate();
        if (m.f.size() != c.terms.size()) throw ValidationError("chain map: wrong number of components");
        auto target_index = [&](std::size_t i) -> long {
            long deg = c.low + static_cast<long>(i);
            long j = deg - t.low;
            return (j >= 0 && j < static_cast<long>(t.terms.size())) ? j : -1;
        };
        // commutation with differentials, modulo target relations
        for (std::size_t i = 1; i < c.terms.size(); ++i) {
            long j = target_index(i), jm = target_index(i - 1);
            if (jm < 0) continue;
            IntMatrix lhs = multiply(m.f[i - 1], c.differential[i]);
            IntMatrix rhs = j >= 1 ? multiply(t.differential[j], m.f[i]) : zero_matrix(lhs.rows(), lhs.cols());
            if (!t.terms[jm].equal_maps(lhs, rhs))
                throw ValidationError("not a chain map at degree " + std::to_string(c.low + static_cast<int>(i)));
        }
        std::vector<Subquotient> th = homology_groups(t);
        std::vector<IntMatrix> induced;
        for (std::size_t i = 0; i < c.terms.size(); ++i) {
            long j = target_index(i);
            if (j < 0) {
                induced.push_back(IntMatrix(0, h.groups[i].group.num_generators()));
                continue;
            }
            IntMatrix images = t.terms[j].reduce(multiply(m.f[i], h.groups[i].lift));
            induced.push_back(th[j].project_columns(images));
        }
        h.induced.push_back(std::move(induced));
    }
    return h;
}

}  // namespace mackey

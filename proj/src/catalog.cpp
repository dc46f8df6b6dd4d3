#include "mackey/catalog.hpp"

#include "mackey/errors.hpp"
#include "mackey/gset.hpp"

#include <cctype>

namespace mackey {

namespace {

void check_t(const TowerShape& shape, const std::vector<int>& t) {
    shape.validate();
    if (static_cast<int>(t.size()) != shape.n)
        throw ValidationError("t-vector has length " + std::to_string(t.size()) + ", expected " + std::to_string(shape.n));
    for (int v : t)
        if (v != 0 && v != 1) throw ValidationError("t-vector entries must be 0 or 1");
}

IntMatrix one_by_one(const Integer& v) {
    IntMatrix m(1, 1);
    m(0, 0) = v;
    return m;
}

IntMatrix matrix_power(const IntMatrix& g, std::int64_t e) {
    IntMatrix r = identity_matrix(g.rows());
    for (std::int64_t i = 0; i < e; ++i) r = multiply(g, r);
    return r;
}

}  // namespace

MackeyFunctor form_z(const TowerShape& shape, const std::vector<int>& t) {
    check_t(shape, t);
    MackeyFunctor m;
    m.shape = shape;
    const Integer p = shape.p;
    for (int k = 0; k <= shape.n; ++k) {
        m.level.push_back(FgAbGroup::free(1));
        m.weyl.push_back(one_by_one(1));
    }
    for (int k = 0; k < shape.n; ++k) {
        m.res.push_back(one_by_one(t[k] ? p : Integer(1)));
        m.tr.push_back(one_by_one(t[k] ? Integer(1) : p));
    }
    return m;
}

MackeyFunctor constant_z(const TowerShape& shape) { return form_z(shape, std::vector<int>(shape.n, 0)); }

MackeyFunctor torsion_b(const TowerShape& shape, const std::vector<int>& t) {
    check_t(shape, t);
    MackeyFunctor m;
    m.shape = shape;
    std::vector<Integer> order(shape.n + 1);
    int s = 0;
    for (int k = 0; k <= shape.n; ++k) {
        if (k > 0) s += t[k - 1];
        order[k] = ipow(Integer(shape.p), s);
        m.level.push_back(FgAbGroup::cyclic(order[k]));
        m.weyl.push_back(order[k] > 1 ? one_by_one(1) : IntMatrix(0, 0));
    }
    for (int k = 0; k < shape.n; ++k) {
        const bool lo = order[k] > 1, hi = order[k + 1] > 1;
        m.res.push_back(lo && hi ? one_by_one(mod_floor(Integer(1), order[k])) : IntMatrix(lo ? 1 : 0, hi ? 1 : 0));
        m.tr.push_back(lo && hi ? one_by_one(mod_floor(Integer(shape.p), order[k + 1])) : IntMatrix(hi ? 1 : 0, lo ? 1 : 0));
    }
    return m;
}

MackeyFunctor fixed_point_rep(const TowerShape& shape, const IntMatrix& gamma) {
    shape.validate();
    const int d = static_cast<int>(gamma.rows());
    if (gamma.cols() != d) throw ValidationError("representation matrix must be square");
    if (!matrices_equal(matrix_power(gamma, shape.order()), identity_matrix(d)))
        throw ValidationError("representation matrix has order not dividing |G|");
    const int n = shape.n;
    std::vector<Lattice> fixed;
    for (int k = 0; k <= n; ++k)
        fixed.push_back(Lattice::kernel(matrix_power(gamma, shape.orbit_size(k)) - identity_matrix(d)));
    MackeyFunctor m;
    m.shape = shape;
    for (int k = 0; k <= n; ++k) {
        m.level.push_back(FgAbGroup::free(fixed[k].rank()));
        m.weyl.push_back(fixed[k].coordinates_of_columns(multiply(gamma, fixed[k].basis())));
    }
    for (int k = 0; k < n; ++k) {
        m.res.push_back(fixed[k].coordinates_of_columns(fixed[k + 1].basis()));
        IntMatrix w = matrix_power(gamma, shape.orbit_size(k + 1));
        IntMatrix sum = zero_matrix(d, d), pw = identity_matrix(d);
        for (int i = 0; i < shape.p; ++i) {
            sum += pw;
            pw = multiply(w, pw);
        }
        m.tr.push_back(fixed[k + 1].coordinates_of_columns(multiply(sum, fixed[k].basis())));
    }
    return m;
}

MackeyFunctor orbit_rep(const TowerShape& shape, const IntMatrix& gamma) {
    shape.validate();
    const int d = static_cast<int>(gamma.rows());
    if (gamma.cols() != d) throw ValidationError("representation matrix must be square");
    if (!matrices_equal(matrix_power(gamma, shape.order()), identity_matrix(d)))
        throw ValidationError("representation matrix has order not dividing |G|");
    const int n = shape.n;
    std::vector<Subquotient> q;
    for (int k = 0; k <= n; ++k)
        q.push_back(subquotient(Lattice::full(d), matrix_power(gamma, shape.orbit_size(k)) - identity_matrix(d)));
    MackeyFunctor m;
    m.shape = shape;
    for (int k = 0; k <= n; ++k) {
        m.level.push_back(q[k].group);
        m.weyl.push_back(q[k].project_columns(multiply(gamma, q[k].lift)));
    }
    for (int k = 0; k < n; ++k) {
        m.tr.push_back(q[k + 1].project_columns(q[k].lift));
        IntMatrix w = matrix_power(gamma, shape.orbit_size(k + 1));
        IntMatrix sum = zero_matrix(d, d), pw = identity_matrix(d);
        for (int i = 0; i < shape.p; ++i) {
            sum += pw;
            pw = multiply(w, pw);
        }
        m.res.push_back(q[k].project_columns(multiply(sum, q[k + 1].lift)));
    }
    return m;
}

MackeyFunctor signed_z(const TowerShape& shape) {
    if (shape.p != 2) throw ValidationError("the sign representation needs p = 2");
    return fixed_point_rep(shape, one_by_one(-1));
}

MackeyFunctor signed_z_dot(const TowerShape& shape) {
    if (shape.p != 2) throw ValidationError("the sign representation needs p = 2");
    return orbit_rep(shape, one_by_one(-1));
}

MackeyFunctor burnside(const TowerShape& shape) {
    shape.validate();
    const int n = shape.n;
    MackeyFunctor m;
    m.shape = shape;
    // level l has basis [C_{p^l}/C_{p^j}], 0 <= j <= l
    for (int l = 0; l <= n; ++l) {
        m.level.push_back(FgAbGroup::free(l + 1));
        m.weyl.push_back(identity_matrix(l + 1));
    }
    for (int l = 0; l < n; ++l) {
        IntMatrix res = zero_matrix(l + 1, l + 2), tr = zero_matrix(l + 2, l + 1);
        for (int j = 0; j <= l; ++j) {
            res(j, j) = shape.p;
            tr(j, j) = 1;
        }
        res(l, l + 1) = 1;
        m.res.push_back(res);
        m.tr.push_back(tr);
    }
    return m;
}

bool is_form_of_z(const MackeyFunctor& m, std::vector<int>* t) {
    std::vector<int> out;
    for (int k = 0; k <= m.shape.n; ++k) {
        if (m.level[k].num_generators() != 1 || m.level[k].order(0) != 0) return false;
        if (m.weyl[k](0, 0) != 1) return false;
    }
    for (int k = 0; k < m.shape.n; ++k) {
        const Integer r = abs(m.res[k](0, 0)), tr = abs(m.tr[k](0, 0));
        if (r == 1 && tr == m.shape.p)
            out.push_back(0);
        else if (r == m.shape.p && tr == 1)
            out.push_back(1);
        else
            return false;
    }
    if (t) *t = out;
    return true;
}

std::vector<std::vector<int>> all_t_vectors(int n) {
    std::vector<std::vector<int>> out;
    for (int mask = 0; mask < (1 << n); ++mask) {
        std::vector<int> t(n);
        for (int i = 0; i < n; ++i) t[i] = (mask >> i) & 1;
        out.push_back(t);
    }
    return out;
}

std::string t_vector_name(const std::vector<int>& t) {
    std::string s;
    for (int v : t) s += static_cast<char>('0' + v);
    return s;
}

MackeyFunctor catalog_by_name(const std::string& raw, const TowerShape& shape) {
    shape.validate();
    std::string name;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) name += c;
    auto ends_with = [&](const std::string& suf) {
        return name.size() > suf.size() && name.compare(name.size() - suf.size(), suf.size(), suf) == 0;
    };
    if (ends_with("^E")) return dual_levelwise(catalog_by_name(name.substr(0, name.size() - 2), shape), DualMode::E);
    if (ends_with("^*")) return dual_levelwise(catalog_by_name(name.substr(0, name.size() - 2), shape), DualMode::star);
    if (name == "0") return zero_functor(shape);
    if (name == "Z") return constant_z(shape);
    if (name == "Z*") return form_z(shape, std::vector<int>(shape.n, 1));
    if (name == "Zm") return signed_z(shape);
    if (name == "Zmdot") return signed_z_dot(shape);
    if (name == "A") return burnside(shape);
    auto digits = [&](std::size_t from) {
        std::vector<int> t;
        for (std::size_t i = from; i < name.size(); ++i) {
            if (name[i] != '0' && name[i] != '1')
                throw ValidationError("operand '" + raw + "': unexpected character '" + name[i] + "'");
            t.push_back(name[i] - '0');
        }
        return t;
    };
    if (name.size() > 1 && name[0] == 'Z') return form_z(shape, digits(1));
    if (name.size() > 1 && name[0] == 'B') return torsion_b(shape, digits(1));
    if (name.size() > 1 && name[0] == 'P') {
        int k = 0;
        try {
            k = std::stoi(name.substr(1));
        } catch (...) {
            throw ValidationError("operand '" + raw + "': expected an orbit index after P");
        }
        if (k < 0 || k > shape.n) throw ValidationError("operand '" + raw + "': orbit index out of range");
        return fixed_point_functor(shape, GSet{{k}});
    }
    throw ValidationError("unknown operand '" + raw + "'");
}

}  // namespace mackey

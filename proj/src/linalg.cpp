#include "mackey/linalg.hpp"

#include "mackey/errors.hpp"

#include <utility>

namespace mackey {

namespace {

using Index = Eigen::Index;

Integer abs_value(const Integer& v) { return v < 0 ? Integer(-v) : v; }

struct SmithState {
    IntMatrix D, U, V, Uinv;
    SmithOptions opts;

    void row_add(Index i, Index t, const Integer& q) {  // row_i += q * row_t
        for (Index c = 0; c < D.cols(); ++c)
            if (D(t, c) != 0) D(i, c) += q * D(t, c);
        if (opts.track_u)
            for (Index c = 0; c < U.cols(); ++c)
                if (U(t, c) != 0) U(i, c) += q * U(t, c);
        if (opts.track_u_inverse)
            for (Index r = 0; r < Uinv.rows(); ++r)
                if (Uinv(r, i) != 0) Uinv(r, t) -= q * Uinv(r, i);
    }
    void row_swap(Index i, Index t) {
        if (i == t) return;
        D.row(i).swap(D.row(t));
        if (opts.track_u) U.row(i).swap(U.row(t));
        if (opts.track_u_inverse) Uinv.col(i).swap(Uinv.col(t));
    }
    void row_negate(Index t) {
        for (Index c = 0; c < D.cols(); ++c) D(t, c) = -D(t, c);
        if (opts.track_u)
            for (Index c = 0; c < U.cols(); ++c) U(t, c) = -U(t, c);
        if (opts.track_u_inverse)
            for (Index r = 0; r < Uinv.rows(); ++r) Uinv(r, t) = -Uinv(r, t);
    }
    void col_add(Index j, Index t, const Integer& q) {  // col_j += q * col_t
        for (Index r = 0; r < D.rows(); ++r)
            if (D(r, t) != 0) D(r, j) += q * D(r, t);
        if (opts.track_v)
            for (Index r = 0; r < V.rows(); ++r)
                if (V(r, t) != 0) V(r, j) += q * V(r, t);
    }
    void col_swap(Index j, Index t) {
        if (j == t) return;
        D.col(j).swap(D.col(t));
        if (opts.track_v) V.col(j).swap(V.col(t));
    }
};

}  // namespace

SmithForm smith_normal_form(const IntMatrix& a, SmithOptions opts) {
    const Index m = a.rows(), n = a.cols();
    SmithState s;
    s.opts = opts;
    s.D = a;
    if (opts.track_u) s.U = identity_matrix(m);
    if (opts.track_v) s.V = identity_matrix(n);
    if (opts.track_u_inverse) s.Uinv = identity_matrix(m);
    IntMatrix& D = s.D;

    const Index steps = std::min(m, n);
    Index t = 0;
    for (; t < steps; ++t) {
        // minimal-absolute-value pivot in the trailing block
        Index pi = -1, pj = -1;
        Integer best;
        for (Index j = t; j < n; ++j)
            for (Index i = t; i < m; ++i)
                if (D(i, j) != 0 && (pi < 0 || abs_value(D(i, j)) < best)) {
                    best = abs_value(D(i, j));
                    pi = i;
                    pj = j;
                }
        if (pi < 0) break;
        s.row_swap(t, pi);
        s.col_swap(t, pj);

        for (;;) {
            bool clean = true;
            for (Index i = t + 1; i < m; ++i) {
                if (D(i, t) == 0) continue;
                Integer q = D(i, t) / D(t, t);
                if (q != 0) s.row_add(i, t, -q);
                if (D(i, t) != 0) clean = false;
            }
            for (Index j = t + 1; j < n; ++j) {
                if (D(t, j) == 0) continue;
                Integer q = D(t, j) / D(t, t);
                if (q != 0) s.col_add(j, t, -q);
                if (D(t, j) != 0) clean = false;
            }
            if (!clean) {
                Index bi = -1, bj = -1;
                Integer b = abs_value(D(t, t));
                for (Index i = t + 1; i < m; ++i)
                    if (D(i, t) != 0 && abs_value(D(i, t)) < b) {
                        b = abs_value(D(i, t));
                        bi = i;
                        bj = -1;
                    }
                for (Index j = t + 1; j < n; ++j)
                    if (D(t, j) != 0 && abs_value(D(t, j)) < b) {
                        b = abs_value(D(t, j));
                        bj = j;
                        bi = -1;
                    }
                if (bi >= 0) s.row_swap(t, bi);
                if (bj >= 0) s.col_swap(t, bj);
                continue;
            }
            Index bad = -1;
            for (Index i = t + 1; i < m && bad < 0; ++i)
                for (Index j = t + 1; j < n; ++j)
                    if (D(i, j) % D(t, t) != 0) {
                        bad = i;
                        break;
                    }
            if (bad < 0) break;
            s.row_add(t, bad, Integer(1));
        }
        if (D(t, t) < 0) s.row_negate(t);
    }

    SmithForm out;
    for (Index i = 0; i < t; ++i) out.d.push_back(D(i, i));
    out.D = std::move(s.D);
    out.U = std::move(s.U);
    out.V = std::move(s.V);
    out.U_inverse = std::move(s.Uinv);
    return out;
}

std::vector<Integer> invariant_factors(const IntMatrix& a) {
    SmithOptions opts;
    opts.track_u = false;
    opts.track_v = false;
    return smith_normal_form(a, opts).d;
}

Integer determinant(const IntMatrix& a) {
    if (a.rows() != a.cols()) throw ValidationError("determinant of a non-square matrix");
    const Index n = a.rows();
    if (n == 0) return 1;
    IntMatrix m = a;
    Integer sign = 1, prev = 1;
    for (Index k = 0; k < n - 1; ++k) {
        if (m(k, k) == 0) {
            Index swap = -1;
            for (Index i = k + 1; i < n; ++i)
                if (m(i, k) != 0) {
                    swap = i;
                    break;
                }
            if (swap < 0) return 0;
            m.row(k).swap(m.row(swap));
            sign = -sign;
        }
        for (Index i = k + 1; i < n; ++i)
            for (Index j = k + 1; j < n; ++j)
                m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

ColumnEchelon column_echelon(const IntMatrix& a, bool track_v) {
    const Index m = a.rows(), n = a.cols();
    ColumnEchelon out;
    out.H = a;
    if (track_v) out.V = identity_matrix(n);
    IntMatrix& H = out.H;
    auto col_add = [&](Index j, Index c, const Integer& q, Index from_row) {
        for (Index r = from_row; r < m; ++r)
            if (H(r, c) != 0) H(r, j) += q * H(r, c);
        if (track_v)
            for (Index r = 0; r < n; ++r)
                if (out.V(r, c) != 0) out.V(r, j) += q * out.V(r, c);
    };
    auto col_swap = [&](Index j, Index c) {
        if (j == c) return;
        H.col(j).swap(H.col(c));
        if (track_v) out.V.col(j).swap(out.V.col(c));
    };

    Index c = 0;
    for (Index r = 0; r < m && c < n; ++r) {
        for (;;) {
            Index best = -1;
            Integer bv;
            for (Index j = c; j < n; ++j)
                if (H(r, j) != 0 && (best < 0 || abs_value(H(r, j)) < bv)) {
                    bv = abs_value(H(r, j));
                    best = j;
                }
            if (best < 0) break;
            col_swap(c, best);
            bool remaining = false;
            for (Index j = c + 1; j < n; ++j) {
                if (H(r, j) == 0) continue;
                Integer q = H(r, j) / H(r, c);
                col_add(j, c, -q, r);
                if (H(r, j) != 0) remaining = true;
            }
            if (remaining) continue;
            if (H(r, c) < 0) {
                for (Index i = r; i < m; ++i) H(i, c) = -H(i, c);
                if (track_v)
                    for (Index i = 0; i < n; ++i) out.V(i, c) = -out.V(i, c);
            }
            out.pivot_rows.push_back(static_cast<int>(r));
            ++c;
            break;
        }
    }
    out.rank = static_cast<int>(c);
    return out;
}

Lattice Lattice::span(int ambient, const IntMatrix& generators) {
    Lattice l;
    l.ambient_ = ambient;
    if (generators.cols() == 0 || ambient == 0) {
        l.basis_ = IntMatrix(ambient, 0);
        return l;
    }
    if (generators.rows() != ambient) throw ValidationError("lattice generators have wrong length");
    ColumnEchelon e = column_echelon(generators, false);
    IntMatrix b = e.H.leftCols(e.rank);
    // Hermite reduction of the entries on later pivot rows
    for (int k = 0; k < e.rank; ++k) {
        const int pr = e.pivot_rows[k];
        for (int col = 0; col < k; ++col) {
            if (b(pr, col) == 0) continue;
            Integer q = b(pr, col) / b(pr, k);
            if (mod_floor(b(pr, col), b(pr, k)) != b(pr, col) - q * b(pr, k)) q -= 1;
            if (q == 0) continue;
            for (Index r = pr; r < b.rows(); ++r)
                if (b(r, k) != 0) b(r, col) -= q * b(r, k);
        }
    }
    l.basis_ = std::move(b);
    l.pivots_ = std::move(e.pivot_rows);
    return l;
}

Lattice Lattice::full(int ambient) { return span(ambient, identity_matrix(ambient)); }

Lattice Lattice::kernel(const IntMatrix& a) {
    const int n = static_cast<int>(a.cols());
    if (a.rows() == 0) return full(n);
    ColumnEchelon e = column_echelon(a, true);
    return span(n, e.V.rightCols(n - e.rank));
}

std::optional<IntVector> Lattice::coordinates(const IntVector& v) const {
    if (v.size() != ambient_) throw ValidationError("vector length does not match lattice ambient");
    const int r = rank();
    IntVector y = zero_vector(r);
    IntVector rest = v;
    for (int k = 0; k < r; ++k) {
        const int pr = pivots_[k];
        if (rest(pr) == 0) continue;
        if (rest(pr) % basis_(pr, k) != 0) return std::nullopt;
        y(k) = rest(pr) / basis_(pr, k);
        for (Index i = pr; i < ambient_; ++i)
            if (basis_(i, k) != 0) rest(i) -= y(k) * basis_(i, k);
    }
    for (Index i = 0; i < ambient_; ++i)
        if (rest(i) != 0) return std::nullopt;
    return y;
}

bool Lattice::contains(const Lattice& other) const {
    for (Index j = 0; j < other.basis_.cols(); ++j)
        if (!contains(IntVector(other.basis_.col(j)))) return false;
    return true;
}

bool Lattice::operator==(const Lattice& other) const {
    return ambient_ == other.ambient_ && rank() == other.rank() && pivots_ == other.pivots_ &&
           matrices_equal(basis_, other.basis_);
}

IntMatrix Lattice::coordinates_of_columns(const IntMatrix& m) const {
    IntMatrix out(rank(), m.cols());
    for (Index j = 0; j < m.cols(); ++j) {
        auto c = coordinates(IntVector(m.col(j)));
        if (!c) throw ValidationError("vector is not in the lattice");
        out.col(j) = *c;
    }
    return out;
}

std::optional<IntegerSolution> solve_integer(const IntMatrix& a, const IntVector& b) {
    if (a.rows() != b.size()) throw ValidationError("solve_integer: dimension mismatch");
    const Index n = a.cols();
    ColumnEchelon e = column_echelon(a, true);
    IntVector y = zero_vector(n);
    IntVector rest = b;
    for (int k = 0; k < e.rank; ++k) {
        const int pr = e.pivot_rows[k];
        if (rest(pr) == 0) continue;
        if (rest(pr) % e.H(pr, k) != 0) return std::nullopt;
        y(k) = rest(pr) / e.H(pr, k);
        for (Index i = pr; i < a.rows(); ++i)
            if (e.H(i, k) != 0) rest(i) -= y(k) * e.H(i, k);
    }
    for (Index i = 0; i < rest.size(); ++i)
        if (rest(i) != 0) return std::nullopt;
    IntegerSolution sol;
    sol.particular = multiply(e.V, y);
    sol.kernel = e.V.rightCols(n - e.rank);
    return sol;
}

}  // namespace mackey

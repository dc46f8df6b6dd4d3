#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

#include <cstdint>
#include <string>
#include <vector>

namespace mackey {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using IntMatrix = Eigen::Matrix<Integer, Eigen::Dynamic, Eigen::Dynamic>;
using IntVector = Eigen::Matrix<Integer, Eigen::Dynamic, 1>;

inline IntMatrix zero_matrix(Eigen::Index rows, Eigen::Index cols) {
    IntMatrix m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = 0;
    return m;
}

inline IntVector zero_vector(Eigen::Index n) {
    IntVector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = 0;
    return v;
}

inline IntMatrix identity_matrix(Eigen::Index n) {
    IntMatrix m = zero_matrix(n, n);
    for (Eigen::Index i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

inline IntMatrix scalar_matrix(Eigen::Index n, const Integer& c) {
    IntMatrix m = zero_matrix(n, n);
    for (Eigen::Index i = 0; i < n; ++i) m(i, i) = c;
    return m;
}

// Plain triple loop; skips zero factors, which dominate the matrices used here.
template <class A, class B>
IntMatrix multiply(const A& a, const B& b) {
    IntMatrix out = zero_matrix(a.rows(), b.cols());
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
        for (Eigen::Index j = 0; j < b.cols(); ++j) {
            const Integer& bkj = b(k, j);
            if (bkj == 0) continue;
            for (Eigen::Index i = 0; i < a.rows(); ++i) {
                const Integer& aik = a(i, k);
                if (aik != 0) out(i, j) += aik * bkj;
            }
        }
    }
    return out;
}

template <class A>
bool is_zero_matrix(const A& a) {
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            if (a(i, j) != 0) return false;
    return true;
}

inline bool matrices_equal(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            if (a(i, j) != b(i, j)) return false;
    return true;
}

// Non-negative remainder for m > 0; m == 0 returns a unchanged.
inline Integer mod_floor(const Integer& a, const Integer& m) {
    if (m == 0) return a;
    Integer r = a % m;
    if (r < 0) r += m;
    return r;
}

inline Integer gcd(const Integer& a, const Integer& b) {
    return boost::multiprecision::gcd(a, b);
}

inline Integer ipow(const Integer& base, unsigned e) {
    Integer r = 1;
    for (unsigned i = 0; i < e; ++i) r *= base;
    return r;
}

inline std::int64_t ipow64(std::int64_t base, int e) {
    std::int64_t r = 1;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

inline std::string to_string(const Integer& v) { return v.str(); }

IntMatrix hstack(const IntMatrix& a, const IntMatrix& b);
IntMatrix vstack(const IntMatrix& a, const IntMatrix& b);
IntMatrix kronecker(const IntMatrix& a, const IntMatrix& b);
IntMatrix from_rows(const std::vector<std::vector<long>>& rows);
std::string matrix_to_string(const IntMatrix& m);

}  // namespace mackey

#include "mackey/integer.hpp"

#include <sstream>

namespace mackey {

IntMatrix hstack(const IntMatrix& a, const IntMatrix& b) {
    const Eigen::Index rows = a.cols() > 0 ? a.rows() : b.rows();
    IntMatrix out(rows, a.cols() + b.cols());
    if (a.cols() > 0) out.leftCols(a.cols()) = a;
    if (b.cols() > 0) out.rightCols(b.cols()) = b;
    return out;
}

IntMatrix vstack(const IntMatrix& a, const IntMatrix& b) {
    const Eigen::Index cols = a.rows() > 0 ? a.cols() : b.cols();
    IntMatrix out(a.rows() + b.rows(), cols);
    if (a.rows() > 0) out.topRows(a.rows()) = a;
    if (b.rows() > 0) out.bottomRows(b.rows()) = b;
    return out;
}

IntMatrix kronecker(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix out = zero_matrix(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            if (a(i, j) == 0) continue;
            for (Eigen::Index k = 0; k < b.rows(); ++k)
                for (Eigen::Index l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
        }
    return out;
}

IntMatrix from_rows(const std::vector<std::vector<long>>& rows) {
    const Eigen::Index r = static_cast<Eigen::Index>(rows.size());
    const Eigen::Index c = r ? static_cast<Eigen::Index>(rows[0].size()) : 0;
    IntMatrix m(r, c);
    for (Eigen::Index i = 0; i < r; ++i)
        for (Eigen::Index j = 0; j < c; ++j) m(i, j) = rows[i][j];
    return m;
}

std::string matrix_to_string(const IntMatrix& m) {
    std::ostringstream os;
    os << '[';
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        if (i) os << "; ";
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) os << ' ';
            os << m(i, j).str();
        }
    }
    os << ']';
    return os.str();
}

}  // namespace mackey

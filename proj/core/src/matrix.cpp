#include "grassfold/matrix.hpp"

#include "grassfold/errors.hpp"

namespace grassfold {

ExactMatrix ExactMatrix::identity(int n) {
    ExactMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

std::vector<Rat> ExactMatrix::row(int i) const {
    return std::vector<Rat>(a_.begin() + size_t(i) * cols_, a_.begin() + size_t(i + 1) * cols_);
}

void ExactMatrix::set_row(int i, const std::vector<Rat>& r) {
    for (int j = 0; j < cols_; ++j) at(i, j) = r[j];
}

bool ExactMatrix::operator==(const ExactMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

std::strong_ordering ExactMatrix::operator<=>(const ExactMatrix& o) const {
    if (rows_ != o.rows_) return rows_ <=> o.rows_;
    if (cols_ != o.cols_) return cols_ <=> o.cols_;
    for (size_t k = 0; k < a_.size(); ++k) {
        int c = cmp(a_[k], o.a_[k]);
        if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

RrefResult rref(const ExactMatrix& m) {
    RrefResult res;
    res.reduced = m;
    ExactMatrix& a = res.reduced;
    int r = 0;
    for (int col = 0; col < a.cols() && r < a.rows(); ++col) {
        int piv = -1;
        for (int i = r; i < a.rows(); ++i) {
            if (a.at(i, col) != 0) {
                piv = i;
                break;
            }
        }
        if (piv < 0) continue;
        if (piv != r) {
            for (int j = 0; j < a.cols(); ++j) swap(a.at(piv, j), a.at(r, j));
        }
        Rat inv = a.at(r, col);
        for (int j = col; j < a.cols(); ++j) a.at(r, j) /= inv;
        for (int i = 0; i < a.rows(); ++i) {
            if (i == r || a.at(i, col) == 0) continue;
            Rat f = a.at(i, col);
            for (int j = col; j < a.cols(); ++j) a.at(i, j) -= f * a.at(r, j);
        }
        res.pivots.push_back(col);
        ++r;
    }
    res.rank = r;
    return res;
}

int rank_of(const ExactMatrix& m) { return rref(m).rank; }

Rat det(const ExactMatrix& m) {
    if (m.rows() != m.cols()) throw precondition_error("det: matrix is not square");
    int n = m.rows();
    ExactMatrix a = m;
    Rat d = 1;
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int i = col; i < n; ++i) {
            if (a.at(i, col) != 0) {
                piv = i;
                break;
            }
        }
        if (piv < 0) return Rat(0);
        if (piv != col) {
            for (int j = 0; j < n; ++j) swap(a.at(piv, j), a.at(col, j));
            d = -d;
        }
        d *= a.at(col, col);
        Rat inv = a.at(col, col);
        for (int i = col + 1; i < n; ++i) {
            if (a.at(i, col) == 0) continue;
            Rat f = a.at(i, col) / inv;
            for (int j = col; j < n; ++j) a.at(i, j) -= f * a.at(col, j);
        }
    }
    return d;
}

ExactMatrix vandermonde(const std::vector<Rat>& t, int height) {
    ExactMatrix m(height, int(t.size()));
    for (int j = 0; j < int(t.size()); ++j) {
        Rat pw = 1;
        for (int i = 0; i < height; ++i) {
            m.at(i, j) = pw;
            pw *= t[j];
        }
    }
    return m;
}

ExactMatrix stack_rows(const ExactMatrix& a, const ExactMatrix& b) {
    if (a.rows() == 0) return b;
    if (b.rows() == 0) return a;
    if (a.cols() != b.cols()) throw precondition_error("stack_rows: column mismatch");
    ExactMatrix m(a.rows() + b.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j);
    for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j) m.at(a.rows() + i, j) = b.at(i, j);
    return m;
}

ExactMatrix mat_mul(const ExactMatrix& a, const ExactMatrix& b) {
    if (a.cols() != b.rows()) throw precondition_error("mat_mul: shape mismatch");
    ExactMatrix m(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            if (a.at(i, k) == 0) continue;
            for (int j = 0; j < b.cols(); ++j) m.at(i, j) += a.at(i, k) * b.at(k, j);
        }
    return m;
}

ExactMatrix transpose(const ExactMatrix& m) {
    ExactMatrix t(m.cols(), m.rows());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) t.at(j, i) = m.at(i, j);
    return t;
}

}  // namespace grassfold

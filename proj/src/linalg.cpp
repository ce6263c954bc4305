#include "schucode/linalg.hpp"

namespace schucode {

int row_reduce(const Field& F, Mat& m) {
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int piv = -1;
        for (int i = r; i < m.rows; ++i)
            if (m.at(i, c) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(r, j));
        const int s = F.inv(m.at(r, c));
        for (int j = c; j < m.cols; ++j) m.at(r, j) = static_cast<uint16_t>(F.mul(m.at(r, j), s));
        for (int i = 0; i < m.rows; ++i) {
            if (i == r || m.at(i, c) == 0) continue;
            const int f = m.at(i, c);
            for (int j = c; j < m.cols; ++j)
                m.at(i, j) = static_cast<uint16_t>(F.sub(m.at(i, j), F.mul(f, m.at(r, j))));
        }
        ++r;
    }
    return r;
}

int rank(const Field& F, Mat m) { return row_reduce(F, m); }

int rank_of_columns(const Field& F, const Mat& m, int col_begin, int col_end) {
    Mat s(m.rows, col_end - col_begin);
    for (int i = 0; i < m.rows; ++i)
        for (int j = col_begin; j < col_end; ++j) s.at(i, j - col_begin) = m.at(i, j);
    return row_reduce(F, s);
}

int determinant(const Field& F, Mat m) {
    if (m.rows != m.cols) throw BadInput("determinant of non-square matrix");
    int det = 1;
    for (int c = 0; c < m.cols; ++c) {
        int piv = -1;
        for (int i = c; i < m.rows; ++i)
            if (m.at(i, c) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) return 0;
        if (piv != c) {
            for (int j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(c, j));
            det = F.neg(det);
        }
        det = F.mul(det, m.at(c, c));
        const int s = F.inv(m.at(c, c));
        for (int i = c + 1; i < m.rows; ++i) {
            if (m.at(i, c) == 0) continue;
            const int f = F.mul(m.at(i, c), s);
            for (int j = c; j < m.cols; ++j)
                m.at(i, j) = static_cast<uint16_t>(F.sub(m.at(i, j), F.mul(f, m.at(c, j))));
        }
    }
    return det;
}

std::vector<std::vector<uint16_t>> kernel_basis(const Field& F, Mat m) {
    const int n = m.cols;
    row_reduce(F, m);
    // pivot column of each reduced row
    std::vector<int> pivot_col;
    std::vector<bool> is_pivot(n, false);
    for (int i = 0; i < m.rows; ++i) {
        int c = 0;
        while (c < n && m.at(i, c) == 0) ++c;
        if (c == n) break;
        pivot_col.push_back(c);
        is_pivot[c] = true;
    }
    std::vector<std::vector<uint16_t>> basis;
    for (int f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        std::vector<uint16_t> v(n, 0);
        v[f] = 1;
        for (size_t r = 0; r < pivot_col.size(); ++r)
            v[pivot_col[r]] = static_cast<uint16_t>(F.neg(m.at(static_cast<int>(r), f)));
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace schucode

#include "schucode/schubert.hpp"

#include <algorithm>

namespace schucode {

namespace {

IndexTuple pivots_of(const Mat& m) {
    std::vector<int> piv;
    for (int i = 0; i < m.rows; ++i) {
        int c = m.cols - 1;
        while (c >= 0 && m.at(i, c) == 0) --c;
        if (c < 0) throw InternalError("zero row in echelon matrix");
        piv.push_back(c + 1); // 1-based columns
    }
    return IndexTuple::make(std::move(piv), m.cols);
}

} // namespace

EchelonMatrix canonicalize(const Field& F, const Mat& rows) {
    Mat m = rows;
    int next = m.rows - 1; // row position to fill, bottom-up
    // eliminate columns right-to-left; each pivot column is cleared in every
    // other row, which is exactly the right-pivot echelon shape
    for (int c = m.cols - 1; c >= 0 && next >= 0; --c) {
        int src = -1;
        for (int i = next; i >= 0; --i)
            if (m.at(i, c) != 0) {
                src = i;
                break;
            }
        if (src < 0) continue;
        if (src != next)
            for (int j = 0; j < m.cols; ++j) std::swap(m.at(src, j), m.at(next, j));
        const int s = F.inv(m.at(next, c));
        for (int j = 0; j < m.cols; ++j)
            m.at(next, j) = static_cast<uint16_t>(F.mul(m.at(next, j), s));
        for (int i = 0; i < m.rows; ++i) {
            if (i == next || m.at(i, c) == 0) continue;
            const int f = m.at(i, c);
            for (int j = 0; j < m.cols; ++j)
                m.at(i, j) = static_cast<uint16_t>(F.sub(m.at(i, j), F.mul(f, m.at(next, j))));
        }
        --next;
    }
    if (next >= 0) throw BadInput("rows are linearly dependent; expected full rank");
    EchelonMatrix out;
    out.pivots = pivots_of(m);
    out.mat = std::move(m);
    return out;
}

bool is_canonical(const EchelonMatrix& M) {
    const Mat& m = M.mat;
    if (M.pivots.ell() != m.rows || M.pivots.m != m.cols) return false;
    for (int i = 0; i < m.rows; ++i) {
        const int pc = M.pivots.entries[i] - 1;
        if (pc < 0 || pc >= m.cols) return false;
        if (i > 0 && M.pivots.entries[i] <= M.pivots.entries[i - 1]) return false;
        if (m.at(i, pc) != 1) return false;
        for (int j = pc + 1; j < m.cols; ++j)
            if (m.at(i, j) != 0) return false;
        for (int r = 0; r < m.rows; ++r)
            if (r != i && m.at(r, pc) != 0) return false;
    }
    return true;
}

void for_each_cell_matrix(const Field& F, const IndexTuple& beta,
                          const std::function<void(const EchelonMatrix&)>& fn) {
    const int ell = beta.ell(), m = beta.m;
    std::vector<bool> is_pivot_col(m + 1, false);
    for (int b : beta.entries) is_pivot_col[b] = true;

    // free positions, row-major
    std::vector<std::pair<int, int>> free_pos;
    for (int i = 0; i < ell; ++i)
        for (int c = 1; c < beta.entries[i]; ++c)
            if (!is_pivot_col[c]) free_pos.emplace_back(i, c - 1);

    EchelonMatrix M;
    M.mat = Mat(ell, m);
    M.pivots = beta;
    for (int i = 0; i < ell; ++i) M.mat.at(i, beta.entries[i] - 1) = 1;

    const int q = F.q();
    std::vector<int> digits(free_pos.size(), 0);
    while (true) {
        fn(M);
        // odometer: last free position is the fastest digit
        int i = static_cast<int>(digits.size()) - 1;
        while (i >= 0 && digits[i] == q - 1) {
            digits[i] = 0;
            M.mat.at(free_pos[i].first, free_pos[i].second) = 0;
            --i;
        }
        if (i < 0) break;
        ++digits[i];
        M.mat.at(free_pos[i].first, free_pos[i].second) = static_cast<uint16_t>(digits[i]);
    }
}

std::vector<EchelonMatrix> enumerate_cell(const Field& F, const IndexTuple& beta) {
    std::vector<EchelonMatrix> out;
    for_each_cell_matrix(F, beta, [&](const EchelonMatrix& M) { out.push_back(M); });
    return out;
}

void for_each_variety_point(const Field& F, const IndexTuple& alpha, BigInt point_cap,
                            const std::function<void(const EchelonMatrix&)>& fn) {
    if (alpha.back() != alpha.m)
        throw BadInput("variety enumeration expects alpha_l = m; reduce the instance first");
    const BigInt n = point_count(alpha, F.q());
    if (n > point_cap)
        throw CapExceeded("point count " + n.str() + " exceeds cap " + point_cap.str());
    for (auto& beta : nabla(alpha)) for_each_cell_matrix(F, beta, fn);
}

std::vector<EchelonMatrix> enumerate_variety(const Field& F, const IndexTuple& alpha,
                                             BigInt point_cap) {
    std::vector<EchelonMatrix> out;
    for_each_variety_point(F, alpha, std::move(point_cap),
                           [&](const EchelonMatrix& M) { out.push_back(M); });
    return out;
}

bool schubert_member(const EchelonMatrix& M, const IndexTuple& alpha) {
    return bruhat_leq(M.pivots, alpha);
}

bool schubert_member_rank(const Field& F, const EchelonMatrix& M, const IndexTuple& alpha) {
    // dim(L cap V_c) = l - rank(columns right of c)
    for (int j = 0; j < alpha.ell(); ++j) {
        const int c = alpha.entries[j];
        const int d = M.rows() - rank_of_columns(F, M.mat, c, M.cols());
        if (d < j + 1) return false;
    }
    return true;
}

int flag_intersection_dim(const EchelonMatrix& M, int c) {
    int d = 0;
    for (int b : M.pivots.entries)
        if (b <= c) ++d;
    return d;
}

namespace {

int minor_at(const Field& F, const Mat& m, const std::vector<int>& cols1based) {
    const int l = m.rows;
    Mat s(l, l);
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < l; ++j) s.at(i, j) = m.at(i, cols1based[j] - 1);
    return determinant(F, s);
}

} // namespace

PluckerVector plucker(const Field& F, const EchelonMatrix& M,
                      const std::vector<IndexTuple>& all_tuples) {
    PluckerVector pv;
    pv.tuples = &all_tuples;
    pv.coords.resize(all_tuples.size());
    for (size_t t = 0; t < all_tuples.size(); ++t)
        pv.coords[t] = static_cast<uint16_t>(minor_at(F, M.mat, all_tuples[t].entries));
    return pv;
}

std::vector<uint16_t> plucker_restricted(const Field& F, const EchelonMatrix& M,
                                         const std::vector<IndexTuple>& tuples) {
    std::vector<uint16_t> out(tuples.size(), 0);
    for (size_t t = 0; t < tuples.size(); ++t) {
        // rows end at their pivots, so a minor with any column past the
        // matching pivot is singular; skip those without elimination
        if (!bruhat_leq(tuples[t], M.pivots)) continue;
        out[t] = static_cast<uint16_t>(minor_at(F, M.mat, tuples[t].entries));
    }
    return out;
}

EchelonMatrix embed(const EchelonMatrix& M, int new_m) {
    if (new_m < M.cols()) throw BadInput("embed cannot shrink the ambient space");
    EchelonMatrix out;
    out.mat = Mat(M.rows(), new_m);
    for (int i = 0; i < M.rows(); ++i)
        for (int j = 0; j < M.cols(); ++j) out.mat.at(i, j) = M.mat.at(i, j);
    out.pivots = IndexTuple::make(M.pivots.entries, new_m);
    return out;
}

StringLabel string_projection(const EchelonMatrix& M) {
    const int ell = M.rows(), m = M.cols();
    if (M.pivots.back() != m)
        throw BadInput("string projection is defined for points with last pivot at column m");
    std::vector<bool> top_pivot(m, false); // 0-based columns of the truncated block's pivots
    for (int i = 0; i + 1 < ell; ++i) top_pivot[M.pivots.entries[i] - 1] = true;
    StringLabel nu;
    nu.reserve(m - ell);
    for (int c = 0; c + 1 < m; ++c)
        if (!top_pivot[c]) nu.push_back(M.mat.at(ell - 1, c));
    return nu;
}

std::vector<EchelonMatrix> string_fiber(const Field& F, const IndexTuple& alpha,
                                        const StringLabel& nu, BigInt point_cap) {
    const int ell = alpha.ell(), m = alpha.m;
    if (alpha.back() != m) throw BadInput("string fiber expects alpha_l = m");
    if (ell < 2) throw BadInput("string fiber needs l >= 2");
    if (static_cast<int>(nu.size()) != m - ell)
        throw BadInput("string label must have m - l entries");
    for (uint16_t v : nu)
        if (v >= F.q()) throw BadInput("string label entry out of field range");

    const IndexTuple ac = alpha_check(alpha);
    const Reduction red = reduce(ac); // alpha-check may end below m-1
    std::vector<EchelonMatrix> out;
    for_each_variety_point(F, red.alpha, point_cap, [&](const EchelonMatrix& Mc) {
        const EchelonMatrix top = embed(Mc, m - 1);
        EchelonMatrix M;
        M.mat = Mat(ell, m);
        for (int i = 0; i < ell - 1; ++i)
            for (int j = 0; j < m - 1; ++j) M.mat.at(i, j) = top.mat.at(i, j);
        std::vector<bool> top_pivot(m - 1, false);
        for (int b : top.pivots.entries) top_pivot[b - 1] = true;
        size_t t = 0;
        for (int c = 0; c + 1 < m; ++c)
            if (!top_pivot[c]) M.mat.at(ell - 1, c) = nu[t++];
        M.mat.at(ell - 1, m - 1) = 1;
        std::vector<int> piv = top.pivots.entries;
        piv.push_back(m);
        M.pivots = IndexTuple::make(std::move(piv), m);
        out.push_back(std::move(M));
    });
    return out;
}

} // namespace schucode

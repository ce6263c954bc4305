#pragma once

#include <cstdint>
#include <vector>

#include "schucode/gf.hpp"

namespace schucode {

/// Dense row-major matrix of field codes. Plain data; all arithmetic goes
/// through the free functions below with an explicit Field.
struct Mat {
    int rows = 0, cols = 0;
    std::vector<uint16_t> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {}

    uint16_t& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    uint16_t at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    friend bool operator==(const Mat& x, const Mat& y) {
        return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
    }
};

/// In-place reduction to (left-to-right) reduced row echelon form.
/// Returns the rank. Deterministic: pivot = topmost unused row with a
/// nonzero entry in the current column.
int row_reduce(const Field& F, Mat& m);

int rank(const Field& F, Mat m);

/// Rank of the column slice [col_begin, col_end).
int rank_of_columns(const Field& F, const Mat& m, int col_begin, int col_end);

/// det of a square matrix.
int determinant(const Field& F, Mat m);

/// Basis of { x : m x = 0 }, one vector per free column, free columns
/// ascending; deterministic and canonical for a given matrix.
std::vector<std::vector<uint16_t>> kernel_basis(const Field& F, Mat m);

} // namespace schucode

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "schucode/combinat.hpp"
#include "schucode/gf.hpp"
#include "schucode/linalg.hpp"

namespace schucode {

/// An l x m matrix in *right-pivot* reduced row echelon form: the last
/// nonzero entry of each row (its pivot) is 1, pivot columns strictly
/// increase down the rows, and a pivot column is zero everywhere else.
/// Each l-dimensional subspace of F_q^m has exactly one such basis matrix,
/// and the pivot tuple is the cell label of the subspace.
struct EchelonMatrix {
    Mat mat;            // l x m field codes
    IndexTuple pivots;  // ambient m

    int rows() const { return mat.rows; }
    int cols() const { return mat.cols; }
    int at(int i, int j) const { return mat.at(i, j); }

    friend bool operator==(const EchelonMatrix& a, const EchelonMatrix& b) { return a.mat == b.mat; }
    friend bool operator<(const EchelonMatrix& a, const EchelonMatrix& b) { return a.mat.a < b.mat.a; }
};

/// Pluecker coordinate vector of a point: the maximal minors, one per index
/// tuple, in canonical tuple order. `tuples` names the coordinate at each
/// position (either all of I(l,m) or a restriction such as nabla(alpha)).
struct PluckerVector {
    std::vector<uint16_t> coords;
    const std::vector<IndexTuple>* tuples = nullptr;
};

/// The string label of a point whose last pivot sits at column m: the last
/// row's entries at the non-pivot columns of the truncated matrix, in
/// increasing column order (m - l values).
using StringLabel = std::vector<uint16_t>;

/// Unique right-pivot echelon basis of the row space of `rows` (l x m, full
/// rank l); throws BadInput on rank deficiency.
EchelonMatrix canonicalize(const Field& F, const Mat& rows);

bool is_canonical(const EchelonMatrix& M);

/// Visits every matrix of the cell labelled beta: pivot entries fixed to 1,
/// the delta(beta) free entries (row i: columns left of the pivot that are
/// not pivot columns of other rows) run through all of F_q in odometer
/// order. Free positions are ordered row-major; the last position is the
/// fastest digit and field codes ascend.
void for_each_cell_matrix(const Field& F, const IndexTuple& beta,
                          const std::function<void(const EchelonMatrix&)>& fn);

std::vector<EchelonMatrix> enumerate_cell(const Field& F, const IndexTuple& beta);

/// Visits every point of Omega_alpha: cells beta in nabla(alpha) in
/// canonical tuple order, each cell in its odometer order. This order is
/// the column order of the generator matrix built on alpha.
/// Requires alpha_l = m (reduce first); throws CapExceeded when
/// point_count(alpha, q) > point_cap.
void for_each_variety_point(const Field& F, const IndexTuple& alpha, BigInt point_cap,
                            const std::function<void(const EchelonMatrix&)>& fn);

std::vector<EchelonMatrix> enumerate_variety(const Field& F, const IndexTuple& alpha,
                                             BigInt point_cap);

/// Membership via pivots: pivots(M) <= alpha componentwise.
bool schubert_member(const EchelonMatrix& M, const IndexTuple& alpha);

/// Independent membership oracle via ranks: dim(rowspace(M) cap V_{alpha_j})
/// >= j for every j, where V_c = span(e_1..e_c).
bool schubert_member_rank(const Field& F, const EchelonMatrix& M, const IndexTuple& alpha);

/// dim(rowspace(M) cap V_c) for an echelon matrix: #{pivots <= c}.
int flag_intersection_dim(const EchelonMatrix& M, int c);

/// All C(m,l) maximal minors in canonical tuple order.
PluckerVector plucker(const Field& F, const EchelonMatrix& M,
                      const std::vector<IndexTuple>& all_tuples);

/// Minors restricted to the given tuples (usually nabla(alpha)); exploits
/// that a minor vanishes unless its tuple is componentwise <= pivots(M).
std::vector<uint16_t> plucker_restricted(const Field& F, const EchelonMatrix& M,
                                         const std::vector<IndexTuple>& tuples);

/// Appends zero columns to reach ambient new_m (new_m >= current m).
/// Embedding a point of a variety in ambient m into ambient m' > m changes
/// nothing else: rows already end at their pivots.
EchelonMatrix embed(const EchelonMatrix& M, int new_m);

/// For M with last pivot at column m: the string label of M (see
/// StringLabel). Throws BadInput if the last pivot is not at column m.
StringLabel string_projection(const EchelonMatrix& M);

/// All points of the fiber over nu: the top block runs through
/// Omega_{alpha-check} in ambient m-1 (enumeration order), the last row
/// carries nu at the top block's non-pivot columns and a trailing 1.
/// Every output is already canonical and a member of Omega_alpha.
std::vector<EchelonMatrix> string_fiber(const Field& F, const IndexTuple& alpha,
                                        const StringLabel& nu, BigInt point_cap);

} // namespace schucode

#pragma once

#include <compare>
#include <string>
#include <vector>

#include "schucode/bigint.hpp"
#include "schucode/errors.hpp"

namespace schucode {

/// Strictly increasing tuple 1 <= a_1 < ... < a_l <= m, the label of a
/// Schubert cell/variety respectively a Pluecker coordinate.
///
/// Canonical order everywhere in this library is lexicographic on the
/// entries; every enumeration that returns tuples returns them in that
/// order, and every map keyed by tuples iterates in that order.
struct IndexTuple {
    std::vector<int> entries;
    int m = 0;

    /// Validates bounds and strict monotonicity; throws BadInput otherwise.
    static IndexTuple make(std::vector<int> entries, int m);

    int ell() const { return static_cast<int>(entries.size()); }
    int back() const { return entries.back(); }
    std::string to_string() const; // "2,4"

    friend bool operator==(const IndexTuple& a, const IndexTuple& b) {
        return a.m == b.m && a.entries == b.entries;
    }
    /// Lexicographic on entries (canonical order); shapes must match to be
    /// meaningfully comparable but this is not enforced here.
    friend bool operator<(const IndexTuple& a, const IndexTuple& b) { return a.entries < b.entries; }
};

/// Parses "2,4" with ambient m; m = 0 means "use the last entry".
IndexTuple parse_tuple(const std::string& text, int m = 0);

/// All of I(l,m) in canonical order; C(m,l) tuples.
std::vector<IndexTuple> enumerate_index_tuples(int ell, int m);

/// Componentwise (Bruhat) order: a <= b iff a_i <= b_i for all i.
/// Throws BadInput on shape mismatch (different l or m).
bool bruhat_leq(const IndexTuple& a, const IndexTuple& b);

/// nabla(a) = { b in I(l,m) : b <= a }, canonical order.
std::vector<IndexTuple> nabla(const IndexTuple& alpha);

/// Delta(a) = I(l,m) \ nabla(a), canonical order.
std::vector<IndexTuple> delta_set(const IndexTuple& alpha);

/// |nabla(alpha)| = the dimension of the code built on alpha.
long k_alpha(const IndexTuple& alpha);

/// delta(alpha) = sum(alpha_i) - l(l+1)/2, the cell dimension.
int delta(const IndexTuple& alpha);

/// Gaussian binomial [m choose l]_q, exact.
BigInt gaussian_binomial(int m, int ell, long q);

/// True when alpha_1, ..., alpha_l are consecutive integers (the variety is
/// then a full Grassmannian in a smaller ambient space and has no kink).
bool is_consecutive(const IndexTuple& alpha);

/// Largest j with alpha_{j+1} - alpha_j >= 2, 1-based; 1 <= k <= l-1.
/// Throws BadInput for consecutive alpha (no such j).
int kink_index(const IndexTuple& alpha);

/// Block decomposition of alpha into maximal runs of consecutive entries:
/// 0 = p_0 < p_1 < ... < p_u < p_{u+1} = l, where each (p_i, p_{i+1}] slice
/// of alpha is consecutive and each block boundary has a gap >= 2.
struct BlockStructure {
    int u = 0;
    std::vector<int> p; // size u+2, p.front() == 0, p.back() == l
};
BlockStructure block_structure(const IndexTuple& alpha);

/// alpha' = (alpha_1,...,alpha_k, alpha_{k+1}-1,...,alpha_l-1) in ambient
/// m-1, where k is the kink index. Requires non-consecutive alpha.
IndexTuple alpha_prime(const IndexTuple& alpha);

/// alpha-check = (alpha_1,...,alpha_{l-1}) in ambient m-1. Requires l >= 2.
IndexTuple alpha_check(const IndexTuple& alpha);

/// First k entries of alpha, same ambient.
IndexTuple truncate(const IndexTuple& alpha, int k);

/// The cell lift phi: beta in nabla(alpha') (ambient m-1) maps to
/// (beta_1,...,beta_k, beta_{k+1}+1,...,beta_l+1) in nabla(alpha), k the
/// kink index of alpha. Raises cell dimension by exactly l - k.
IndexTuple phi_lift(const IndexTuple& beta, const IndexTuple& alpha);

/// Cells of nabla(alpha) not reached by phi_lift; exactly the gamma with
/// gamma_{k+1} - gamma_k = 1. Always contains (1,...,l).
std::vector<IndexTuple> missing_cells(const IndexTuple& alpha);

/// |Omega_alpha(F_q)| = sum over beta in nabla(alpha) of q^{delta(beta)}.
/// Depends on alpha only through its entries, not the ambient m.
BigInt point_count(const IndexTuple& alpha, long q);

/// Cell-dimension census: a[i] = number of beta in nabla(alpha) with
/// delta(beta) = i, plus the resulting exact total at a given q.
struct CountProfile {
    std::vector<long long> a; // indices 0..delta(alpha)
    BigInt total;
    long q = 0;
};
CountProfile count_profile(const IndexTuple& alpha, long q);

/// q0(l) = 2^{1/(l-1)} / (2^{1/(l-1)} - 1), the threshold above which the
/// strict inequalities of the minimum-weight analysis hold. q0(2) = 2;
/// q0(l)/l tends to 1/ln 2. Requires l >= 2.
double q0(int ell);

/// Exact integer form of "q > q0(l)": 2 (q-1)^{l-1} > q^{l-1}.
/// No floating point is consulted.
bool q_exceeds_q0(long q, int ell);

/// Replaces (alpha, m) by (alpha, alpha_l): trailing ambient dimensions
/// beyond alpha_l contribute nothing to the variety or the code.
struct Reduction {
    IndexTuple alpha;   // ambient = alpha_l
    int original_m = 0; // kept for reporting only
    bool changed = false;
};
Reduction reduce(const IndexTuple& alpha);

} // namespace schucode

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "schucode/combinat.hpp"
#include "schucode/gf.hpp"
#include "schucode/schubert.hpp"

namespace schucode {

/// Element of the d-th exterior power of F_q^m in the basis of increasing
/// wedges: coeffs[t] multiplies e_{i_1} ^ ... ^ e_{i_d} where (i_1..i_d) is
/// the t-th tuple of I(d,m) in canonical order.
///
/// Sign convention: appending a basis vector e_j to an increasing wedge
/// labelled (i_1 < ... < i_d) contributes the sign (-1)^{#{t : i_t > j}}
/// (the transpositions needed to sort j into place from the right).
struct Multivector {
    int degree = 0;
    int m = 0;
    std::vector<uint16_t> coeffs; // size C(m, degree)

    bool is_zero() const {
        for (uint16_t c : coeffs)
            if (c) return false;
        return true;
    }
};

Multivector zero_multivector(int degree, int m);

/// z ^ x for a plain vector x (m codes).
Multivector wedge(const Field& F, const Multivector& z, const std::vector<uint16_t>& x);

/// Wedge of the rows of an echelon matrix, degree = number of rows.
Multivector wedge_rows(const Field& F, const EchelonMatrix& M);

/// V(z) = { x : z ^ x = 0 } as a deterministic list of basis vectors.
std::vector<std::vector<uint16_t>> support_space(const Field& F, const Multivector& z);

/// A nonzero z of degree d is decomposable (a wedge of d vectors) iff
/// dim V(z) = d; degree-1 elements always are.
bool is_decomposable(const Field& F, const Multivector& z);

/// Decomposable, and additionally dim(V(z) cap V_{alpha_{p_i}}) =
/// alpha_{p_i} - p_i at every interior block boundary p_1..p_u of alpha
/// (V_c = span of the first c standard basis vectors).
bool is_schubert_decomposable(const Field& F, const Multivector& z, const IndexTuple& alpha);

/// Sorted complement of beta inside {1..m}.
IndexTuple complement_tuple(const IndexTuple& beta);

/// Linear functional on the span of the Pluecker coordinates X_beta,
/// beta in nabla(alpha), stored in canonical tuple order. alpha with
/// alpha_l = m; a full functional on I(l,m) is the special case where
/// alpha is the top tuple (m-l+1, ..., m).
struct HyperplaneSection {
    IndexTuple alpha;
    std::vector<uint16_t> coeffs; // over nabla(alpha), canonical order

    bool is_zero() const {
        for (uint16_t c : coeffs)
            if (c) return false;
        return true;
    }
};

HyperplaneSection make_section(const IndexTuple& alpha, std::vector<uint16_t> coeffs);

/// Scales so the first nonzero coefficient (canonical order) is 1.
/// Identity on the zero functional.
std::vector<uint16_t> projective_normalize(const Field& F, std::vector<uint16_t> coeffs);

/// The dictionary sum c_beta X_beta  <->  sum c_beta e_{beta^C}: a pure
/// coefficient relabelling into degree m-l, with NO sign factor.
///
/// The signed and unsigned dictionaries differ by the diagonal basis change
/// e_i -> (-1)^i e_i (times a global sign), which fixes the standard flag,
/// permutes every Schubert variety and preserves codeword weights; every
/// verdict this library derives from the dictionary is projective and is
/// therefore identical under either convention. The exact signed pairing is
/// still available via complement_sign for cross-checks.
Multivector hyperplane_multivector(const Field& F, const HyperplaneSection& f);

/// Inverse direction: read the coefficients of z at the complements of
/// nabla(alpha).
HyperplaneSection multivector_section(const Field& F, const Multivector& z,
                                      const IndexTuple& alpha);

/// Sign of the permutation (beta^C, beta) -> (1..m): (-1)^{#inversions}, as
/// a field code. This is the factor relating the unsigned dictionary to the
/// exact pairing z ^ (row wedge) = sum_beta c_beta sign(beta) p_beta(M).
int complement_sign(const Field& F, const IndexTuple& beta);

/// f applied to a point's restricted Pluecker vector (both over
/// nabla(alpha) in canonical order).
int evaluate(const Field& F, const HyperplaneSection& f, const std::vector<uint16_t>& plucker);

/// Coefficient of the top wedge e_1 ^ ... ^ e_m in z ^ (rows of M).
/// Equals evaluate() with each coefficient pre-multiplied by complement_sign.
int wedge_evaluate(const Field& F, const Multivector& z, const EchelonMatrix& M);

/// "1*X[1,3] + 2*X[2,4]" in canonical tuple order; zero terms omitted,
/// the zero functional prints as "0".
std::string format_section(const HyperplaneSection& f);
HyperplaneSection parse_section(const std::string& text, const IndexTuple& alpha);

struct SchubertDecomposability {
    bool decomposable = false;          // some matching witness exists
    std::optional<EchelonMatrix> witness; // first qualifying subspace, canonical order
};

/// Decides whether some decomposable z with the Schubert flag conditions
/// restricts on nabla(alpha) to a nonzero scalar multiple of f, by scanning
/// the dual Grassmannian of (m-l)-subspaces ([m choose m-l]_q candidates,
/// capped). The witness is the first qualifying subspace in canonical
/// enumeration order.
SchubertDecomposability hyperplane_is_schubert_decomposable(const Field& F,
                                                            const HyperplaneSection& f,
                                                            BigInt dual_cap);

/// Precomputed dual-Grassmannian scan for alpha: for every normalized
/// nonzero restriction arising from an (m-l)-subspace, whether some subspace
/// with that restriction satisfies the flag conditions, and the first one
/// that does. Lets a caller certify many functionals with one scan.
struct DualScan {
    struct Entry {
        bool has_flag_witness = false;
        std::optional<EchelonMatrix> witness;
        std::vector<uint16_t> coeffs; // the normalized restriction itself
    };
    std::vector<Entry> entries;                  // deterministic order of first appearance
    std::vector<size_t> by_coeffs_index;         // entries sorted by coeffs, for lookup
    const Entry* find(const std::vector<uint16_t>& normalized_coeffs) const;
};

DualScan build_dual_scan(const Field& F, const IndexTuple& alpha, BigInt dual_cap);

} // namespace schucode

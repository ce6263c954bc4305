#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "schucode/combinat.hpp"
#include "schucode/exterior.hpp"
#include "schucode/gf.hpp"
#include "schucode/schubert.hpp"

namespace schucode {

/// Linear code evaluated on a Schubert variety: columns are the restricted
/// Pluecker vectors of the points of Omega_alpha in enumeration order
/// (cells in canonical tuple order, odometer order inside each cell), rows
/// are labelled by nabla(alpha) in canonical order. Every column is nonzero
/// with its pivot-tuple coordinate equal to 1, and the matrix has full rank.
struct SchubertCode {
    IndexTuple alpha;
    const Field* field = nullptr;
    long n = 0; // length = |Omega_alpha|
    long k = 0; // dimension = |nabla(alpha)|
    std::vector<IndexTuple> row_tuples;   // nabla(alpha)
    std::vector<uint16_t> generator;      // k x n, row-major
    std::vector<IndexTuple> column_pivots; // pivot tuple of each point

    int gen_at(long r, long c) const { return generator[static_cast<size_t>(r) * n + c]; }
};

/// Builds the generator matrix by full enumeration. Requires alpha_l = m
/// (reduce first); throws CapExceeded past point_cap.
SchubertCode build_code(const Field& F, const IndexTuple& alpha, const BigInt& point_cap);

/// coeffs (length k) times the generator.
std::vector<uint16_t> codeword(const SchubertCode& C, const std::vector<uint16_t>& coeffs);

long weight(const std::vector<uint16_t>& word);

struct ScanOptions {
    BigInt scan_cap = BigInt(100000000); // projective functional count cap
    int workers = 1;
    bool want_distribution = false;
    bool early_exit = true; // ignored (forced off) when want_distribution
};

/// One certified minimizer of the weight scan.
struct Minimizer {
    std::vector<uint16_t> coeffs; // length k, first nonzero = 1
    long weight = 0;
    std::optional<bool> schubert_decomposable; // set by mwcc_check
    std::optional<EchelonMatrix> witness;      // set when decomposable
};

struct WeightReport {
    long n = 0, k = 0;
    long d = 0;                     // minimum weight found by the scan
    long e = 0;                     // n - d, the maximal hyperplane section
    BigInt q_delta;                 // q^{delta(alpha)}, the predicted d
    bool matches_prediction = false;
    std::vector<Minimizer> minimizers; // sorted lexicographically by coeffs
    std::map<long, long long> distribution; // weight -> projective count
    bool has_distribution = false;

    // mwcc_check results
    bool mwcc_ran = false;
    long long counterexamples = 0;      // minimum-weight but not Schubert decomposable
    long long sd_sections = 0;          // distinct Schubert decomposable sections found
    long long sd_weight_violations = 0; // SD sections whose weight != q^delta
};

/// Scans all (q^k - 1)/(q - 1) projective functionals (first nonzero
/// coefficient normalized to 1, remaining coefficients odometer-ascending)
/// and returns the exact minimum weight with every minimizer.
///
/// The scan partitions deterministically by leading-coefficient prefix;
/// worker count changes wall time only, never any reported value.
WeightReport min_weight(const SchubertCode& C, const ScanOptions& opts);

/// Full weight distribution (no early exit); counts sum to the projective
/// class count.
WeightReport weight_distribution(const SchubertCode& C, ScanOptions opts);

/// Minimum-weight scan plus both directions of the minimum-weight
/// codeword characterization:
///  - every minimizer is looked up in one dual-Grassmannian scan and
///    marked Schubert decomposable or not (with witness);
///  - every Schubert decomposable section found by that same scan has its
///    weight computed and compared against q^{delta(alpha)}.
WeightReport mwcc_check(const SchubertCode& C, const ScanOptions& opts, const BigInt& dual_cap);

} // namespace schucode

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "schucode/bigint.hpp"
#include "schucode/combinat.hpp"
#include "schucode/gf.hpp"

namespace schucode {

enum class CheckStatus { Pass, Fail, Skipped };

const char* to_string(CheckStatus s);

/// One verified assertion on one parameter instance. A failed check stores
/// both sides so the discrepancy is reproducible from the record alone.
struct CheckResult {
    std::string check_id;
    IndexTuple alpha; // empty for instance-free checks (the q0 profile)
    long q = 0;       // 0 likewise
    CheckStatus status = CheckStatus::Pass;
    std::string reason; // failure description, or why the check was skipped
    std::string lhs;    // exact decimal values where applicable
    std::string rhs;
    std::string note;
    long long seed = -1; // recorded when the check draws random samples
};

/// Parameter grid. When `instances` is non-empty it is used verbatim;
/// otherwise the product grid {l in ells} x {m <= max_m} x {q in qs},
/// restricted to non-consecutive alpha with alpha_l = m, is generated.
struct VerifyGrid {
    std::vector<int> ells = {2, 3};
    int max_m = 6;
    std::vector<long> qs = {2, 3, 4};
    std::vector<std::pair<IndexTuple, long>> instances;
};

/// Resolved, sorted, deduplicated (alpha, q) list for a grid.
std::vector<std::pair<IndexTuple, long>> grid_instances(const VerifyGrid& grid);

struct VerifyOptions {
    /// Check families to run; any of count, ineq, strings, family, dc, q0.
    std::vector<std::string> families = {"count", "ineq", "strings", "family", "dc", "q0"};
    long long seed = 0;
    int workers = 1;
    BigInt point_cap = BigInt(10000000);
    BigInt scan_cap = BigInt(100000000);
    int dc_random_draws = 100;
};

// ---- individual checks, one instance each ----

/// point_count(alpha,q) = point_count(alpha',q) + q^{m-l} point_count(alpha-check,q),
/// first by formula, then (when the variety fits the cap) by enumerating
/// Omega_alpha and bucketing its points on their string labels.
CheckResult check_count_recursion(const Field& F, const IndexTuple& alpha, const BigInt& point_cap);

/// The strict-inequality battery on one instance, one record per check_id:
/// ineq.lem_sum, ineq.upp, ineq.prel, ineq.lb_a, ineq.lb_b, ineq.aux,
/// ineq.dec_b, ineq.kink_identity. Everything is compared by exact integer
/// cross-multiplication. Records gated on the q0 threshold are skipped
/// unless 2(q-1)^{l-1} > q^{l-1} holds exactly.
std::vector<CheckResult> check_inequalities(const IndexTuple& alpha, long q);

/// Counts hyperplane subspaces W with V_{alpha_k} c W c V_m by exhaustive
/// enumeration of projectively normalized functionals on F_q^m and compares
/// with the closed form (q^{m-alpha_k}-1)/(q-1).
CheckResult check_family_count(const Field& F, const IndexTuple& alpha, const BigInt& scan_cap);

/// Every point of Omega_alpha lies on at least
/// (q^{(m-alpha_k)-(l-k)}-1)/(q-1) members of that hyperplane family.
CheckResult check_family_incidence(const Field& F, const IndexTuple& alpha,
                                   const BigInt& point_cap, const BigInt& scan_cap);

/// String fibers of the last-pivot-at-m stratum: they partition it, each
/// has exactly point_count(alpha-check) elements, the stratum has size
/// n_alpha - n_alpha', and string_fiber reproduces every bucket exactly.
CheckResult check_strings_fibers(const Field& F, const IndexTuple& alpha, const BigInt& point_cap);

/// Cells labelled by nabla(alpha') coincide in ambient m-1 and in ambient m
/// under the zero-column embedding, cell by cell and element by element.
CheckResult check_strings_lemcell(const Field& F, const IndexTuple& alpha, const BigInt& point_cap);

/// Pivot-set identity: {beta in nabla(alpha) : beta not<= alpha'} equals
/// {beta in nabla(alpha) : beta_l = m}, and nabla(alpha') is exactly the
/// rest of nabla(alpha).
CheckResult check_strings_pivot(const IndexTuple& alpha);

/// Hyperplane-family incidence bound: for every tested functional F_t,
///   (q^{(m-a_k)-(l-k)} - 1) |Pi cap Omega_alpha| <= (q^{m-a_k} - 1) M,
/// with M the largest |Pi cap member| over the family. Tested functionals:
/// every coordinate functional plus `random_draws` seeded ones. Member
/// point sets are materialized twice, by subspace filtering and by the flag
/// construction over an explicit basis of W, and must agree.
CheckResult check_hyperplane_family_bound(const Field& F, const IndexTuple& alpha,
                                          long long seed, int random_draws,
                                          const BigInt& point_cap, const BigInt& scan_cap);

/// q0 threshold profile: q0(2) = 2 exactly, strict monotonicity through
/// l = 50, q0(50)/50 within 0.1 of 1/ln 2, and agreement of the exact
/// integer threshold test with the floating-point values on a small grid.
CheckResult check_q0_profile();

// ---- grid driver ----

struct VerifyReport {
    std::vector<CheckResult> results; // sorted by (check_id, l, m, alpha, q)
    long passed = 0, failed = 0, skipped = 0;

    bool all_passed() const { return failed == 0; }
};

/// Runs the requested families over the grid on `workers` threads. The
/// result order and content are deterministic regardless of worker count.
VerifyReport run_verification(const VerifyGrid& grid, const VerifyOptions& opts);

} // namespace schucode

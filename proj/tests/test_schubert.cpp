#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "schucode/combinat.hpp"
#include "schucode/errors.hpp"
#include "schucode/gf.hpp"
#include "schucode/linalg.hpp"
#include "schucode/schubert.hpp"

using namespace schucode;

namespace {

const BigInt kCap(10000000);

// Independent Gaussian elimination, sharing nothing with the library: rank
// of a list of row vectors over F.
int oracle_rank(const Field& F, std::vector<std::vector<int>> rows) {
    const int n = rows.empty() ? 0 : static_cast<int>(rows[0].size());
    int rank = 0;
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = rank; r < static_cast<int>(rows.size()); ++r)
            if (rows[r][col] != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(rows[rank], rows[pivot]);
        const int inv = F.inv(rows[rank][col]);
        for (int j = 0; j < n; ++j) rows[rank][j] = F.mul(rows[rank][j], inv);
        for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
            if (r == rank || rows[r][col] == 0) continue;
            const int f = rows[r][col];
            for (int j = 0; j < n; ++j)
                rows[r][j] = F.sub(rows[r][j], F.mul(f, rows[rank][j]));
        }
        ++rank;
    }
    return rank;
}

// dim(rowspace(M) cap span(e_1..e_c)) = l + c - rank(rows of M and e_1..e_c).
int oracle_flag_dim(const Field& F, const EchelonMatrix& M, int c) {
    std::vector<std::vector<int>> rows;
    for (int r = 0; r < M.rows(); ++r) {
        std::vector<int> row(M.cols());
        for (int j = 0; j < M.cols(); ++j) row[j] = M.at(r, j);
        rows.push_back(std::move(row));
    }
    for (int i = 0; i < c; ++i) {
        std::vector<int> e(M.cols(), 0);
        e[i] = 1;
        rows.push_back(std::move(e));
    }
    return M.rows() + c - oracle_rank(F, rows);
}

bool oracle_member(const Field& F, const EchelonMatrix& M, const IndexTuple& alpha) {
    for (int j = 1; j <= alpha.ell(); ++j)
        if (oracle_flag_dim(F, M, alpha.entries[j - 1]) < j) return false;
    return true;
}

Mat random_mix(const Field& F, const EchelonMatrix& M, std::mt19937& gen) {
    const int l = M.rows(), q = F.q();
    Mat T(l, l);
    do {
        for (int i = 0; i < l; ++i)
            for (int j = 0; j < l; ++j) T.at(i, j) = static_cast<uint16_t>(gen() % q);
    } while (rank(F, T) < l);
    Mat out(l, M.cols());
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < M.cols(); ++j) {
            int acc = 0;
            for (int t = 0; t < l; ++t) acc = F.add(acc, F.mul(T.at(i, t), M.at(t, j)));
            out.at(i, j) = static_cast<uint16_t>(acc);
        }
    return out;
}

} // namespace

TEST_CASE("canonical form of a known row space") {
    Field F = Field::from_order(2);
    Mat rows(2, 4);
    // span{(1,1,0,0), (0,1,1,0)}
    rows.at(0, 0) = 1, rows.at(0, 1) = 1;
    rows.at(1, 1) = 1, rows.at(1, 2) = 1;
    EchelonMatrix M = canonicalize(F, rows);
    CHECK(M.pivots.entries == std::vector<int>{2, 3});
    CHECK(M.mat.a == std::vector<uint16_t>{1, 1, 0, 0, 1, 0, 1, 0});
    CHECK(is_canonical(M));

    Mat bad(2, 4);
    bad.at(0, 0) = 1;
    bad.at(1, 0) = 1; // rank 1
    CHECK_THROWS_AS(canonicalize(F, bad), BadInput);
}

TEST_CASE("canonicalize is invariant under row mixing") {
    std::mt19937 gen(7);
    for (long q : {2L, 3L, 4L}) {
        Field F = Field::from_order(q);
        for (const IndexTuple& beta : enumerate_index_tuples(2, 4)) {
            for (const EchelonMatrix& M : enumerate_cell(F, beta)) {
                for (int trial = 0; trial < 3; ++trial) {
                    EchelonMatrix back = canonicalize(F, random_mix(F, M, gen));
                    CHECK(back == M);
                    CHECK(back.pivots.entries == M.pivots.entries);
                }
            }
        }
    }
}

TEST_CASE("cells have q^delta points with the declared pivots") {
    for (long q : {2L, 3L}) {
        Field F = Field::from_order(q);
        for (int m = 2; m <= 5; ++m)
            for (int l = 1; l <= std::min(m, 3); ++l)
                for (const IndexTuple& beta : enumerate_index_tuples(l, m)) {
                    auto cell = enumerate_cell(F, beta);
                    CHECK(BigInt(cell.size()) == ipow(q, delta(beta)));
                    std::set<EchelonMatrix> seen;
                    for (const EchelonMatrix& M : cell) {
                        CHECK(M.pivots == beta);
                        CHECK(is_canonical(M));
                        CHECK(seen.insert(M).second);
                    }
                }
    }
}

TEST_CASE("cell odometer order: last free position is the fastest digit") {
    Field F = Field::from_order(3);
    // beta = (2,3) in m=3: free entries at (row 0, col 0) and (row 1, col 0)
    auto cell = enumerate_cell(F, parse_tuple("2,3", 3));
    REQUIRE(cell.size() == 9);
    CHECK(cell[0].mat.a == std::vector<uint16_t>{0, 1, 0, 0, 0, 1});
    CHECK(cell[1].mat.a == std::vector<uint16_t>{0, 1, 0, 1, 0, 1});
    CHECK(cell[2].mat.a == std::vector<uint16_t>{0, 1, 0, 2, 0, 1});
    CHECK(cell[3].mat.a == std::vector<uint16_t>{1, 1, 0, 0, 0, 1});
}

TEST_CASE("variety enumeration matches brute-force membership filtering") {
    for (long q : {2L, 3L}) {
        Field F = Field::from_order(q);
        for (const char* text : {"2,4", "1,4", "3,4", "1,2,4", "1,3,4"}) {
            IndexTuple alpha = parse_tuple(text);
            auto pts = enumerate_variety(F, alpha, kCap);
            CHECK(BigInt(pts.size()) == point_count(alpha, F.q()));

            // every point is canonical, a member by pivots, by library ranks,
            // and by the independent elimination oracle
            std::set<EchelonMatrix> seen;
            for (const EchelonMatrix& M : pts) {
                CHECK(is_canonical(M));
                CHECK(seen.insert(M).second);
                CHECK(schubert_member(M, alpha));
                CHECK(schubert_member_rank(F, M, alpha));
                CHECK(oracle_member(F, M, alpha));
            }

            // and nothing outside the variety passes the oracle: filter the
            // whole Grassmannian
            const int l = alpha.ell(), m = alpha.m;
            std::vector<int> top(l);
            for (int i = 0; i < l; ++i) top[i] = m - l + i + 1;
            IndexTuple full = IndexTuple::make(top, m);
            long hits = 0;
            for (const EchelonMatrix& M : enumerate_variety(F, full, kCap))
                if (oracle_member(F, M, alpha)) {
                    ++hits;
                    CHECK(seen.count(M) == 1);
                }
            CHECK(BigInt(hits) == point_count(alpha, F.q()));
        }
    }
}

TEST_CASE("variety order is cells in tuple order, odometer inside") {
    Field F = Field::from_order(2);
    IndexTuple alpha = parse_tuple("2,4");
    auto pts = enumerate_variety(F, alpha, kCap);
    std::vector<IndexTuple> pivot_seq;
    for (const EchelonMatrix& M : pts) pivot_seq.push_back(M.pivots);
    CHECK(std::is_sorted(pivot_seq.begin(), pivot_seq.end()));
    // per-cell slices equal the cell enumeration
    size_t at = 0;
    for (const IndexTuple& beta : nabla(alpha)) {
        for (const EchelonMatrix& M : enumerate_cell(F, beta)) {
            REQUIRE(at < pts.size());
            CHECK(pts[at] == M);
            ++at;
        }
    }
    CHECK(at == pts.size());
}

TEST_CASE("enumeration guards") {
    Field F = Field::from_order(2);
    CHECK_THROWS_AS(enumerate_variety(F, parse_tuple("2,4"), BigInt(5)), CapExceeded);
    CHECK_THROWS_AS(enumerate_variety(F, parse_tuple("2,4", 5), kCap), BadInput);
    CHECK_NOTHROW(enumerate_variety(F, parse_tuple("2,4"), BigInt(19)));
}

TEST_CASE("flag intersection dimensions agree with the elimination oracle") {
    for (long q : {2L, 3L}) {
        Field F = Field::from_order(q);
        IndexTuple full = parse_tuple("2,3,4");
        for (const EchelonMatrix& M : enumerate_variety(F, full, kCap))
            for (int c = 0; c <= 4; ++c)
                CHECK(flag_intersection_dim(M, c) == oracle_flag_dim(F, M, c));
    }
}

TEST_CASE("Pluecker coordinates: pivot minor 1, support, quadric, injectivity") {
    for (long q : {2L, 3L}) {
        Field F = Field::from_order(q);
        auto all = enumerate_index_tuples(2, 4);
        IndexTuple top = parse_tuple("3,4");
        std::set<std::vector<uint16_t>> images;
        for (const EchelonMatrix& M : enumerate_variety(F, top, kCap)) {
            PluckerVector pv = plucker(F, M, all);
            REQUIRE(pv.coords.size() == all.size());

            // pivot minor is 1; a minor vanishes unless its tuple is
            // componentwise <= the pivot tuple
            for (size_t t = 0; t < all.size(); ++t) {
                if (all[t] == M.pivots) CHECK(pv.coords[t] == 1);
                if (!bruhat_leq(all[t], M.pivots)) CHECK(pv.coords[t] == 0);
            }

            // classical quadric: p12 p34 - p13 p24 + p14 p23 = 0
            auto at = [&](int a, int b) {
                IndexTuple t = IndexTuple::make({a, b}, 4);
                for (size_t i = 0; i < all.size(); ++i)
                    if (all[i] == t) return static_cast<int>(pv.coords[i]);
                return -1;
            };
            int rel = F.sub(F.mul(at(1, 2), at(3, 4)), F.mul(at(1, 3), at(2, 4)));
            rel = F.add(rel, F.mul(at(1, 4), at(2, 3)));
            CHECK(rel == 0);

            CHECK(images.insert(pv.coords).second); // injective on points
        }
        CHECK(BigInt(images.size()) == gaussian_binomial(4, 2, q));
    }
}

TEST_CASE("restricted Pluecker vector is the filtered full vector") {
    Field F = Field::from_order(3);
    IndexTuple alpha = parse_tuple("2,4");
    auto all = enumerate_index_tuples(2, 4);
    auto nb = nabla(alpha);
    for (const EchelonMatrix& M : enumerate_variety(F, alpha, kCap)) {
        PluckerVector full = plucker(F, M, all);
        std::vector<uint16_t> restricted = plucker_restricted(F, M, nb);
        REQUIRE(restricted.size() == nb.size());
        size_t at = 0;
        for (size_t t = 0; t < all.size(); ++t)
            if (bruhat_leq(all[t], alpha)) CHECK(restricted[at++] == full.coords[t]);
        // a point of the variety has zero minors outside nabla(alpha)
        for (size_t t = 0; t < all.size(); ++t)
            if (!bruhat_leq(all[t], alpha)) CHECK(full.coords[t] == 0);
    }
}

TEST_CASE("zero-column embedding") {
    Field F = Field::from_order(2);
    for (const EchelonMatrix& M : enumerate_variety(F, parse_tuple("2,3", 3), kCap)) {
        EchelonMatrix E = embed(M, 5);
        CHECK(E.cols() == 5);
        CHECK(E.pivots.entries == M.pivots.entries);
        CHECK(E.pivots.m == 5);
        CHECK(is_canonical(E));
        for (int r = 0; r < M.rows(); ++r) {
            for (int c = 0; c < 3; ++c) CHECK(E.at(r, c) == M.at(r, c));
            CHECK(E.at(r, 3) == 0);
            CHECK(E.at(r, 4) == 0);
        }
    }
    CHECK_THROWS_AS(embed(enumerate_variety(F, parse_tuple("2,3", 3), kCap)[0], 2), BadInput);
}

TEST_CASE("strings: projection, fibers, partition") {
    for (long q : {2L, 3L}) {
        Field F = Field::from_order(q);
        IndexTuple alpha = parse_tuple("2,4");
        IndexTuple ac = alpha_check(alpha);

        std::map<StringLabel, std::vector<EchelonMatrix>> buckets;
        long below = 0;
        for (const EchelonMatrix& M : enumerate_variety(F, alpha, kCap)) {
            if (M.pivots.back() == alpha.m)
                buckets[string_projection(M)].push_back(M);
            else {
                ++below;
                CHECK_THROWS_AS(string_projection(M), BadInput);
            }
        }
        // q^{m-l} fibers, each a copy of the check-variety
        CHECK(BigInt(buckets.size()) == ipow(q, alpha.m - alpha.ell()));
        CHECK(BigInt(below) == point_count(alpha_prime(alpha), q));
        for (const auto& [nu, pts] : buckets) {
            CHECK(BigInt(pts.size()) == point_count(ac, q));
            std::vector<EchelonMatrix> fiber = string_fiber(F, alpha, nu, kCap);
            std::vector<EchelonMatrix> sorted_pts = pts;
            std::sort(sorted_pts.begin(), sorted_pts.end());
            std::sort(fiber.begin(), fiber.end());
            CHECK(fiber == sorted_pts);
            for (const EchelonMatrix& M : fiber) {
                CHECK(is_canonical(M));
                CHECK(schubert_member(M, alpha));
                CHECK(string_projection(M) == nu);
            }
        }
    }
}

TEST_CASE("frozen string census for the Grassmannian of planes in 4-space") {
    Field F = Field::from_order(2);
    IndexTuple alpha = parse_tuple("2,4");
    long in_stratum = 0;
    for (const EchelonMatrix& M : enumerate_variety(F, alpha, kCap))
        if (M.pivots.back() == 4) ++in_stratum;
    CHECK(in_stratum == 12); // 19 - 7, split as 4 fibers x 3 points
}

#include "schucode/code.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace schucode {

SchubertCode build_code(const Field& F, const IndexTuple& alpha, const BigInt& point_cap) {
    SchubertCode C;
    C.alpha = alpha;
    C.field = &F;
    C.row_tuples = nabla(alpha);
    C.k = static_cast<long>(C.row_tuples.size());

    const BigInt n_big = point_count(alpha, F.q());
    if (n_big > point_cap)
        throw CapExceeded("code length " + n_big.str() + " exceeds point cap " + point_cap.str());
    C.n = static_cast<long>(n_big);

    C.generator.assign(static_cast<size_t>(C.k) * C.n, 0);
    C.column_pivots.reserve(C.n);
    long col = 0;
    for_each_variety_point(F, alpha, point_cap, [&](const EchelonMatrix& M) {
        const std::vector<uint16_t> coords = plucker_restricted(F, M, C.row_tuples);
        bool nonzero = false;
        for (long r = 0; r < C.k; ++r) {
            C.generator[static_cast<size_t>(r) * C.n + col] = coords[r];
            nonzero |= coords[r] != 0;
        }
        if (!nonzero) throw InternalError("zero generator column");
        // the pivot-tuple minor of an echelon matrix is an identity minor
        const auto it = std::lower_bound(C.row_tuples.begin(), C.row_tuples.end(), M.pivots);
        if (it == C.row_tuples.end() || !(*it == M.pivots) ||
            coords[it - C.row_tuples.begin()] != 1)
            throw InternalError("pivot coordinate of a column is not 1");
        C.column_pivots.push_back(M.pivots);
        ++col;
    });
    if (col != C.n) throw InternalError("enumeration produced wrong point count");

    Mat G(static_cast<int>(C.k), static_cast<int>(C.n));
    G.a = C.generator;
    if (rank(F, G) != C.k) throw InternalError("generator matrix is rank-deficient");
    return C;
}

std::vector<uint16_t> codeword(const SchubertCode& C, const std::vector<uint16_t>& coeffs) {
    if (coeffs.size() != static_cast<size_t>(C.k))
        throw BadInput("coefficient vector length must equal the code dimension");
    const Field& F = *C.field;
    std::vector<uint16_t> w(C.n, 0);
    for (long r = 0; r < C.k; ++r) {
        const int c = coeffs[r];
        if (c == 0) continue;
        const uint16_t* row = &C.generator[static_cast<size_t>(r) * C.n];
        for (long j = 0; j < C.n; ++j)
            w[j] = static_cast<uint16_t>(F.add(w[j], F.mul(c, row[j])));
    }
    return w;
}

long weight(const std::vector<uint16_t>& word) {
    long w = 0;
    for (uint16_t x : word) w += x != 0;
    return w;
}

namespace {

// Depth-first scan over one leading-coefficient subtree. Partial codewords
// are shared along the path, so a leaf costs one row update plus a counted
// pass instead of k row updates.
struct ScanWorker {
    const SchubertCode& C;
    const Field& F;
    bool early_exit;
    bool want_distribution;
    std::atomic<long>* shared_best;

    long best = -1;
    std::vector<std::vector<uint16_t>> minimizers;
    std::map<long, long long> dist;

    std::vector<std::vector<uint16_t>> bufs;
    std::vector<uint16_t> coeffs;

    ScanWorker(const SchubertCode& c, bool early, bool distr, std::atomic<long>* sb)
        : C(c), F(*c.field), early_exit(early), want_distribution(distr), shared_best(sb) {
        bufs.assign(C.k + 1, std::vector<uint16_t>(C.n));
        coeffs.assign(C.k, 0);
    }

    void add_row(const std::vector<uint16_t>& src, std::vector<uint16_t>& dst, long row, int c) {
        const uint16_t* g = &C.generator[static_cast<size_t>(row) * C.n];
        for (long j = 0; j < C.n; ++j)
            dst[j] = static_cast<uint16_t>(F.add(src[j], F.mul(c, g[j])));
    }

    void record(long w) {
        if (want_distribution) ++dist[w];
        if (best < 0 || w < best) {
            best = w;
            minimizers.clear();
            minimizers.push_back(coeffs);
            // shared floor for cross-worker pruning; only ever decreases
            long cur = shared_best->load(std::memory_order_relaxed);
            while (w < cur &&
                   !shared_best->compare_exchange_weak(cur, w, std::memory_order_relaxed)) {
            }
        } else if (w == best) {
            minimizers.push_back(coeffs);
        }
    }

    // weight of acc + c * row, counted with an early cutoff: any word that
    // provably exceeds the current floor can be abandoned, ties cannot
    void leaf(const std::vector<uint16_t>& acc, long row, int c) {
        long cutoff = C.n;
        if (early_exit) {
            const long sb = shared_best->load(std::memory_order_relaxed);
            cutoff = (best >= 0 && best < sb) ? best : sb;
            if (cutoff < 0) cutoff = C.n;
        }
        long w = 0;
        if (c == 0) {
            for (long j = 0; j < C.n; ++j) {
                w += acc[j] != 0;
                if (w > cutoff) return;
            }
        } else {
            const uint16_t* g = &C.generator[static_cast<size_t>(row) * C.n];
            for (long j = 0; j < C.n; ++j) {
                w += F.add(acc[j], F.mul(c, g[j])) != 0;
                if (w > cutoff) return;
            }
        }
        record(w);
    }

    void dfs(long pos, const std::vector<uint16_t>& acc) {
        const int q = F.q();
        if (pos == C.k - 1) {
            for (int c = 0; c < q; ++c) {
                coeffs[pos] = static_cast<uint16_t>(c);
                leaf(acc, pos, c);
            }
            coeffs[pos] = 0;
            return;
        }
        for (int c = 0; c < q; ++c) {
            coeffs[pos] = static_cast<uint16_t>(c);
            if (c == 0) {
                dfs(pos + 1, acc);
            } else {
                add_row(acc, bufs[pos], pos, c);
                dfs(pos + 1, bufs[pos]);
            }
        }
        coeffs[pos] = 0;
    }

    // one job: fixed leading position plus a fixed digit prefix after it
    void run(long lead, const std::vector<int>& prefix) {
        std::fill(coeffs.begin(), coeffs.end(), 0);
        coeffs[lead] = 1;
        std::vector<uint16_t>& base = bufs[C.k];
        const uint16_t* g = &C.generator[static_cast<size_t>(lead) * C.n];
        std::copy(g, g + C.n, base.begin());
        const std::vector<uint16_t>* acc = &base;
        long pos = lead + 1;
        for (int digit : prefix) {
            coeffs[pos] = static_cast<uint16_t>(digit);
            if (digit != 0) {
                add_row(*acc, bufs[pos], pos, digit);
                acc = &bufs[pos];
            }
            ++pos;
        }
        if (pos >= C.k) {
            leaf(*acc, 0, 0); // codeword complete; c == 0 counts acc as-is
        } else {
            dfs(pos, *acc);
        }
        std::fill(coeffs.begin(), coeffs.end(), 0);
    }
};

struct Job {
    long lead;
    std::vector<int> prefix;
};

// Jobs in lexicographic order of the functionals they cover: leading
// position descending (more leading zeros first), prefix digits ascending.
std::vector<Job> make_jobs(long k, int q) {
    std::vector<Job> jobs;
    for (long lead = k - 1; lead >= 0; --lead) {
        const long suffix_len = k - 1 - lead;
        const int plen = static_cast<int>(std::min<long>(suffix_len, 2));
        if (plen == 0) {
            jobs.push_back({lead, {}});
            continue;
        }
        std::vector<int> digits(plen, 0);
        while (true) {
            jobs.push_back({lead, digits});
            int i = plen - 1;
            while (i >= 0 && digits[i] == q - 1) digits[i--] = 0;
            if (i < 0) break;
            ++digits[i];
        }
    }
    return jobs;
}

} // namespace

WeightReport min_weight(const SchubertCode& C, const ScanOptions& opts) {
    const Field& F = *C.field;
    const int q = F.q();
    const BigInt classes = (ipow(q, C.k) - 1) / (q - 1);
    if (classes > opts.scan_cap)
        throw CapExceeded("projective scan size " + classes.str() + " exceeds cap " +
                          opts.scan_cap.str());

    const bool early = opts.early_exit && !opts.want_distribution;
    std::atomic<long> shared_best{C.n + 1};

    const std::vector<Job> jobs = make_jobs(C.k, q);
    std::vector<ScanWorker> results;
    results.reserve(jobs.size());
    for (size_t i = 0; i < jobs.size(); ++i)
        results.emplace_back(C, early, opts.want_distribution, &shared_best);

    const int workers = std::max(1, opts.workers);
    std::atomic<size_t> next{0};
    auto drain = [&]() {
        for (size_t j = next.fetch_add(1); j < jobs.size(); j = next.fetch_add(1))
            results[j].run(jobs[j].lead, jobs[j].prefix);
    };
    if (workers == 1) {
        drain();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < workers; ++t) pool.emplace_back(drain);
        for (auto& th : pool) th.join();
    }

    WeightReport rep;
    rep.n = C.n;
    rep.k = C.k;
    rep.q_delta = ipow(q, delta(C.alpha));
    long best = -1;
    for (const auto& r : results)
        if (r.best >= 0 && (best < 0 || r.best < best)) best = r.best;
    if (best < 0) throw InternalError("weight scan found no codeword");
    rep.d = best;
    rep.e = C.n - best;
    rep.matches_prediction = BigInt(best) == rep.q_delta;

    for (const auto& r : results) {
        if (r.best != best) continue;
        for (const auto& c : r.minimizers) {
            Minimizer mz;
            mz.coeffs = c;
            mz.weight = best;
            rep.minimizers.push_back(std::move(mz));
        }
    }
    std::sort(rep.minimizers.begin(), rep.minimizers.end(),
              [](const Minimizer& a, const Minimizer& b) { return a.coeffs < b.coeffs; });

    if (opts.want_distribution) {
        rep.has_distribution = true;
        for (const auto& r : results)
            for (const auto& [w, cnt] : r.dist) rep.distribution[w] += cnt;
        BigInt total = 0;
        for (const auto& [w, cnt] : rep.distribution) total += cnt;
        if (total != classes) throw InternalError("distribution counts do not sum to class count");
    }
    return rep;
}

WeightReport weight_distribution(const SchubertCode& C, ScanOptions opts) {
    opts.want_distribution = true;
    opts.early_exit = false;
    return min_weight(C, opts);
}

WeightReport mwcc_check(const SchubertCode& C, const ScanOptions& opts, const BigInt& dual_cap) {
    WeightReport rep = min_weight(C, opts);
    const Field& F = *C.field;

    const DualScan scan = build_dual_scan(F, C.alpha, dual_cap);
    rep.mwcc_ran = true;

    for (auto& mz : rep.minimizers) {
        const std::vector<uint16_t> norm = projective_normalize(F, mz.coeffs);
        const DualScan::Entry* e = scan.find(norm);
        const bool sd = e != nullptr && e->has_flag_witness;
        mz.schubert_decomposable = sd;
        if (sd) mz.witness = e->witness;
        if (!sd) ++rep.counterexamples;
    }

    // converse: every Schubert decomposable section attains exactly q^delta
    for (const auto& e : scan.entries) {
        if (!e.has_flag_witness) continue;
        ++rep.sd_sections;
        const long w = weight(codeword(C, e.coeffs));
        if (BigInt(w) != rep.q_delta) ++rep.sd_weight_violations;
    }
    return rep;
}

} // namespace schucode

#include "schucode/combinat.hpp"

#include <cmath>
#include <sstream>

namespace schucode {

IndexTuple IndexTuple::make(std::vector<int> entries, int m) {
    if (entries.empty()) throw BadInput("index tuple must be nonempty");
    if (m < 1 || m > 64) throw BadInput("ambient dimension m out of range [1,64]");
    int prev = 0;
    for (int a : entries) {
        if (a <= prev) throw BadInput("index tuple entries must be strictly increasing");
        prev = a;
    }
    if (prev > m) throw BadInput("index tuple entry " + std::to_string(prev) +
                                 " exceeds ambient dimension " + std::to_string(m));
    IndexTuple t;
    t.entries = std::move(entries);
    t.m = m;
    return t;
}

std::string IndexTuple::to_string() const {
    std::ostringstream os;
    for (size_t i = 0; i < entries.size(); ++i) {
        if (i) os << ',';
        os << entries[i];
    }
    return os.str();
}

IndexTuple parse_tuple(const std::string& text, int m) {
    std::vector<int> entries;
    std::istringstream is(text);
    std::string part;
    while (std::getline(is, part, ',')) {
        const auto first = part.find_first_not_of(" \t");
        const auto last = part.find_last_not_of(" \t");
        std::string token = first == std::string::npos ? "" : part.substr(first, last - first + 1);
        try {
            size_t pos = 0;
            const int v = std::stoi(token, &pos);
            if (pos != token.size()) throw BadInput("");
            entries.push_back(v);
        } catch (const std::exception&) {
            throw BadInput("cannot parse tuple entry '" + part + "'");
        }
    }
    if (entries.empty()) throw BadInput("empty tuple '" + text + "'");
    const int ambient = m == 0 ? entries.back() : m;
    return IndexTuple::make(std::move(entries), ambient);
}

std::vector<IndexTuple> enumerate_index_tuples(int ell, int m) {
    if (ell < 1 || m < ell) throw BadInput("need 1 <= l <= m");
    std::vector<IndexTuple> out;
    std::vector<int> cur(ell);
    for (int i = 0; i < ell; ++i) cur[i] = i + 1;
    while (true) {
        out.push_back(IndexTuple{cur, m});
        // next combination in lexicographic order
        int i = ell - 1;
        while (i >= 0 && cur[i] == m - (ell - 1 - i)) --i;
        if (i < 0) break;
        ++cur[i];
        for (int j = i + 1; j < ell; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

bool bruhat_leq(const IndexTuple& a, const IndexTuple& b) {
    if (a.ell() != b.ell() || a.m != b.m)
        throw BadInput("tuple shape mismatch: (" + a.to_string() + ") in m=" + std::to_string(a.m) +
                       " vs (" + b.to_string() + ") in m=" + std::to_string(b.m));
    for (int i = 0; i < a.ell(); ++i)
        if (a.entries[i] > b.entries[i]) return false;
    return true;
}

std::vector<IndexTuple> nabla(const IndexTuple& alpha) {
    std::vector<IndexTuple> out;
    for (auto& b : enumerate_index_tuples(alpha.ell(), alpha.m))
        if (bruhat_leq(b, alpha)) out.push_back(b);
    return out;
}

std::vector<IndexTuple> delta_set(const IndexTuple& alpha) {
    std::vector<IndexTuple> out;
    for (auto& b : enumerate_index_tuples(alpha.ell(), alpha.m))
        if (!bruhat_leq(b, alpha)) out.push_back(b);
    return out;
}

long k_alpha(const IndexTuple& alpha) {
    long n = 0;
    // count without materializing: product structure is not available for
    // general alpha, so walk I(l,m) once
    for (auto& b : enumerate_index_tuples(alpha.ell(), alpha.m))
        if (bruhat_leq(b, alpha)) ++n;
    return n;
}

int delta(const IndexTuple& alpha) {
    int s = 0;
    for (int a : alpha.entries) s += a;
    return s - alpha.ell() * (alpha.ell() + 1) / 2;
}

BigInt gaussian_binomial(int m, int ell, long q) {
    if (ell < 0 || m < 0 || ell > m) throw BadInput("gaussian binomial needs 0 <= l <= m");
    if (q < 2) throw BadInput("q must be >= 2");
    BigInt num = 1, den = 1;
    const BigInt qm = ipow(q, m), ql = ipow(q, ell);
    for (int i = 0; i < ell; ++i) {
        const BigInt qi = ipow(q, i);
        num *= qm - qi;
        den *= ql - qi;
    }
    if (num % den != 0) throw InternalError("gaussian binomial division not exact");
    return num / den;
}

bool is_consecutive(const IndexTuple& alpha) {
    for (int i = 1; i < alpha.ell(); ++i)
        if (alpha.entries[i] - alpha.entries[i - 1] >= 2) return false;
    return true;
}

int kink_index(const IndexTuple& alpha) {
    for (int j = alpha.ell() - 1; j >= 1; --j)
        if (alpha.entries[j] - alpha.entries[j - 1] >= 2) return j; // 1-based: entries[j] = alpha_{j+1}
    throw BadInput("(" + alpha.to_string() + ") is consecutive; it has no kink");
}

BlockStructure block_structure(const IndexTuple& alpha) {
    BlockStructure bs;
    bs.p.push_back(0);
    for (int j = 1; j < alpha.ell(); ++j)
        if (alpha.entries[j] - alpha.entries[j - 1] >= 2) bs.p.push_back(j);
    bs.u = static_cast<int>(bs.p.size()) - 1;
    bs.p.push_back(alpha.ell());
    return bs;
}

IndexTuple alpha_prime(const IndexTuple& alpha) {
    const int k = kink_index(alpha);
    std::vector<int> e = alpha.entries;
    for (int i = k; i < alpha.ell(); ++i) --e[i];
    return IndexTuple::make(std::move(e), alpha.m - 1);
}

IndexTuple alpha_check(const IndexTuple& alpha) {
    if (alpha.ell() < 2) throw BadInput("alpha-check needs l >= 2");
    std::vector<int> e(alpha.entries.begin(), alpha.entries.end() - 1);
    return IndexTuple::make(std::move(e), alpha.m - 1);
}

IndexTuple truncate(const IndexTuple& alpha, int k) {
    if (k < 1 || k > alpha.ell()) throw BadInput("truncation length out of range");
    std::vector<int> e(alpha.entries.begin(), alpha.entries.begin() + k);
    return IndexTuple::make(std::move(e), alpha.m);
}

IndexTuple phi_lift(const IndexTuple& beta, const IndexTuple& alpha) {
    const int k = kink_index(alpha);
    if (beta.ell() != alpha.ell() || beta.m != alpha.m - 1)
        throw BadInput("phi-lift domain is nabla(alpha') in ambient m-1");
    if (!bruhat_leq(beta, alpha_prime(alpha)))
        throw BadInput("(" + beta.to_string() + ") is not below alpha'");
    std::vector<int> e = beta.entries;
    for (int i = k; i < beta.ell(); ++i) ++e[i];
    return IndexTuple::make(std::move(e), alpha.m);
}

std::vector<IndexTuple> missing_cells(const IndexTuple& alpha) {
    const int k = kink_index(alpha); // 1-based
    std::vector<IndexTuple> out;
    for (auto& g : nabla(alpha))
        if (g.entries[k] - g.entries[k - 1] == 1) out.push_back(g);
    return out;
}

BigInt point_count(const IndexTuple& alpha, long q) {
    if (q < 2) throw BadInput("q must be >= 2");
    BigInt total = 0;
    for (auto& b : nabla(alpha)) total += ipow(q, delta(b));
    return total;
}

CountProfile count_profile(const IndexTuple& alpha, long q) {
    CountProfile cp;
    cp.q = q;
    cp.a.assign(delta(alpha) + 1, 0);
    cp.total = 0;
    for (auto& b : nabla(alpha)) {
        const int d = delta(b);
        ++cp.a[d];
        cp.total += ipow(q, d);
    }
    return cp;
}

double q0(int ell) {
    if (ell < 2) throw BadInput("q0 is defined for l >= 2");
    const double r = std::exp2(1.0 / (ell - 1));
    return r / (r - 1.0);
}

bool q_exceeds_q0(long q, int ell) {
    if (ell < 2) throw BadInput("q0 is defined for l >= 2");
    if (q < 2) throw BadInput("q must be >= 2");
    return 2 * ipow(q - 1, ell - 1) > ipow(q, ell - 1);
}

Reduction reduce(const IndexTuple& alpha) {
    Reduction r;
    r.original_m = alpha.m;
    r.changed = alpha.back() != alpha.m;
    r.alpha = IndexTuple::make(alpha.entries, alpha.back());
    return r;
}

} // namespace schucode

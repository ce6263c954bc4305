#include "schucode/exterior.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace schucode {

namespace {

// index of an increasing tuple within enumerate_index_tuples(d, m):
// combinatorial rank, no table needed
size_t tuple_rank(const std::vector<int>& t, int m) {
    const int d = static_cast<int>(t.size());
    auto choose = [](long long n, long long k) {
        if (k < 0 || k > n) return 0LL;
        long long r = 1;
        for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
        return r;
    };
    long long rank = 0;
    int prev = 0;
    for (int i = 0; i < d; ++i) {
        for (int v = prev + 1; v < t[i]; ++v) rank += choose(m - v, d - i - 1);
        prev = t[i];
    }
    return static_cast<size_t>(rank);
}

long long binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

} // namespace

Multivector zero_multivector(int degree, int m) {
    if (degree < 0 || degree > m) throw BadInput("multivector degree out of range");
    Multivector z;
    z.degree = degree;
    z.m = m;
    z.coeffs.assign(static_cast<size_t>(binom(m, degree)), 0);
    return z;
}

Multivector wedge(const Field& F, const Multivector& z, const std::vector<uint16_t>& x) {
    if (static_cast<int>(x.size()) != z.m) throw BadInput("vector length must equal m");
    if (z.degree >= z.m) throw BadInput("wedge would exceed the top degree");
    Multivector out = zero_multivector(z.degree + 1, z.m);

    static const std::vector<int> kEmpty;
    const auto tuples = (z.degree == 0)
                            ? std::vector<IndexTuple>{}
                            : enumerate_index_tuples(z.degree, z.m);
    const size_t nt = z.degree == 0 ? 1 : tuples.size();
    std::vector<int> merged(z.degree + 1);
    for (size_t t = 0; t < nt; ++t) {
        const int c = z.coeffs[t];
        if (c == 0) continue;
        const std::vector<int>& base = z.degree == 0 ? kEmpty : tuples[t].entries;
        for (int j = 1; j <= z.m; ++j) {
            const int xj = x[j - 1];
            if (xj == 0) continue;
            if (std::find(base.begin(), base.end(), j) != base.end()) continue;
            int above = 0;
            for (int b : base)
                if (b > j) ++above;
            merged.assign(base.begin(), base.end());
            merged.insert(std::upper_bound(merged.begin(), merged.end(), j), j);
            int term = F.mul(c, xj);
            if (above & 1) term = F.neg(term);
            const size_t idx = tuple_rank(merged, z.m);
            out.coeffs[idx] = static_cast<uint16_t>(F.add(out.coeffs[idx], term));
        }
    }
    return out;
}

Multivector wedge_rows(const Field& F, const EchelonMatrix& M) {
    Multivector z = zero_multivector(0, M.cols());
    z.coeffs[0] = 1;
    std::vector<uint16_t> row(M.cols());
    for (int i = 0; i < M.rows(); ++i) {
        for (int j = 0; j < M.cols(); ++j) row[j] = static_cast<uint16_t>(M.at(i, j));
        z = wedge(F, z, row);
    }
    return z;
}

std::vector<std::vector<uint16_t>> support_space(const Field& F, const Multivector& z) {
    if (z.degree >= z.m) {
        // top degree: every vector wedges to zero
        std::vector<std::vector<uint16_t>> basis;
        for (int j = 0; j < z.m; ++j) {
            std::vector<uint16_t> v(z.m, 0);
            v[j] = 1;
            basis.push_back(std::move(v));
        }
        return basis;
    }
    // columns: images z ^ e_j, rows: coordinates of degree+1 wedges
    const long long out_dim = binom(z.m, z.degree + 1);
    Mat A(static_cast<int>(out_dim), z.m);
    std::vector<uint16_t> e(z.m, 0);
    for (int j = 0; j < z.m; ++j) {
        e[j] = 1;
        const Multivector w = wedge(F, z, e);
        e[j] = 0;
        for (long long r = 0; r < out_dim; ++r) A.at(static_cast<int>(r), j) = w.coeffs[r];
    }
    return kernel_basis(F, A);
}

bool is_decomposable(const Field& F, const Multivector& z) {
    if (z.is_zero()) throw BadInput("decomposability is defined for nonzero multivectors");
    return static_cast<int>(support_space(F, z).size()) == z.degree;
}

bool is_schubert_decomposable(const Field& F, const Multivector& z, const IndexTuple& alpha) {
    if (z.degree != alpha.m - alpha.ell())
        throw BadInput("degree must be m - l for the alpha at hand");
    if (!is_decomposable(F, z)) return false;
    const auto basis = support_space(F, z);
    Mat B(static_cast<int>(basis.size()), z.m);
    for (size_t i = 0; i < basis.size(); ++i)
        for (int j = 0; j < z.m; ++j) B.at(static_cast<int>(i), j) = basis[i][j];
    const BlockStructure bs = block_structure(alpha);
    for (int i = 1; i <= bs.u; ++i) {
        const int pi = bs.p[i];
        const int c = alpha.entries[pi - 1]; // alpha_{p_i}
        const int d = B.rows - rank_of_columns(F, B, c, z.m);
        if (d != c - pi) return false;
    }
    return true;
}

IndexTuple complement_tuple(const IndexTuple& beta) {
    std::vector<bool> in(beta.m + 1, false);
    for (int b : beta.entries) in[b] = true;
    std::vector<int> comp;
    for (int v = 1; v <= beta.m; ++v)
        if (!in[v]) comp.push_back(v);
    return IndexTuple::make(std::move(comp), beta.m);
}

HyperplaneSection make_section(const IndexTuple& alpha, std::vector<uint16_t> coeffs) {
    if (alpha.back() != alpha.m) throw BadInput("sections expect alpha_l = m; reduce first");
    HyperplaneSection f;
    f.alpha = alpha;
    f.coeffs = std::move(coeffs);
    if (f.coeffs.size() != static_cast<size_t>(k_alpha(alpha)))
        throw BadInput("section needs one coefficient per tuple of nabla(alpha)");
    return f;
}

std::vector<uint16_t> projective_normalize(const Field& F, std::vector<uint16_t> coeffs) {
    for (uint16_t c : coeffs) {
        if (c == 0) continue;
        if (c != 1) {
            const int s = F.inv(c);
            for (auto& x : coeffs) x = static_cast<uint16_t>(F.mul(x, s));
        }
        break;
    }
    return coeffs;
}

Multivector hyperplane_multivector(const Field& F, const HyperplaneSection& f) {
    (void)F;
    Multivector z = zero_multivector(f.alpha.m - f.alpha.ell(), f.alpha.m);
    const auto nb = nabla(f.alpha);
    for (size_t t = 0; t < nb.size(); ++t) {
        if (f.coeffs[t] == 0) continue;
        const IndexTuple comp = complement_tuple(nb[t]);
        z.coeffs[tuple_rank(comp.entries, f.alpha.m)] = f.coeffs[t];
    }
    return z;
}

HyperplaneSection multivector_section(const Field& F, const Multivector& z,
                                      const IndexTuple& alpha) {
    (void)F;
    if (z.degree != alpha.m - alpha.ell() || z.m != alpha.m)
        throw BadInput("multivector shape does not match alpha");
    const auto nb = nabla(alpha);
    std::vector<uint16_t> coeffs(nb.size());
    for (size_t t = 0; t < nb.size(); ++t)
        coeffs[t] = z.coeffs[tuple_rank(complement_tuple(nb[t]).entries, alpha.m)];
    HyperplaneSection f;
    f.alpha = alpha;
    f.coeffs = std::move(coeffs);
    return f;
}

int complement_sign(const Field& F, const IndexTuple& beta) {
    const IndexTuple comp = complement_tuple(beta);
    long inversions = 0;
    for (int a : comp.entries)
        for (int b : beta.entries)
            if (a > b) ++inversions;
    return (inversions & 1) ? F.neg(1) : 1;
}

int evaluate(const Field& F, const HyperplaneSection& f, const std::vector<uint16_t>& plucker) {
    if (plucker.size() != f.coeffs.size())
        throw BadInput("pluecker vector and section have different lengths");
    int acc = 0;
    for (size_t t = 0; t < f.coeffs.size(); ++t)
        acc = F.add(acc, F.mul(f.coeffs[t], plucker[t]));
    return acc;
}

int wedge_evaluate(const Field& F, const Multivector& z, const EchelonMatrix& M) {
    if (z.m != M.cols() || z.degree != z.m - M.rows())
        throw BadInput("wedge evaluation needs degree m - l against an l x m point");
    Multivector w = z;
    std::vector<uint16_t> row(z.m);
    for (int i = 0; i < M.rows(); ++i) {
        for (int j = 0; j < z.m; ++j) row[j] = static_cast<uint16_t>(M.at(i, j));
        w = wedge(F, w, row);
    }
    return w.coeffs[0]; // C(m,m) = 1 coordinate: the top wedge
}

std::string format_section(const HyperplaneSection& f) {
    const auto nb = nabla(f.alpha);
    std::ostringstream os;
    bool first = true;
    for (size_t t = 0; t < nb.size(); ++t) {
        if (f.coeffs[t] == 0) continue;
        if (!first) os << " + ";
        os << static_cast<int>(f.coeffs[t]) << "*X[" << nb[t].to_string() << "]";
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

HyperplaneSection parse_section(const std::string& text, const IndexTuple& alpha) {
    const auto nb = nabla(alpha);
    std::map<std::vector<int>, size_t> index;
    for (size_t t = 0; t < nb.size(); ++t) index[nb[t].entries] = t;
    std::vector<uint16_t> coeffs(nb.size(), 0);

    std::string s = text;
    // split on '+' (terms are "c*X[i,j,...]" or the literal "0")
    std::istringstream is(s);
    std::string term;
    while (std::getline(is, term, '+')) {
        // trim
        const auto b = term.find_first_not_of(" \t");
        const auto e = term.find_last_not_of(" \t");
        if (b == std::string::npos) throw BadInput("empty term in functional");
        term = term.substr(b, e - b + 1);
        if (term == "0") continue;
        const auto star = term.find("*X[");
        if (star == std::string::npos || term.back() != ']')
            throw BadInput("term '" + term + "' is not of the form c*X[i,j]");
        int c;
        try {
            c = std::stoi(term.substr(0, star));
        } catch (const std::exception&) {
            throw BadInput("cannot parse coefficient in '" + term + "'");
        }
        const std::string tup = term.substr(star + 3, term.size() - star - 4);
        const IndexTuple bt = parse_tuple(tup, alpha.m);
        const auto it = index.find(bt.entries);
        if (it == index.end())
            throw BadInput("tuple (" + tup + ") is not in nabla(" + alpha.to_string() + ")");
        coeffs[it->second] = static_cast<uint16_t>(c);
    }
    return make_section(alpha, std::move(coeffs));
}

const DualScan::Entry* DualScan::find(const std::vector<uint16_t>& c) const {
    auto lo = by_coeffs_index.begin(), hi = by_coeffs_index.end();
    while (lo != hi) {
        auto mid = lo + (hi - lo) / 2;
        if (entries[*mid].coeffs < c)
            lo = mid + 1;
        else
            hi = mid;
    }
    if (lo != by_coeffs_index.end() && entries[*lo].coeffs == c) return &entries[*lo];
    return nullptr;
}

DualScan build_dual_scan(const Field& F, const IndexTuple& alpha, BigInt dual_cap) {
    const int ell = alpha.ell(), m = alpha.m;
    if (alpha.back() != m) throw BadInput("dual scan expects alpha_l = m");
    const BigInt candidates = gaussian_binomial(m, m - ell, F.q());
    if (candidates > dual_cap)
        throw CapExceeded("dual Grassmannian size " + candidates.str() + " exceeds cap " +
                          dual_cap.str());

    const auto nb = nabla(alpha);
    const BlockStructure bs = block_structure(alpha);
    std::vector<size_t> comp_rank(nb.size());
    for (size_t t = 0; t < nb.size(); ++t)
        comp_rank[t] = tuple_rank(complement_tuple(nb[t]).entries, m);

    DualScan scan;
    std::map<std::vector<uint16_t>, size_t> seen;

    std::vector<int> top(m - ell);
    for (int i = 0; i < m - ell; ++i) top[i] = ell + 1 + i;
    const IndexTuple dual_top = IndexTuple::make(top, m);

    for_each_variety_point(F, dual_top, candidates, [&](const EchelonMatrix& W) {
        const Multivector z = wedge_rows(F, W);
        std::vector<uint16_t> r(nb.size());
        bool nonzero = false;
        for (size_t t = 0; t < nb.size(); ++t) {
            r[t] = z.coeffs[comp_rank[t]];
            nonzero |= r[t] != 0;
        }
        if (!nonzero) return;
        r = projective_normalize(F, r);

        bool flags_ok = true;
        for (int i = 1; i <= bs.u && flags_ok; ++i) {
            const int pi = bs.p[i];
            const int c = alpha.entries[pi - 1];
            flags_ok = flag_intersection_dim(W, c) == c - pi;
        }

        auto it = seen.find(r);
        if (it == seen.end()) {
            DualScan::Entry e;
            e.coeffs = r;
            e.has_flag_witness = flags_ok;
            if (flags_ok) e.witness = W;
            seen.emplace(std::move(r), scan.entries.size());
            scan.entries.push_back(std::move(e));
        } else if (flags_ok && !scan.entries[it->second].has_flag_witness) {
            scan.entries[it->second].has_flag_witness = true;
            scan.entries[it->second].witness = W;
        }
    });

    scan.by_coeffs_index.resize(scan.entries.size());
    for (size_t i = 0; i < scan.entries.size(); ++i) scan.by_coeffs_index[i] = i;
    std::sort(scan.by_coeffs_index.begin(), scan.by_coeffs_index.end(),
              [&](size_t a, size_t b) { return scan.entries[a].coeffs < scan.entries[b].coeffs; });
    return scan;
}

SchubertDecomposability hyperplane_is_schubert_decomposable(const Field& F,
                                                            const HyperplaneSection& f,
                                                            BigInt dual_cap) {
    if (f.is_zero()) throw BadInput("the zero functional does not define a hyperplane");
    const std::vector<uint16_t> target = projective_normalize(F, f.coeffs);
    const DualScan scan = build_dual_scan(F, f.alpha, std::move(dual_cap));
    SchubertDecomposability out;
    if (const DualScan::Entry* e = scan.find(target); e != nullptr && e->has_flag_witness) {
        out.decomposable = true;
        out.witness = e->witness;
    }
    return out;
}

} // namespace schucode

#include "schucode/gf.hpp"

#include <algorithm>
#include <string>

namespace schucode {

namespace {

bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; static_cast<long long>(d) * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Polynomials over F_p: coefficient vectors, constant term first.

int poly_degree(const std::vector<int>& f) {
    for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
        if (f[i] != 0) return i;
    return -1;
}

// f mod g, g monic with degree >= 1.
std::vector<int> poly_mod(std::vector<int> f, const std::vector<int>& g, int p) {
    const int dg = poly_degree(g);
    for (int df = poly_degree(f); df >= dg; df = poly_degree(f)) {
        const int lead = f[df];
        for (int i = 0; i <= dg; ++i) {
            int& c = f[df - dg + i];
            c = (c - lead * g[i]) % p;
            if (c < 0) c += p;
        }
    }
    f.resize(dg);
    return f;
}

bool poly_is_zero(const std::vector<int>& f) { return poly_degree(f) < 0; }

// Irreducibility by trial division: a monic polynomial of degree e >= 2 is
// irreducible iff no monic polynomial of degree 1..e/2 divides it. Divisor
// candidates are enumerated exhaustively; the order cap keeps this cheap.
bool is_irreducible(const std::vector<int>& f, int p) {
    const int e = poly_degree(f);
    for (int d = 1; 2 * d <= e; ++d) {
        // all monic divisors x^d + c_{d-1} x^{d-1} + ... + c_0
        std::vector<int> g(d + 1, 0);
        g[d] = 1;
        long long total = 1;
        for (int i = 0; i < d; ++i) total *= p;
        for (long long n = 0; n < total; ++n) {
            long long t = n;
            for (int i = 0; i < d; ++i) {
                g[i] = static_cast<int>(t % p);
                t /= p;
            }
            if (poly_is_zero(poly_mod(f, g, p))) return false;
        }
    }
    return true;
}

// Lexicographically smallest monic irreducible of degree e over F_p,
// coefficient sequences compared constant-term first.
std::vector<int> smallest_irreducible(int p, int e) {
    std::vector<int> f(e + 1, 0);
    f[e] = 1;
    long long total = 1;
    for (int i = 0; i < e; ++i) total *= p;
    for (long long n = 0; n < total; ++n) {
        // c_0 is the most significant comparison key, so it is the slowest
        // digit of n; this walks candidates in the documented lex order
        long long t = n;
        for (int i = e - 1; i >= 0; --i) {
            f[i] = static_cast<int>(t % p);
            t /= p;
        }
        if (is_irreducible(f, p)) return f;
    }
    throw InternalError("no irreducible polynomial found (unreachable)");
}

} // namespace

bool operator==(const FieldElement& a, const FieldElement& b) {
    if (a.field == nullptr || b.field == nullptr)
        return a.field == b.field && a.code == b.code;
    return a.field->same_as(*b.field) && a.code == b.code;
}

Field Field::make(int p, int e, long cap) {
    if (!is_prime(p)) throw BadInput("field characteristic must be prime, got " + std::to_string(p));
    if (e < 1) throw BadInput("field extension degree must be >= 1");
    long long q = 1;
    for (int i = 0; i < e; ++i) {
        q *= p;
        if (q > cap)
            throw CapExceeded("field order " + std::to_string(p) + "^" + std::to_string(e) +
                              " exceeds cap " + std::to_string(cap));
    }

    Field F;
    F.p_ = p;
    F.e_ = e;
    F.q_ = static_cast<int>(q);
    F.modulus_ = (e == 1) ? std::vector<int>{0, 1} : smallest_irreducible(p, e);

    if (F.q_ <= 256) {
        const int qq = F.q_;
        // generator: smallest code whose multiplicative order is q-1
        for (int g = 1; g < qq; ++g) {
            int x = g, order = 1;
            while (x != 1) {
                x = F.mul_raw(x, g);
                ++order;
            }
            if (order == qq - 1) {
                F.generator_ = g;
                break;
            }
        }
        if (F.generator_ < 0) throw InternalError("no multiplicative generator found");

        F.exp_.resize(qq - 1);
        F.log_.assign(qq, 0xFFFF);
        int x = 1;
        for (int i = 0; i < qq - 1; ++i) {
            F.exp_[i] = static_cast<uint16_t>(x);
            F.log_[x] = static_cast<uint16_t>(i);
            x = F.mul_raw(x, F.generator_);
        }

        F.add_tab_.resize(static_cast<size_t>(qq) * qq);
        F.mul_tab_.resize(static_cast<size_t>(qq) * qq);
        F.neg_tab_.resize(qq);
        F.inv_tab_.assign(qq, 0);
        for (int a = 0; a < qq; ++a) {
            F.neg_tab_[a] = static_cast<uint8_t>(F.neg_raw(a));
            for (int b = 0; b < qq; ++b) {
                F.add_tab_[static_cast<size_t>(a) * qq + b] = static_cast<uint8_t>(F.add_raw(a, b));
                F.mul_tab_[static_cast<size_t>(a) * qq + b] =
                    (a == 0 || b == 0)
                        ? 0
                        : F.exp_[(F.log_[a] + F.log_[b]) % (qq - 1)];
            }
            if (a != 0) F.inv_tab_[a] = F.exp_[(qq - 1 - F.log_[a]) % (qq - 1)];
        }
    }
    return F;
}

Field Field::from_order(long q, long cap) {
    if (q < 2) throw BadInput("field order must be >= 2");
    int p = 2;
    while (q % p != 0) {
        ++p;
        if (static_cast<long long>(p) * p > q) {
            p = static_cast<int>(q);
            break;
        }
    }
    long r = q;
    int e = 0;
    while (r % p == 0) {
        r /= p;
        ++e;
    }
    if (r != 1) throw BadInput(std::to_string(q) + " is not a prime power");
    return make(p, e, cap);
}

int Field::generator() const {
    if (generator_ < 0) throw BadInput("generator tables are only built for q <= 256");
    return generator_;
}

int Field::add_raw(int a, int b) const {
    if (e_ == 1) return (a + b) % p_;
    int r = 0, mult = 1;
    for (int i = 0; i < e_; ++i) {
        const int da = (a / mult) % p_;
        const int db = (b / mult) % p_;
        r += ((da + db) % p_) * mult;
        mult *= p_;
    }
    return r;
}

int Field::neg_raw(int a) const {
    if (e_ == 1) return (p_ - a) % p_;
    int r = 0, mult = 1;
    for (int i = 0; i < e_; ++i) {
        const int d = (a / mult) % p_;
        r += ((p_ - d) % p_) * mult;
        mult *= p_;
    }
    return r;
}

int Field::mul_raw(int a, int b) const {
    if (e_ == 1) return static_cast<int>((static_cast<long long>(a) * b) % p_);
    // polynomial product, reduced modulo the field modulus
    std::vector<int> da(e_), db(e_);
    int t = a;
    for (int i = 0; i < e_; ++i) {
        da[i] = t % p_;
        t /= p_;
    }
    t = b;
    for (int i = 0; i < e_; ++i) {
        db[i] = t % p_;
        t /= p_;
    }
    std::vector<int> prod(2 * e_ - 1, 0);
    for (int i = 0; i < e_; ++i) {
        if (da[i] == 0) continue;
        for (int j = 0; j < e_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
    }
    const std::vector<int> rem = poly_mod(std::move(prod), modulus_, p_);
    int r = 0, mult = 1;
    for (int i = 0; i < e_; ++i) {
        if (i < static_cast<int>(rem.size())) r += rem[i] * mult;
        mult *= p_;
    }
    return r;
}

int Field::inv(int a) const {
    if (a == 0) throw BadInput("inverse of zero");
    if (!inv_tab_.empty()) return inv_tab_[a];
    return inv_raw(a);
}

int Field::inv_raw(int a) const { return pow(a, q_ - 2); }

int Field::pow(int a, long long n) const {
    if (n < 0) throw BadInput("negative exponent; invert first");
    int r = 1, base = a;
    while (n > 0) {
        if (n & 1) r = mul(r, base);
        base = mul(base, base);
        n >>= 1;
    }
    return r;
}

FieldElement Field::element(int code) const {
    if (code < 0 || code >= q_)
        throw BadInput("element code " + std::to_string(code) + " out of range for q=" + std::to_string(q_));
    return FieldElement{code, this};
}

std::vector<FieldElement> Field::elements() const {
    std::vector<FieldElement> out;
    out.reserve(q_);
    for (int c = 0; c < q_; ++c) out.push_back(FieldElement{c, this});
    return out;
}

namespace {
const Field& checked_common_field(const FieldElement& a, const FieldElement& b) {
    if (a.field == nullptr || b.field == nullptr) throw BadInput("element has no field");
    if (!a.field->same_as(*b.field)) throw BadInput("elements belong to different fields");
    return *a.field;
}
const Field& checked_field(const FieldElement& a) {
    if (a.field == nullptr) throw BadInput("element has no field");
    return *a.field;
}
} // namespace

FieldElement add(const FieldElement& a, const FieldElement& b) {
    const Field& F = checked_common_field(a, b);
    return FieldElement{F.add(a.code, b.code), a.field};
}
FieldElement sub(const FieldElement& a, const FieldElement& b) {
    const Field& F = checked_common_field(a, b);
    return FieldElement{F.sub(a.code, b.code), a.field};
}
FieldElement mul(const FieldElement& a, const FieldElement& b) {
    const Field& F = checked_common_field(a, b);
    return FieldElement{F.mul(a.code, b.code), a.field};
}
FieldElement neg(const FieldElement& a) {
    const Field& F = checked_field(a);
    return FieldElement{F.neg(a.code), a.field};
}
FieldElement inv(const FieldElement& a) {
    const Field& F = checked_field(a);
    return FieldElement{F.inv(a.code), a.field};
}
FieldElement pow(const FieldElement& a, long long n) {
    const Field& F = checked_field(a);
    return FieldElement{F.pow(a.code, n), a.field};
}

} // namespace schucode

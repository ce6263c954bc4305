#pragma once

#include <cstdint>
#include <vector>

#include "schucode/errors.hpp"

namespace schucode {

class Field;

/// Element of a finite field, tagged with the field it lives in.
///
/// `code` is the base-p integer encoding of the polynomial representative:
/// digit i of the code (least significant first) is the coefficient of x^i.
/// Code 0 is the additive identity, code 1 the multiplicative identity.
struct FieldElement {
    int code = 0;
    const Field* field = nullptr;

    friend bool operator==(const FieldElement& a, const FieldElement& b);
    friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }
};

/// Arithmetic in F_q, q = p^e, p prime, q bounded by an explicit cap.
///
/// Construction is deterministic: for e > 1 the modulus is the
/// lexicographically smallest monic irreducible polynomial of degree e over
/// F_p, comparing coefficient sequences constant-term first. Repeated calls
/// with the same (p, e) therefore always yield the same field.
///
/// A Field is immutable once built; every method is const and safe to share
/// across threads. For q <= 256 construction precomputes log/antilog tables
/// for a deterministic generator plus flat q x q add/mul tables, which the
/// weight-scan hot loops index directly.
class Field {
public:
    static constexpr long kDefaultOrderCap = 4096;

    /// Builds F_{p^e}. Throws BadInput for non-prime p or e < 1,
    /// CapExceeded when p^e > cap.
    static Field make(int p, int e, long cap = kDefaultOrderCap);

    /// Builds the field of order q, factoring q = p^e. Throws BadInput when
    /// q is not a prime power.
    static Field from_order(long q, long cap = kDefaultOrderCap);

    int p() const { return p_; }
    int e() const { return e_; }
    int q() const { return q_; }

    /// e+1 coefficients, constant term first, leading coefficient 1.
    /// For e = 1 this is the degree-1 polynomial x; arithmetic ignores it.
    const std::vector<int>& modulus() const { return modulus_; }

    /// Multiplicative generator used for the log/antilog tables
    /// (smallest such element code); only present when q <= 256.
    int generator() const;
    bool has_tables() const { return !mul_tab_.empty(); }

    // Code-level arithmetic. Codes must be in [0, q); checked with assertions
    // in debug builds only, the hot loops rely on callers staying in range.
    int add(int a, int b) const {
        if (!add_tab_.empty()) return add_tab_[static_cast<size_t>(a) * q_ + b];
        return add_raw(a, b);
    }
    int sub(int a, int b) const { return add(a, neg(b)); }
    int neg(int a) const {
        if (!neg_tab_.empty()) return neg_tab_[a];
        return neg_raw(a);
    }
    int mul(int a, int b) const {
        if (!mul_tab_.empty()) return mul_tab_[static_cast<size_t>(a) * q_ + b];
        return mul_raw(a, b);
    }
    /// Throws BadInput on a == 0.
    int inv(int a) const;
    /// a^n for n >= 0 (0^0 = 1).
    int pow(int a, long long n) const;

    FieldElement element(int code) const;
    /// All q elements, codes ascending.
    std::vector<FieldElement> elements() const;

    /// Value identity: same p, e and modulus. Two Fields that compare equal
    /// are interchangeable, wherever they were constructed.
    bool same_as(const Field& other) const {
        return p_ == other.p_ && e_ == other.e_ && modulus_ == other.modulus_;
    }

    /// Direct table pointers for hot loops; null when q > 256.
    const uint8_t* add_table() const { return add_tab_.empty() ? nullptr : add_tab_.data(); }
    const uint8_t* mul_table() const { return mul_tab_.empty() ? nullptr : mul_tab_.data(); }

private:
    Field() = default;

    int add_raw(int a, int b) const;
    int neg_raw(int a) const;
    int mul_raw(int a, int b) const;
    int inv_raw(int a) const;

    int p_ = 0;
    int e_ = 0;
    int q_ = 0;
    std::vector<int> modulus_;
    int generator_ = -1;

    // q <= 256 only. log_[0] is a sentinel and never read.
    std::vector<uint16_t> log_, exp_;
    std::vector<uint8_t> add_tab_, mul_tab_, neg_tab_, inv_tab_;
};

/// Checked element-level operations; mixing elements of different fields
/// throws BadInput.
FieldElement add(const FieldElement& a, const FieldElement& b);
FieldElement sub(const FieldElement& a, const FieldElement& b);
FieldElement mul(const FieldElement& a, const FieldElement& b);
FieldElement neg(const FieldElement& a);
FieldElement inv(const FieldElement& a);
FieldElement pow(const FieldElement& a, long long n);

inline FieldElement operator+(const FieldElement& a, const FieldElement& b) { return add(a, b); }
inline FieldElement operator-(const FieldElement& a, const FieldElement& b) { return sub(a, b); }
inline FieldElement operator*(const FieldElement& a, const FieldElement& b) { return mul(a, b); }
inline FieldElement operator-(const FieldElement& a) { return neg(a); }

} // namespace schucode

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>
#include <vector>

#include "schucode/errors.hpp"
#include "schucode/gf.hpp"

using namespace schucode;

namespace {

// Orders exercised by the exhaustive-axiom suites.
const long kSmallOrders[] = {2, 3, 4, 5, 7, 8, 9, 11, 13, 16};

// Independent irreducibility test: a monic polynomial of degree e over F_p,
// constant term first, is reducible iff some monic polynomial of degree
// 1..e/2 divides it. Plain schoolbook division mod p, no library code.
bool divides_mod_p(const std::vector<int>& divisor, std::vector<int> target, int p) {
    int dd = static_cast<int>(divisor.size()) - 1;
    for (int top = static_cast<int>(target.size()) - 1; top >= dd; --top) {
        int factor = target[top]; // divisor is monic
        if (factor == 0) continue;
        for (int i = 0; i <= dd; ++i) {
            int& slot = target[top - dd + i];
            slot = ((slot - factor * divisor[i]) % p + p) % p;
        }
    }
    for (int i = 0; i < dd; ++i)
        if (target[i] != 0) return false;
    return true;
}

bool irreducible_mod_p(const std::vector<int>& poly, int p) {
    int deg = static_cast<int>(poly.size()) - 1;
    for (int d = 1; 2 * d <= deg; ++d) {
        // all monic divisors of degree d
        std::vector<int> div(d + 1, 0);
        div[d] = 1;
        while (true) {
            if (divides_mod_p(div, poly, p)) return false;
            int i = 0;
            while (i < d && div[i] == p - 1) div[i++] = 0;
            if (i == d) break;
            ++div[i];
        }
    }
    return true;
}

} // namespace

TEST_CASE("prime field arithmetic is arithmetic mod p") {
    Field F = Field::from_order(7);
    for (int a = 0; a < 7; ++a)
        for (int b = 0; b < 7; ++b) {
            CHECK(F.add(a, b) == (a + b) % 7);
            CHECK(F.mul(a, b) == (a * b) % 7);
        }
    CHECK(F.inv(3) == 5); // 3*5 = 15 = 1 mod 7
    CHECK(Field::from_order(5).inv(3) == 2);
}

TEST_CASE("extension moduli are the lex-smallest monic irreducibles") {
    // Frozen by hand: coefficient vectors are constant term first.
    CHECK(Field::from_order(4).modulus() == std::vector<int>{1, 1, 1});    // x^2+x+1
    CHECK(Field::from_order(9).modulus() == std::vector<int>{1, 0, 1});    // x^2+1
    CHECK(Field::from_order(8).modulus() == std::vector<int>{1, 0, 1, 1}); // x^3+x^2+1
    CHECK(Field::from_order(16).modulus() == std::vector<int>{1, 0, 0, 1, 1}); // x^4+x^3+1

    // Independent oracle: each modulus is irreducible and nothing smaller is.
    for (long q : {4L, 8L, 9L, 16L, 25L, 27L}) {
        Field F = Field::from_order(q);
        const std::vector<int>& mod = F.modulus();
        REQUIRE(static_cast<int>(mod.size()) == F.e() + 1);
        CHECK(mod.back() == 1);
        CHECK(irreducible_mod_p(mod, F.p()));
        std::vector<int> smaller(mod.begin(), mod.end() - 1);
        while (true) { // step backwards through all lex-smaller tails
            int i = F.e() - 1;
            while (i >= 0 && smaller[i] == 0) --i;
            if (i < 0) break;
            --smaller[i];
            for (int j = i + 1; j < F.e(); ++j) smaller[j] = F.p() - 1;
            std::vector<int> candidate = smaller;
            candidate.push_back(1);
            CHECK_FALSE(irreducible_mod_p(candidate, F.p()));
        }
    }
}

TEST_CASE("field axioms hold for every element triple") {
    for (long q : kSmallOrders) {
        CAPTURE(q);
        Field F = Field::from_order(q);
        REQUIRE(F.q() == q);
        for (int a = 0; a < q; ++a) {
            CHECK(F.add(a, 0) == a);
            CHECK(F.mul(a, 1) == a);
            CHECK(F.mul(a, 0) == 0);
            CHECK(F.add(a, F.neg(a)) == 0);
            if (a != 0) {
                CHECK(F.mul(a, F.inv(a)) == 1);
                CHECK(F.inv(F.inv(a)) == a);
            }
            for (int b = 0; b < q; ++b) {
                CHECK(F.add(a, b) == F.add(b, a));
                CHECK(F.mul(a, b) == F.mul(b, a));
                CHECK(F.sub(a, b) == F.add(a, F.neg(b)));
                for (int c = 0; c < q; ++c) {
                    CHECK(F.add(F.add(a, b), c) == F.add(a, F.add(b, c)));
                    CHECK(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)));
                    CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
                }
            }
        }
    }
}

TEST_CASE("x^q = x and the nonzero elements form a cyclic group") {
    for (long q : {2L, 3L, 4L, 5L, 8L, 9L, 16L, 25L, 27L, 32L, 49L, 64L}) {
        CAPTURE(q);
        Field F = Field::from_order(q);
        for (int a = 0; a < q; ++a) CHECK(F.pow(a, q) == a);
        if (q <= 256) {
            int g = F.generator();
            std::set<int> seen;
            int x = 1;
            for (long i = 0; i + 1 < q; ++i) {
                seen.insert(x);
                x = F.mul(x, g);
            }
            CHECK(x == 1); // g^(q-1) = 1
            CHECK(seen.size() == static_cast<size_t>(q - 1));
        }
    }
}

TEST_CASE("known products in F_4") {
    Field F = Field::from_order(4);
    // codes: 0, 1, 2 = x, 3 = x+1, modulo x^2+x+1
    CHECK(F.mul(2, 2) == 3); // x^2 = x+1
    CHECK(F.mul(2, 3) == 1); // x(x+1) = x^2+x = 1
    CHECK(F.add(2, 3) == 1);
    CHECK(F.inv(2) == 3);
}

TEST_CASE("construction rejects bad orders and enforces the cap") {
    CHECK_THROWS_AS(Field::from_order(6), BadInput);
    CHECK_THROWS_AS(Field::from_order(12), BadInput);
    CHECK_THROWS_AS(Field::from_order(0), BadInput);
    CHECK_THROWS_AS(Field::from_order(1), BadInput);
    CHECK_THROWS_AS(Field::make(4, 2), BadInput);  // p must be prime
    CHECK_THROWS_AS(Field::make(2, 0), BadInput);
    CHECK_THROWS_AS(Field::make(2, 13), CapExceeded); // 8192 > default cap
    CHECK_NOTHROW(Field::make(2, 13, 10000));
    CHECK_THROWS_AS(Field::from_order(2).inv(0), BadInput);
}

TEST_CASE("tables exist exactly up to q = 256 and match the raw arithmetic") {
    Field small = Field::from_order(256);
    CHECK(small.has_tables());
    REQUIRE(small.add_table() != nullptr);
    REQUIRE(small.mul_table() != nullptr);
    for (int a = 0; a < 256; a += 7)
        for (int b = 0; b < 256; b += 5) {
            CHECK(small.add_table()[a * 256 + b] == small.add(a, b));
            CHECK(small.mul_table()[a * 256 + b] == small.mul(a, b));
        }

    Field big = Field::from_order(257);
    CHECK_FALSE(big.has_tables());
    CHECK(big.add_table() == nullptr);
    CHECK(big.mul(16, 17) == (16 * 17) % 257);
    CHECK(big.mul(256, 256) == (256 * 256) % 257);
    CHECK(big.inv(2) == 129); // 2*129 = 258 = 1 mod 257
}

TEST_CASE("deterministic reconstruction and value identity") {
    Field a = Field::from_order(9);
    Field b = Field::make(3, 2);
    CHECK(a.same_as(b));
    CHECK(a.modulus() == b.modulus());
    CHECK(a.generator() == b.generator());
    CHECK_FALSE(a.same_as(Field::from_order(3)));
}

TEST_CASE("element-level operations are checked") {
    Field F4 = Field::from_order(4);
    Field F9 = Field::from_order(9);
    FieldElement a = F4.element(2), b = F4.element(3);
    CHECK((a * b).code == 1);
    CHECK((a + b).code == 1);
    CHECK((-a).code == F4.neg(2));
    CHECK(pow(a, 3).code == 1);
    CHECK(inv(a).code == 3);
    CHECK(a == F4.element(2));
    CHECK(a != b);
    FieldElement foreign = F9.element(2);
    CHECK_THROWS_AS(a + foreign, BadInput);
    CHECK_THROWS_AS(a * foreign, BadInput);
    CHECK_THROWS_AS(F4.element(4), BadInput);
    CHECK_THROWS_AS(F4.element(-1), BadInput);
    CHECK(F4.elements().size() == 4);
}

#include <doctest.h>

#include <algorithm>
#include <complex>
#include <numeric>
#include <set>

#include "zetakit/characters.hpp"
#include "zetakit/errors.hpp"

using namespace zetakit;
using cld = std::complex<long double>;

namespace {

bool close(cld a, cld b, long double tol = 1e-15L) { return std::abs(a - b) < tol; }

// Smallest f | q such that chi is trivial on units a = 1 (mod f).
u64 brute_conductor(const DirichletCharacter& chi) {
    const u64 q = chi.modulus();
    for (u64 f : divisors(q)) {
        bool ok = true;
        for (u64 a = 1; a <= q && ok; ++a)
            if (std::gcd(a, q) == 1 && a % f == 1 % f) ok = *chi.value_index(static_cast<i64>(a)) == 0;
        if (ok) return f;
    }
    return q;
}

}  // namespace

TEST_CASE("enumeration examples") {
    const auto t = enumerate_characters(1);
    REQUIRE(t.size() == 1);
    CHECK(t[0].is_principal());
    CHECK(t[0].value(7) == cld(1, 0));

    std::multiset<u64> orders;
    for (const auto& c : enumerate_characters(5)) orders.insert(c.order());
    CHECK(orders == std::multiset<u64>{1, 2, 4, 4});

    const auto e8 = enumerate_characters(8);
    CHECK(e8.size() == 4);
    for (const auto& c : e8)
        for (i64 a = 1; a < 8; a += 2) CHECK(close(c.value(a) * c.value(a), cld(1, 0)));
}

TEST_CASE("character values") {
    const auto chi4 = kronecker_character(-4);
    CHECK(chi4.value(3) == cld(-1, 0));
    CHECK(chi4.value(2) == cld(0, 0));
    CHECK(chi4.value(-1) == cld(-1, 0));
    for (const auto& c : enumerate_characters(5)) {
        if (c.order() != 4) continue;
        const cld v = c.value(2);
        CHECK((close(v, cld(0, 1)) || close(v, cld(0, -1))));
        const auto ex = c.exact_value(2);
        CHECK(ex->den == 4);
    }
    for (const auto& c : enumerate_characters(12)) CHECK(c.value(6) == cld(0, 0));
}

TEST_CASE("kronecker symbol") {
    CHECK(kronecker_symbol(-4, 5) == 1);
    CHECK(kronecker_symbol(-4, 2) == 0);
    CHECK(kronecker_symbol(5, 11) == 1);
    // Euler's criterion for odd primes
    for (u64 p : primes_up_to(200)) {
        if (p == 2) continue;
        for (i64 d : {-23, -8, -7, -4, -3, 5, 8, 12, 13}) {
            const u64 r = static_cast<u64>(((d % static_cast<i64>(p)) + static_cast<i64>(p)) % static_cast<i64>(p));
            int legendre = 0;
            if (r != 0) legendre = mod_pow(r, (p - 1) / 2, p) == 1 ? 1 : -1;
            CHECK(kronecker_symbol(d, static_cast<i64>(p)) == legendre);
        }
    }
    // complete multiplicativity in n
    for (i64 d : {-15, -8, 12, 21})
        for (i64 m = 1; m < 40; ++m)
            for (i64 n = 1; n < 40; ++n)
                CHECK(kronecker_symbol(d, m * n) == kronecker_symbol(d, m) * kronecker_symbol(d, n));
    CHECK_THROWS_AS(kronecker_character(-12), DomainError);
    CHECK(kronecker_character(12).conductor() == 12);
}

TEST_CASE("conductors match brute force for q <= 60") {
    CHECK(DirichletCharacter::principal(12).conductor() == 1);
    CHECK(kronecker_character(-4).lift(12).conductor() == 4);
    for (const auto& c : primitive_characters(5)) CHECK(c.conductor() == 5);
    for (u64 q = 1; q <= 60; ++q) {
        for (const auto& c : enumerate_characters(q)) {
            const u64 f = c.conductor();
            CHECK(f == brute_conductor(c));
            const auto p = c.primitive();
            CHECK(p.modulus() == f);
            CHECK(p.is_primitive());
            for (i64 a = 1; a <= static_cast<i64>(q); ++a)
                if (std::gcd(static_cast<u64>(a), q) == 1) CHECK(close(p.value(a), c.value(a)));
            CHECK(p.lift(q) == c);
            CHECK((c.parity() == Parity::even) == close(c.value(-1), cld(1, 0)));
        }
    }
}

TEST_CASE("orthogonality and multiplicativity for q <= 60") {
    for (u64 q = 1; q <= 60; ++q) {
        const auto chars = enumerate_characters(q);
        REQUIRE(chars.size() == totient(q));
        for (i64 a = 1; a <= static_cast<i64>(q); ++a) {
            if (std::gcd(static_cast<u64>(a), q) != 1) continue;
            cld sum = 0;
            for (const auto& c : chars) sum += c.value(a);
            const long double expect = (a % static_cast<i64>(q) == 1 % static_cast<i64>(q)) ? totient(q) : 0;
            CHECK(std::abs(sum - cld(expect, 0)) < 1e-12L);
        }
        for (const auto& c : chars) {
            for (i64 a = 1; a <= static_cast<i64>(q); ++a)
                for (i64 b = 1; b <= static_cast<i64>(q); ++b)
                    CHECK(close(c.value(a * b), c.value(a) * c.value(b), 1e-14L));
        }
    }
}

TEST_CASE("group closure and determinism") {
    for (u64 q : {7u, 15u, 16u, 24u, 40u}) {
        const auto chars = enumerate_characters(q);
        std::set<DirichletCharacter> set(chars.begin(), chars.end());
        CHECK(set.size() == chars.size());
        for (const auto& a : chars) {
            CHECK(set.count(a.conj()));
            CHECK((a * a.conj()).is_principal());
            for (const auto& b : chars) CHECK(set.count(a * b));
            CHECK(DirichletCharacter::from_index(q, a.index()) == a);
        }
        CHECK(enumerate_characters(q) == chars);
    }
}

TEST_CASE("product of conductors mod p is p^(p-2)") {
    for (u64 p : primes_up_to(97)) {
        if (p == 2) continue;
        u64 exp = 0;
        for (const auto& c : enumerate_characters(p))
            if (c.conductor() == p) ++exp;
        CHECK(exp == p - 2);
    }
}

TEST_CASE("descriptor format") {
    CHECK(kronecker_character(-4).descriptor() == "char:4:1");
    CHECK(DirichletCharacter::principal(9).descriptor() == "char:9:0");
}

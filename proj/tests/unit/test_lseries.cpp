#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "zetakit/errors.hpp"
#include "zetakit/lseries.hpp"

using namespace zetakit;
using cld = std::complex<long double>;

namespace {

constexpr long double kPi = std::numbers::pi_v<long double>;
constexpr long double kGamma = std::numbers::egamma_v<long double>;

DirichletCharacter order_four_mod5() {
    for (const auto& c : enumerate_characters(5))
        if (c.order() == 4) return c;
    throw std::logic_error("no quartic character mod 5");
}

cld direct_series(const DirichletCharacter& chi, cld s, long n_max) {
    cld sum = 0;
    for (long n = n_max; n >= 1; --n) sum += chi.value(n) * std::exp(-s * std::log(static_cast<long double>(n)));
    return sum;
}

}  // namespace

TEST_CASE("oracles are self-consistent") {
    CHECK(std::abs(oracle::zeta2() - kPi * kPi / 6) < 1e-17L);
    CHECK(std::abs(oracle::leibniz() - kPi / 4) < 1e-17L);
    CHECK(std::abs(oracle::euler_gamma() - kGamma) < 1e-12L);
}

TEST_CASE("Hurwitz zeta special values") {
    const auto z2 = hurwitz_zeta(2, 1.0L);
    CHECK(std::abs(z2.value - cld(oracle::zeta2(), 0)) < 1e-12L);
    CHECK(z2.tail_bound < 1e-20L);
    const auto z3 = hurwitz_zeta(3, 1u, 1u);
    CHECK(std::abs(z3.value - cld(oracle::zeta3(), 0)) < 1e-12L);
    // zeta(s, 1/2) = (2^s - 1) zeta(s)
    for (cld s : {cld(2, 0), cld(0.5L, 14), cld(-1.5L, 3)}) {
        const auto half = hurwitz_zeta(s, 1u, 2u).value;
        const auto one = hurwitz_zeta(s, 1u, 1u).value;
        CHECK(std::abs(half - (std::pow(cld(2, 0), s) - cld(1, 0)) * one) < 1e-15L * std::max(1.0L, std::abs(half)));
    }
    CHECK_THROWS_AS(hurwitz_zeta(1, 0.3L), PoleError);
    CHECK_THROWS_AS(hurwitz_zeta(2, 0.0L), DomainError);
}

TEST_CASE("Hurwitz derivative matches central differences") {
    const long double h = 1e-6L;
    for (cld s : {cld(2, 0), cld(0.5L, 7), cld(1.2L, -3), cld(3, 20)}) {
        for (long double a : {0.25L, 1.0L}) {
            const cld d = hurwitz_zeta_ds(s, a);
            const cld fd = (hurwitz_zeta(s + h, a).value - hurwitz_zeta(s - h, a).value) / (2 * h);
            CHECK(std::abs(d - fd) <= 1e-8L * std::abs(d));
        }
    }
}

TEST_CASE("tail bound does not grow when the cutoff doubles") {
    for (cld s : {cld(0.5L, 30), cld(2, 0), cld(1.5L, 60)}) {
        long double prev = INFINITY;
        for (int n : {25, 50, 100, 200}) {
            EvalParams p;
            p.em_cutoff = n;
            p.bernoulli_terms = 12;
            const auto v = hurwitz_zeta(s, 1u, 3u, p);
            CHECK(v.tail_bound <= prev);
            prev = v.tail_bound;
        }
    }
}

TEST_CASE("requested accuracy is enforced") {
    EvalParams p;
    p.em_cutoff = 5;
    p.bernoulli_terms = 2;
    p.requested_accuracy = 1e-30L;
    CHECK_THROWS_AS(hurwitz_zeta(cld(0.5L, 40), 1.0L, p), PrecisionError);
}

TEST_CASE("Dirichlet L-values") {
    const auto chi4 = kronecker_character(-4);
    const auto l1 = l_value(chi4, 1);
    CHECK(std::abs(l1.value - cld(oracle::leibniz(), 0)) < 1e-12L);
    CHECK(std::abs(l_value(DirichletCharacter::principal(1), 2).value - cld(oracle::zeta2(), 0)) < 1e-12L);
    CHECK_THROWS_AS(l_value(DirichletCharacter::principal(1), 1), PoleError);
    CHECK_THROWS_AS(l_value(DirichletCharacter::principal(6), 1), PoleError);

    // agreement with the Dirichlet series for Re s > 1
    const auto chi5 = order_four_mod5();
    const long n_max = 200000;
    for (cld s : {cld(2, 0), cld(3, 1)}) {
        const cld direct = direct_series(chi5, s, n_max);
        const long double tail = std::pow(static_cast<long double>(n_max), 1 - s.real()) / (s.real() - 1);
        CHECK(std::abs(l_value(chi5, s).value - direct) <= tail);
    }
}

TEST_CASE("imprimitive characters pick up Euler factors") {
    const auto chi = kronecker_character(-4).lift(12);
    const cld s(3, 0);
    const cld expect = (1.0L + std::pow(3.0L, -3.0L)) * l_value(kronecker_character(-4), s).value;
    const auto v = l_value(chi, s);
    CHECK(std::abs(v.value - expect) < 1e-17L);
    CHECK(std::abs(v.value - direct_series(chi, s, 100000)) < 1e-9L);
    const long double h = 1e-6L;
    const cld fd = (l_value(chi, s + h).value - l_value(chi, s - h).value) / (2 * h);
    CHECK(std::abs(v.derivative - fd) < 1e-8L * std::abs(fd));

    // principal character mod 6: zeta(s)(1 - 2^{-s})(1 - 3^{-s})
    const cld z = l_value(DirichletCharacter::principal(6), 2).value;
    CHECK(std::abs(z - oracle::zeta2() * 0.75L * (8.0L / 9)) < 1e-15L);
}

TEST_CASE("conjugate symmetry") {
    for (const auto& chi : primitive_characters(13)) {
        for (cld s : {cld(0.5L, 10), cld(2, -3), cld(1, 0.25L)}) {
            const cld a = l_value(chi.conj(), std::conj(s)).value;
            const cld b = std::conj(l_value(chi, s).value);
            CHECK(std::abs(a - b) < 1e-17L * std::max(1.0L, std::abs(a)));
        }
    }
}

TEST_CASE("logarithmic derivative") {
    const auto chi4 = kronecker_character(-4);
    const auto ld = l_log_derivative(chi4, 2);
    const long double h = 1e-6L;
    const long double fd =
        (std::log(std::abs(l_value(chi4, 2 + h).value)) - std::log(std::abs(l_value(chi4, 2 - h).value))) / (2 * h);
    CHECK(std::abs(ld.value.real() - fd) < 1e-8L);
    CHECK(std::abs(ld.value.imag()) <= ld.error_bound);

    // L'(1, chi_-4) / L(1, chi_-4) = gamma + 2 log 2 + 3 log pi - 4 log Gamma(1/4)
    const cld at1 = l_log_derivative(chi4, 1).value;
    const long double expect = kGamma + 2 * std::log(2.0L) + 3 * std::log(kPi) - 4 * std::lgamma(0.25L);
    CHECK(std::abs(at1 - cld(expect, 0)) < 1e-17L);

    EvalParams coarse = EvalParams::scanning();
    CHECK_THROWS_AS(l_log_derivative(DirichletCharacter::principal(1), cld(0.5L, 14.134725141734693790L), coarse),
                    NearZeroError);
}

TEST_CASE("batch evaluation matches single evaluation") {
    const auto chars = primitive_characters(20);
    REQUIRE_FALSE(chars.empty());
    LBatch batch(20, chars);
    for (cld s : {cld(0.5L, 17), cld(1, 0), cld(2.5L, -4)}) {
        const auto r = batch.evaluate(s, EvalParams{}, true);
        for (std::size_t i = 0; i < chars.size(); ++i) {
            const auto v = l_value(chars[i], s);
            CHECK(std::abs(r.values[i] - v.value) < 1e-17L);
            CHECK(std::abs(r.derivatives[i] - v.derivative) < 1e-16L);
        }
    }
    CHECK_THROWS_AS(LBatch(20, {DirichletCharacter::principal(20)}), DomainError);
}

TEST_CASE("long double scanning path agrees with 192 bits") {
    const auto chi = order_four_mod5();
    for (long double t : {5.0L, 40.0L, 100.0L}) {
        const cld s(0.5L, t);
        const auto hi = l_value(chi, s);
        const auto lo = l_value(chi, s, EvalParams::scanning());
        CHECK(std::abs(hi.value - lo.value) <= lo.error_bound + 1e-15L);
        CHECK(lo.error_bound < 1e-12L);
    }
}

TEST_CASE("gamma and digamma") {
    for (long double x : {0.1L, 0.5L, 1.0L, 2.5L, 10.0L, 33.3L})
        CHECK(std::abs(log_gamma(x).real() - std::lgamma(x)) < 1e-16L * std::max(1.0L, std::abs(std::lgamma(x))));
    CHECK(std::abs(digamma(1) - cld(-kGamma, 0)) < 1e-17L);
    CHECK(std::abs(digamma(0.5L) - cld(-kGamma - 2 * std::log(2.0L), 0)) < 1e-17L);
    // reflection |Gamma(1/2 + it)|^2 = pi / cosh(pi t)
    for (long double t : {1.0L, 7.5L, 40.0L}) {
        const long double re = log_gamma(cld(0.5L, t)).real();
        CHECK(std::abs(2 * re - (std::log(kPi) - std::log(std::cosh(kPi * t)))) < 1e-15L * std::max(1.0L, t));
    }
    // continuity of the imaginary part along a vertical line
    long double prev = log_gamma(cld(0.25L, 0)).imag();
    for (long double t = 0.5L; t < 100; t += 0.5L) {
        const long double cur = log_gamma(cld(0.25L, t)).imag();
        CHECK(std::abs(cur - prev) < 3);
        prev = cur;
    }
}

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "corpus.hpp"
#include "zetakit/errors.hpp"
#include "zetakit/gbs.hpp"

using namespace zetakit;

namespace {

constexpr long double kPi = std::numbers::pi_v<long double>;

/// N_q(Q(zeta_n)) from cyclotomic splitting: for n = p^a m with p not dividing m,
/// phi(m)/f places above p, each of norm p^f with f the order of p mod m.
u64 cyclotomic_places(u64 n, u64 q) {
    const auto f = factorize(q);
    if (f.size() != 1) return 0;
    const u64 p = f[0].prime;
    u64 m = n;
    while (m % p == 0) m /= p;
    const u64 order = m == 1 ? 1 : multiplicative_order(p % m, m);
    return static_cast<int>(order) == f[0].exponent ? totient(m) / order : 0;
}

/// N_q(Q(sqrt d)) from the Kronecker symbol.
u64 quadratic_places(i64 d, u64 q) {
    const auto f = factorize(q);
    if (f.size() != 1) return 0;
    const int k = kronecker_symbol(d, static_cast<i64>(f[0].prime));
    if (f[0].exponent == 1) return k == 1 ? 2 : (k == 0 ? 1 : 0);
    return f[0].exponent == 2 && k == -1 ? 1 : 0;
}

}  // namespace

TEST_CASE("towers are validated and built to the conductor limit") {
    const auto t = build_cyclotomic_tower(3, 4);
    REQUIRE(t.levels.size() == 4);
    CHECK(t.levels[0].degree() == 2);
    CHECK(t.levels[1].degree() == 6);
    CHECK(t.levels[2].degree() == 18);
    CHECK(t.levels[3].degree() == 54);
    CHECK_THROWS_AS(build_cyclotomic_tower(7, 3), ResourceError);
    CHECK_THROWS_AS(build_cyclotomic_tower(9, 2), DomainError);
    CHECK_THROWS_AS(make_tower({make_cyclotomic(5), make_cyclotomic(7)}), DomainError);
    CHECK_THROWS_AS(make_tower({make_cyclotomic(9), make_cyclotomic(3)}), DomainError);
    CHECK_NOTHROW(make_tower({make_quadratic(-3), make_cyclotomic(12)}));

    CHECK(parse_family("cyclo-tower:5:2").size() == 2);
    const auto quads = parse_family("quad-family:-3..-100");
    CHECK(quads.size() == 31);
    for (const auto& k : quads) CHECK(k.is_imaginary_quadratic());
    CHECK_THROWS_AS(parse_family("cyclo-tower:7:3"), ResourceError);
    CHECK_THROWS_AS(parse_family("tower:3"), DomainError);
    CHECK_THROWS_AS(parse_family("cyclo-tower:3:x"), DomainError);
}

TEST_CASE("place ratios agree with the splitting oracles") {
    const auto t = build_cyclotomic_tower(3, 2);
    const auto st = family_stats(t.levels, 100);
    CHECK(st.levels[0].nq_over_g.at(7) == doctest::Approx(2 / std::log(std::sqrt(3.0L))).epsilon(1e-15));
    for (std::size_t i = 0; i < t.levels.size(); ++i) {
        const auto& k = t.levels[i];
        for (u64 q : st.prime_powers)
            CHECK(st.levels[i].nq_over_g.at(q) * k.genus() ==
                  doctest::Approx(cyclotomic_places(k.conductor(), q)).epsilon(1e-12));
    }

    const auto k = make_quadratic(-23);
    const auto s = family_stats({k}, 100).levels[0];
    const long double g = std::log(23.0L) / 2;
    long double rhs = 1 - std::log(2 * kPi) / g;
    for (const auto& e : prime_powers_up_to(100))
        rhs += quadratic_places(-23, e.q) / g * std::log(static_cast<long double>(e.q) / (e.q - 1));
    CHECK(s.gbs_rhs_partial == doctest::Approx(rhs).epsilon(1e-14));
    CHECK(s.r1_over_g == 0);
    CHECK(s.r2_over_g == doctest::Approx(1 / g).epsilon(1e-15));
    // h(-23) = 3, R = 1
    CHECK(s.log_hr_over_g == doctest::Approx(std::log(3.0L) / g).epsilon(1e-10));
}

TEST_CASE("an empty prime range leaves the archimedean terms") {
    for (const char* d : {"quad:5", "quad:-7", "cyclo:12"}) {
        const auto k = parse_field(d);
        const auto s = family_stats({k}, 1).levels[0];
        CHECK(s.nq_over_g.empty());
        CHECK(s.gbs_rhs_partial ==
              doctest::Approx(1 - s.r1_over_g * std::log(2.0L) - s.r2_over_g * std::log(2 * kPi)).epsilon(1e-15));
    }
    CHECK_THROWS_AS(family_stats({AbelianField::rational()}, 10), DomainError);
    CHECK_THROWS_AS(family_stats({make_quadratic(5)}, 1001), DomainError);
}

TEST_CASE("the partial right-hand side grows with Q_max and the tail is positive") {
    for (const auto& k : corpus::fields(24)) {
        if (k.is_rational()) continue;
        long double prev = -INFINITY;
        for (u64 q_max : {1, 10, 50, 100, 300}) {
            const auto s = family_stats({k}, q_max).levels[0];
            CHECK(s.gbs_rhs_partial >= prev);
            CHECK(s.truncation_tail >= 0);
            prev = s.gbs_rhs_partial;
        }
    }
}

TEST_CASE("CSV export has the fixed header and one row per level") {
    const auto t = build_cyclotomic_tower(3, 4);
    const auto csv = to_csv(family_stats(t.levels, 10));
    const auto header = csv.substr(0, csv.find('\n'));
    CHECK(header ==
          "level,conductor,degree,g,r1_over_g,r2_over_g,nq_over_g_2,nq_over_g_3,nq_over_g_4,nq_over_g_5,"
          "nq_over_g_7,nq_over_g_8,nq_over_g_9,log_rho_over_g,log_hr_over_g,gbs_rhs_partial,truncation_tail");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
}

TEST_CASE("weighted place counts are nonincreasing along towers") {
    for (const auto& t : {build_cyclotomic_tower(3, 4), build_cyclotomic_tower(5, 2),
                          make_tower({make_quadratic(-3), make_cyclotomic(12), make_cyclotomic(24)})}) {
        for (u64 p : primes_up_to(20))
            for (int n = 1; n <= 3; ++n) {
                const auto r = monotone_check(t, p, n);
                CAPTURE(t.descriptor);
                CAPTURE(p);
                CHECK(r.values.size() == t.levels.size());
                CHECK(r.nonincreasing);
            }
        CHECK(archimedean_check(t).nonincreasing);
    }
    const auto single = make_tower({make_cyclotomic(7)});
    CHECK(monotone_check(single, 2, 3).nonincreasing);

    // Q(zeta_3): 7 splits into two places of degree 1, so v = 2/g
    const auto r = monotone_check(build_cyclotomic_tower(3, 3), 7, 3);
    CHECK(r.values[0] == doctest::Approx(2 / std::log(std::sqrt(3.0L))).epsilon(1e-15));
}

TEST_CASE("class number formula identity") {
    for (const char* d : {"quad:-4", "quad:-3"}) {
        const auto id = class_number_formula_identity(parse_field(d));
        CHECK(id.independent);
        CHECK(id.residual <= 1e-10);
    }
    const auto q = class_number_formula_identity(AbelianField::rational());
    CHECK(q.residual <= 1e-15);
    for (const auto& k : corpus::fields()) {
        const auto id = class_number_formula_identity(k);
        CAPTURE(k.descriptor());
        CHECK(id.residual <= 1e-9);
        CHECK(id.independent == (k.is_rational() || k.is_imaginary_quadratic()));
    }
}

TEST_CASE("theta schedule") {
    const auto t = build_cyclotomic_tower(3, 3);
    const auto rows = theta_schedule(t, 0);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].skipped);  // g(Q(zeta_3)) < 1
    CHECK_FALSE(rows[1].skipped);
    CHECK_FALSE(rows[2].skipped);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& r = rows[i];
        const long double lg = std::log(r.g);
        CHECK(r.theta == doctest::Approx(std::exp(-lg * lg)).epsilon(1e-15));
        CHECK(r.log_theta_over_g == doctest::Approx(-lg * lg / r.g).epsilon(1e-15));
        // |int_0^theta Z| <= theta max|Z| and Z -> -gamma
        CHECK(r.z_limit_gap <= 2 * std::abs(r.gamma) * r.theta + 1e-12);
        // log(theta zeta_K(1 + theta)) = log rho - int_0^theta Z_K(1 + u) du, and Z_K < 0 near 1 here
        const auto rho = residue(parse_field(r.field));
        CHECK(r.gamma > 0);
        CHECK(r.log_zeta_over_g * r.g + std::log(r.theta) - rho.log_value ==
              doctest::Approx(r.z_limit_gap).epsilon(1e-9));
        CHECK(r.euler_partial_over_g > 0);
    }
    CHECK(std::abs(rows[2].log_theta_over_g) < std::abs(rows[1].log_theta_over_g));

    const auto deep = theta_schedule(t, 2);
    CHECK(deep[2].skipped);
    CHECK(deep[2].notice.find("precision") != std::string::npos);
    CHECK_THROWS_AS(theta_schedule(make_tower({make_cyclotomic(3)}), 0), DomainError);
}

TEST_CASE("|log rho| / g decreases along cyclotomic fields") {
    std::vector<u64> ps;
    for (u64 p : primes_up_to(97))
        if (p >= 11) ps.push_back(p);
    const auto trend = cyclotomic_rho_trend(ps);
    REQUIRE(trend.entries.size() == ps.size());
    CHECK(trend.last_below_first);
    for (const auto& e : trend.entries) CHECK(e.g == doctest::Approx((e.p - 2) * std::log(e.p) / 2.0L).epsilon(1e-14));
}

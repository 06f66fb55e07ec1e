#include "zetakit/gbs.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "zetakit/errors.hpp"
#include "zetakit/euler_kronecker.hpp"

namespace zetakit {

namespace {

constexpr real_t kPi = std::numbers::pi_v<real_t>;

i64 parse_int(const std::string& s, const std::string& spec) {
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &used);
    } catch (const std::exception&) {
        throw DomainError("malformed family spec '" + spec + "'");
    }
    if (used != s.size()) throw DomainError("malformed family spec '" + spec + "'");
    return v;
}

std::string csv_number(real_t x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12Lg", x);
    return buf;
}

}  // namespace

Tower make_tower(std::vector<AbelianField> levels, std::string descriptor) {
    if (levels.empty()) throw DomainError("a tower needs at least one level");
    for (std::size_t i = 1; i < levels.size(); ++i) {
        const auto& a = levels[i - 1];
        const auto& b = levels[i];
        if (!b.contains(a) || b.degree() == a.degree())
            throw DomainError(a.descriptor() + " is not strictly contained in " + b.descriptor());
        if (!(b.genus() > a.genus())) throw DomainError("genus does not grow from " + a.descriptor());
    }
    if (descriptor.empty()) {
        for (const auto& l : levels) descriptor += (descriptor.empty() ? "" : " < ") + l.descriptor();
    }
    return {std::move(descriptor), std::move(levels)};
}

Tower build_cyclotomic_tower(u64 p, int depth, u64 max_conductor) {
    if (!is_prime(p) || p == 2) throw DomainError("cyclotomic tower needs an odd prime, got " + std::to_string(p));
    if (depth < 1) throw DomainError("tower depth must be at least 1");
    u64 top = 1;
    for (int i = 0; i < depth; ++i) {
        if (top > max_conductor / p)
            throw ResourceError(std::to_string(p) + "^" + std::to_string(depth) + " exceeds the conductor limit " +
                                std::to_string(max_conductor));
        top *= p;
    }
    std::vector<AbelianField> levels;
    u64 n = 1;
    for (int i = 1; i <= depth; ++i) {
        n *= p;
        levels.push_back(make_cyclotomic(n));
    }
    return make_tower(std::move(levels), "cyclo-tower:" + std::to_string(p) + ":" + std::to_string(depth));
}

bool is_tower_spec(const std::string& spec) { return spec.rfind("cyclo-tower:", 0) == 0; }

std::vector<AbelianField> parse_family(const std::string& spec, u64 max_conductor) {
    if (is_tower_spec(spec)) {
        const std::string rest = spec.substr(12);
        const auto colon = rest.find(':');
        if (colon == std::string::npos) throw DomainError("malformed tower spec '" + spec + "'");
        const i64 p = parse_int(rest.substr(0, colon), spec);
        const i64 depth = parse_int(rest.substr(colon + 1), spec);
        if (p < 2 || depth < 1) throw DomainError("malformed tower spec '" + spec + "'");
        return build_cyclotomic_tower(static_cast<u64>(p), static_cast<int>(depth), max_conductor).levels;
    }
    if (spec.rfind("quad-family:", 0) == 0) {
        const std::string rest = spec.substr(12);
        const auto dots = rest.find("..");
        if (dots == std::string::npos) throw DomainError("malformed family spec '" + spec + "'");
        i64 a = parse_int(rest.substr(0, dots), spec);
        i64 b = parse_int(rest.substr(dots + 2), spec);
        const i64 step = a <= b ? 1 : -1;
        std::vector<AbelianField> out;
        for (i64 d = a; d != b + step; d += step) {
            if (d == 1 || !is_fundamental_discriminant(d)) continue;
            if (static_cast<u64>(d < 0 ? -d : d) > max_conductor)
                throw ResourceError("discriminant " + std::to_string(d) + " exceeds the conductor limit");
            out.push_back(make_quadratic(d));
        }
        if (out.empty()) throw DomainError("no fundamental discriminants in '" + spec + "'");
        return out;
    }
    throw DomainError("unknown family spec '" + spec + "' (expected cyclo-tower:p:depth or quad-family:d1..d2)");
}

FamilyStats family_stats(const std::vector<AbelianField>& levels, u64 q_max, const EvalParams& params) {
    if (q_max > 1000) throw DomainError("family_stats needs Q_max <= 1000");
    FamilyStats out;
    out.q_max = q_max;
    for (const auto& e : prime_powers_up_to(q_max)) out.prime_powers.push_back(e.q);
    for (const auto& k : levels) {
        const real_t g = k.genus();
        if (!(g > 0)) throw DomainError("family_stats: g_K = 0 for " + k.descriptor());
        const auto table = place_counts(k, std::max<u64>(10 * q_max, 2));
        const auto sig = k.signature();
        LevelStats s;
        s.field = k.descriptor();
        s.conductor = k.conductor();
        s.degree = k.degree();
        s.g = g;
        s.r1_over_g = sig.r1 / g;
        s.r2_over_g = sig.r2 / g;
        real_t euler = 0;
        for (u64 q : out.prime_powers) {
            const real_t ratio = static_cast<real_t>(table.at(q)) / g;
            s.nq_over_g[q] = ratio;
            const real_t qq = static_cast<real_t>(q);
            euler += ratio * std::log(qq / (qq - 1));
        }
        s.truncation_tail = 0;
        for (const auto& [q, n] : table.counts)
            if (q > q_max) s.truncation_tail += static_cast<real_t>(n) / g / static_cast<real_t>(q - 1);
        s.log_rho_over_g = residue(k, params).log_value / g;
        s.log_hr_over_g = class_number_times_regulator(k, params).log_value / g;
        s.gbs_rhs_partial = 1 + euler - s.r1_over_g * std::log(2.0L) - s.r2_over_g * std::log(2 * kPi);
        out.levels.push_back(std::move(s));
    }
    return out;
}

std::string to_csv(const FamilyStats& stats) {
    std::string out = "level,conductor,degree,g,r1_over_g,r2_over_g";
    for (u64 q : stats.prime_powers) out += ",nq_over_g_" + std::to_string(q);
    out += ",log_rho_over_g,log_hr_over_g,gbs_rhs_partial,truncation_tail\n";
    for (std::size_t i = 0; i < stats.levels.size(); ++i) {
        const auto& s = stats.levels[i];
        out += std::to_string(i + 1) + "," + std::to_string(s.conductor) + "," + std::to_string(s.degree) + "," +
               csv_number(s.g) + "," + csv_number(s.r1_over_g) + "," + csv_number(s.r2_over_g);
        for (u64 q : stats.prime_powers) out += "," + csv_number(s.nq_over_g.at(q));
        out += "," + csv_number(s.log_rho_over_g) + "," + csv_number(s.log_hr_over_g) + "," +
               csv_number(s.gbs_rhs_partial) + "," + csv_number(s.truncation_tail) + "\n";
    }
    return out;
}

namespace {
MonotoneResult finish(u64 p, int n, std::vector<real_t> values) {
    bool ok = true;
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] > values[i - 1] + 1e-12L) ok = false;
    return {p, n, std::move(values), ok};
}
}  // namespace

MonotoneResult monotone_check(const Tower& tower, u64 p, int n) {
    if (!is_prime(p)) throw DomainError("monotone_check needs a prime, got " + std::to_string(p));
    if (n < 1) throw DomainError("monotone_check needs n >= 1");
    const u64 top = ipow(p, n);
    std::vector<real_t> values;
    for (const auto& k : tower.levels) {
        const auto table = place_counts(k, top);
        real_t v = 0;
        u64 q = 1;
        for (int m = 1; m <= n; ++m) {
            q *= p;
            v += m * static_cast<real_t>(table.at(q));
        }
        values.push_back(v / k.genus());
    }
    return finish(p, n, std::move(values));
}

MonotoneResult archimedean_check(const Tower& tower) {
    std::vector<real_t> values;
    for (const auto& k : tower.levels) {
        const auto sig = k.signature();
        values.push_back((sig.r1 + 2 * sig.r2) / k.genus());
    }
    return finish(0, 0, std::move(values));
}

ClassNumberIdentity class_number_formula_identity(const AbelianField& field, const EvalParams& params) {
    const auto rho = residue(field, params);
    const auto sig = field.signature();
    ClassNumberIdentity out;
    out.log_rho = rho.log_value;
    real_t log_hr;
    if (field.is_rational()) {
        log_hr = 0;
        out.independent = true;
    } else if (field.is_imaginary_quadratic()) {
        const i64 d = -static_cast<i64>(field.conductor());
        log_hr = std::log(static_cast<real_t>(class_number_by_forms(d)));
        out.independent = true;
    } else {
        log_hr = class_number_times_regulator(field, params).log_value;
        out.independent = false;
    }
    out.rhs = sig.r1 * std::log(2.0L) + sig.r2 * std::log(2 * kPi) + log_hr -
              std::log(static_cast<real_t>(field.roots_of_unity())) - field.genus();
    out.residual = std::abs(out.log_rho - out.rhs);
    return out;
}

std::vector<ThetaLevel> theta_schedule(const Tower& tower, int m, u64 q_max, const EvalParams& params) {
    if (m < 0) throw DomainError("theta_schedule needs m >= 0");
    std::vector<ThetaLevel> out;
    for (const auto& k : tower.levels) {
        ThetaLevel t{};
        t.field = k.descriptor();
        t.g = k.genus();
        if (!(t.g > 1)) {
            t.skipped = true;
            t.notice = "g_K <= 1, log g_K is not positive";
            out.push_back(t);
            continue;
        }
        const real_t lg = std::pow(std::log(t.g), m + 2);
        t.theta = std::exp(-lg);
        t.log_theta_over_g = -lg / t.g;
        if (!(1 + t.theta > 1)) {
            t.skipped = true;
            t.notice = "theta = exp(-" + csv_number(lg) + ") is below the working precision";
            out.push_back(t);
            continue;
        }
        t.gamma = gamma_field(k, params).ek_constant;
        t.gamma_theta_over_g = std::abs(t.gamma) * t.theta / t.g;

        // log zeta_K(1 + theta) = log((s - 1) zeta(s)) - log theta + sum log L(s, chi)
        const real_t s = 1 + t.theta;
        const auto h = hurwitz_zeta_regular(complex_t(s, 0), 1, 1, params);
        real_t log_zeta = std::log(1 + (s - 1) * h.value.real()) - std::log(s - 1);
        for (const auto& l : field_l_values(k, complex_t(s, 0), params).values) log_zeta += std::log(std::abs(l));
        t.log_zeta_over_g = log_zeta / t.g;

        const auto table = place_counts(k, std::max<u64>(q_max, 2));
        real_t euler = 0;
        for (const auto& [q, n] : table.counts) {
            if (q > q_max) continue;
            const real_t qq = static_cast<real_t>(q);
            euler += static_cast<real_t>(n) * std::log(qq / (qq - 1));
        }
        t.euler_partial_over_g = euler / t.g;

        const real_t theta = s - 1;  // the representable step
        const real_t integral = boost::math::quadrature::gauss<real_t, 10>::integrate(
            [&](real_t u) { return Z(k, 1 + u, ZEvaluation::Route::l_factorization, params).value; }, 0.0L, theta);
        t.z_limit_gap = std::abs(integral);
        out.push_back(t);
    }
    bool any = false;
    for (const auto& t : out) any = any || !t.skipped;
    if (!any) throw DomainError("theta_schedule: every level has g <= 1 or an unrepresentable theta");
    return out;
}

RhoTrend cyclotomic_rho_trend(const std::vector<u64>& primes, const EvalParams& params) {
    RhoTrend out;
    for (u64 p : primes) {
        const auto k = make_cyclotomic(p);
        out.entries.push_back({p, k.genus(), std::abs(residue(k, params).log_value) / k.genus()});
    }
    out.last_below_first =
        out.entries.size() >= 2 && out.entries.back().abs_log_rho_over_g < out.entries.front().abs_log_rho_over_g;
    return out;
}

}  // namespace zetakit

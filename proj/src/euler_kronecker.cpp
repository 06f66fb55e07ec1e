#include "zetakit/euler_kronecker.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "zetakit/errors.hpp"

namespace zetakit {

namespace {

constexpr real_t kPi = std::numbers::pi_v<real_t>;
constexpr real_t kNaN = std::numeric_limits<real_t>::quiet_NaN();

std::string digits(real_t x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.18Lg", x);
    return buf;
}

/// -zeta'/zeta(s) - 1/(s - 1) written through R = zeta(s) - 1/(s - 1), which
/// stays regular at s = 1.
std::pair<real_t, real_t> zeta_part(real_t s, const EvalParams& params) {
    const auto h = hurwitz_zeta_regular(complex_t(s, 0), 1, 1, params);
    const real_t w = s - 1;
    const real_t R = h.value.real();
    const real_t dR = h.derivative.real();
    const real_t value = -(R + w * dR) / (1 + w * R);
    return {value, 4 * h.tail_bound + std::numeric_limits<real_t>::epsilon() * std::abs(value)};
}

/// Sum of L'/L(s, chi) over the nontrivial characters; the imaginary parts of
/// conjugate pairs cancel.
std::pair<complex_t, real_t> log_derivative_sum(const AbelianField& field, real_t s, const EvalParams& params) {
    const auto lv = field_l_values(field, complex_t(s, 0), params, true);
    complex_t sum = 0;
    real_t err = 0;
    for (std::size_t i = 0; i < lv.values.size(); ++i) {
        const real_t mag = std::abs(lv.values[i]);
        if (mag < 10 * lv.error_bound) throw NearZeroError("L(s, chi) is not resolved from zero");
        const complex_t ld = lv.derivatives[i] / lv.values[i];
        sum += ld;
        err += (std::abs(ld) + 1) * lv.error_bound / mag;
    }
    return {sum, err + std::numeric_limits<real_t>::epsilon() * std::abs(sum)};
}

/// Neville extrapolation of (x_i, y_i) to x = 0; also returns the change from
/// dropping the last point.
std::pair<real_t, real_t> extrapolate_to_zero(const std::vector<real_t>& x, std::vector<real_t> y) {
    const std::size_t n = y.size();
    real_t prev = y[0];
    std::vector<real_t> col = y;
    std::vector<real_t> diag{y[0]};
    for (std::size_t m = 1; m < n; ++m) {
        for (std::size_t i = 0; i + m < n; ++i)
            col[i] = (x[i + m] * col[i] - x[i] * col[i + 1]) / (x[i + m] - x[i]);
        diag.push_back(col[0]);
    }
    prev = diag.size() >= 2 ? diag[diag.size() - 2] : diag.back();
    return {diag.back(), std::abs(diag.back() - prev)};
}

/// Generous GRH-type bound on |G_K(x) - x| / sqrt(x).
real_t chebyshev_fluctuation(const AbelianField& field, real_t x) {
    const real_t L = std::log(x);
    return (L / (2 * kPi) + 2) * field.log_abs_discriminant() + (L * L / (8 * kPi) + 2) * field.degree();
}

}  // namespace

LaurentData gamma_field(const AbelianField& field, const EvalParams& params) {
    const auto [zp, zerr] = zeta_part(1, params);
    real_t gamma = -zp;  // Euler's constant
    real_t err = zerr;
    if (!field.is_rational()) {
        const auto [sum, serr] = log_derivative_sum(field, 1, params);
        gamma += sum.real();
        err += serr;
    }
    const auto rho = residue(field, params);
    LaurentData out;
    out.residue = rho.value;
    out.ek_constant = gamma;
    out.method = LaurentData::Method::l_factorization;
    out.error_estimate = std::max(err, std::numeric_limits<real_t>::epsilon() * std::max<real_t>(1, std::abs(gamma)));
    out.ek_constant_digits = digits(gamma);
    return out;
}

LaurentData gamma_z_limit(const AbelianField& field, real_t theta0, int points, const EvalParams& params) {
    if (!(theta0 > 0) || points < 2) throw DomainError("gamma_z_limit needs theta0 > 0 and at least two points");
    std::vector<real_t> xs;
    std::vector<real_t> ys;
    real_t eval_err = 0;
    for (int j = 0; j < points; ++j) {
        const real_t theta = std::ldexp(theta0, -j);
        const auto z = Z(field, 1 + theta, ZEvaluation::Route::l_factorization, params);
        xs.push_back(theta);
        ys.push_back(-z.value);
        eval_err = std::max(eval_err, z.error_estimate);
    }
    const auto [gamma, change] = extrapolate_to_zero(xs, ys);
    LaurentData out;
    out.residue = residue(field, params).value;
    out.ek_constant = gamma;
    out.method = LaurentData::Method::z_limit;
    // Neville weights grow like 2^{points^2/2}; the evaluation error is amplified accordingly.
    out.error_estimate = change + eval_err * std::ldexp(1.0L, points * (points - 1) / 2);
    out.ek_constant_digits = digits(gamma);
    return out;
}

GammaP gamma_p(u64 p, u64 max_prime, const EvalParams& params) {
    if (p > max_prime)
        throw ResourceError("gamma_p: p = " + std::to_string(p) + " exceeds the configured maximum " +
                            std::to_string(max_prime));
    if (p == 2 || !is_prime(p)) throw DomainError("gamma_p needs an odd prime, got " + std::to_string(p));
    const auto field = make_cyclotomic(p);
    GammaP out;
    out.p = p;
    out.data = gamma_field(field, params);
    out.positive = out.data.ek_constant > 0;
    out.ratio = out.data.ek_constant / std::log(static_cast<real_t>(p));
    out.in_window = out.ratio > -11 && out.ratio <= 1;
    return out;
}

std::string to_string(ZEvaluation::Route r) {
    return r == ZEvaluation::Route::dirichlet_series ? "dirichlet_series" : "l_factorization";
}

ZEvaluation Z(const AbelianField& field, real_t s, ZEvaluation::Route route, const EvalParams& params) {
    if (!(s > 1)) throw DomainError("Z_K(s) needs s > 1");
    if (route == ZEvaluation::Route::dirichlet_series) return Z_dirichlet(field, s, 2000000);
    const auto [zp, zerr] = zeta_part(s, params);
    real_t value = zp;
    real_t err = zerr;
    if (!field.is_rational()) {
        const auto [sum, serr] = log_derivative_sum(field, s, params);
        value -= sum.real();
        err += serr;
    }
    ZEvaluation out{s, value, route, err};
    out.pole_proximity_warning = s - 1 < 1e-6L;
    return out;
}

VonMangoldtSum von_mangoldt_sum(const AbelianField& field, real_t s, u64 X) {
    VonMangoldtSum out{0, 0};
    for (u64 p : primes_up_to(X)) {
        const auto sp = field.splitting(p);
        const real_t lp = std::log(static_cast<real_t>(p));
        const real_t weight = static_cast<real_t>(sp.g * sp.f) * lp;  // Lambda_K(p^{jf})
        const real_t step = std::exp(-static_cast<real_t>(sp.f) * s * lp);
        real_t term = step;
        u64 y = 1;
        for (;;) {
            bool fits = true;
            for (u64 i = 0; i < sp.f && fits; ++i) {
                if (y > X / p) fits = false;
                else y *= p;
            }
            if (!fits) break;
            out.sum += weight * term;
            out.g_at_x += weight;
            term *= step;
        }
    }
    return out;
}

ZEvaluation Z_dirichlet(const AbelianField& field, real_t s, u64 X) {
    if (!(s >= 1.5L)) throw DomainError("the Dirichlet-series route for Z_K needs s >= 1.5");
    if (X < 100) throw DomainError("the Dirichlet-series route needs X >= 100");
    const auto vm = von_mangoldt_sum(field, s, X);
    const real_t x = static_cast<real_t>(X);
    const real_t xs = std::pow(x, -s);
    // sum_{y > X} Lambda_K(y) y^{-s} = X^{1-s}/(s-1) - (G(X) - X) X^{-s} + s int_X^inf (G - x) x^{-s-1} dx
    const real_t tail = x * xs / (s - 1) - (vm.g_at_x - x) * xs;
    const real_t value = -1 / (s - 1) + vm.sum + tail;
    const real_t bound = s * chebyshev_fluctuation(field, x) * std::sqrt(x) * xs / (s - 0.5L);
    return {s, value, ZEvaluation::Route::dirichlet_series, bound};
}

XiValue xi(const AbelianField& field, complex_t s) {
    const auto sig = field.signature();
    auto at_pole = [&](complex_t z) {
        return z.imag() == 0 && z.real() <= 0 && z.real() == std::floor(z.real());
    };
    if ((sig.r1 > 0 && at_pole(s / 2.0L)) || (sig.r2 > 0 && at_pole(s)))
        throw PoleError("xi_K has a pole at s = " + std::to_string(static_cast<double>(s.real())));
    complex_t v = 0;
    const real_t psi_half = -std::numbers::egamma_v<real_t> - 2 * std::log(2.0L);
    const real_t psi_one = -std::numbers::egamma_v<real_t>;
    if (sig.r1 > 0) v += static_cast<real_t>(sig.r1) / 2 * (digamma(s / 2.0L) - psi_half);
    if (sig.r2 > 0) v += static_cast<real_t>(sig.r2) * (digamma(s) - psi_one);
    const real_t err = 16 * std::numeric_limits<real_t>::epsilon() * (std::abs(v) + field.degree());
    return {v, err};
}

MellinReport mellin_check(const AbelianField& field, real_t s, real_t X, const EvalParams& params) {
    if (!(s > 1)) throw DomainError("mellin_check needs s > 1");
    if (!(X >= 1)) throw DomainError("mellin_check needs X >= 1");
    MellinReport r{};
    r.s = s;
    r.X = X;
    r.lhs = Z(field, s, ZEvaluation::Route::l_factorization, params).value / s;
    const u64 xi_floor = static_cast<u64>(std::floor(X));
    const auto vm = xi_floor >= 2 ? von_mangoldt_sum(field, s, xi_floor) : VonMangoldtSum{0, 0};
    const real_t Xs = std::pow(X, -s);
    // int_1^X G x^{-s-1} dx = sum_{y <= X} Lambda(y) (y^{-s} - X^{-s}) / s;  int_1^X x^{-s} dx
    const real_t g_part = (vm.sum - vm.g_at_x * Xs) / s;
    const real_t x_part = (X * Xs - 1) / (1 - s);
    r.integral = g_part - x_part;
    r.rhs = 1 / s + r.integral;
    r.tail_estimate = X >= 2 ? chebyshev_fluctuation(field, X) * std::sqrt(X) * Xs / (s - 0.5L) : kNaN;
    r.residual = std::abs(r.lhs - r.rhs);
    if (field.genus() > 0) {
        r.variant_rhs = -1 / (s * field.genus()) + r.integral;
        r.variant_residual = std::abs(r.lhs - r.variant_rhs);
    } else {
        r.variant_rhs = kNaN;
        r.variant_residual = kNaN;
    }
    return r;
}

BoundReport check_bounds(const AbelianField& field, const EvalParams& params) {
    return check_bounds(field, gamma_field(field, params));
}

BoundReport check_bounds(const AbelianField& field, const LaurentData& gamma) {
    BoundReport r;
    r.field = field.descriptor();
    r.gamma = gamma.ek_constant;
    const real_t L = field.log_abs_discriminant();
    const real_t g = gamma.ek_constant;

    r.ihara_lower_margin = {g + L / 2, false, true, "gamma_K >= -log sqrt|d_K|"};
    const auto disc = field.abs_discriminant();
    if (disc && *disc < 9) {
        r.ihara_upper_margin = {std::nullopt, true, false, "domain error: |d_K| < 9, log log sqrt|d_K| is not positive"};
    } else {
        r.ihara_upper_margin = {2 * std::log(L / 2) - g, true, false, "gamma_K <= 2 log log sqrt|d_K| under GRH"};
    }
    const real_t n = static_cast<real_t>(field.degree());
    if (L > 0)
        r.polylog_ratio = {std::abs(g) / (std::pow(L, 4) * n * n * n), false, false, "report only; constant unspecified"};
    else
        r.polylog_ratio = {std::nullopt, false, false, "undefined for |d_K| = 1"};
    if (L > 1)
        r.loglog_power_ratio = {std::abs(g) / std::pow(L, std::log(L)), false, false, "report only; constants unspecified"};
    else
        r.loglog_power_ratio = {std::nullopt, false, false, "undefined for log|d_K| <= 1"};
    r.has_quadratic_subfield = false;
    for (const auto& chi : field.characters())
        if (chi.order() == 2) r.has_quadratic_subfield = true;
    return r;
}

}  // namespace zetakit

#pragma once

// Euler-Maclaurin evaluation of Hurwitz zeta with its pole removed, plus the
// Stirling-series special functions, generic over the working real type.

#include <algorithm>
#include <span>
#include <vector>

#include "precision.hpp"
#include "zetakit/detail/cx.hpp"
#include "zetakit/lseries.hpp"

namespace zetakit::detail {

/// c_k = B_{2k} / (2k)! for k = 1..kMaxBernoulli, exact; computed once.
inline constexpr int kMaxBernoulli = 120;
const std::vector<mp_rational>& bernoulli_over_factorial();
/// B_{2k} exact, k = 1..kMaxBernoulli.
const std::vector<mp_rational>& bernoulli_even();

template <class R>
R bernoulli_coeff(int k);  // c_k in R, 1-based
template <class R>
R bernoulli_b2k(int k);  // B_{2k} in R, 1-based

template <class R>
struct HurwitzOut {
    Cx<R> reg;   // zeta(s, a) - 1/(s - 1)
    Cx<R> dreg;  // derivative of reg
    R tail;      // truncation bound on reg
    R magnitude; // sum of term sizes, scales the rounding error
    int em_cutoff;
    int bernoulli_terms;
};

inline int adaptive_cutoff(long double abs_s) {
    return static_cast<int>(std::max(50.0L, 2.0L * abs_s));
}

template <class R>
HurwitzOut<R> hurwitz_regular(const Cx<R>& s, const R& a, int em_cutoff, int bernoulli_terms, bool with_derivative) {
    using std::log;
    const int N = em_cutoff;
    Cx<R> sum{R(0), R(0)};
    Cx<R> dsum{R(0), R(0)};
    R magnitude = 0;
    for (int n = 0; n < N; ++n) {
        const R L = log(R(n) + a);
        const Cx<R> t = pow_neg(L, s);
        magnitude += abs(t);
        sum += t;
        if (with_derivative) dsum -= t * L;
    }
    const R x = R(N) + a;
    const R Lx = log(x);
    const Cx<R> xs = pow_neg(Lx, s);  // x^{-s}

    // (x^{1-s} - 1)/(s - 1) and its derivative, series form near s = 1
    const Cx<R> w = s - Cx<R>{R(1), R(0)};
    const Cx<R> z = w * (-Lx);
    Cx<R> P, dP;
    if (abs(z) < R(0.5)) {
        // P = -Lx sum_j z^j/(j+1)!,  P' = Lx^2 sum_j (j+1) z^j/(j+2)!
        Cx<R> zj{R(1), R(0)};
        Cx<R> sp{R(0), R(0)};
        Cx<R> sd{R(0), R(0)};
        R fact1 = 1;  // (j+1)!
        R fact2 = 2;  // (j+2)!
        const R eps = epsilon<R>();
        for (int j = 0; j < 400; ++j) {
            const Cx<R> a1 = zj * (R(1) / fact1);
            const Cx<R> a2 = zj * (R(j + 1) / fact2);
            sp += a1;
            sd += a2;
            if (j > 2 && abs(a1) < eps * abs(sp) && abs(a2) < eps * abs(sd)) break;
            zj *= z;
            fact1 *= R(j + 2);
            fact2 *= R(j + 3);
        }
        P = sp * (-Lx);
        dP = sd * (Lx * Lx);
    } else {
        const Cx<R> e = exp(z);  // x^{1-s}
        const Cx<R> em1 = e - Cx<R>{R(1), R(0)};
        P = em1 / w;
        dP = (e * w * (-Lx) - em1) / (w * w);
    }
    magnitude += abs(P);
    sum += P + xs * R(0.5);
    if (with_derivative) dsum += dP - xs * (Lx * R(0.5));

    // Bernoulli corrections
    const R eps = epsilon<R>();
    const R inv_x2 = R(1) / (x * x);
    Cx<R> poch = s;  // (s)_{2k-1}
    Cx<R> dpoch{R(1), R(0)};
    Cx<R> xpow = xs * (R(1) / x);  // x^{-s-2k+1}
    const int max_terms = bernoulli_terms > 0 ? std::min(bernoulli_terms, kMaxBernoulli - 1) : kMaxBernoulli - 1;
    R prev_mag = -1;
    int used = 0;
    Cx<R> next_term;
    for (int k = 1; k <= max_terms + 1; ++k) {
        const R c = bernoulli_coeff<R>(k);
        const Cx<R> pre = xpow * c;
        const Cx<R> term = poch * pre;
        const R mag = abs(term);
        const bool stop_fixed = bernoulli_terms > 0 && k > bernoulli_terms;
        const bool diverging = bernoulli_terms == 0 && prev_mag >= R(0) && mag > prev_mag;
        if (stop_fixed || diverging || k == max_terms + 1) {
            next_term = term;
            break;
        }
        sum += term;
        if (with_derivative) dsum += (dpoch - poch * Lx) * pre;
        used = k;
        prev_mag = mag;
        const Cx<R> s1 = s + Cx<R>{R(2 * k - 1), R(0)};
        const Cx<R> s2 = s + Cx<R>{R(2 * k), R(0)};
        dpoch = dpoch * s1 * s2 + poch * (s1 + s2);
        poch = poch * s1 * s2;
        xpow = xpow * inv_x2;
        if (bernoulli_terms == 0 && mag <= eps * abs(sum) && k >= 2) {
            next_term = poch * (xpow * bernoulli_coeff<R>(k + 1));
            break;
        }
    }
    const R sigma_shift = s.re + R(2 * used + 1);
    const Cx<R> s_shift = s + Cx<R>{R(2 * used + 1), R(0)};
    R tail = abs(next_term);
    if (sigma_shift > R(0))
        tail *= abs(s_shift) / sigma_shift;
    else
        tail *= abs(s_shift);
    return {sum, dsum, tail, magnitude, N, used};
}

// ---------------------------------------------------------------------------

template <class R>
Cx<R> log_gamma(Cx<R> z) {
    using std::log;
    const R eps = epsilon<R>();
    const R target = std::is_same_v<R, long double> ? R(20) : R(40);
    Cx<R> shift{R(0), R(0)};
    while (abs(z) < target || z.re < R(1)) {
        shift += log(z);
        z += Cx<R>{R(1), R(0)};
    }
    const R half_log_2pi = log(R(2) * pi<R>()) / R(2);
    Cx<R> result = (z - Cx<R>{R(0.5), R(0)}) * log(z) - z + Cx<R>{half_log_2pi, R(0)};
    const Cx<R> inv = Cx<R>{R(1), R(0)} / z;
    const Cx<R> inv2 = inv * inv;
    Cx<R> p = inv;
    for (int k = 1; k < kMaxBernoulli; ++k) {
        const Cx<R> term = p * (bernoulli_b2k<R>(k) / R((2 * k) * (2 * k - 1)));
        result += term;
        if (abs(term) < eps * abs(result)) break;
        p *= inv2;
    }
    return result - shift;
}

template <class R>
Cx<R> digamma(Cx<R> z) {
    using std::log;
    const R eps = epsilon<R>();
    const R target = std::is_same_v<R, long double> ? R(20) : R(40);
    Cx<R> shift{R(0), R(0)};
    while (abs(z) < target || z.re < R(1)) {
        shift += Cx<R>{R(1), R(0)} / z;
        z += Cx<R>{R(1), R(0)};
    }
    const Cx<R> inv = Cx<R>{R(1), R(0)} / z;
    const Cx<R> inv2 = inv * inv;
    Cx<R> result = log(z) - inv * R(0.5);
    Cx<R> p = inv2;
    for (int k = 1; k < kMaxBernoulli; ++k) {
        const Cx<R> term = p * (bernoulli_b2k<R>(k) / R(2 * k));
        result -= term;
        if (abs(term) < eps * abs(result)) break;
        p *= inv2;
    }
    return result - shift;
}

// ---------------------------------------------------------------------------

/// Truncation bound plus a rounding allowance.
template <class R>
R total_error(const HurwitzOut<R>& h) {
    return h.tail + epsilon<R>() * R(8) * h.magnitude;
}

template <class R>
struct BatchOut {
    std::vector<Cx<R>> values;
    std::vector<Cx<R>> derivatives;
    R error;
};

/// L(s, chi) = q^{-s} sum_a chi(a) zeta(s, a/q) for nonprincipal primitive
/// characters mod q >= 2. The 1/(s-1) parts cancel because sum_a chi(a) = 0.
template <class R>
BatchOut<R> l_batch(u64 q, std::span<const u64> units, const std::vector<std::vector<u64>>& value_index, u64 lambda,
                    const Cx<R>& s, const EvalParams& params, bool with_derivative) {
    using std::cos;
    using std::log;
    using std::sin;
    const std::size_t nc = value_index.size();
    std::vector<Cx<R>> roots(lambda);
    const R two_pi = R(2) * pi<R>();
    for (u64 k = 0; k < lambda; ++k) {
        if (k == 0) {
            roots[k] = {R(1), R(0)};
        } else if (2 * k == lambda) {
            roots[k] = {R(-1), R(0)};
        } else {
            const R ang = two_pi * R(k) / R(lambda);
            roots[k] = {cos(ang), sin(ang)};
        }
    }
    const long double abs_s = std::abs(to_std(s));
    const int N = params.em_cutoff > 0 ? params.em_cutoff : adaptive_cutoff(abs_s);
    std::vector<Cx<R>> acc(nc, Cx<R>{R(0), R(0)});
    std::vector<Cx<R>> dacc(with_derivative ? nc : 0, Cx<R>{R(0), R(0)});
    R tail_sum = 0;
    R mag_sum = 0;
    const R rq = R(q);
    for (std::size_t u = 0; u < units.size(); ++u) {
        const R a = R(units[u]) / rq;
        const auto h = hurwitz_regular<R>(s, a, N, params.bernoulli_terms, with_derivative);
        tail_sum += h.tail;
        mag_sum += h.magnitude;
        for (std::size_t c = 0; c < nc; ++c) {
            const Cx<R>& chi = roots[value_index[c][u]];
            acc[c] += chi * h.reg;
            if (with_derivative) dacc[c] += chi * h.dreg;
        }
    }
    const R log_q = log(rq);
    const Cx<R> qs = pow_neg(log_q, s);
    BatchOut<R> out;
    out.values.resize(nc);
    if (with_derivative) out.derivatives.resize(nc);
    for (std::size_t c = 0; c < nc; ++c) {
        out.values[c] = qs * acc[c];
        if (with_derivative) out.derivatives[c] = qs * (dacc[c] - acc[c] * log_q);
    }
    const R scale = abs(qs);
    out.error = scale * (tail_sum + epsilon<R>() * R(8) * mag_sum);
    return out;
}

}  // namespace zetakit::detail

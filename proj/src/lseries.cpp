#include "zetakit/lseries.hpp"

#include <cmath>
#include <numeric>
#include <mutex>

#include "lseries_engine.hpp"
#include "zetakit/errors.hpp"

namespace zetakit {

namespace detail {

namespace {

struct BernoulliTables {
    std::vector<mp_rational> b2k;     // index k-1 holds B_{2k}
    std::vector<mp_rational> over_f;  // B_{2k}/(2k)!
    std::vector<long double> b2k_ld;
    std::vector<long double> over_f_ld;
};

const BernoulliTables& tables() {
    static const BernoulliTables t = [] {
        BernoulliTables out;
        // Akiyama-Tanigawa: row reduction produces B_n (with B_1 = +1/2).
        const int nmax = 2 * kMaxBernoulli;
        std::vector<mp_rational> a(nmax + 1);
        std::vector<mp_rational> bern(nmax + 1);
        for (int m = 0; m <= nmax; ++m) {
            a[m] = mp_rational(1, m + 1);
            for (int j = m; j >= 1; --j) a[j - 1] = mp_rational(j) * (a[j - 1] - a[j]);
            bern[m] = a[0];
        }
        mp_rational fact = 1;
        for (int k = 1; k <= kMaxBernoulli; ++k) {
            fact *= mp_rational((2 * k - 1) * (2 * k));
            out.b2k.push_back(bern[2 * k]);
            out.over_f.push_back(bern[2 * k] / fact);
        }
        for (const auto& v : out.b2k) out.b2k_ld.push_back(from_rational<long double>(v));
        for (const auto& v : out.over_f) out.over_f_ld.push_back(from_rational<long double>(v));
        return out;
    }();
    return t;
}

}  // namespace

const std::vector<mp_rational>& bernoulli_over_factorial() { return tables().over_f; }
const std::vector<mp_rational>& bernoulli_even() { return tables().b2k; }

template <>
long double bernoulli_coeff<long double>(int k) {
    return tables().over_f_ld[k - 1];
}
template <>
mp_real bernoulli_coeff<mp_real>(int k) {
    return mp_real(tables().over_f[k - 1]);
}
template <>
long double bernoulli_b2k<long double>(int k) {
    return tables().b2k_ld[k - 1];
}
template <>
mp_real bernoulli_b2k<mp_real>(int k) {
    return mp_real(tables().b2k[k - 1]);
}

}  // namespace detail

namespace {

using detail::Cx;
using detail::mp_real;

template <class F>
decltype(auto) dispatch(int bits, F&& f) {
    if (bits < 64) throw DomainError("precision_bits must be at least 64");
    if (bits <= detail::kLongDoubleBits) return f.template operator()<long double>();
    detail::MpScope scope(bits);
    return f.template operator()<mp_real>();
}

int resolve_cutoff(const EvalParams& p, complex_t s, u64 /*q*/) {
    if (p.em_cutoff > 0) return p.em_cutoff;
    const long double as = std::abs(s);
    if (p.em_cutoff < 0) return static_cast<int>(std::max(20.0L, 0.5L * as + 10.0L));
    return detail::adaptive_cutoff(as);
}

void check_accuracy(const EvalParams& p, real_t bound) {
    if (p.requested_accuracy > 0 && !(bound <= p.requested_accuracy))
        throw PrecisionError("truncation bound " + std::to_string(static_cast<double>(bound)) +
                             " exceeds requested accuracy");
}

template <class R>
HurwitzValue finish_hurwitz(const detail::HurwitzOut<R>& h, const Cx<R>& s) {
    const Cx<R> w = s - Cx<R>{R(1), R(0)};
    const Cx<R> inv = Cx<R>{R(1), R(0)} / w;
    return {detail::to_std(h.reg + inv), detail::to_std(h.dreg - inv * inv), detail::to_ld(h.tail), h.em_cutoff,
            h.bernoulli_terms};
}

/// Product over primes p | q with p not dividing the conductor of (1 - chi(p) p^{-s}),
/// together with its logarithmic derivative.
template <class R>
std::pair<Cx<R>, Cx<R>> euler_correction(const DirichletCharacter& prim, u64 q, const Cx<R>& s) {
    using std::cos;
    using std::log;
    using std::sin;
    Cx<R> prod{R(1), R(0)};
    Cx<R> logder{R(0), R(0)};
    const u64 f = prim.modulus();
    for (const auto& pp : factorize(q)) {
        if (f % pp.prime == 0) continue;
        Cx<R> c{R(1), R(0)};
        if (f > 1) {
            const auto k = *prim.value_index(static_cast<i64>(pp.prime));
            const u64 lam = prim.group().exponent();
            const R ang = R(2) * detail::pi<R>() * R(k) / R(lam);
            c = {cos(ang), sin(ang)};
        }
        const R lp = log(R(pp.prime));
        const Cx<R> t = c * detail::pow_neg(lp, s);
        const Cx<R> factor = Cx<R>{R(1), R(0)} - t;
        prod *= factor;
        logder += t * lp / factor;
    }
    return {prod, logder};
}

std::vector<u64> units_of(u64 q) {
    std::vector<u64> u;
    for (u64 a = 1; a <= q; ++a)
        if (std::gcd(a, q) == 1) u.push_back(a);
    return u;
}

template <class R>
LValue l_value_impl(const DirichletCharacter& chi, complex_t s_in, const EvalParams& params) {
    const Cx<R> s = detail::from_std<R>(s_in);
    const DirichletCharacter prim = chi.primitive();
    const u64 f = prim.modulus();
    Cx<R> val, der;
    R err;
    if (f == 1) {
        if (s_in == complex_t(1, 0)) throw PoleError("L(s, chi) has a pole at s = 1 for principal chi");
        const auto h = detail::hurwitz_regular<R>(s, R(1), resolve_cutoff(params, s_in, 1), params.bernoulli_terms, true);
        const Cx<R> inv = Cx<R>{R(1), R(0)} / (s - Cx<R>{R(1), R(0)});
        val = h.reg + inv;
        der = h.dreg - inv * inv;
        err = detail::total_error(h);
    } else {
        const auto units = units_of(f);
        std::vector<std::vector<u64>> idx(1);
        for (u64 a : units) idx[0].push_back(*prim.value_index(static_cast<i64>(a)));
        EvalParams p = params;
        p.em_cutoff = resolve_cutoff(params, s_in, f);
        auto out = detail::l_batch<R>(f, units, idx, prim.group().exponent(), s, p, true);
        val = out.values[0];
        der = out.derivatives[0];
        err = out.error;
    }
    if (chi.modulus() != f) {
        const auto [E, dlogE] = euler_correction<R>(prim, chi.modulus(), s);
        der = E * (der + val * dlogE);
        val = E * val;
        err *= detail::abs(E);
    }
    return {detail::to_std(val), detail::to_std(der), detail::to_ld(err)};
}

}  // namespace

EvalParams EvalParams::scanning() {
    EvalParams p;
    p.precision_bits = 64;
    p.em_cutoff = -1;
    return p;
}

HurwitzValue hurwitz_zeta(complex_t s, real_t a, const EvalParams& params) {
    if (!(a > 0 && a <= 1)) throw DomainError("Hurwitz shift a must lie in (0, 1]");
    if (s == complex_t(1, 0)) throw PoleError("Hurwitz zeta has a pole at s = 1");
    auto r = dispatch(params.precision_bits, [&]<class R>() {
        const Cx<R> sx = detail::from_std<R>(s);
        const auto h = detail::hurwitz_regular<R>(sx, R(a), resolve_cutoff(params, s, 1), params.bernoulli_terms, true);
        return finish_hurwitz<R>(h, sx);
    });
    check_accuracy(params, r.tail_bound);
    return r;
}

HurwitzValue hurwitz_zeta(complex_t s, u64 num, u64 den, const EvalParams& params) {
    if (den == 0 || num == 0 || num > den) throw DomainError("Hurwitz shift a must lie in (0, 1]");
    if (s == complex_t(1, 0)) throw PoleError("Hurwitz zeta has a pole at s = 1");
    auto r = dispatch(params.precision_bits, [&]<class R>() {
        const Cx<R> sx = detail::from_std<R>(s);
        const R a = R(num) / R(den);
        const auto h = detail::hurwitz_regular<R>(sx, a, resolve_cutoff(params, s, den), params.bernoulli_terms, true);
        return finish_hurwitz<R>(h, sx);
    });
    check_accuracy(params, r.tail_bound);
    return r;
}

complex_t hurwitz_zeta_ds(complex_t s, real_t a, const EvalParams& params) {
    return hurwitz_zeta(s, a, params).derivative;
}

HurwitzValue hurwitz_zeta_regular(complex_t s, u64 num, u64 den, const EvalParams& params) {
    if (den == 0 || num == 0 || num > den) throw DomainError("Hurwitz shift a must lie in (0, 1]");
    return dispatch(params.precision_bits, [&]<class R>() {
        const Cx<R> sx = detail::from_std<R>(s);
        const R a = R(num) / R(den);
        const auto h = detail::hurwitz_regular<R>(sx, a, resolve_cutoff(params, s, den), params.bernoulli_terms, true);
        return HurwitzValue{detail::to_std(h.reg), detail::to_std(h.dreg), detail::to_ld(h.tail), h.em_cutoff,
                            h.bernoulli_terms};
    });
}

LValue l_value(const DirichletCharacter& chi, complex_t s, const EvalParams& params) {
    auto r = dispatch(params.precision_bits, [&]<class R>() { return l_value_impl<R>(chi, s, params); });
    check_accuracy(params, r.error_bound);
    return r;
}

LogDerivative l_log_derivative(const DirichletCharacter& chi, complex_t s, const EvalParams& params) {
    const LValue v = l_value(chi, s, params);
    const real_t mag = std::abs(v.value);
    const real_t err = std::max(v.error_bound, std::numeric_limits<real_t>::min());
    if (mag < 10 * err) throw NearZeroError("|L(s, chi)| is below ten times its error bound");
    const complex_t ld = v.derivative / v.value;
    return {ld, (std::abs(ld) + 1) * err / mag};
}

LBatch::LBatch(u64 conductor, std::vector<DirichletCharacter> characters)
    : q_(conductor), chars_(std::move(characters)) {
    if (q_ < 2) throw DomainError("LBatch needs a conductor of at least 2");
    const auto group = UnitGroup::of(q_);
    lambda_ = group->exponent();
    for (u64 a = 1; a <= q_; ++a)
        if (std::gcd(a, q_) == 1) units_.push_back(a);
    for (const auto& c : chars_) {
        if (c.modulus() != q_ || !c.is_primitive() || c.is_principal())
            throw DomainError("LBatch characters must be primitive and nonprincipal of modulus " + std::to_string(q_));
        std::vector<u64> row;
        row.reserve(units_.size());
        for (u64 a : units_) row.push_back(*c.value_index(static_cast<i64>(a)));
        value_index_.push_back(std::move(row));
    }
}

LBatch::Result LBatch::evaluate(complex_t s, const EvalParams& params, bool with_derivative) const {
    return dispatch(params.precision_bits, [&]<class R>() {
        EvalParams p = params;
        p.em_cutoff = resolve_cutoff(params, s, q_);
        const auto out =
            detail::l_batch<R>(q_, units_, value_index_, lambda_, detail::from_std<R>(s), p, with_derivative);
        Result r;
        r.error_bound = detail::to_ld(out.error);
        for (const auto& v : out.values) r.values.push_back(detail::to_std(v));
        for (const auto& v : out.derivatives) r.derivatives.push_back(detail::to_std(v));
        return r;
    });
}

std::string to_string(LaurentData::Method m) {
    switch (m) {
        case LaurentData::Method::l_factorization:
            return "l_factorization";
        case LaurentData::Method::z_limit:
            return "z_limit";
        case LaurentData::Method::stark_zero_sum:
            return "stark_zero_sum";
    }
    return "unknown";
}

complex_t log_gamma(complex_t z) { return detail::to_std(detail::log_gamma(detail::from_std<long double>(z))); }

complex_t digamma(complex_t z) { return detail::to_std(detail::digamma(detail::from_std<long double>(z))); }

}  // namespace zetakit

#include "zetakit/zeros.hpp"

#include <algorithm>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

#include <unistd.h>

#include "zetakit/errors.hpp"

namespace zetakit {

namespace {

constexpr real_t kPi = std::numbers::pi_v<real_t>;
constexpr real_t kEuler = std::numbers::egamma_v<real_t>;

std::string fmt(real_t x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12Lg", x);
    return buf;
}

/// Primitive characters of one conductor; q = 1 stands for zeta.
class Evaluator {
public:
    Evaluator(u64 q, std::vector<DirichletCharacter> chars, const EvalParams& params)
        : q_(q), chars_(std::move(chars)), params_(params) {
        if (q_ > 1) batch_.emplace(q_, chars_);
        for (const auto& chi : chars_) {
            shift_.push_back(q_ > 1 ? chi.parity_shift() : 0);
            half_root_arg_.push_back(q_ > 1 ? std::arg(root_number(chi)) / 2 : 0);
        }
    }

    std::size_t size() const { return chars_.size(); }
    u64 conductor() const { return q_; }
    const std::vector<DirichletCharacter>& characters() const { return chars_; }

    /// L(s, chi) for every character; (s - 1) zeta(s) for q = 1 when entire is set.
    std::vector<complex_t> values(complex_t s, bool entire) const {
        if (q_ == 1) {
            const auto h = hurwitz_zeta_regular(s, 1, 1, params_);
            const complex_t w = s - complex_t(1);
            return {entire ? complex_t(1) + w * h.value : h.value + complex_t(1) / w};
        }
        return batch_->evaluate(s, params_).values;
    }

    /// Imaginary part of the log of the gamma factor of the completed function,
    /// continuous on Re s > 0; for zeta the factor s of xi is included.
    real_t gamma_phase(std::size_t i, complex_t s) const {
        complex_t v = s / 2.0L * std::log(static_cast<real_t>(q_) / kPi) + log_gamma((s + real_t(shift_[i])) / 2.0L);
        if (q_ == 1) v += std::log(s);
        return v.imag();
    }

    /// Phase making L(1/2 + it) real.
    real_t hardy_theta(std::size_t i, real_t t) const {
        const complex_t s(0.5L, t);
        const complex_t v = s / 2.0L * std::log(static_cast<real_t>(q_) / kPi) + log_gamma((s + real_t(shift_[i])) / 2.0L);
        return v.imag() - half_root_arg_[i];
    }

    bool is_real(std::size_t i) const { return q_ == 1 || chars_[i].is_real(); }

    static complex_t root_number(const DirichletCharacter& chi) {
        const u64 q = chi.modulus();
        complex_t tau = 0;
        for (u64 a = 1; a < q; ++a) {
            const auto v = chi.value(static_cast<i64>(a));
            if (v == complex_t(0)) continue;
            tau += v * std::polar(1.0L, 2 * kPi * static_cast<real_t>(a) / static_cast<real_t>(q));
        }
        const complex_t ia = chi.parity_shift() ? complex_t(0, 1) : complex_t(1);
        return tau / (ia * std::sqrt(static_cast<real_t>(q)));
    }

private:
    u64 q_;
    std::vector<DirichletCharacter> chars_;
    EvalParams params_;
    std::optional<LBatch> batch_;
    std::vector<int> shift_;
    std::vector<real_t> half_root_arg_;
};

using VectorFn = std::function<std::vector<complex_t>(complex_t)>;

/// Accumulated argument change of each component along the segment a -> b.
/// A step is accepted when every increment is below pi/4 and agrees with the
/// two half steps.
std::vector<real_t> arg_walk(const VectorFn& f, complex_t a, complex_t b, real_t h0) {
    const real_t length = std::abs(b - a);
    const complex_t dir = (b - a) / length;
    auto v = f(a);
    std::vector<real_t> total(v.size(), 0);
    real_t pos = 0;
    real_t h = h0;
    auto tiny = [](const std::vector<complex_t>& w) {
        for (const auto& x : w)
            if (std::abs(x) < 1e-40L) return true;
        return false;
    };
    if (tiny(v)) throw UnresolvedError("zero on the counting contour");
    while (pos < length) {
        const real_t step = std::min(h, length - pos);
        if (step < 1e-10L)
            throw UnresolvedError("argument step underflow near s = " + fmt((a + dir * pos).real()) + " + " +
                                  fmt((a + dir * pos).imag()) + "i");
        const auto vm = f(a + dir * (pos + step / 2));
        const auto vn = f(a + dir * (pos + step));
        bool ok = !tiny(vm) && !tiny(vn);
        std::vector<real_t> d(v.size());
        for (std::size_t i = 0; ok && i < v.size(); ++i) {
            const real_t d1 = std::arg(vm[i] / v[i]);
            const real_t d2 = std::arg(vn[i] / vm[i]);
            const real_t full = std::arg(vn[i] / v[i]);
            if (std::abs(full) > kPi / 4 || std::abs(d1 + d2 - full) > 1e-6L) ok = false;
            d[i] = d1 + d2;
        }
        if (!ok) {
            h = step / 2;
            continue;
        }
        for (std::size_t i = 0; i < v.size(); ++i) total[i] += d[i];
        v = vn;
        pos += step;
        h = std::min(h0, step * 1.5L);
    }
    return total;
}

/// Raw counts (1/pi) Delta arg Lambda over the half contour for each character.
std::vector<real_t> raw_counts(const Evaluator& ev, real_t T) {
    const VectorFn f = [&](complex_t s) { return ev.values(s, true); };
    const complex_t p0(0.5L, 0), p1(1.5L, 0), p2(1.5L, T), p3(0.5L, T);
    auto d = arg_walk(f, p0, p1, 0.25L);
    const auto d2 = arg_walk(f, p1, p2, 0.25L);
    const auto d3 = arg_walk(f, p2, p3, 0.125L);
    std::vector<real_t> out(ev.size());
    for (std::size_t i = 0; i < ev.size(); ++i)
        out[i] = (d[i] + d2[i] + d3[i] + ev.gamma_phase(i, p3) - ev.gamma_phase(i, p0)) / kPi;
    return out;
}

ArgumentCount round_count(real_t raw, const std::string& scope) {
    const real_t r = std::round(raw);
    const real_t defect = std::abs(raw - r);
    if (defect > 0.05L || r < 0)
        throw UnresolvedError("argument-principle count for " + scope + " is " + fmt(raw) +
                              ", not within 0.05 of an integer");
    return {static_cast<u64>(r), raw, defect};
}

void check_limits(u64 q, real_t T, const ZeroParams& p) {
    if (!(T >= 0)) throw DomainError("zero height must be nonnegative");
    if (T > p.max_height)
        throw ResourceError("height " + fmt(T) + " exceeds the configured maximum " + fmt(p.max_height));
    if (q > p.max_conductor)
        throw ResourceError("conductor " + std::to_string(q) + " exceeds the configured maximum " +
                            std::to_string(p.max_conductor));
}

struct Memo {
    std::mutex mutex;
    std::map<std::string, ZeroList> lists;           // scope|bits -> highest list
    std::map<std::string, ArgumentCount> counts;     // scope|bits|T
};
Memo& memo() {
    static Memo m;
    return m;
}
std::string count_key(const std::string& scope, int bits, real_t T) {
    return scope + "|" + std::to_string(bits) + "|" + fmt(T);
}
std::string list_key(const std::string& scope, int bits) { return scope + "|" + std::to_string(bits); }

std::string scope_of(const DirichletCharacter& chi) { return chi.descriptor(); }

/// Argument counts for characters of one conductor, memoized per character.
std::vector<ArgumentCount> batch_counts(u64 q, const std::vector<DirichletCharacter>& chars, real_t T,
                                        const ZeroParams& params) {
    const int bits = params.eval.precision_bits;
    std::vector<ArgumentCount> out(chars.size());
    std::vector<std::size_t> missing;
    {
        std::lock_guard lock(memo().mutex);
        for (std::size_t i = 0; i < chars.size(); ++i) {
            auto it = memo().counts.find(count_key(scope_of(chars[i]), bits, T));
            if (it != memo().counts.end()) out[i] = it->second;
            else missing.push_back(i);
        }
    }
    if (missing.empty()) return out;
    std::vector<DirichletCharacter> sub;
    for (auto i : missing) sub.push_back(chars[i]);
    const Evaluator ev(q, sub, params.eval);
    std::vector<real_t> raw(sub.size(), 0);
    if (T > 0) raw = raw_counts(ev, T);
    std::lock_guard lock(memo().mutex);
    for (std::size_t j = 0; j < sub.size(); ++j) {
        out[missing[j]] = round_count(raw[j], scope_of(sub[j]));
        memo().counts[count_key(scope_of(sub[j]), bits, T)] = out[missing[j]];
    }
    return out;
}

/// Nontrivial primitive characters of the field by conductor, zeta first.
std::vector<std::pair<u64, std::vector<DirichletCharacter>>> groups_of(const AbelianField& field) {
    std::vector<std::pair<u64, std::vector<DirichletCharacter>>> out;
    out.push_back({1, {DirichletCharacter::principal(1)}});
    for (const auto& b : field.batches()) out.push_back({b.conductor(), b.characters()});
    return out;
}

/// Real zeros of L(sigma, chi) in [1/2, 1) for a real character, by sign scan.
std::vector<real_t> real_zeros_of(const Evaluator& single) {
    auto f = [&](real_t x) { return single.values(complex_t(x, 0), true)[0].real(); };
    std::vector<real_t> out;
    constexpr int n = 128;
    real_t x0 = 0.5L, f0 = f(x0);
    for (int k = 1; k <= n; ++k) {
        const real_t x1 = 0.5L + 0.5L * k / (n + 1), f1 = f(x1);
        if ((f0 < 0) != (f1 < 0)) {
            boost::uintmax_t iters = 100;
            auto r = boost::math::tools::bisect(f, x0, x1, boost::math::tools::eps_tolerance<real_t>(50), iters);
            const real_t beta = (r.first + r.second) / 2;
            out.push_back(beta);
            if (beta != 0.5L) out.push_back(1 - beta);
        }
        x0 = x1;
        f0 = f1;
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Sign changes of the Hardy function of one character on (0, T), refined by
/// halving the step until their number matches the expected count.
std::vector<real_t> scan_character(const Evaluator& single, real_t T, u64 expected, int max_refinements) {
    auto hardy = [&](real_t t) {
        const auto v = single.values(complex_t(0.5L, t), false)[0];
        const complex_t z = std::polar(1.0L, single.hardy_theta(0, t)) * v;
        if (std::abs(z.imag()) > 1e-7L * std::max<real_t>(1, std::abs(z)))
            throw UnresolvedError("rotated L-function is not real at t = " + fmt(t) + " for " +
                                  scope_of(single.characters()[0]));
        return z.real();
    };
    const real_t q = static_cast<real_t>(std::max<u64>(single.conductor(), 1));
    const real_t spacing = 2 * kPi / std::log(std::max(q * std::max(T, 1.0L) / (2 * kPi), std::numbers::e_v<real_t>));
    real_t h = std::min(0.2L, spacing / 8);
    for (int round = 0; round <= max_refinements; ++round) {
        const u64 K = std::max<u64>(2, static_cast<u64>(std::ceil(T / h)));
        std::vector<real_t> ts(K + 1), zs(K + 1);
        for (u64 k = 0; k <= K; ++k) {
            ts[k] = T * static_cast<real_t>(k) / static_cast<real_t>(K);
            zs[k] = hardy(ts[k]);
        }
        std::vector<std::pair<u64, u64>> brackets;
        for (u64 k = 0; k < K; ++k)
            if (zs[k] != 0 && ((zs[k] < 0) != (zs[k + 1] < 0) || zs[k + 1] == 0)) brackets.push_back({k, k + 1});
        if (brackets.size() > expected)
            throw UnresolvedError(std::to_string(brackets.size()) + " sign changes but " + std::to_string(expected) +
                                  " zeros counted for " + scope_of(single.characters()[0]));
        if (brackets.size() == expected) {
            std::vector<real_t> out;
            for (auto [a, b] : brackets) {
                if (zs[b] == 0) {
                    out.push_back(ts[b]);
                    continue;
                }
                boost::uintmax_t iters = 200;
                auto r = boost::math::tools::toms748_solve(hardy, ts[a], ts[b], zs[a], zs[b],
                                                           boost::math::tools::eps_tolerance<real_t>(56), iters);
                out.push_back((r.first + r.second) / 2);
            }
            return out;
        }
        h /= 2;
    }
    throw UnresolvedError("could not separate all " + std::to_string(expected) + " zeros of " +
                          scope_of(single.characters()[0]) + " below T = " + fmt(T));
}

std::optional<ZeroList> from_memo(const std::string& scope, int bits) {
    std::lock_guard lock(memo().mutex);
    auto it = memo().lists.find(list_key(scope, bits));
    if (it == memo().lists.end()) return std::nullopt;
    return it->second;
}

void to_memo(const ZeroList& list, int bits) {
    std::lock_guard lock(memo().mutex);
    auto& slot = memo().lists[list_key(list.scope, bits)];
    if (slot.scope.empty() || list.height >= slot.height) slot = list;
}

/// A stored list cut down to height T, re-verified by the count at T.
std::optional<ZeroList> restrict_list(const ZeroList& stored, real_t T, const ArgumentCount& count) {
    if (!stored.verified || stored.height < T) return std::nullopt;
    ZeroList out;
    out.scope = stored.scope;
    out.height = T;
    for (real_t t : stored.ordinates)
        if (t < T) out.ordinates.push_back(t);
    out.real_zeros = stored.real_zeros;
    out.argument_count = count.count;
    out.rounding_defect = count.defect;
    out.verified = out.ordinates.size() == count.count;
    if (!out.verified) return std::nullopt;
    return out;
}

/// Zero lists for characters of one conductor, from memory, disk or a fresh scan.
std::vector<ZeroList> batch_lists(u64 q, const std::vector<DirichletCharacter>& chars, real_t T,
                                  const ZeroParams& params) {
    const int bits = params.eval.precision_bits;
    const std::string dir = params.use_cache ? cache_directory(params) : std::string();
    std::vector<ZeroList> out(chars.size());
    std::vector<bool> done(chars.size(), false);
    std::vector<DirichletCharacter> candidates;
    std::vector<std::size_t> candidate_idx;

    // real characters with a real zero skip the contour
    std::vector<std::vector<real_t>> reals(chars.size());
    for (std::size_t i = 0; i < chars.size(); ++i) {
        if (q == 1 || chars[i].is_real()) {
            const Evaluator single(q, {chars[i]}, params.eval);
            reals[i] = real_zeros_of(single);
        }
        if (!reals[i].empty()) {
            out[i].scope = scope_of(chars[i]);
            out[i].height = T;
            out[i].real_zeros = reals[i];
            done[i] = true;
        } else {
            candidates.push_back(chars[i]);
            candidate_idx.push_back(i);
        }
    }
    const auto counts = batch_counts(q, candidates, T, params);
    for (std::size_t j = 0; j < candidates.size(); ++j) {
        const std::size_t i = candidate_idx[j];
        const std::string scope = scope_of(chars[i]);
        std::optional<ZeroList> hit;
        if (auto m = from_memo(scope, bits)) hit = restrict_list(*m, T, counts[j]);
        if (!hit && !dir.empty()) {
            if (auto c = read_cache_file(dir, scope, bits)) {
                hit = restrict_list(*c, T, counts[j]);
                if (hit) to_memo(*c, bits);
            }
        }
        if (!hit) {
            const Evaluator single(q, {chars[i]}, params.eval);
            ZeroList z;
            z.scope = scope;
            z.height = T;
            z.ordinates = scan_character(single, T, counts[j].count, params.max_refinements);
            z.argument_count = counts[j].count;
            z.rounding_defect = counts[j].defect;
            z.verified = z.ordinates.size() == counts[j].count;
            to_memo(z, bits);
            if (!dir.empty() && z.verified) {
                const auto existing = read_cache_file(dir, scope, bits);
                if (!existing || existing->height < T) write_cache_file(dir, z, bits);
            }
            hit = z;
        }
        out[i] = *hit;
    }
    return out;
}

u64 positive_count(const AbelianField& field, real_t T, const ZeroParams& params) {
    u64 total = 0;
    for (const auto& [q, chars] : groups_of(field))
        for (const auto& c : batch_counts(q, chars, T, params)) total += c.count;
    return total;
}

template <class F>
real_t integrate_to_infinity(F f, real_t a) {
    boost::math::quadrature::exp_sinh<real_t> integrator;
    return integrator.integrate([&](real_t u) { return f(a + u); }, 0.0L, std::numeric_limits<real_t>::infinity());
}

real_t archimedean_constant(const AbelianField& field) {
    const auto sig = field.signature();
    return field.genus() - sig.r1 / 2.0L * (kEuler + std::log(4 * kPi)) - sig.r2 * (kEuler + std::log(2 * kPi));
}

real_t ordinate_sum(const ZeroList& zeros, const std::function<real_t(real_t)>& f) {
    real_t s = 0;
    // smallest terms first
    for (auto it = zeros.ordinates.rbegin(); it != zeros.ordinates.rend(); ++it) s += f(*it);
    return s;
}

void require_verified(const ZeroList& zeros) {
    if (!zeros.verified) throw IncompleteZerosError("zero list for " + zeros.scope + " is not count-verified");
}

}  // namespace

ArgumentCount argument_count(const DirichletCharacter& chi, real_t T, const ZeroParams& params) {
    if (!chi.is_primitive()) throw DomainError("argument_count needs a primitive character");
    check_limits(chi.modulus(), T, params);
    if (chi.modulus() > 1 && chi.is_principal()) throw DomainError("principal character mod q > 1 is not primitive");
    return batch_counts(chi.modulus(), {chi}, T, params)[0];
}

ArgumentCount argument_count(const AbelianField& field, real_t T, const ZeroParams& params) {
    check_limits(field.conductor(), T, params);
    if (T == 0) return {0, 0, 0};
    std::vector<Evaluator> evs;
    for (const auto& [q, chars] : groups_of(field)) evs.emplace_back(q, chars, params.eval);
    const VectorFn f = [&](complex_t s) {
        complex_t prod = 1;
        for (const auto& ev : evs)
            for (const auto& v : ev.values(s, true)) prod *= v;
        return std::vector<complex_t>{prod};
    };
    const complex_t p0(0.5L, 0), p1(1.5L, 0), p2(1.5L, T), p3(0.5L, T);
    real_t d = arg_walk(f, p0, p1, 0.25L)[0] + arg_walk(f, p1, p2, 0.25L)[0] + arg_walk(f, p2, p3, 0.0625L)[0];
    for (const auto& ev : evs)
        for (std::size_t i = 0; i < ev.size(); ++i) d += ev.gamma_phase(i, p3) - ev.gamma_phase(i, p0);
    return round_count(d / kPi, field.descriptor());
}

ZeroList locate_zeros(const DirichletCharacter& chi, real_t T, const ZeroParams& params) {
    if (!chi.is_primitive()) throw DomainError("locate_zeros needs a primitive character");
    if (chi.modulus() > 1 && chi.is_principal()) throw DomainError("principal character mod q > 1 is not primitive");
    check_limits(chi.modulus(), T, params);
    return batch_lists(chi.modulus(), {chi}, T, params)[0];
}

ZeroList locate_zeros(const AbelianField& field, real_t T, const ZeroParams& params) {
    check_limits(field.conductor(), T, params);
    ZeroList out;
    out.scope = field.descriptor();
    out.height = T;
    out.verified = true;
    for (const auto& [q, chars] : groups_of(field)) {
        for (const auto& z : batch_lists(q, chars, T, params)) {
            out.ordinates.insert(out.ordinates.end(), z.ordinates.begin(), z.ordinates.end());
            out.real_zeros.insert(out.real_zeros.end(), z.real_zeros.begin(), z.real_zeros.end());
            out.verified = out.verified && z.verified;
            out.argument_count += z.argument_count;
            out.rounding_defect = std::max(out.rounding_defect, z.rounding_defect);
        }
    }
    std::sort(out.ordinates.begin(), out.ordinates.end());
    std::sort(out.real_zeros.begin(), out.real_zeros.end());
    out.verified = out.verified && out.real_zeros.empty() && out.ordinates.size() == out.argument_count;
    return out;
}

u64 count_zeros(const DirichletCharacter& chi, real_t T, const ZeroParams& params) {
    const u64 pos = argument_count(chi, T, params).count;
    return chi.is_real() ? 2 * pos : pos + argument_count(chi.conj(), T, params).count;
}

u64 count_zeros(const AbelianField& field, real_t T, const ZeroParams& params) {
    check_limits(field.conductor(), T, params);
    return 2 * positive_count(field, T, params);
}

real_t rvm_main_term(const AbelianField& field, real_t T) {
    return T / kPi *
           (field.log_abs_discriminant() + static_cast<real_t>(field.degree()) * std::log(T / (2 * kPi * std::numbers::e_v<real_t>)));
}

real_t trudgian_budget(const AbelianField& field, real_t T) {
    const real_t n = static_cast<real_t>(field.degree());
    return 0.317L * (field.log_abs_discriminant() + n * std::log(T)) + 6.333L * n + 3.482L;
}

RvmReport rvm_report(const AbelianField& field, real_t T, u64 count) {
    if (!(T > 1)) throw DomainError("rvm_report needs T > 1");
    RvmReport r{T, count, rvm_main_term(field, T), 0, trudgian_budget(field, T), false};
    r.error_actual = std::abs(static_cast<real_t>(count) - r.main_term);
    r.ok = r.error_actual <= r.trudgian_budget;
    return r;
}

RvmReport rvm_report(const AbelianField& field, real_t T, const ZeroParams& params) {
    if (!(T > 1)) throw DomainError("rvm_report needs T > 1");
    return rvm_report(field, T, count_zeros(field, T, params));
}

int max_exponent(u64 n) {
    int e = 0;
    for (const auto& pp : factorize(n)) e = std::max(e, pp.exponent);
    return e;
}

real_t murty_delta(u64 n) {
    const int e = max_exponent(n);
    return (e + 1) * (e + 1) * std::cbrt(3.0L) * std::pow(12.0L, e - 1);
}

RegionParams region_params(const AbelianField& field, real_t murty_c) {
    RegionParams r;
    r.n = field.degree();
    r.e_of_n = max_exponent(r.n);
    r.delta_of_n = murty_delta(r.n);
    const real_t L = field.log_abs_discriminant();
    r.siegel_width = 1 / (4 * L);
    r.stark_width = 1 / (16 * L);
    r.murty_c = murty_c;
    r.murty_width = murty_c / (std::pow(static_cast<real_t>(r.n), r.e_of_n) * r.delta_of_n * L);
    return r;
}

SiegelScan siegel_scan(const AbelianField& field, real_t murty_c, int samples, const ZeroParams& params) {
    const auto disc = field.abs_discriminant();
    if (disc && *disc < 3) throw DomainError("siegel_scan needs |d_K| >= 3");
    SiegelScan out{region_params(field, murty_c), samples, {}};
    const real_t width = std::max({out.region.siegel_width, out.region.stark_width, out.region.murty_width});
    const real_t lo = std::max(0.5L, 1 - width);
    std::vector<Evaluator> evs;
    for (const auto& b : field.batches()) evs.emplace_back(b.conductor(), b.characters(), params.eval);
    // sign of zeta_K(sigma) (sigma - 1), which is that of the product of the L-values
    auto f = [&](real_t x) {
        complex_t prod = 1;
        for (const auto& ev : evs)
            for (const auto& v : ev.values(complex_t(x, 0), true)) prod *= v;
        return prod.real();
    };
    real_t x0 = lo, f0 = f(lo);
    for (int k = 1; k <= samples; ++k) {
        const real_t x1 = lo + (1 - lo) * k / (samples + 1), f1 = f(x1);
        if ((f0 < 0) != (f1 < 0)) {
            boost::uintmax_t iters = 100;
            auto r = boost::math::tools::bisect(f, x0, x1, boost::math::tools::eps_tolerance<real_t>(50), iters);
            RealZero z;
            z.beta = (r.first + r.second) / 2;
            z.in_siegel = z.beta > 1 - out.region.siegel_width;
            z.in_stark = z.beta > 1 - out.region.stark_width;
            z.in_murty = z.beta >= 1 - out.region.murty_width;
            for (const auto& ev : evs)
                for (std::size_t i = 0; i < ev.size(); ++i) {
                    const auto& chi = ev.characters()[i];
                    if (chi.order() != 2) continue;
                    const Evaluator single(ev.conductor(), {chi}, params.eval);
                    const real_t a = single.values(complex_t(x0, 0), true)[0].real();
                    const real_t b = single.values(complex_t(x1, 0), true)[0].real();
                    if ((a < 0) != (b < 0))
                        z.quadratic_sources.push_back(chi.parity_shift() ? -static_cast<i64>(chi.conductor())
                                                                         : static_cast<i64>(chi.conductor()));
                }
            out.zeros.push_back(z);
        }
        x0 = x1;
        f0 = f1;
    }
    return out;
}

ZeroSumTail zero_sum_tail(const AbelianField& field, real_t T, u64 positive, const std::function<real_t(real_t)>& f,
                          const std::function<real_t(real_t)>& df) {
    const real_t L = field.log_abs_discriminant();
    const real_t n = static_cast<real_t>(field.degree());
    const real_t a = std::max<real_t>(T, 1);
    auto density = [&](real_t t) { return std::max<real_t>(0, (L + n * std::log(t / (2 * kPi))) / (2 * kPi)); };
    const real_t smooth = integrate_to_infinity([&](real_t t) { return f(t) * density(t); }, a);
    const real_t excess = T >= 1 ? static_cast<real_t>(positive) - rvm_main_term(field, T) / 2 : 0;
    const real_t half_budget =
        integrate_to_infinity([&](real_t t) { return std::abs(df(t)) * trudgian_budget(field, t) / 2; }, a);
    ZeroSumTail out;
    out.estimate = smooth - f(a) * excess;
    out.bound = half_budget + (T >= 1 ? 0 : smooth);
    return out;
}

ReciprocalZeroSum reciprocal_zero_sum(const AbelianField& field, const ZeroList& zeros, const EvalParams& params) {
    require_verified(zeros);
    auto f = [](real_t t) { return 1 / (0.25L + t * t); };
    auto df = [](real_t t) { return -2 * t / ((0.25L + t * t) * (0.25L + t * t)); };
    ReciprocalZeroSum r;
    r.T = zeros.height;
    r.partial = ordinate_sum(zeros, f);
    const auto tail = zero_sum_tail(field, zeros.height, zeros.ordinates.size(), f, df);
    r.tail_estimate = tail.estimate;
    r.tail_bound = tail.bound;
    r.rhs = gamma_field(field, params).ek_constant + archimedean_constant(field) + 1;
    r.residual = std::abs(r.partial + r.tail_estimate - r.rhs);
    return r;
}

ReciprocalZeroSum reciprocal_zero_sum(const AbelianField& field, real_t T, const ZeroParams& params) {
    return reciprocal_zero_sum(field, locate_zeros(field, T, params));
}

LaurentData gamma_from_zero_sum(const AbelianField& field, const ZeroList& zeros, const EvalParams& params) {
    const auto r = reciprocal_zero_sum(field, zeros, params);
    LaurentData out;
    out.residue = residue(field, params).value;
    out.ek_constant = r.partial + r.tail_estimate - archimedean_constant(field) - 1;
    out.method = LaurentData::Method::stark_zero_sum;
    out.error_estimate = r.tail_bound;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.18Lg", out.ek_constant);
    out.ek_constant_digits = buf;
    return out;
}

LiLambda1 li_lambda1(const AbelianField& field, real_t T, const ZeroParams& params) {
    LiLambda1 out;
    auto f = [](real_t t) { return 1 / (0.25L + t * t); };
    auto df = [](real_t t) { return -2 * t / ((0.25L + t * t) * (0.25L + t * t)); };
    if (T <= 0) {
        const auto tail = zero_sum_tail(field, 0, 0, f, df);
        out.value = tail.estimate;
        out.tail_bound = tail.bound;
        out.low_confidence = true;
    } else {
        const auto zeros = locate_zeros(field, T, params);
        const auto r = reciprocal_zero_sum(field, zeros);
        out.value = r.partial + r.tail_estimate;
        out.tail_bound = r.tail_bound;
        out.low_confidence = zeros.ordinates.empty();
    }
    out.positive = out.value > 0;
    return out;
}

StarkCheck stark_identity_check(const AbelianField& field, real_t s, const ZeroList& zeros, const EvalParams& params) {
    if (!(s > 1 && s <= 2)) throw DomainError("stark_identity_check needs s in (1, 2]");
    require_verified(zeros);
    const real_t a = s - 0.5L;
    auto f = [a](real_t t) { return 2 * a / (a * a + t * t); };
    auto df = [a](real_t t) { return -4 * a * t / ((a * a + t * t) * (a * a + t * t)); };
    const auto tail = zero_sum_tail(field, zeros.height, zeros.ordinates.size(), f, df);
    const real_t zero_sum = ordinate_sum(zeros, f) + tail.estimate;
    StarkCheck r;
    r.s = s;
    r.lhs = Z(field, s, ZEvaluation::Route::l_factorization, params).value;
    r.rhs = 1 / s - zero_sum + archimedean_constant(field) + xi(field, complex_t(s, 0)).value.real();
    r.residual = std::abs(r.lhs - r.rhs);
    r.tail_estimate = tail.estimate;
    r.tail_bound = tail.bound;
    return r;
}

real_t jensen_density(const AbelianField& field, const ZeroList& zeros) {
    require_verified(zeros);
    const real_t T = zeros.height - 1;
    if (T < 2) return 0;
    auto N = [&](real_t x) {
        return 2 * static_cast<real_t>(std::lower_bound(zeros.ordinates.begin(), zeros.ordinates.end(), x) -
                                       zeros.ordinates.begin());
    };
    real_t best = 0;
    for (u64 n = 2; static_cast<real_t>(n) <= T; ++n) {
        const real_t x = static_cast<real_t>(n);
        best = std::max(best, (N(x + 1) - N(x)) / (static_cast<real_t>(field.degree()) * std::log(x)));
    }
    return best;
}

real_t jensen_density(const AbelianField& field, real_t T, const ZeroParams& params) {
    if (T < 2) return 0;
    return jensen_density(field, locate_zeros(field, T + 1, params));
}

CountWindow cyclotomic_count_window() { return {-4 / kPi, (2 * std::atan(2.0L) - 0.8L) / kPi}; }

std::vector<CountConstant> cyclotomic_count_constant(const std::vector<u64>& primes, real_t T, const ZeroParams& params) {
    const auto w = cyclotomic_count_window();
    std::vector<CountConstant> out;
    for (u64 p : primes) {
        if (p == 2 || !is_prime(p)) throw DomainError("cyclotomic_count_constant needs odd primes, got " + std::to_string(p));
        if (p > 50 || T > 50) throw ResourceError("cyclotomic_count_constant is limited to p <= 50 and T <= 50");
        const auto k = make_cyclotomic(p);
        CountConstant e;
        e.p = p;
        e.count = count_zeros(k, T, params);
        e.main_term = rvm_main_term(k, T);
        e.c_emp = (static_cast<real_t>(e.count) - e.main_term) / ((p - 2) * std::log(static_cast<real_t>(p)));
        e.in_window = e.c_emp >= w.lower && e.c_emp <= w.upper;
        e.degenerate = p == 3;
        out.push_back(e);
    }
    return out;
}

std::vector<QuadratureCheck> count_window_integrals() {
    boost::math::quadrature::exp_sinh<real_t> half_line;
    const real_t inf = std::numeric_limits<real_t>::infinity();
    auto sq = [](real_t u) { return (0.25L + u * u) * (0.25L + u * u); };
    std::vector<QuadratureCheck> out;
    auto add = [&](std::string name, real_t q, real_t closed) { out.push_back({std::move(name), q, closed, std::abs(q - closed)}); };
    add("(1/pi) int_0^inf 2u^2/(1/4+u^2)^2 du", half_line.integrate([&](real_t u) { return 2 * u * u / sq(u); }, 0.0L, inf) / kPi, 1);
    add("(1/pi) int_0^inf 2u/(1/4+u^2)^2 du", half_line.integrate([&](real_t u) { return 2 * u / sq(u); }, 0.0L, inf) / kPi,
        4 / kPi);
    add("(1/pi) int_1^inf 2u^2/(1/4+u^2)^2 du",
        half_line.integrate([&](real_t u) { return 2 * (u + 1) * (u + 1) / sq(u + 1); }, 0.0L, inf) / kPi,
        (0.8L + kPi - 2 * std::atan(2.0L)) / kPi);
    return out;
}

std::string cache_directory(const ZeroParams& params) {
    if (!params.cache_dir.empty()) return params.cache_dir;
    const char* env = std::getenv("ZETAKIT_CACHE");
    return env ? env : "";
}

std::string format_cache(const ZeroList& list, int bits) {
    std::string out = "ZKC1 " + list.scope + " " + std::to_string(bits) + " " + fmt(list.height) + "\n";
    for (real_t t : list.ordinates) out += fmt(t) + "\n";
    return out;
}

std::optional<ZeroList> parse_cache(const std::string& text, const std::string& scope, int bits) {
    std::istringstream in(text);
    std::string magic, sc, line;
    int b = 0;
    std::string height;
    if (!std::getline(in, line)) return std::nullopt;
    std::istringstream head(line);
    if (!(head >> magic >> sc >> b >> height) || magic != "ZKC1" || sc != scope || b != bits) return std::nullopt;
    ZeroList z;
    z.scope = scope;
    char* end = nullptr;
    z.height = std::strtold(height.c_str(), &end);
    if (*end != '\0' || !(z.height >= 0)) return std::nullopt;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const real_t t = std::strtold(line.c_str(), &end);
        if (*end != '\0' || !(t > 0 && t < z.height)) return std::nullopt;
        if (!z.ordinates.empty() && t < z.ordinates.back()) return std::nullopt;
        z.ordinates.push_back(t);
    }
    z.verified = true;
    z.argument_count = z.ordinates.size();
    return z;
}

namespace {
std::string cache_file(const std::string& dir, const std::string& scope, int bits) {
    std::string name = scope;
    for (char& c : name)
        if (c == ':' || c == ',' || c == '/') c = '_';
    return (std::filesystem::path(dir) / (name + "_" + std::to_string(bits) + ".zkc")).string();
}
}  // namespace

void write_cache_file(const std::string& dir, const ZeroList& list, int bits) {
    if (!list.verified) throw IncompleteZerosError("refusing to cache an unverified zero list");
    std::filesystem::create_directories(dir);
    const std::string target = cache_file(dir, list.scope, bits);
    const std::string tmp = target + ".tmp." + std::to_string(::getpid());
    {
        std::ofstream os(tmp, std::ios::trunc);
        os << format_cache(list, bits);
        if (!os) throw ResourceError("cannot write zero cache " + tmp);
    }
    std::filesystem::rename(tmp, target);
}

std::optional<ZeroList> read_cache_file(const std::string& dir, const std::string& scope, int bits) {
    std::ifstream is(cache_file(dir, scope, bits));
    if (!is) return std::nullopt;
    std::stringstream ss;
    ss << is.rdbuf();
    return parse_cache(ss.str(), scope, bits);
}

}  // namespace zetakit

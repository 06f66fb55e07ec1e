#include "zetakit/fields.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>

#include <boost/multiprecision/gmp.hpp>

#include "zetakit/errors.hpp"

namespace zetakit {

namespace {

using Key = std::pair<u64, u64>;  // (modulus, index) of a primitive character

Key key_of(const DirichletCharacter& chi) { return {chi.modulus(), chi.index()}; }

i64 parse_int(std::string_view text, std::string_view what) {
    i64 v = 0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end || text.empty())
        throw DomainError("malformed " + std::string(what) + " '" + std::string(text) + "'");
    return v;
}

/// Generators of the full character group mod m: one per unit-group generator.
std::vector<DirichletCharacter> dual_generators(u64 m) {
    auto group = UnitGroup::of(m);
    std::vector<DirichletCharacter> gens;
    for (std::size_t j = 0; j < group->generators().size(); ++j) {
        std::vector<u64> e(group->generators().size(), 0);
        e[j] = 1;
        gens.emplace_back(group, std::move(e));
    }
    return gens;
}

}  // namespace

AbelianField AbelianField::rational() { return generated_by({}, "Q"); }

AbelianField AbelianField::generated_by(const std::vector<DirichletCharacter>& generators, std::string descriptor) {
    u64 m = 1;
    for (const auto& g : generators) m = std::lcm(m, g.modulus());
    std::vector<DirichletCharacter> gens;
    for (const auto& g : generators) gens.push_back(g.lift(m));

    std::set<DirichletCharacter> group{DirichletCharacter::principal(m)};
    std::vector<DirichletCharacter> frontier{DirichletCharacter::principal(m)};
    while (!frontier.empty()) {
        std::vector<DirichletCharacter> next;
        for (const auto& x : frontier)
            for (const auto& g : gens) {
                auto y = x * g;
                if (group.insert(y).second) next.push_back(std::move(y));
            }
        frontier = std::move(next);
    }

    AbelianField k;
    for (const auto& chi : group) k.primitive_.push_back(chi.primitive());
    std::sort(k.primitive_.begin(), k.primitive_.end());

    bool all_even = true;
    boost::multiprecision::mpz_int disc = 1;
    for (const auto& chi : k.primitive_) {
        k.conductor_ = std::lcm(k.conductor_, chi.modulus());
        all_even = all_even && chi.parity() == Parity::even;
        disc *= chi.modulus();
        k.log_disc_ += std::log(static_cast<real_t>(chi.modulus()));
    }
    const auto n = static_cast<int>(k.primitive_.size());
    k.signature_ = all_even ? Signature{n, 0} : Signature{0, n / 2};
    k.disc_string_ = disc.str();
    if (disc <= std::numeric_limits<u64>::max())
        k.disc_u64_ = disc.convert_to<u64>();
    else
        k.disc_u64_.reset();

    // largest m (not 2 mod 4) with Q(zeta_m) inside K
    std::set<Key> keys;
    for (const auto& chi : k.primitive_) keys.insert(key_of(chi));
    u64 best = 1;
    for (u64 d : divisors(k.conductor_)) {
        if (d < 3 || d % 4 == 2) continue;
        bool inside = true;
        for (const auto& g : dual_generators(d))
            if (!keys.count(key_of(g.primitive()))) {
                inside = false;
                break;
            }
        if (inside) best = std::max(best, d);
    }
    k.w_ = (best % 2 == 0) ? best : 2 * best;

    std::map<u64, std::vector<DirichletCharacter>> by_conductor;
    for (const auto& chi : k.primitive_)
        if (chi.modulus() > 1) by_conductor[chi.modulus()].push_back(chi);
    auto batches = std::make_shared<std::vector<LBatch>>();
    for (auto& [q, chars] : by_conductor) batches->emplace_back(q, std::move(chars));
    k.batches_ = std::move(batches);

    if (descriptor.empty()) {
        descriptor = "chars:" + std::to_string(m) + ":";
        for (std::size_t i = 0; i < gens.size(); ++i) descriptor += (i ? "," : "") + std::to_string(gens[i].index());
    }
    k.descriptor_ = std::move(descriptor);
    return k;
}

bool AbelianField::contains(const AbelianField& other) const {
    std::set<Key> keys;
    for (const auto& chi : primitive_) keys.insert(key_of(chi));
    return std::all_of(other.primitive_.begin(), other.primitive_.end(),
                       [&](const DirichletCharacter& chi) { return keys.count(key_of(chi)) > 0; });
}

Splitting AbelianField::splitting(u64 p) const {
    if (!is_prime(p)) throw DomainError("splitting: " + std::to_string(p) + " is not prime");
    u64 unramified = 0;
    u64 f = 1;
    for (const auto& chi : primitive_) {
        if (chi.modulus() % p == 0) continue;
        ++unramified;
        f = std::lcm(f, chi.exact_value(static_cast<i64>(p))->den);
    }
    const u64 n = degree();
    const u64 e = n / unramified;
    return {e, f, n / (e * f)};
}

AbelianField make_quadratic(i64 d) {
    if (d == 1 || !is_fundamental_discriminant(d))
        throw DomainError("discriminant " + std::to_string(d) + " is not fundamental");
    return AbelianField::generated_by({kronecker_character(d)}, "quad:" + std::to_string(d));
}

AbelianField make_cyclotomic(u64 n) {
    if (n < 3) throw DomainError("cyclotomic conductor must be at least 3");
    if (n % 4 == 2)
        throw DomainError("cyclo:" + std::to_string(n) + " is not canonical; Q(zeta_" + std::to_string(n) +
                          ") = Q(zeta_" + std::to_string(n / 2) + "), use cyclo:" + std::to_string(n / 2));
    return AbelianField::generated_by(dual_generators(n), "cyclo:" + std::to_string(n));
}

AbelianField make_from_characters(u64 q, const std::vector<u64>& indices) {
    if (q == 0) throw DomainError("modulus must be positive");
    std::vector<DirichletCharacter> gens;
    std::string desc = "chars:" + std::to_string(q) + ":";
    for (std::size_t i = 0; i < indices.size(); ++i) {
        gens.push_back(DirichletCharacter::from_index(q, indices[i]));
        desc += (i ? "," : "") + std::to_string(indices[i]);
    }
    if (indices.empty()) gens.push_back(DirichletCharacter::principal(q));
    return AbelianField::generated_by(gens, desc);
}

AbelianField parse_field(const std::string& descriptor) {
    const std::string_view s = descriptor;
    if (s == "Q") return AbelianField::rational();
    if (s.starts_with("quad:")) return make_quadratic(parse_int(s.substr(5), "discriminant"));
    if (s.starts_with("cyclo:")) {
        const i64 n = parse_int(s.substr(6), "cyclotomic conductor");
        if (n < 3) throw DomainError("cyclotomic conductor must be at least 3");
        return make_cyclotomic(static_cast<u64>(n));
    }
    if (s.starts_with("chars:")) {
        const auto rest = s.substr(6);
        const auto colon = rest.find(':');
        if (colon == std::string_view::npos) throw DomainError("expected chars:<q>:<i1,i2,...>");
        const i64 q = parse_int(rest.substr(0, colon), "modulus");
        if (q < 1) throw DomainError("modulus must be positive");
        std::vector<u64> idx;
        auto list = rest.substr(colon + 1);
        while (!list.empty()) {
            const auto comma = list.find(',');
            const i64 v = parse_int(list.substr(0, comma), "character index");
            if (v < 0) throw DomainError("character index must be nonnegative");
            idx.push_back(static_cast<u64>(v));
            if (comma == std::string_view::npos) break;
            list = list.substr(comma + 1);
            if (list.empty()) throw DomainError("trailing comma in character list");
        }
        return make_from_characters(static_cast<u64>(q), idx);
    }
    throw DomainError("unknown field descriptor '" + descriptor + "' (expected Q, quad:<d>, cyclo:<n>, chars:<q>:<i,...>)");
}

// ---------------------------------------------------------------------------

u64 PlaceCountTable::at(u64 q) const {
    auto it = counts.find(q);
    return it == counts.end() ? 0 : it->second;
}

PlaceCountTable place_counts(const AbelianField& field, u64 bound) {
    PlaceCountTable t;
    t.bound = bound;
    for (const auto& e : prime_powers_up_to(bound)) t.counts[e.q] = 0;
    for (u64 p : primes_up_to(bound)) {
        const auto sp = field.splitting(p);
        u64 q = 1;
        bool fits = true;
        for (u64 i = 0; i < sp.f && fits; ++i) {
            if (q > bound / p) fits = false;
            q *= p;
        }
        if (fits) t.counts[q] += sp.g;
    }
    return t;
}

real_t chebyshev_G(const PlaceCountTable& table, real_t x) {
    if (x < 1) throw DomainError("chebyshev_G needs x >= 1");
    const auto xi = static_cast<u64>(std::floor(x));
    if (xi > table.bound) throw DomainError("place-count table does not reach x");
    real_t sum = 0;
    for (const auto& [q, nq] : table.counts) {
        if (q > xi) break;
        if (nq == 0) continue;
        int m = 0;
        for (u64 v = q; v <= xi; v = (v > xi / q) ? xi + 1 : v * q) ++m;
        sum += static_cast<real_t>(nq) * m * std::log(static_cast<real_t>(q));
    }
    return sum;
}

real_t chebyshev_G(const AbelianField& field, real_t x) {
    if (x < 1) throw DomainError("chebyshev_G needs x >= 1");
    return chebyshev_G(place_counts(field, static_cast<u64>(std::floor(x))), x);
}

// ---------------------------------------------------------------------------

FieldLValues field_l_values(const AbelianField& field, complex_t s, const EvalParams& params, bool with_derivative) {
    FieldLValues out;
    for (const auto& b : field.batches()) {
        auto r = b.evaluate(s, params, with_derivative);
        out.error_bound = std::max(out.error_bound, r.error_bound);
        for (std::size_t i = 0; i < r.values.size(); ++i) {
            out.characters.push_back(b.characters()[i]);
            out.values.push_back(r.values[i]);
            if (with_derivative) out.derivatives.push_back(r.derivatives[i]);
        }
    }
    return out;
}

ZetaKValue zeta_k_value(const AbelianField& field, complex_t s, const EvalParams& params) {
    if (s == complex_t(1, 0)) throw PoleError("zeta_K has a pole at s = 1");
    const auto z = l_value(DirichletCharacter::principal(1), s, params);
    complex_t v = z.value;
    real_t rel = z.error_bound / std::abs(z.value);
    const auto ls = field_l_values(field, s, params);
    for (const auto& l : ls.values) {
        v *= l;
        rel += ls.error_bound / std::abs(l);
    }
    return {v, rel * std::abs(v)};
}

Residue residue(const AbelianField& field, const EvalParams& params) {
    const auto ls = field_l_values(field, 1, params);
    real_t log_rho = 0;
    real_t rel = 0;
    for (const auto& l : ls.values) {
        const real_t a = std::abs(l);
        if (a <= 10 * ls.error_bound) throw NearZeroError("L(1, chi) is not resolved from zero");
        log_rho += std::log(a);
        rel += ls.error_bound / a;
    }
    return {std::exp(log_rho), log_rho, rel};
}

ClassNumberRegulator class_number_times_regulator(const AbelianField& field, const EvalParams& params) {
    const auto rho = residue(field, params);
    const auto sig = field.signature();
    const real_t log_hr = rho.log_value + std::log(static_cast<real_t>(field.roots_of_unity())) + field.genus() -
                          sig.r1 * std::log(2.0L) - sig.r2 * std::log(2 * std::numbers::pi_v<real_t>);
    return {log_hr, std::exp(log_hr), rho.error_bound};
}

u64 class_number(const AbelianField& field, const EvalParams& params) {
    if (!field.is_imaginary_quadratic()) throw DomainError("class_number: field is not imaginary quadratic");
    const auto hr = class_number_times_regulator(field, params);
    const real_t h = std::round(hr.value);
    if (std::abs(hr.value - h) > 1e-6L || h < 1)
        throw PrecisionError("hR = " + std::to_string(static_cast<double>(hr.value)) + " is not an integer");
    return static_cast<u64>(h);
}

u64 class_number_by_forms(i64 d) {
    if (d >= 0 || (((d % 4) + 4) % 4 != 0 && ((d % 4) + 4) % 4 != 1))
        throw DomainError("forms discriminant must be negative and 0 or 1 mod 4");
    const i64 D = -d;
    u64 h = 0;
    for (i64 a = 1; 3 * a * a <= D; ++a) {
        for (i64 b = -a + 1; b <= a; ++b) {
            if (((b - d) % 2 + 2) % 2 != 0) continue;
            const i64 num = b * b - d;
            if (num % (4 * a) != 0) continue;
            const i64 c = num / (4 * a);
            if (c < a) continue;
            if (c == a && b < 0) continue;
            if (std::gcd(std::gcd(a, std::abs(b)), c) != 1) continue;
            ++h;
        }
    }
    return h;
}

}  // namespace zetakit

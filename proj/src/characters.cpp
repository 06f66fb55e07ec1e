#include "zetakit/characters.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>

#include "zetakit/errors.hpp"

namespace zetakit {

std::complex<long double> RootOfUnity::value() const {
    if (num == 0) return {1.0L, 0.0L};
    if (2 * num == den) return {-1.0L, 0.0L};
    if (4 * num == den) return {0.0L, 1.0L};
    if (4 * num == 3 * den) return {0.0L, -1.0L};
    const long double angle = 2.0L * std::numbers::pi_v<long double> * static_cast<long double>(num) /
                              static_cast<long double>(den);
    return {std::cos(angle), std::sin(angle)};
}

// ---------------------------------------------------------------------------

UnitGroup::UnitGroup(u64 modulus) : modulus_(modulus) {
    if (modulus == 0) throw DomainError("modulus must be positive");
    if (modulus == 1) return;
    for (const auto& pp : factorize(modulus)) {
        const u64 rest = modulus / pp.value;
        // CRT lift: x = local (mod p^k), x = 1 (mod rest)
        auto lift = [&](u64 local) {
            for (u64 x = local; x < modulus; x += pp.value)
                if (x % rest == 1 % rest) return x;
            return local;
        };
        if (pp.prime == 2) {
            if (pp.exponent == 1) continue;
            gens_.push_back({UnitGenerator::Kind::minus_one, 2, pp.exponent, pp.value, pp.value - 1,
                             lift(pp.value - 1), 2});
            std::vector<std::uint32_t> t_minus(pp.value, 0);
            std::vector<std::uint32_t> t_five(pp.value, 0);
            if (pp.exponent == 2) {
                t_minus[3] = 1;
                tables_.push_back(std::move(t_minus));
            } else {
                const u64 ord5 = pp.value / 4;
                u64 x = 1;
                for (u64 i = 0; i < ord5; ++i) {
                    t_minus[x] = 0;
                    t_five[x] = static_cast<std::uint32_t>(i);
                    t_minus[pp.value - x] = 1;
                    t_five[pp.value - x] = static_cast<std::uint32_t>(i);
                    x = (x * 5) % pp.value;
                }
                tables_.push_back(std::move(t_minus));
                gens_.push_back({UnitGenerator::Kind::five, 2, pp.exponent, pp.value, 5, lift(5), ord5});
                tables_.push_back(std::move(t_five));
            }
        } else {
            const u64 g = primitive_root_all_powers(pp.prime) % pp.value;
            const u64 ord = pp.value / pp.prime * (pp.prime - 1);
            std::vector<std::uint32_t> table(pp.value, 0);
            u64 x = 1;
            for (u64 i = 0; i < ord; ++i) {
                table[x] = static_cast<std::uint32_t>(i);
                x = (x * g) % pp.value;
            }
            gens_.push_back({UnitGenerator::Kind::odd_cyclic, pp.prime, pp.exponent, pp.value, g, lift(g), ord});
            tables_.push_back(std::move(table));
        }
    }
    for (const auto& g : gens_) {
        size_ *= g.order;
        exponent_ = std::lcm(exponent_, g.order);
    }
}

std::shared_ptr<const UnitGroup> UnitGroup::of(u64 modulus) {
    static std::mutex mu;
    static std::map<u64, std::shared_ptr<const UnitGroup>> cache;
    std::lock_guard lock(mu);
    auto it = cache.find(modulus);
    if (it != cache.end()) return it->second;
    auto g = std::make_shared<const UnitGroup>(modulus);
    cache.emplace(modulus, g);
    return g;
}

bool UnitGroup::discrete_log(i64 a, std::span<u64> out) const {
    const i64 q = static_cast<i64>(modulus_);
    const u64 r = static_cast<u64>(((a % q) + q) % q);
    if (std::gcd(r, modulus_) != 1 && modulus_ != 1) return false;
    for (std::size_t j = 0; j < gens_.size(); ++j) out[j] = tables_[j][r % gens_[j].prime_power];
    return true;
}

// ---------------------------------------------------------------------------

namespace {

struct ComponentExponents {
    int k = 0;         // exponent of p in the modulus
    u64 e = 0;         // odd cyclic exponent, or the 5-exponent for p = 2
    u64 e_minus = 0;   // -1 exponent for p = 2
};

ComponentExponents component(const UnitGroup& g, std::span<const u64> exps, u64 prime) {
    ComponentExponents c;
    c.k = valuation(g.modulus(), prime);
    for (std::size_t j = 0; j < g.generators().size(); ++j) {
        const auto& gen = g.generators()[j];
        if (gen.prime != prime) continue;
        if (gen.kind == UnitGenerator::Kind::minus_one)
            c.e_minus = exps[j];
        else
            c.e = exps[j];
    }
    return c;
}

// conductor exponent of one component
int conductor_exponent(u64 prime, const ComponentExponents& c) {
    if (prime == 2) {
        if (c.k < 2) return 0;
        if (c.e == 0) return c.e_minus != 0 ? 2 : 0;
        const int v = valuation(c.e, 2);
        return std::max(3, c.k - v);
    }
    if (c.e == 0) return 0;
    const int v = valuation(c.e, prime);
    return std::max(1, c.k - v);
}

DirichletCharacter assemble(u64 modulus, const std::map<u64, ComponentExponents>& comps) {
    auto group = UnitGroup::of(modulus);
    std::vector<u64> exps(group->generators().size(), 0);
    for (std::size_t j = 0; j < exps.size(); ++j) {
        const auto& gen = group->generators()[j];
        auto it = comps.find(gen.prime);
        if (it == comps.end()) continue;
        exps[j] = (gen.kind == UnitGenerator::Kind::minus_one ? it->second.e_minus : it->second.e) % gen.order;
    }
    return DirichletCharacter(group, std::move(exps));
}

}  // namespace

DirichletCharacter::DirichletCharacter(std::shared_ptr<const UnitGroup> group, std::vector<u64> exponents)
    : group_(std::move(group)), exps_(std::move(exponents)) {
    if (exps_.size() != group_->generators().size())
        throw DomainError("exponent vector does not match the unit group");
    for (std::size_t j = 0; j < exps_.size(); ++j) exps_[j] %= group_->generators()[j].order;
}

DirichletCharacter DirichletCharacter::principal(u64 modulus) {
    auto g = UnitGroup::of(modulus);
    return DirichletCharacter(g, std::vector<u64>(g->generators().size(), 0));
}

DirichletCharacter DirichletCharacter::from_index(u64 modulus, u64 index) {
    auto g = UnitGroup::of(modulus);
    if (index >= g->size()) throw DomainError("character index out of range");
    std::vector<u64> exps(g->generators().size(), 0);
    for (std::size_t j = exps.size(); j-- > 0;) {
        exps[j] = index % g->generators()[j].order;
        index /= g->generators()[j].order;
    }
    return DirichletCharacter(g, std::move(exps));
}

u64 DirichletCharacter::order() const {
    u64 o = 1;
    for (std::size_t j = 0; j < exps_.size(); ++j) {
        const u64 ord = group_->generators()[j].order;
        o = std::lcm(o, ord / std::gcd(exps_[j], ord));
    }
    return o;
}

u64 DirichletCharacter::conductor() const {
    if (modulus() == 1) return 1;
    u64 f = 1;
    for (const auto& pp : factorize(modulus())) {
        const int c = conductor_exponent(pp.prime, component(*group_, exps_, pp.prime));
        f *= ipow(pp.prime, c);
    }
    return f;
}

Parity DirichletCharacter::parity() const {
    if (modulus() <= 2) return Parity::even;
    const auto v = value_index(-1);
    return (*v == 0) ? Parity::even : Parity::odd;
}

u64 DirichletCharacter::index() const {
    u64 idx = 0;
    for (std::size_t j = 0; j < exps_.size(); ++j) idx = idx * group_->generators()[j].order + exps_[j];
    return idx;
}

bool DirichletCharacter::is_principal() const {
    return std::all_of(exps_.begin(), exps_.end(), [](u64 e) { return e == 0; });
}

std::optional<u64> DirichletCharacter::value_index(i64 a) const {
    std::vector<u64> logs(exps_.size());
    if (!group_->discrete_log(a, logs)) return std::nullopt;
    const u64 lambda = group_->exponent();
    unsigned __int128 acc = 0;
    for (std::size_t j = 0; j < exps_.size(); ++j) {
        const u64 ord = group_->generators()[j].order;
        acc += static_cast<unsigned __int128>(exps_[j]) * logs[j] % ord * (lambda / ord);
    }
    return static_cast<u64>(acc % lambda);
}

std::optional<RootOfUnity> DirichletCharacter::exact_value(i64 a) const {
    const auto k = value_index(a);
    if (!k) return std::nullopt;
    const u64 lambda = group_->exponent();
    const u64 g = std::gcd(*k, lambda);
    return RootOfUnity{*k / g, lambda / g};
}

std::complex<long double> DirichletCharacter::value(i64 a) const {
    const auto v = exact_value(a);
    if (!v) return {0.0L, 0.0L};
    return v->value();
}

DirichletCharacter DirichletCharacter::primitive() const {
    if (modulus() == 1) return *this;
    std::map<u64, ComponentExponents> reduced;
    u64 f = 1;
    for (const auto& pp : factorize(modulus())) {
        const auto c = component(*group_, exps_, pp.prime);
        const int ce = conductor_exponent(pp.prime, c);
        if (ce == 0) continue;
        ComponentExponents r;
        r.k = ce;
        if (pp.prime == 2) {
            r.e_minus = c.e_minus;
            if (ce >= 3) r.e = c.e / ipow(2, c.k - ce);
        } else {
            r.e = c.e / ipow(pp.prime, c.k - ce);
        }
        reduced[pp.prime] = r;
        f *= ipow(pp.prime, ce);
    }
    return assemble(f, reduced);
}

DirichletCharacter DirichletCharacter::lift(u64 new_modulus) const {
    if (new_modulus % modulus() != 0) throw DomainError("lift: new modulus must be a multiple of the modulus");
    if (new_modulus == modulus()) return *this;
    std::map<u64, ComponentExponents> lifted;
    if (modulus() > 1) {
        for (const auto& pp : factorize(modulus())) {
            const auto c = component(*group_, exps_, pp.prime);
            const int big_k = valuation(new_modulus, pp.prime);
            ComponentExponents r;
            r.k = big_k;
            if (pp.prime == 2) {
                r.e_minus = c.k >= 2 ? c.e_minus : 0;
                r.e = c.k >= 3 ? c.e * ipow(2, big_k - c.k) : 0;
            } else {
                r.e = c.e * ipow(pp.prime, big_k - c.k);
            }
            lifted[pp.prime] = r;
        }
    }
    return assemble(new_modulus, lifted);
}

DirichletCharacter DirichletCharacter::conj() const {
    std::vector<u64> exps(exps_.size());
    for (std::size_t j = 0; j < exps_.size(); ++j) {
        const u64 ord = group_->generators()[j].order;
        exps[j] = (ord - exps_[j]) % ord;
    }
    return DirichletCharacter(group_, std::move(exps));
}

DirichletCharacter operator*(const DirichletCharacter& a, const DirichletCharacter& b) {
    const u64 m = std::lcm(a.modulus(), b.modulus());
    const auto la = a.lift(m);
    const auto lb = b.lift(m);
    std::vector<u64> exps(la.exps_.size());
    for (std::size_t j = 0; j < exps.size(); ++j)
        exps[j] = (la.exps_[j] + lb.exps_[j]) % la.group_->generators()[j].order;
    return DirichletCharacter(la.group_, std::move(exps));
}

std::string DirichletCharacter::descriptor() const {
    return "char:" + std::to_string(modulus()) + ":" + std::to_string(index());
}

bool operator==(const DirichletCharacter& a, const DirichletCharacter& b) {
    return a.modulus() == b.modulus() && a.exps_ == b.exps_;
}

std::strong_ordering operator<=>(const DirichletCharacter& a, const DirichletCharacter& b) {
    if (auto c = a.modulus() <=> b.modulus(); c != 0) return c;
    return a.exps_ <=> b.exps_;
}

std::vector<DirichletCharacter> enumerate_characters(u64 q) {
    if (q == 0) throw DomainError("enumerate_characters: q must be positive");
    auto g = UnitGroup::of(q);
    std::vector<DirichletCharacter> out;
    out.reserve(g->size());
    for (u64 i = 0; i < g->size(); ++i) out.push_back(DirichletCharacter::from_index(q, i));
    return out;
}

std::vector<DirichletCharacter> primitive_characters(u64 q) {
    std::vector<DirichletCharacter> out;
    for (auto& chi : enumerate_characters(q))
        if (chi.conductor() == q) out.push_back(std::move(chi));
    return out;
}

int kronecker_symbol(i64 d, i64 n) {
    if (n <= 0) throw DomainError("kronecker_symbol: n must be positive");
    int result = 1;
    // factor out 2 from n
    int twos = 0;
    while (n % 2 == 0) {
        n /= 2;
        ++twos;
    }
    if (twos > 0) {
        if (d % 2 == 0) return 0;
        const i64 r8 = ((d % 8) + 8) % 8;
        if ((twos & 1) && (r8 == 3 || r8 == 5)) result = -result;
    }
    // Jacobi symbol (d | n) for odd n
    i64 a = ((d % n) + n) % n;
    i64 m = n;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            const i64 r = m % 8;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(a, m);
        if (a % 4 == 3 && m % 4 == 3) result = -result;
        a %= m;
    }
    return m == 1 ? result : 0;
}

DirichletCharacter kronecker_character(i64 d) {
    if (!is_fundamental_discriminant(d)) throw DomainError("discriminant " + std::to_string(d) + " is not fundamental");
    const u64 q = static_cast<u64>(d < 0 ? -d : d);
    auto g = UnitGroup::of(q);
    std::vector<u64> exps(g->generators().size(), 0);
    for (std::size_t j = 0; j < exps.size(); ++j) {
        const auto& gen = g->generators()[j];
        exps[j] = kronecker_symbol(d, static_cast<i64>(gen.generator)) == 1 ? 0 : gen.order / 2;
    }
    return DirichletCharacter(g, std::move(exps));
}

}  // namespace zetakit

#pragma once

#include <complex>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "zetakit/arith.hpp"

namespace zetakit {

enum class Parity { even, odd };

/// e^{2 pi i num/den} with num/den reduced, den >= 1.
struct RootOfUnity {
    u64 num = 0;
    u64 den = 1;

    std::complex<long double> value() const;
    friend bool operator==(const RootOfUnity&, const RootOfUnity&) = default;
};

/// One generator of (Z/q)^*, living on a single prime-power component.
struct UnitGenerator {
    enum class Kind { odd_cyclic, minus_one, five };

    Kind kind;
    u64 prime;
    int exponent;      // component modulus is prime^exponent
    u64 prime_power;
    u64 local_root;    // generator modulo prime_power
    u64 generator;     // CRT lift modulo q (1 on the other components)
    u64 order;
};

/// (Z/q)^* as a product of cyclic groups on canonical generators:
/// for odd p the least root that is primitive modulo every p^k, for 2^k the
/// pair (-1, 5). Generators are ordered by prime, then -1 before 5.
class UnitGroup {
public:
    static std::shared_ptr<const UnitGroup> of(u64 modulus);

    u64 modulus() const { return modulus_; }
    u64 size() const { return size_; }
    /// Exponent of the group (lcm of generator orders).
    u64 exponent() const { return exponent_; }
    const std::vector<UnitGenerator>& generators() const { return gens_; }

    /// Discrete logarithms of a on every generator; false if gcd(a, q) > 1.
    bool discrete_log(i64 a, std::span<u64> out) const;

    explicit UnitGroup(u64 modulus);

private:
    u64 modulus_;
    u64 size_ = 1;
    u64 exponent_ = 1;
    std::vector<UnitGenerator> gens_;
    std::vector<std::vector<std::uint32_t>> tables_;  // per generator, indexed by a mod prime_power
};

/// A Dirichlet character modulo q, stored as exponents on the canonical
/// generators: chi(g_j) = e^{2 pi i e_j / ord_j}.
class DirichletCharacter {
public:
    DirichletCharacter(std::shared_ptr<const UnitGroup> group, std::vector<u64> exponents);

    static DirichletCharacter principal(u64 modulus);
    static DirichletCharacter from_index(u64 modulus, u64 index);

    u64 modulus() const { return group_->modulus(); }
    const UnitGroup& group() const { return *group_; }
    std::span<const u64> exponents() const { return exps_; }

    u64 order() const;
    u64 conductor() const;
    Parity parity() const;
    /// 0 for even, 1 for odd; the shift in the gamma factor.
    int parity_shift() const { return parity() == Parity::odd ? 1 : 0; }
    /// Position in the lexicographic enumeration of characters mod q.
    u64 index() const;

    bool is_principal() const;
    bool is_primitive() const { return conductor() == modulus(); }
    bool is_real() const { return order() <= 2; }

    /// chi(a) = e^{2 pi i k / exponent(group)}; nullopt when gcd(a, q) > 1.
    std::optional<u64> value_index(i64 a) const;
    std::optional<RootOfUnity> exact_value(i64 a) const;
    std::complex<long double> value(i64 a) const;

    DirichletCharacter primitive() const;
    /// The same character viewed modulo a multiple of the modulus.
    DirichletCharacter lift(u64 new_modulus) const;
    DirichletCharacter conj() const;
    friend DirichletCharacter operator*(const DirichletCharacter& a, const DirichletCharacter& b);

    /// "char:<q>:<index>"
    std::string descriptor() const;

    friend bool operator==(const DirichletCharacter& a, const DirichletCharacter& b);
    friend std::strong_ordering operator<=>(const DirichletCharacter& a, const DirichletCharacter& b);

private:
    std::shared_ptr<const UnitGroup> group_;
    std::vector<u64> exps_;
};

/// All phi(q) characters mod q in lexicographic order of exponent vectors.
std::vector<DirichletCharacter> enumerate_characters(u64 q);

/// Primitive characters with conductor exactly q.
std::vector<DirichletCharacter> primitive_characters(u64 q);

int kronecker_symbol(i64 d, i64 n);

/// The primitive real character n -> (d | n) for a fundamental discriminant d.
DirichletCharacter kronecker_character(i64 d);

}  // namespace zetakit

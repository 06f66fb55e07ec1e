#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace zetakit {

using u64 = std::uint64_t;
using i64 = std::int64_t;

struct PrimePower {
    u64 prime;
    int exponent;
    u64 value;  // prime^exponent
};

u64 mod_pow(u64 base, u64 exp, u64 mod);
u64 ipow(u64 base, int exp);

bool is_prime(u64 n);
std::vector<u64> primes_up_to(u64 n);
std::vector<PrimePower> factorize(u64 n);
std::vector<u64> divisors(u64 n);
u64 totient(u64 n);
bool is_squarefree(u64 n);

/// d is a fundamental discriminant (d = 1 is excluded).
bool is_fundamental_discriminant(i64 d);

/// Multiplicative order of a modulo m; requires gcd(a, m) = 1.
u64 multiplicative_order(u64 a, u64 m);

/// Smallest g that generates (Z/p^k)^* for every k >= 1; p odd prime.
u64 primitive_root_all_powers(u64 p);

/// Exponent e with p^e || n (0 if p does not divide n).
int valuation(u64 n, u64 p);

/// All prime powers q = p^m <= bound, sorted, as (q, p, m).
struct PrimePowerEntry {
    u64 q;
    u64 p;
    int m;
};
std::vector<PrimePowerEntry> prime_powers_up_to(u64 bound);

}  // namespace zetakit

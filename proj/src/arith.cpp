#include "zetakit/arith.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace zetakit {

u64 mod_pow(u64 base, u64 exp, u64 mod) {
    if (mod == 1) return 0;
    unsigned __int128 result = 1;
    unsigned __int128 b = base % mod;
    while (exp > 0) {
        if (exp & 1u) result = (result * b) % mod;
        b = (b * b) % mod;
        exp >>= 1u;
    }
    return static_cast<u64>(result);
}

u64 ipow(u64 base, int exp) {
    u64 r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    // deterministic Miller-Rabin for 64-bit inputs
    u64 d = n - 1;
    int r = 0;
    while ((d & 1u) == 0) {
        d >>= 1u;
        ++r;
    }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = mod_pow(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < r; ++i) {
            x = static_cast<u64>((static_cast<unsigned __int128>(x) * x) % n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::vector<u64> primes_up_to(u64 n) {
    std::vector<u64> out;
    if (n < 2) return out;
    std::vector<bool> composite(n + 1, false);
    for (u64 i = 2; i <= n; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (u64 j = i * i; j <= n; j += i) composite[j] = true;
    }
    return out;
}

std::vector<PrimePower> factorize(u64 n) {
    if (n == 0) throw std::invalid_argument("factorize: n must be positive");
    std::vector<PrimePower> out;
    for (u64 p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        int e = 0;
        u64 v = 1;
        while (n % p == 0) {
            n /= p;
            v *= p;
            ++e;
        }
        out.push_back({p, e, v});
    }
    if (n > 1) out.push_back({n, 1, n});
    return out;
}

std::vector<u64> divisors(u64 n) {
    std::vector<u64> out{1};
    for (const auto& pp : factorize(n)) {
        const std::size_t base = out.size();
        u64 mult = 1;
        for (int e = 1; e <= pp.exponent; ++e) {
            mult *= pp.prime;
            for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * mult);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

u64 totient(u64 n) {
    u64 r = n;
    for (const auto& pp : factorize(n)) r = r / pp.prime * (pp.prime - 1);
    return r;
}

bool is_squarefree(u64 n) {
    for (const auto& pp : factorize(n))
        if (pp.exponent > 1) return false;
    return true;
}

bool is_fundamental_discriminant(i64 d) {
    if (d == 0 || d == 1) return false;
    const i64 r4 = ((d % 4) + 4) % 4;
    const u64 ad = static_cast<u64>(d < 0 ? -d : d);
    if (r4 == 1) return is_squarefree(ad);
    if (r4 != 0) return false;
    const i64 m = d / 4;
    const i64 m4 = ((m % 4) + 4) % 4;
    if (m4 != 2 && m4 != 3) return false;
    return is_squarefree(static_cast<u64>(m < 0 ? -m : m));
}

u64 multiplicative_order(u64 a, u64 m) {
    if (m == 1) return 1;
    if (std::gcd(a % m, m) != 1) throw std::invalid_argument("multiplicative_order: not a unit");
    const u64 phi = totient(m);
    u64 order = phi;
    for (const auto& pp : factorize(phi)) {
        for (int e = 0; e < pp.exponent; ++e) {
            if (mod_pow(a, order / pp.prime, m) == 1)
                order /= pp.prime;
            else
                break;
        }
    }
    return order;
}

u64 primitive_root_all_powers(u64 p) {
    for (u64 g = 2; g < p * p; ++g) {
        if (g % p == 0) continue;
        if (multiplicative_order(g, p * p) == p * (p - 1)) return g;
    }
    throw std::logic_error("primitive_root_all_powers: no root found");
}

int valuation(u64 n, u64 p) {
    int e = 0;
    while (n != 0 && n % p == 0) {
        n /= p;
        ++e;
    }
    return e;
}

std::vector<PrimePowerEntry> prime_powers_up_to(u64 bound) {
    std::vector<PrimePowerEntry> out;
    for (u64 p : primes_up_to(bound)) {
        u64 q = p;
        int m = 1;
        while (q <= bound) {
            out.push_back({q, p, m});
            if (q > bound / p) break;
            q *= p;
            ++m;
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.q < b.q; });
    return out;
}

}  // namespace zetakit

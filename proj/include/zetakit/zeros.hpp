#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "zetakit/euler_kronecker.hpp"
#include "zetakit/fields.hpp"

namespace zetakit {

/// Non-trivial zeros with ordinates in (0, T). Conjugates are implied.
struct ZeroList {
    std::string scope;  // "char:<q>:<index>" or a field descriptor
    real_t height = 0;
    std::vector<real_t> ordinates;   // ascending, repeated for multiple zeros
    std::vector<real_t> real_zeros;  // real zeros in (0, 1), expected empty
    /// Set only when the argument-principle count over (0, T) equals the number of ordinates.
    bool verified = false;
    u64 argument_count = 0;
    /// Largest distance of a raw argument-principle count from its rounded value.
    real_t rounding_defect = 0;
};

struct ZeroParams {
    EvalParams eval = EvalParams::scanning();
    real_t max_height = 100;
    u64 max_conductor = 100;
    /// Directory of the on-disk cache; empty reads ZETAKIT_CACHE, and if that is unset nothing is cached.
    std::string cache_dir;
    bool use_cache = true;
    /// Each refinement halves the sampling step of a scan that found too few sign changes.
    int max_refinements = 6;
};

/// Raw argument-principle count (1/pi) Delta arg Lambda along 1/2 -> 3/2 -> 3/2+iT -> 1/2+iT.
struct ArgumentCount {
    u64 count;
    real_t raw;
    real_t defect;  // |raw - count|
};

/// Zeros of L(s, chi) with 0 < Im < T; chi is primitive, the principal
/// character mod 1 stands for zeta.
ArgumentCount argument_count(const DirichletCharacter& chi, real_t T, const ZeroParams& params = {});
/// Zeros of zeta_K with 0 < Im < T, from one contour for the whole product.
ArgumentCount argument_count(const AbelianField& field, real_t T, const ZeroParams& params = {});

ZeroList locate_zeros(const DirichletCharacter& chi, real_t T, const ZeroParams& params = {});
/// Union of the character lists; verified when each of them is.
ZeroList locate_zeros(const AbelianField& field, real_t T, const ZeroParams& params = {});

/// N_chi(T): zeros of L(s, chi) with |Im| < T, i.e. those of chi and of its conjugate with positive ordinate.
u64 count_zeros(const DirichletCharacter& chi, real_t T, const ZeroParams& params = {});
/// N_K(T): zeros of zeta_K with |Im| < T, both signs.
u64 count_zeros(const AbelianField& field, real_t T, const ZeroParams& params = {});

/// (T/pi) log(|d_K| (T/(2 pi e))^{n_K}).
real_t rvm_main_term(const AbelianField& field, real_t T);
/// 0.317 (log|d_K| + n_K log T) + 6.333 n_K + 3.482.
real_t trudgian_budget(const AbelianField& field, real_t T);

struct RvmReport {
    real_t T;
    u64 count;
    real_t main_term;
    real_t error_actual;
    real_t trudgian_budget;
    bool ok;
};
RvmReport rvm_report(const AbelianField& field, real_t T, const ZeroParams& params = {});
RvmReport rvm_report(const AbelianField& field, real_t T, u64 count);

struct RegionParams {
    u64 n;
    int e_of_n;         // largest exponent in the factorization of n
    real_t delta_of_n;  // (e + 1)^2 3^{1/3} 12^{e - 1}
    real_t siegel_width;  // 1 / (4 log|d_K|)
    real_t stark_width;   // 1 / (16 log|d_K|)
    real_t murty_width;   // c / (n^e delta log|d_K|)
    real_t murty_c;
};
RegionParams region_params(const AbelianField& field, real_t murty_c = 1);
int max_exponent(u64 n);
real_t murty_delta(u64 n);

struct RealZero {
    real_t beta;
    bool in_siegel, in_stark, in_murty;
    /// Quadratic subfields (by discriminant) whose zeta function vanishes at beta.
    std::vector<i64> quadratic_sources;
};

struct SiegelScan {
    RegionParams region;
    int samples;
    std::vector<RealZero> zeros;
};
/// Sign scan of zeta_K on the union of the three windows below 1, plus bisection.
SiegelScan siegel_scan(const AbelianField& field, real_t murty_c = 1, int samples = 1000,
                       const ZeroParams& params = {});

/// Tail of sum over zeros above T of f(t), for a decreasing f, from the
/// Riemann-von Mangoldt density with the exact discrepancy at T; the bound
/// integrates |f'| against Trudgian's error budget.
struct ZeroSumTail {
    real_t estimate;
    real_t bound;
};
ZeroSumTail zero_sum_tail(const AbelianField& field, real_t T, u64 positive_count,
                          const std::function<real_t(real_t)>& f, const std::function<real_t(real_t)>& df);

struct ReciprocalZeroSum {
    real_t T;
    real_t partial;        // sum over stored ordinates of 1/(1/4 + t^2)
    real_t tail_estimate;
    real_t tail_bound;
    real_t rhs;            // gamma_K + g_K - (r1/2)(gamma + log 4 pi) - r2 (gamma + log 2 pi) + 1
    real_t residual;       // |partial + tail_estimate - rhs|
};
/// Sum of 1/rho over the zeros of zeta_K; IncompleteZerosError for an unverified list.
ReciprocalZeroSum reciprocal_zero_sum(const AbelianField& field, const ZeroList& zeros,
                                      const EvalParams& params = {});
ReciprocalZeroSum reciprocal_zero_sum(const AbelianField& field, real_t T, const ZeroParams& params = {});

/// gamma_K recovered from the zero sum.
LaurentData gamma_from_zero_sum(const AbelianField& field, const ZeroList& zeros, const EvalParams& params = {});

struct LiLambda1 {
    real_t value;       // partial + tail
    real_t tail_bound;
    bool positive;
    bool low_confidence;  // set when no zeros were summed
};
LiLambda1 li_lambda1(const AbelianField& field, real_t T, const ZeroParams& params = {});

struct StarkCheck {
    real_t s;
    real_t lhs;  // Z_K(s)
    real_t rhs;  // partial-fraction side, zero sum truncated at T plus tail estimate
    real_t residual;
    real_t tail_estimate;
    real_t tail_bound;
};
/// Stark's partial-fraction identity for Z_K at real s in (1, 2].
StarkCheck stark_identity_check(const AbelianField& field, real_t s, const ZeroList& zeros,
                                const EvalParams& params = {});

/// max over 2 <= n <= T of (N_K(n+1) - N_K(n)) / (n_K log n); 0 for T < 2.
real_t jensen_density(const AbelianField& field, const ZeroList& zeros);
real_t jensen_density(const AbelianField& field, real_t T, const ZeroParams& params = {});

struct CountWindow {
    real_t lower;  // -4/pi
    real_t upper;  // (2 atan 2 - 4/5)/pi
};
CountWindow cyclotomic_count_window();

struct CountConstant {
    u64 p;
    u64 count;
    real_t main_term;
    real_t c_emp;
    bool in_window;
    bool degenerate;  // p = 3, where (p - 2) log p = log 3
};
std::vector<CountConstant> cyclotomic_count_constant(const std::vector<u64>& primes, real_t T, const ZeroParams& params = {});

struct QuadratureCheck {
    std::string name;
    real_t quadrature;
    real_t closed_form;
    real_t error;
};
std::vector<QuadratureCheck> count_window_integrals();

// Zero cache: one file per (scope, precision), header
// "ZKC1 <scope> <bits> <verified-height>" then one ordinate per line.

std::string cache_directory(const ZeroParams& params);
std::string format_cache(const ZeroList& list, int bits);
/// nullopt for a malformed file or a different scope or precision.
std::optional<ZeroList> parse_cache(const std::string& text, const std::string& scope, int bits);
void write_cache_file(const std::string& dir, const ZeroList& list, int bits);
std::optional<ZeroList> read_cache_file(const std::string& dir, const std::string& scope, int bits);

}  // namespace zetakit

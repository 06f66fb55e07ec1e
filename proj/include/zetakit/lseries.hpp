#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "zetakit/characters.hpp"

namespace zetakit {

using real_t = long double;
using complex_t = std::complex<long double>;

/// Knobs of the Euler-Maclaurin evaluation of Hurwitz zeta.
struct EvalParams {
    /// Working precision. <= 64 runs on long double, wider on MPFR.
    int precision_bits = 192;
    /// Direct-sum length N; 0 selects max(50, 2 |s|), negative selects
    /// the shorter max(20, |s|/2 + 10) used for long double scans.
    int em_cutoff = 0;
    /// Number M of Bernoulli correction terms; 0 adds terms until they drop
    /// below the working precision (or stop decreasing).
    int bernoulli_terms = 0;
    /// If positive, a tail bound above this raises PrecisionError.
    real_t requested_accuracy = 0;

    /// Long double settings sized for scanning the critical strip.
    static EvalParams scanning();
};

struct HurwitzValue {
    complex_t value;
    complex_t derivative;  // d/ds
    real_t tail_bound;     // a-posteriori bound on the truncation error of value
    int em_cutoff;
    int bernoulli_terms;
};

/// zeta(s, a) = sum_{n >= 0} (n + a)^{-s} and its s-derivative, a in (0, 1].
HurwitzValue hurwitz_zeta(complex_t s, real_t a, const EvalParams& params = {});
/// Rational shift a = num/den evaluated exactly at the working precision.
HurwitzValue hurwitz_zeta(complex_t s, u64 num, u64 den, const EvalParams& params = {});
complex_t hurwitz_zeta_ds(complex_t s, real_t a, const EvalParams& params = {});

/// zeta(s, a) - 1/(s - 1), entire in s; derivative included.
HurwitzValue hurwitz_zeta_regular(complex_t s, u64 num, u64 den, const EvalParams& params = {});

struct LValue {
    complex_t value;
    complex_t derivative;
    real_t error_bound;
};

/// L(s, chi). Imprimitive characters are reduced to their primitive
/// character and the missing Euler factors are multiplied back in.
LValue l_value(const DirichletCharacter& chi, complex_t s, const EvalParams& params = {});

struct LogDerivative {
    complex_t value;
    real_t error_bound;
};

/// L'/L(s, chi); NearZeroError if |L| < 10 * its error bound.
LogDerivative l_log_derivative(const DirichletCharacter& chi, complex_t s, const EvalParams& params = {});

/// L-values of several primitive characters sharing one conductor q >= 2,
/// evaluated from one pass over the Hurwitz values zeta(s, a/q).
class LBatch {
public:
    LBatch(u64 conductor, std::vector<DirichletCharacter> characters);

    u64 conductor() const { return q_; }
    const std::vector<DirichletCharacter>& characters() const { return chars_; }

    struct Result {
        std::vector<complex_t> values;
        std::vector<complex_t> derivatives;  // empty unless requested
        real_t error_bound;
    };
    Result evaluate(complex_t s, const EvalParams& params, bool with_derivative = false) const;

private:
    u64 q_;
    std::vector<DirichletCharacter> chars_;
    std::vector<u64> units_;                       // residues a coprime to q
    std::vector<std::vector<u64>> value_index_;    // [char][unit] -> k, chi(a) = e^{2 pi i k / lambda}
    u64 lambda_;
};

/// Laurent data at s = 1 of a Dedekind zeta function.
struct LaurentData {
    enum class Method { l_factorization, z_limit, stark_zero_sum };

    real_t residue;       // rho_K
    real_t ek_constant;   // gamma_K
    Method method;
    real_t error_estimate;
    /// gamma_K printed at the working precision.
    std::string ek_constant_digits;
};

std::string to_string(LaurentData::Method m);

// ---------------------------------------------------------------------------
// Special functions used by the completed L-functions.

/// Principal branch of log Gamma(z), continuous on Re z > 0.
complex_t log_gamma(complex_t z);
complex_t digamma(complex_t z);

}  // namespace zetakit

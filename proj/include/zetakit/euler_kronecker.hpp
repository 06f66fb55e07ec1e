#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zetakit/fields.hpp"
#include "zetakit/lseries.hpp"

namespace zetakit {

/// gamma_K = gamma + sum_{chi != 1} L'/L(1, chi).
LaurentData gamma_field(const AbelianField& field, const EvalParams& params = {});

/// gamma_K as -lim Z_K(1 + theta), by polynomial extrapolation of Z_K at
/// theta = theta0 / 2^j, j = 0..points-1.
LaurentData gamma_z_limit(const AbelianField& field, real_t theta0 = 1.0L / 64, int points = 8,
                          const EvalParams& params = {});

struct GammaP {
    u64 p;
    LaurentData data;
    bool positive;
    real_t ratio;    // gamma_p / log p
    bool in_window;  // -11 < ratio <= 1
};

inline constexpr u64 kDefaultMaxCyclotomicPrime = 200;

/// Euler-Kronecker constant of Q(zeta_p); ResourceError above max_prime.
GammaP gamma_p(u64 p, u64 max_prime = kDefaultMaxCyclotomicPrime, const EvalParams& params = {});

struct ZEvaluation {
    enum class Route { dirichlet_series, l_factorization };

    real_t s;
    real_t value;
    Route route;
    real_t error_estimate;
    /// Set when s - 1 < 1e-6.
    bool pole_proximity_warning = false;
};

std::string to_string(ZEvaluation::Route r);

/// Z_K(s) = -1/(s - 1) - zeta_K'/zeta_K(s).
ZEvaluation Z(const AbelianField& field, real_t s, ZEvaluation::Route route = ZEvaluation::Route::l_factorization,
              const EvalParams& params = {});
/// Dirichlet-series route with an explicit truncation point X.
ZEvaluation Z_dirichlet(const AbelianField& field, real_t s, u64 X);

struct XiValue {
    complex_t value;
    real_t error_bound;
};
/// xi_K(s) = (r1/2)(psi(s/2) - psi(1/2)) + r2 (psi(s) - psi(1)), the archimedean
/// part of Z_K in Stark's partial-fraction expansion.
XiValue xi(const AbelianField& field, complex_t s);

struct MellinReport {
    real_t s;
    real_t X;
    real_t lhs;            // Z_K(s)/s
    real_t rhs;            // 1/s + int_1^X (G_K(x) - x) x^{-s-1} dx
    real_t integral;
    real_t tail_estimate;  // bound on the omitted int_X^infinity
    real_t residual;       // |lhs - rhs|
    /// Same comparison with constant term -1/(s g_K); NaN when g_K = 0.
    real_t variant_rhs;
    real_t variant_residual;
};
MellinReport mellin_check(const AbelianField& field, real_t s, real_t X, const EvalParams& params = {});

struct BoundEntry {
    std::optional<real_t> value;  // empty when the expression is undefined
    bool conditional;             // depends on GRH
    bool asserted;                // an inequality the suite enforces
    std::string note;
};

struct BoundReport {
    std::string field;
    real_t gamma;
    BoundEntry ihara_upper_margin;  // 2 log log sqrt|d_K| - gamma_K
    BoundEntry ihara_lower_margin;  // gamma_K + log sqrt|d_K|
    BoundEntry polylog_ratio;       // |gamma_K| / ((log|d_K|)^4 n_K^3)
    BoundEntry loglog_power_ratio;  // |gamma_K| / (log|d_K|)^{log log|d_K|}
    bool has_quadratic_subfield;
};

BoundReport check_bounds(const AbelianField& field, const EvalParams& params = {});
BoundReport check_bounds(const AbelianField& field, const LaurentData& gamma);

/// Lambda_K(y) y^{-s} summed over prime powers y <= X, i.e. the truncated
/// Dirichlet series of -zeta_K'/zeta_K.
struct VonMangoldtSum {
    real_t sum;       // sum Lambda_K(y) y^{-s}
    real_t g_at_x;    // G_K(X) = sum Lambda_K(y)
};
VonMangoldtSum von_mangoldt_sum(const AbelianField& field, real_t s, u64 X);

}  // namespace zetakit

#pragma once

#include <map>
#include <string>
#include <vector>

#include "zetakit/fields.hpp"
#include "zetakit/lseries.hpp"

namespace zetakit {

/// A chain of fields with strictly growing character groups.
struct Tower {
    std::string descriptor;
    std::vector<AbelianField> levels;
};

/// Validates strict containment and growth of the genus; DomainError otherwise.
Tower make_tower(std::vector<AbelianField> levels, std::string descriptor = {});

inline constexpr u64 kMaxTowerConductor = 200;

/// Q(zeta_p) in Q(zeta_{p^2}) in ... in Q(zeta_{p^depth}); ResourceError if p^depth > max_conductor.
Tower build_cyclotomic_tower(u64 p, int depth, u64 max_conductor = kMaxTowerConductor);

/// `cyclo-tower:<p>:<depth>` or `quad-family:<d1>..<d2>` (fundamental discriminants from d1 towards d2).
std::vector<AbelianField> parse_family(const std::string& spec, u64 max_conductor = kMaxTowerConductor);
bool is_tower_spec(const std::string& spec);

struct LevelStats {
    std::string field;
    u64 conductor;
    u64 degree;
    real_t g;
    real_t r1_over_g;
    real_t r2_over_g;
    std::map<u64, real_t> nq_over_g;  // every prime power q <= Q_max
    real_t log_rho_over_g;
    real_t log_hr_over_g;
    /// 1 + sum_{q <= Q_max} (N_q/g) log(q/(q-1)) - (r1/g) log 2 - (r2/g) log 2 pi
    real_t gbs_rhs_partial;
    /// sum over Q_max < q <= 10 Q_max of (N_q/g)/(q-1); the full tail diverges for a single field.
    real_t truncation_tail;
};

struct FamilyStats {
    u64 q_max;
    std::vector<u64> prime_powers;  // column order of nq_over_g
    std::vector<LevelStats> levels;
};

/// Q_max <= 1000; DomainError for a level with g_K = 0.
FamilyStats family_stats(const std::vector<AbelianField>& levels, u64 q_max, const EvalParams& params = {});
std::string to_csv(const FamilyStats& stats);

struct MonotoneResult {
    u64 p;  // 0 for the archimedean sequence
    int n;
    std::vector<real_t> values;
    bool nonincreasing;
};
/// v_i = sum_{m <= n} m N_{p^m}(K_i) / g_{K_i}, nonincreasing within 1e-12.
MonotoneResult monotone_check(const Tower& tower, u64 p, int n);
/// (r1 + 2 r2) / g along the tower.
MonotoneResult archimedean_check(const Tower& tower);

struct ClassNumberIdentity {
    real_t log_rho;
    real_t rhs;  // r1 log 2 + r2 log 2 pi + log(hR) - log w - g
    real_t residual;
    /// hR from an oracle that does not go through rho_K (reduced forms for imaginary quadratic fields, 1 for Q).
    bool independent;
};
ClassNumberIdentity class_number_formula_identity(const AbelianField& field, const EvalParams& params = {});

struct ThetaLevel {
    std::string field;
    real_t g;
    real_t theta;            // exp(-(log g)^{m+2})
    real_t log_theta_over_g;
    real_t gamma;
    real_t gamma_theta_over_g;
    real_t log_zeta_over_g;       // log zeta_K(1 + theta) / g
    real_t euler_partial_over_g;  // sum_{q <= Q_max} (N_q/g) log(q/(q-1))
    real_t z_limit_gap;           // |int_0^theta Z_K(1 + t) dt|
    bool skipped;
    std::string notice;
};
/// Levels with g <= 1, or with 1 + theta == 1 in long double, are skipped with a notice.
std::vector<ThetaLevel> theta_schedule(const Tower& tower, int m, u64 q_max = 100, const EvalParams& params = {});

struct RhoTrendEntry {
    u64 p;
    real_t g;
    real_t abs_log_rho_over_g;
};
struct RhoTrend {
    std::vector<RhoTrendEntry> entries;
    bool last_below_first;
};
/// |log rho_K| / g for K = Q(zeta_p) over the given primes.
RhoTrend cyclotomic_rho_trend(const std::vector<u64>& primes, const EvalParams& params = {});

}  // namespace zetakit

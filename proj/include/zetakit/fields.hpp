#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "zetakit/characters.hpp"
#include "zetakit/lseries.hpp"

namespace zetakit {

struct Signature {
    int r1 = 1;
    int r2 = 0;
    friend bool operator==(const Signature&, const Signature&) = default;
};

struct Splitting {
    u64 e = 1;  // ramification index
    u64 f = 1;  // residue degree
    u64 g = 1;  // number of places above p
    friend bool operator==(const Splitting&, const Splitting&) = default;
};

/// An abelian number field, given by its group of primitive Dirichlet characters.
class AbelianField {
public:
    /// Closure of the given characters under multiplication; every character is
    /// lifted to the lcm of the moduli before taking products.
    static AbelianField generated_by(const std::vector<DirichletCharacter>& generators, std::string descriptor = {});
    static AbelianField rational();

    const std::string& descriptor() const { return descriptor_; }
    /// Primitive characters, trivial first, then by (conductor, index).
    const std::vector<DirichletCharacter>& characters() const { return primitive_; }
    /// Nontrivial primitive characters grouped by conductor.
    const std::vector<LBatch>& batches() const { return *batches_; }

    u64 degree() const { return primitive_.size(); }
    u64 conductor() const { return conductor_; }
    Signature signature() const { return signature_; }
    /// |d_K| as a decimal string (exact).
    const std::string& abs_discriminant_string() const { return disc_string_; }
    /// |d_K| if it fits in 64 bits.
    std::optional<u64> abs_discriminant() const { return disc_u64_; }
    real_t log_abs_discriminant() const { return log_disc_; }
    /// g_K = log sqrt|d_K|.
    real_t genus() const { return log_disc_ / 2; }
    u64 roots_of_unity() const { return w_; }

    bool is_rational() const { return degree() == 1; }
    bool is_totally_real() const { return signature_.r2 == 0; }
    bool is_imaginary_quadratic() const { return degree() == 2 && signature_.r2 == 1; }

    /// Character-group containment, i.e. other is a subfield of this.
    bool contains(const AbelianField& other) const;

    Splitting splitting(u64 p) const;

private:
    AbelianField() = default;

    std::string descriptor_;
    std::vector<DirichletCharacter> primitive_;
    std::shared_ptr<const std::vector<LBatch>> batches_;
    u64 conductor_ = 1;
    Signature signature_;
    std::string disc_string_ = "1";
    std::optional<u64> disc_u64_ = 1;
    real_t log_disc_ = 0;
    u64 w_ = 2;
};

/// Q(sqrt d) for a fundamental discriminant d != 1.
AbelianField make_quadratic(i64 d);
/// Q(zeta_n), n >= 3, n != 2 mod 4.
AbelianField make_cyclotomic(u64 n);
/// Subfield of Q(zeta_q) cut out by the group generated by the listed
/// characters mod q (enumeration indices).
AbelianField make_from_characters(u64 q, const std::vector<u64>& indices);
/// `Q` | `quad:<d>` | `cyclo:<n>` | `chars:<q>:<i1,i2,...>`
AbelianField parse_field(const std::string& descriptor);

/// N_q(K) for prime powers q <= X.
struct PlaceCountTable {
    u64 bound = 0;
    std::map<u64, u64> counts;  // q -> N_q, only prime powers <= bound, zeros included

    u64 at(u64 q) const;
};

PlaceCountTable place_counts(const AbelianField& field, u64 bound);

/// G_K(x) = sum over places v and m >= 1 with Nv^m <= x of log Nv.
real_t chebyshev_G(const AbelianField& field, real_t x);
/// Same sum from a precomputed table (bound >= x).
real_t chebyshev_G(const PlaceCountTable& table, real_t x);

/// L(s, chi) for every nontrivial character of the field, in the order of
/// characters() with the trivial one skipped.
struct FieldLValues {
    std::vector<DirichletCharacter> characters;
    std::vector<complex_t> values;
    std::vector<complex_t> derivatives;  // empty unless requested
    real_t error_bound = 0;              // per value
};
FieldLValues field_l_values(const AbelianField& field, complex_t s, const EvalParams& params = {},
                            bool with_derivative = false);

struct ZetaKValue {
    complex_t value;
    real_t error_bound;
};
/// zeta_K(s) = zeta(s) prod L(s, chi); PoleError at s = 1.
ZetaKValue zeta_k_value(const AbelianField& field, complex_t s, const EvalParams& params = {});

struct Residue {
    real_t value;        // rho_K
    real_t log_value;    // log rho_K
    real_t error_bound;  // relative
};
/// rho_K = prod_{chi != 1} L(1, chi).
Residue residue(const AbelianField& field, const EvalParams& params = {});

struct ClassNumberRegulator {
    real_t log_value;  // log(h R)
    real_t value;      // h R (may overflow to inf for huge fields)
    real_t relative_error;
};
/// hR = rho_K w_K sqrt|d_K| / (2^{r1} (2 pi)^{r2}).
ClassNumberRegulator class_number_times_regulator(const AbelianField& field, const EvalParams& params = {});

/// h for an imaginary quadratic field (R = 1); PrecisionError if hR is not
/// within 1e-6 of an integer.
u64 class_number(const AbelianField& field, const EvalParams& params = {});

/// Number of reduced primitive positive definite forms of discriminant d < 0.
u64 class_number_by_forms(i64 d);

}  // namespace zetakit

#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nilfourier/multfn.hpp"
#include "nilfourier/numfield.hpp"

namespace nilfourier {

/** A parametrized family of solutions x = x_scale k prod(m + a_i n),
    y = y_scale k prod(m + a'_i n), z = zfun(k, m, n) (one entry per retained
    sign choice) annihilating the polynomial pfun. */
struct KTypeSpec {
    FieldPtr K;
    std::vector<FieldElement> a, ap; // shifts; pairwise distinct, {a} != {a'}
    std::vector<Int> pcoef;          // quadratic case: {a, b, c, d, e, f}
    int case_id = 0;                 // 1 or 2 for the quadratic construction
    std::string label;
    FieldElement x_scale, y_scale;
    std::function<std::vector<std::vector<FieldElement>>(
        const FieldElement&, const FieldElement&, const FieldElement&)>
        zfun;
    std::function<FieldElement(const FieldElement&, const FieldElement&,
                               const std::vector<FieldElement>&)>
        pfun;

    void validate_shifts() const;
    FieldElement x(const FieldElement& k, const FieldElement& m, const FieldElement& n) const;
    FieldElement y(const FieldElement& k, const FieldElement& m, const FieldElement& n) const;
};

struct identity_error : std::runtime_error {
    std::string witness;
    identity_error(const std::string& msg, std::string w)
        : std::runtime_error(msg), witness(std::move(w)) {}
};

/** Parametrized solutions of a x^2 + b y^2 + c z^2 + d xy + e xz + f yz over
    the tower Q(sqrt of the three discriminants). Throws unsupported_error
    naming the degenerate case when the construction does not apply. */
KTypeSpec quad_parametrization(long a, long b, long c, long d, long e, long f);

/// x1^2 - 2 x2^2 + z1^2 - z2^2 over the Eisenstein integers.
KTypeSpec gerardin_spec();

struct VerifyReport {
    unsigned trials = 0;
    unsigned evaluations = 0; // trials times sign choices
};

/// Exact residual check at random integral (k, m, n); throws identity_error
/// with the witness triple on any nonzero residual.
VerifyReport verify_identity(const KTypeSpec& spec, unsigned trials, unsigned seed = 1);

struct partial_folner_error : std::runtime_error {
    std::vector<FieldElement> found;
    partial_folner_error(const std::string& msg, std::vector<FieldElement> f)
        : std::runtime_error(msg), found(std::move(f)) {}
};

/** All n with (n) containing (I_1 ... I_N)^N, for the first N prime ideals
    ordered by norm then lexicographic basis. Desk scale: N <= 3. */
std::vector<FieldElement> folner_set(const FieldPtr& field, unsigned N);

struct MultAverage {
    cplx value;
    double degenerate_fraction; // pairs with a chi(0) factor
};

/// E_{m,n in [N]^D} prod chi(m + a_i n) conj chi(m + a'_i n), exact box sum.
MultAverage mult_average(const MultFnSpec& chi, const std::vector<FieldElement>& a,
                         const std::vector<FieldElement>& ap, long N);

using Coloring = std::function<int(const FieldElement&)>;

struct ColorWitness {
    FieldElement k, m, n, x, y;
    std::vector<FieldElement> z;
    std::size_t z_choice = 0;
    int color = 0;
};

/** First (k, m, n) in lexicographic coordinate order with x, y integral,
    nonzero, distinct, same-colored, and some z choice integral; nullopt when
    the box is exhausted. */
std::optional<ColorWitness> coloring_search(const KTypeSpec& spec, const Coloring& color,
                                            long box_height);

} // namespace nilfourier

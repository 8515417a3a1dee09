#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nilfourier/matrix.hpp"
#include "nilfourier/poly.hpp"
#include "nilfourier/rat.hpp"

namespace nilfourier {

/** An integral tuple: degree D, exact multiplication table of the integral
    basis b_1..b_D, and the coordinates of 1. Optionally carries a monic
    defining polynomial when the basis is the power basis of a single
    generator. Immutable after construction. */
class FieldSpec {
public:
    std::string label;
    std::size_t D = 0;
    std::vector<Int> mult_table; // c[(i*D + j)*D + k]: b_i b_j = sum_k c b_k
    std::vector<Int> one_coords;
    std::optional<Poly> defining_poly;

    const Int& c(std::size_t i, std::size_t j, std::size_t k) const {
        return mult_table[(i * D + j) * D + k];
    }

    static FieldSpec from_table(std::string label, std::size_t D, std::vector<Int> table,
                                std::vector<Int> one);
    /// Power basis {1, t, ..., t^{D-1}} with multiplication reduced modulo the
    /// monic integer polynomial.
    static FieldSpec monogenic(std::string label, const Poly& poly);

    /// Builtin names: Q, Qi, Qsqrt2, Qsqrtm3, Qsqrt2sqrt3.
    static std::shared_ptr<const FieldSpec> builtin(const std::string& name);
    static std::vector<std::string> builtin_names();

    /// Key/value field-definition format (label, degree, poly or table[i][j] + one).
    static std::shared_ptr<const FieldSpec> parse(const std::string& text);
    static std::shared_ptr<const FieldSpec> load(const std::string& path);

    /// Checks commutativity, associativity on basis triples, and the identity.
    void validate() const;

    bool is_monogenic() const { return defining_poly.has_value(); }
};

using FieldPtr = std::shared_ptr<const FieldSpec>;

/** Element of a field given by exact rational coordinates over the basis. */
class FieldElement {
public:
    FieldPtr field;
    std::vector<Rat> coords;

    FieldElement() = default;
    FieldElement(FieldPtr f, std::vector<Rat> c) : field(std::move(f)), coords(std::move(c)) {}

    static FieldElement from_ints(const FieldPtr& f, const std::vector<Int>& n);
    static FieldElement one(const FieldPtr& f);
    static FieldElement zero(const FieldPtr& f);
    static FieldElement rational(const FieldPtr& f, const Rat& r);
    /// The power-basis generator of a monogenic field.
    static FieldElement generator(const FieldPtr& f);

    bool is_zero() const;
    bool is_integral() const;
    bool operator==(const FieldElement& o) const { return coords == o.coords; }

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator-() const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator*(const Rat& s) const;
    FieldElement pow(unsigned e) const;
    FieldElement inverse() const; // throws precondition_error on zero

    std::string str() const;
};

/// Matrix of multiplication by x in the basis: x*b_i = sum_j A(i,j) b_j.
QMat embed_matrix(const FieldElement& x);

/// det of the multiplication matrix; multiplicative, integral on integral elements.
Rat knorm(const FieldElement& x);

/// Minimal polynomial of x (monic, irreducible, squarefree).
Poly min_poly(const FieldElement& x);

struct EigenValue {
    std::complex<double> value;
    bool is_real;
};

/** All D eigenvalues of the multiplication matrix, r1 real values followed by
    r2 conjugate pairs (adjacent, positive-imaginary first). Throws
    numeric_error with the achieved bound when `precision` is unreachable. */
std::vector<EigenValue> eigen_data(const FieldElement& x, double precision);

/// r1 + r2 - 1, the rank of the unit log-lattice.
std::size_t unit_rank(const FieldSpec& f);

} // namespace nilfourier

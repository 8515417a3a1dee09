#pragma once

#include <map>
#include <vector>

#include "nilfourier/matrix.hpp"
#include "nilfourier/numfield.hpp"
#include "nilfourier/rat.hpp"

namespace nilfourier {

using MIdx = std::vector<unsigned>;

/** m-linear form on (Z^D)^m with values in Q^s, symmetric under argument
    permutation. Coefficients are stored once per index multiset, keyed by the
    multiplicity pattern j with |j| = m. */
struct SymForm {
    std::size_t D = 1, m = 1, s = 1;
    std::map<MIdx, std::vector<Rat>> u;

    void validate() const;
    /// L(n_1, ..., n_m), summing over all D^m index tuples
    std::vector<Rat> operator()(const std::vector<std::vector<Rat>>& args) const;
};

/** Homogeneous degree-m polynomial R(n) = sum_{|j|=m} v_j n^j with values in Q^s. */
struct DiagForm {
    std::size_t D = 1, m = 1, s = 1;
    std::map<MIdx, std::vector<Rat>> v;

    void validate() const;
    std::vector<Rat> operator()(const std::vector<Rat>& n) const;
};

/// Diagonal restriction: hat(L)(n) = L(n, ..., n); v_j = multinom(m, j) u_j.
DiagForm hat(const SymForm& L);
/// Inverse polarization: u_j = v_j / multinom(m, j). check(hat(L)) = L exactly.
SymForm check(const DiagForm& R);

/// Postcompose with A on the value side: (A o L)(...) = L(...) A (row vectors).
SymForm act_left(const IMat& A, const SymForm& L);
/// Precompose with B on the argument side: (L o B)(n_1, ...) = L(n_1 B, ...).
SymForm act_right(const IMat& B, const SymForm& L);

/** Reads the linear map off a graph: column-reduces A2 through an invertible Y
    with A2 = Y [I; 0], writes A1 = Y [B1; B2], and returns B1. Throws
    precondition_error when A2 loses rank or the combined rows do not span. */
QMat extract_automorphism(const IMat& A1, const IMat& A2);

/** Degree-2 bracket check in the Heisenberg model: true iff the bracket form
    F(u, v) = u_x v_y - u_y v_x is preserved on the basis pairs by B1,
    equivalently det(B1) = 1. */
bool aut_d_check(const IMat& B1);

struct EigenProduct {
    Poly f0;                   // squarefree part of the product, monic
    std::vector<Poly> factors; // characteristic polynomial per tensor degree
    bool norm_warning = false; // |N(p)| == |N(q)|
};

/** Minimal annihilator of all length-<=m_max eigenvalue products of the
    multiplication matrix of p/q, via exact Kronecker-power characteristic
    polynomials and the squarefree part. */
EigenProduct eigenproduct_minpoly(const FieldElement& p, const FieldElement& q, unsigned m_max);

} // namespace nilfourier

#pragma once

#include <cstddef>
#include <vector>

#include "nilfourier/errors.hpp"
#include "nilfourier/poly.hpp"
#include "nilfourier/rat.hpp"

namespace nilfourier {

/** Dense matrix over exact rationals. Small and direct: the sizes here are the
    field degree and its Kronecker powers. */
class QMat {
public:
    std::size_t rows = 0, cols = 0;
    std::vector<Rat> a; // row-major

    QMat() = default;
    QMat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, Rat(0)) {}

    static QMat identity(std::size_t n) {
        QMat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    Rat& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const Rat& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    bool operator==(const QMat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }

    QMat operator+(const QMat& o) const {
        QMat r = *this;
        for (std::size_t i = 0; i < a.size(); ++i) r.a[i] += o.a[i];
        return r;
    }
    QMat operator-(const QMat& o) const {
        QMat r = *this;
        for (std::size_t i = 0; i < a.size(); ++i) r.a[i] -= o.a[i];
        return r;
    }
    QMat operator*(const QMat& o) const {
        QMat r(rows, o.cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t k = 0; k < cols; ++k) {
                const Rat& x = (*this)(i, k);
                if (x == 0) continue;
                for (std::size_t j = 0; j < o.cols; ++j) r(i, j) += x * o(k, j);
            }
        return r;
    }
    QMat operator*(const Rat& s) const {
        QMat r = *this;
        for (auto& x : r.a) x *= s;
        return r;
    }

    bool is_zero() const {
        for (const auto& x : a)
            if (x != 0) return false;
        return true;
    }

    QMat transpose() const {
        QMat r(cols, rows);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    Rat trace() const {
        Rat t = 0;
        for (std::size_t i = 0; i < rows; ++i) t += (*this)(i, i);
        return t;
    }

    Rat det() const {
        QMat m = *this;
        std::size_t n = rows;
        Rat d = 1;
        for (std::size_t col = 0; col < n; ++col) {
            std::size_t piv = col;
            while (piv < n && m(piv, col) == 0) ++piv;
            if (piv == n) return 0;
            if (piv != col) {
                for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(col, j));
                d = -d;
            }
            d *= m(col, col);
            Rat inv = Rat(1) / m(col, col);
            for (std::size_t i = col + 1; i < n; ++i) {
                if (m(i, col) == 0) continue;
                Rat f = m(i, col) * inv;
                for (std::size_t j = col; j < n; ++j) m(i, j) -= f * m(col, j);
            }
        }
        return d;
    }

    /// Reduced row echelon form in place; returns the rank and pivot columns.
    std::size_t rref(std::vector<std::size_t>* pivots = nullptr) {
        std::size_t r = 0;
        for (std::size_t col = 0; col < cols && r < rows; ++col) {
            std::size_t piv = r;
            while (piv < rows && (*this)(piv, col) == 0) ++piv;
            if (piv == rows) continue;
            if (piv != r)
                for (std::size_t j = 0; j < cols; ++j) std::swap((*this)(piv, j), (*this)(r, j));
            Rat inv = Rat(1) / (*this)(r, col);
            for (std::size_t j = 0; j < cols; ++j) (*this)(r, j) *= inv;
            for (std::size_t i = 0; i < rows; ++i) {
                if (i == r || (*this)(i, col) == 0) continue;
                Rat f = (*this)(i, col);
                for (std::size_t j = 0; j < cols; ++j) (*this)(i, j) -= f * (*this)(r, j);
            }
            if (pivots) pivots->push_back(col);
            ++r;
        }
        return r;
    }

    std::size_t rank() const {
        QMat m = *this;
        return m.rref();
    }

    QMat inverse() const {
        std::size_t n = rows;
        QMat aug(n, 2 * n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) aug(i, j) = (*this)(i, j);
            aug(i, n + i) = 1;
        }
        if (aug.rref() != n) throw precondition_error("matrix is singular");
        QMat inv(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
        return inv;
    }

    /// Solve x * M = b for a row vector x (the regular representation acts on the right).
    std::vector<Rat> solve_left(const std::vector<Rat>& b) const {
        QMat t = transpose();
        std::size_t n = rows;
        QMat aug(n, n + 1);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) aug(i, j) = t(i, j);
            aug(i, n) = b[i];
        }
        std::vector<std::size_t> piv;
        aug.rref(&piv);
        std::vector<Rat> x(n, Rat(0));
        for (std::size_t r = 0; r < piv.size(); ++r) {
            if (piv[r] == n) throw precondition_error("inconsistent linear system");
            x[piv[r]] = aug(r, n);
        }
        return x;
    }

    /// Characteristic polynomial det(tI - M) by the Faddeev-LeVerrier recursion.
    Poly charpoly() const {
        std::size_t n = rows;
        std::vector<Rat> coeff(n + 1, Rat(0));
        coeff[n] = 1;
        Rat c = 0;
        QMat Mk(n, n); // M_0 = 0, c_0 folded in below
        for (std::size_t k = 1; k <= n; ++k) {
            QMat t = Mk;
            for (std::size_t i = 0; i < n; ++i) t(i, i) += (k == 1 ? Rat(1) : c);
            Mk = (*this) * t;
            c = -Mk.trace() / Rat(Int(k));
            coeff[n - k] = c;
        }
        return Poly(std::move(coeff));
    }

    QMat kron(const QMat& o) const {
        QMat r(rows * o.rows, cols * o.cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) {
                if ((*this)(i, j) == 0) continue;
                for (std::size_t p = 0; p < o.rows; ++p)
                    for (std::size_t q = 0; q < o.cols; ++q)
                        r(i * o.rows + p, j * o.cols + q) = (*this)(i, j) * o(p, q);
            }
        return r;
    }
};

/// Evaluate a polynomial at a square matrix.
inline QMat poly_at(const Poly& p, const QMat& M) {
    std::size_t n = M.rows;
    QMat acc(n, n);
    for (auto it = p.c.rbegin(); it != p.c.rend(); ++it) {
        acc = acc * M;
        for (std::size_t i = 0; i < n; ++i) acc(i, i) += *it;
    }
    return acc;
}

/** Integer matrices as row lattices. Rows span a sublattice of Z^n. */
using IMat = std::vector<std::vector<Int>>;

/// Row-style Hermite normal form of the lattice spanned by the rows; returns a
/// full-rank n x n basis (throws if the span has lower rank).
inline IMat hnf_rows(IMat rows, std::size_t n) {
    // column-by-column integer elimination
    IMat basis = std::move(rows);
    IMat out;
    std::size_t col = 0;
    while (col < n) {
        // find row with nonzero entry in `col` minimizing |entry|, reduce others
        while (true) {
            std::size_t best = basis.size();
            for (std::size_t i = 0; i < basis.size(); ++i)
                if (basis[i][col] != 0 && (best == basis.size() || abs(basis[i][col]) < abs(basis[best][col])))
                    best = i;
            if (best == basis.size()) throw precondition_error("lattice rank deficient");
            bool again = false;
            for (std::size_t i = 0; i < basis.size(); ++i) {
                if (i == best || basis[i][col] == 0) continue;
                Int q = basis[i][col] / basis[best][col];
                // round toward making the remainder small is unnecessary; plain
                // floor-division loops terminate since |entry| strictly decreases
                for (std::size_t j = 0; j < n; ++j) basis[i][j] -= q * basis[best][j];
                if (basis[i][col] != 0) again = true;
            }
            if (!again) {
                if (basis[best][col] < 0)
                    for (std::size_t j = 0; j < n; ++j) basis[best][j] = -basis[best][j];
                out.push_back(basis[best]);
                basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(best));
                break;
            }
        }
        // drop now-zero rows to keep the working set small
        std::erase_if(basis, [&](const std::vector<Int>& r) {
            for (std::size_t j = col; j < n; ++j)
                if (r[j] != 0) return false;
            return true;
        });
        ++col;
    }
    // reduce above-diagonal entries for a unique representative
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = i + 1; k < n; ++k) {
            Int p = out[k][k];
            Int q = out[i][k] / p;
            if (out[i][k] - q * p < 0) q -= 1; // euclidean remainder in [0, p)
            if (q != 0)
                for (std::size_t j = 0; j < n; ++j) out[i][j] -= q * out[k][j];
        }
    return out;
}

inline Int hnf_det(const IMat& h) {
    Int d = 1;
    for (std::size_t i = 0; i < h.size(); ++i) d *= h[i][i];
    return d;
}

/// Membership of an integer vector in the row lattice given by an upper-triangular HNF basis.
inline bool hnf_contains(const IMat& h, std::vector<Int> v) {
    std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (v[i] % h[i][i] != 0) return false;
        Int q = v[i] / h[i][i];
        for (std::size_t j = i; j < n; ++j) v[j] -= q * h[i][j];
    }
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

} // namespace nilfourier

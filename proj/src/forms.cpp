#include "nilfourier/forms.hpp"

#include <algorithm>

#include "nilfourier/errors.hpp"

namespace nilfourier {

namespace {

// multiplicity pattern of an index tuple
MIdx tuple_key(const std::vector<std::size_t>& idx, std::size_t D) {
    MIdx j(D, 0);
    for (std::size_t i : idx) ++j[i];
    return j;
}

// canonical tuple realizing a multiplicity pattern
std::vector<std::size_t> key_tuple(const MIdx& j) {
    std::vector<std::size_t> idx;
    for (std::size_t ax = 0; ax < j.size(); ++ax)
        for (unsigned r = 0; r < j[ax]; ++r) idx.push_back(ax);
    return idx;
}

bool tuple_next(std::vector<std::size_t>& idx, std::size_t D) {
    std::size_t k = idx.size();
    while (k > 0 && idx[k - 1] == D - 1) idx[--k] = 0;
    if (k == 0) return false;
    ++idx[k - 1];
    return true;
}

Int multinom(std::size_t m, const MIdx& j) {
    Int r = 1;
    std::size_t used = 0;
    for (unsigned v : j)
        for (unsigned i = 1; i <= v; ++i) {
            r = r * Int(++used) / Int(i);
        }
    if (used != m) throw precondition_error("multi-index weight does not match m");
    return r;
}

void check_keys(std::size_t D, std::size_t m, std::size_t s,
                const std::map<MIdx, std::vector<Rat>>& coeffs) {
    for (const auto& [j, a] : coeffs) {
        if (j.size() != D || a.size() != s)
            throw precondition_error("coefficient shape does not match D, s");
        unsigned w = 0;
        for (unsigned v : j) w += v;
        if (w != m) throw precondition_error("coefficient index is not homogeneous of degree m");
    }
}

} // namespace

void SymForm::validate() const { check_keys(D, m, s, u); }
void DiagForm::validate() const { check_keys(D, m, s, v); }

std::vector<Rat> SymForm::operator()(const std::vector<std::vector<Rat>>& args) const {
    if (args.size() != m) throw precondition_error("need m argument vectors");
    for (const auto& a : args)
        if (a.size() != D) throw precondition_error("argument dimension mismatch");
    std::vector<Rat> out(s, 0);
    std::vector<std::size_t> idx(m, 0);
    do {
        auto it = u.find(tuple_key(idx, D));
        if (it == u.end()) continue;
        Rat c = 1;
        for (std::size_t t = 0; t < m; ++t) c *= args[t][idx[t]];
        if (c == 0) continue;
        for (std::size_t i = 0; i < s; ++i) out[i] += c * it->second[i];
    } while (tuple_next(idx, D));
    return out;
}

std::vector<Rat> DiagForm::operator()(const std::vector<Rat>& n) const {
    if (n.size() != D) throw precondition_error("argument dimension mismatch");
    std::vector<Rat> out(s, 0);
    for (const auto& [j, a] : v) {
        Rat c = 1;
        for (std::size_t ax = 0; ax < D; ++ax)
            for (unsigned r = 0; r < j[ax]; ++r) c *= n[ax];
        for (std::size_t i = 0; i < s; ++i) out[i] += c * a[i];
    }
    return out;
}

DiagForm hat(const SymForm& L) {
    L.validate();
    DiagForm R;
    R.D = L.D;
    R.m = L.m;
    R.s = L.s;
    for (const auto& [j, a] : L.u) {
        Rat c = Rat(multinom(L.m, j));
        std::vector<Rat> w(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) w[i] = c * a[i];
        R.v[j] = w;
    }
    return R;
}

SymForm check(const DiagForm& R) {
    R.validate();
    SymForm L;
    L.D = R.D;
    L.m = R.m;
    L.s = R.s;
    for (const auto& [j, a] : R.v) {
        Rat c = Rat(1) / Rat(multinom(R.m, j));
        std::vector<Rat> w(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) w[i] = c * a[i];
        L.u[j] = w;
    }
    return L;
}

SymForm act_left(const IMat& A, const SymForm& L) {
    L.validate();
    if (A.size() != L.s) throw precondition_error("value-side matrix must be s x s");
    for (const auto& row : A)
        if (row.size() != L.s) throw precondition_error("value-side matrix must be s x s");
    SymForm out = L;
    for (auto& [j, a] : out.u) {
        std::vector<Rat> w(L.s, 0);
        for (std::size_t k = 0; k < L.s; ++k)
            for (std::size_t i = 0; i < L.s; ++i) w[i] += a[k] * Rat(A[k][i]);
        a = w;
    }
    return out;
}

SymForm act_right(const IMat& B, const SymForm& L) {
    L.validate();
    if (B.size() != L.D) throw precondition_error("argument-side matrix must be D x D");
    for (const auto& row : B)
        if (row.size() != L.D) throw precondition_error("argument-side matrix must be D x D");
    SymForm out;
    out.D = L.D;
    out.m = L.m;
    out.s = L.s;
    // u'_{i...} = sum_{k...} u_{k...} prod_t B[i_t][k_t]
    std::vector<std::size_t> i(L.m, 0);
    do {
        if (!std::is_sorted(i.begin(), i.end())) continue; // one tuple per multiset
        std::vector<Rat> w(L.s, 0);
        std::vector<std::size_t> k(L.m, 0);
        do {
            auto it = L.u.find(tuple_key(k, L.D));
            if (it == L.u.end()) continue;
            Rat c = 1;
            for (std::size_t t = 0; t < L.m; ++t) c *= Rat(B[i[t]][k[t]]);
            if (c == 0) continue;
            for (std::size_t q = 0; q < L.s; ++q) w[q] += c * it->second[q];
        } while (tuple_next(k, L.D));
        if (std::any_of(w.begin(), w.end(), [](const Rat& x) { return x != 0; }))
            out.u[tuple_key(i, L.D)] = w;
    } while (tuple_next(i, L.D));
    return out;
}

QMat extract_automorphism(const IMat& A1, const IMat& A2) {
    std::size_t r = A2.size();
    if (r == 0 || A1.size() != r) throw precondition_error("A1 and A2 need the same row count");
    std::size_t sp = A2[0].size();
    if (sp == 0 || sp > r || A1[0].size() != sp)
        throw precondition_error("A1 and A2 need the same column count");

    QMat M2(r, sp);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < sp; ++j) M2(i, j) = Rat(A2[i][j]);
    if (M2.rank() != sp)
        throw precondition_error("not a graph: the second block loses rank");

    // pivot rows: first maximal independent row subset of A2
    std::vector<std::size_t> pivot_rows;
    QMat acc(0, sp);
    for (std::size_t i = 0; i < r && pivot_rows.size() < sp; ++i) {
        QMat trial(acc.rows + 1, sp);
        std::copy(acc.a.begin(), acc.a.end(), trial.a.begin());
        for (std::size_t j = 0; j < sp; ++j) trial(acc.rows, j) = M2(i, j);
        if (trial.rank() == trial.rows) {
            acc = trial;
            pivot_rows.push_back(i);
        }
    }

    // Y = [A2 | identity columns on the non-pivot rows]
    QMat Y(r, r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < sp; ++j) Y(i, j) = M2(i, j);
    std::size_t col = sp;
    for (std::size_t i = 0; i < r; ++i) {
        if (std::find(pivot_rows.begin(), pivot_rows.end(), i) != pivot_rows.end()) continue;
        Y(i, col++) = 1;
    }

    QMat M1(r, sp);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < sp; ++j) M1(i, j) = Rat(A1[i][j]);
    QMat X = Y.inverse() * M1;

    QMat B1(sp, sp);
    for (std::size_t i = 0; i < sp; ++i)
        for (std::size_t j = 0; j < sp; ++j) B1(i, j) = X(i, j);
    return B1;
}

bool aut_d_check(const IMat& B1) {
    if (B1.size() != 2 || B1[0].size() != 2 || B1[1].size() != 2)
        throw precondition_error("bracket check expects a 2 x 2 matrix");
    // images of the basis pair under B1 (row vectors)
    Int ux = B1[0][0], uy = B1[0][1];
    Int vx = B1[1][0], vy = B1[1][1];
    Int F = ux * vy - uy * vx;
    return F == 1;
}

EigenProduct eigenproduct_minpoly(const FieldElement& p, const FieldElement& q, unsigned m_max) {
    if (q.is_zero()) throw precondition_error("q must be nonzero");
    if (m_max < 1) throw precondition_error("m_max must be >= 1");
    FieldElement x = p * q.inverse();
    QMat A = embed_matrix(x);

    EigenProduct out;
    out.norm_warning = abs(knorm(p)) == abs(knorm(q));
    QMat power = A;
    Poly prod = Poly::constant(1);
    for (unsigned m = 1; m <= m_max; ++m) {
        if (m > 1) power = power.kron(A);
        Poly cp = power.charpoly();
        out.factors.push_back(cp);
        prod = prod * cp;
    }
    out.f0 = squarefree_part(prod);
    return out;
}

} // namespace nilfourier

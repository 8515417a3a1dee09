#include "nilfourier/katai.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "nilfourier/errors.hpp"
#include "nilfourier/factor.hpp"
#include "nilfourier/ideals.hpp"
#include "nilfourier/units.hpp"

namespace nilfourier {

namespace {

bool box_next(std::vector<long>& v, long lo, long hi) {
    std::size_t k = v.size();
    while (k > 0 && v[k - 1] == hi) v[--k] = lo;
    if (k == 0) return false;
    ++v[k - 1];
    return true;
}

// integer embed matrix rows for an integral element
IMat int_embed(const FieldElement& x) {
    QMat A = embed_matrix(x);
    IMat M(A.rows, std::vector<Int>(A.cols));
    for (std::size_t i = 0; i < A.rows; ++i)
        for (std::size_t j = 0; j < A.cols; ++j) {
            if (!is_integer(A(i, j))) throw precondition_error("element is not integral");
            M[i][j] = num(A(i, j));
        }
    return M;
}

} // namespace

PrimeSet build_prime_set(const FieldPtr& field, unsigned count, long height) {
    if (count < 2) throw precondition_error("prime set needs count >= 2");
    if (height < 1) throw precondition_error("height must be >= 1");
    const std::size_t D = field->D;

    // lexicographically first generator of each prime norm in the box
    std::map<Int, FieldElement> gens;
    std::vector<long> c(D, -height);
    do {
        std::vector<Int> ic(c.begin(), c.end());
        FieldElement x = FieldElement::from_ints(field, ic);
        if (x.is_zero()) continue;
        Int n = abs(num(knorm(x)));
        if (n < 2 || !miller_rabin(n)) continue;
        if (gens.find(n) == gens.end()) gens.emplace(n, x);
    } while (box_next(c, -height, height));

    UnitSystem units = find_units(field, std::max(height, 4L));

    PrimeSet P;
    P.field = field;
    Int p = 2;
    Int maxnorm = gens.empty() ? Int(1) : gens.rbegin()->first;
    while (P.elements.size() < count && p <= maxnorm) {
        auto it = gens.find(p);
        if (it == gens.end()) {
            P.skipped.push_back(p);
        } else if (units.complete) {
            auto res = regularize(it->second, units);
            P.elements.push_back(res.regularized);
            P.achieved_C = std::max(P.achieved_C, res.achieved_C);
            P.A_P += Rat(1, p);
        } else {
            P.elements.push_back(it->second);
            P.A_P += Rat(1, p);
        }
        p = least_prime_above(p.convert_to<std::int64_t>());
    }
    if (P.elements.size() < count)
        throw partial_set_error("found only " + std::to_string(P.elements.size()) + " of " +
                                    std::to_string(count) + " prime elements within height",
                                std::move(P));

    for (std::size_t i = 0; i < P.elements.size(); ++i)
        for (std::size_t j = i + 1; j < P.elements.size(); ++j)
            if (gcd(num(knorm(P.elements[i])), num(knorm(P.elements[j]))) != 1)
                throw precondition_error("prime-set norms are not pairwise coprime");
    return P;
}

TkResult tk_statistic(const PrimeSet& P, long N) {
    if (N < 0) throw precondition_error("N must be >= 0");
    const std::size_t D = P.field->D;
    std::vector<IMat> lattices;
    for (const auto& p : P.elements)
        lattices.push_back(hnf_rows(int_embed(p), D));

    Rat lhs = 0;
    std::vector<long> c(D, -N);
    do {
        std::vector<Int> z(c.begin(), c.end());
        unsigned omega = 0;
        bool zero = std::all_of(c.begin(), c.end(), [](long v) { return v == 0; });
        if (zero) {
            omega = static_cast<unsigned>(P.elements.size());
        } else {
            for (const auto& L : lattices)
                if (hnf_contains(L, z)) ++omega;
        }
        lhs += abs(Rat(omega) - P.A_P);
    } while (box_next(c, -N, N));

    double boxsize = std::pow(2.0 * static_cast<double>(N) + 1.0, static_cast<double>(D));
    TkResult r;
    r.lhs = to_double(lhs);
    r.rhs_scale = std::sqrt(to_double(P.A_P) + 1.0) * boxsize;
    r.ratio = r.lhs / r.rhs_scale;
    return r;
}

KataiResult katai_terms(const MultFnSpec& chi, const LatticeFn& h, const PrimeSet& P, long N) {
    if (N < 1) throw precondition_error("N must be >= 1");
    const std::size_t D = P.field->D;
    double boxsize = std::pow(2.0 * static_cast<double>(N) + 1.0, static_cast<double>(D));

    cplx S(0, 0);
    std::vector<long> c(D, -N);
    do {
        std::vector<Int> ic(c.begin(), c.end());
        FieldElement x = FieldElement::from_ints(P.field, ic);
        cplx v = eval(chi, x);
        if (v != cplx(0, 0)) S += v * h(c);
    } while (box_next(c, -N, N));
    S /= boxsize;

    // per-element dilation matrices and search bounds
    std::vector<IMat> mats;
    std::vector<long> bounds;
    for (const auto& p : P.elements) {
        mats.push_back(int_embed(p));
        QMat Ainv = embed_matrix(p).inverse();
        double worst = 0;
        for (std::size_t i = 0; i < D; ++i) {
            double s = 0;
            for (std::size_t j = 0; j < D; ++j) s += std::fabs(to_double(Ainv(j, i)));
            worst = std::max(worst, s);
        }
        bounds.push_back(static_cast<long>(std::ceil(worst * static_cast<double>(N))) + 1);
    }

    auto dilate = [&](const IMat& A, const std::vector<long>& n, std::vector<long>& out) {
        for (std::size_t j = 0; j < D; ++j) {
            Int s = 0;
            for (std::size_t i = 0; i < D; ++i) s += Int(n[i]) * A[i][j];
            if (s < -(1L << 60) || s > (1L << 60)) return false;
            out[j] = s.convert_to<long>();
        }
        return true;
    };

    double C_P = 0;
    for (std::size_t a = 0; a < P.elements.size(); ++a) {
        for (std::size_t b = 0; b < P.elements.size(); ++b) {
            if (a == b) continue;
            long B = std::min(bounds[a], bounds[b]);
            cplx acc(0, 0);
            std::vector<long> n(D, -B), na(D), nb(D);
            do {
                if (!dilate(mats[a], n, na) || !dilate(mats[b], n, nb)) continue;
                bool ok = true;
                for (std::size_t i = 0; i < D && ok; ++i)
                    ok = na[i] >= -N && na[i] <= N && nb[i] >= -N && nb[i] <= N;
                if (ok) acc += h(na) * std::conj(h(nb));
            } while (box_next(n, -B, B));
            C_P += std::abs(acc);
        }
    }

    KataiResult r;
    r.S = S;
    r.C_P = C_P / boxsize;
    r.A_P = P.A_P;
    return r;
}

} // namespace nilfourier

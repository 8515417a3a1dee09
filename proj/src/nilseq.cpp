#include "nilfourier/nilseq.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nilfourier/errors.hpp"
#include "nilfourier/kernels.hpp"

namespace nilfourier {

namespace {

cplx e(double t) { return std::exp(cplx(0, 2 * std::numbers::pi * t)); }

bool box_next(std::vector<long>& v, long lo, long hi) {
    std::size_t k = v.size();
    while (k > 0 && v[k - 1] == hi) v[--k] = lo;
    if (k == 0) return false;
    ++v[k - 1];
    return true;
}

// multi-index odometer with each entry bounded by hi[a]
bool midx_next(MIdx& v, const MIdx& hi) {
    std::size_t k = v.size();
    while (k > 0 && v[k - 1] == hi[k - 1]) v[--k] = 0;
    if (k == 0) return false;
    ++v[k - 1];
    return true;
}

Rat rat_binom(long n, unsigned j) {
    Rat r = 1;
    for (unsigned i = 0; i < j; ++i) r *= Rat(n - static_cast<long>(i), i + 1);
    return r;
}

Int binom_int(unsigned n, unsigned k) {
    if (k > n) return 0;
    Int r = 1;
    for (unsigned i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

// coefficients of binom(n, j) as a polynomial in n: row j, column t
std::vector<std::vector<Rat>> binom_to_monom(unsigned k) {
    std::vector<std::vector<Rat>> b(k + 1);
    b[0] = {1};
    Int fact = 1;
    std::vector<Rat> prod = {1}; // running n(n-1)...(n-j+1)
    for (unsigned j = 1; j <= k; ++j) {
        std::vector<Rat> next(j + 1, 0);
        for (unsigned t = 0; t < prod.size(); ++t) {
            next[t + 1] += prod[t];
            next[t] -= Rat(j - 1) * prod[t];
        }
        prod = next;
        fact *= j;
        b[j].assign(j + 1, 0);
        for (unsigned t = 0; t <= j; ++t) b[j][t] = prod[t] / Rat(fact);
    }
    return b;
}

// n^t = sum_j S2(t,j) j! binom(n,j): row t, column j
std::vector<std::vector<Rat>> monom_to_binom(unsigned k) {
    std::vector<std::vector<Int>> S(k + 1, std::vector<Int>(k + 1, 0));
    S[0][0] = 1;
    for (unsigned t = 1; t <= k; ++t)
        for (unsigned j = 1; j <= t; ++j) S[t][j] = Int(j) * S[t - 1][j] + S[t - 1][j - 1];
    std::vector<std::vector<Rat>> m(k + 1, std::vector<Rat>(k + 1, 0));
    Int fact = 1;
    for (unsigned j = 0; j <= k; ++j) {
        if (j > 0) fact *= j;
        for (unsigned t = j; t <= k; ++t) m[t][j] = Rat(S[t][j] * fact);
        m[0][0] = 1;
    }
    return m;
}

unsigned midx_weight(const MIdx& j) {
    unsigned w = 0;
    for (unsigned v : j) w += v;
    return w;
}

template <class T> bool all_zero(const std::vector<T>& v) {
    return std::all_of(v.begin(), v.end(), [](const T& x) { return x == T(0); });
}

// apply the per-axis conversion table to a map; both directions are
// lower-triangular, so targets range over t <= j componentwise
std::map<MIdx, std::vector<double>> convert(const std::map<MIdx, std::vector<double>>& in,
                                            std::size_t s,
                                            const std::vector<std::vector<Rat>>& table) {
    std::map<MIdx, std::vector<double>> out;
    for (const auto& [j, a] : in) {
        if (all_zero(a)) continue;
        MIdx t(j.size(), 0);
        do {
            Rat c = 1;
            for (std::size_t ax = 0; ax < j.size(); ++ax) {
                const auto& row = table[j[ax]];
                if (t[ax] >= row.size()) { c = 0; break; }
                c *= row[t[ax]];
            }
            if (c == 0) continue;
            auto& dst = out[t];
            if (dst.empty()) dst.assign(s, 0.0);
            for (std::size_t i = 0; i < s; ++i) dst[i] += to_double(c) * a[i];
        } while (midx_next(t, j));
    }
    for (auto it = out.begin(); it != out.end();)
        it = all_zero(it->second) ? out.erase(it) : std::next(it);
    return out;
}

// exact specialization: keep Rat coefficients
std::map<MIdx, std::vector<Rat>> convert_exact(const std::map<MIdx, std::vector<Rat>>& in,
                                               std::size_t s,
                                               const std::vector<std::vector<Rat>>& table) {
    std::map<MIdx, std::vector<Rat>> out;
    for (const auto& [j, a] : in) {
        if (all_zero(a)) continue;
        MIdx t(j.size(), 0);
        do {
            Rat c = 1;
            for (std::size_t ax = 0; ax < j.size(); ++ax) {
                const auto& row = table[j[ax]];
                if (t[ax] >= row.size()) { c = 0; break; }
                c *= row[t[ax]];
            }
            if (c == 0) continue;
            auto& dst = out[t];
            if (dst.empty()) dst.assign(s, 0);
            for (std::size_t i = 0; i < s; ++i) dst[i] += c * a[i];
        } while (midx_next(t, j));
    }
    for (auto it = out.begin(); it != out.end();)
        it = all_zero(it->second) ? out.erase(it) : std::next(it);
    return out;
}

std::map<MIdx, std::vector<double>> to_doubles(const std::map<MIdx, std::vector<Rat>>& in) {
    std::map<MIdx, std::vector<double>> out;
    for (const auto& [j, a] : in) {
        std::vector<double> v(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) v[i] = to_double(a[i]);
        out[j] = v;
    }
    return out;
}

unsigned max_degree(const std::map<MIdx, std::vector<double>>& a,
                    const std::map<MIdx, std::vector<double>>& b) {
    unsigned k = 0;
    for (const auto& [j, v] : a)
        if (!all_zero(v)) k = std::max(k, midx_weight(j));
    for (const auto& [j, v] : b)
        if (!all_zero(v)) k = std::max(k, midx_weight(j));
    return k;
}

void check_shape(std::size_t D, std::size_t s, const std::map<MIdx, std::vector<double>>& coeffs) {
    for (const auto& [j, a] : coeffs)
        if (j.size() != D || a.size() != s)
            throw precondition_error("coefficient shape does not match D, s");
}

double torus_dist_rat(const Rat& r) {
    Int fl = num(r) / den(r);
    if (r < 0 && fl * den(r) != num(r)) --fl;
    Rat frac = r - Rat(fl);
    return std::min(to_double(frac), to_double(Rat(1) - frac));
}

Int rat_floor(const Rat& r) {
    Int q = num(r) / den(r);
    if (r < 0 && q * den(r) != num(r)) --q;
    return q;
}

} // namespace

PolySeq PolySeq::from_binomial(std::size_t D, std::size_t s,
                               const std::map<MIdx, std::vector<double>>& coeffs) {
    check_shape(D, s, coeffs);
    PolySeq g;
    g.D = D;
    g.s = s;
    g.binom = coeffs;
    unsigned k = 0;
    for (const auto& [j, a] : coeffs)
        if (!all_zero(a)) k = std::max(k, *std::max_element(j.begin(), j.end()));
    g.monom = convert(coeffs, s, binom_to_monom(k));
    g.degree = max_degree(g.binom, g.monom);
    return g;
}

PolySeq PolySeq::from_monomial(std::size_t D, std::size_t s,
                               const std::map<MIdx, std::vector<double>>& coeffs) {
    check_shape(D, s, coeffs);
    PolySeq g;
    g.D = D;
    g.s = s;
    g.monom = coeffs;
    unsigned k = 0;
    for (const auto& [j, a] : coeffs)
        if (!all_zero(a)) k = std::max(k, *std::max_element(j.begin(), j.end()));
    g.binom = convert(coeffs, s, monom_to_binom(k));
    g.degree = max_degree(g.binom, g.monom);
    return g;
}

PolySeq PolySeq::from_binomial_exact(std::size_t D, std::size_t s,
                                     const std::map<MIdx, std::vector<Rat>>& coeffs) {
    PolySeq g;
    g.D = D;
    g.s = s;
    g.binom_q = coeffs;
    unsigned k = 0;
    for (const auto& [j, a] : coeffs) {
        if (j.size() != D || a.size() != s)
            throw precondition_error("coefficient shape does not match D, s");
        if (!all_zero(a)) k = std::max(k, *std::max_element(j.begin(), j.end()));
    }
    g.monom_q = convert_exact(coeffs, s, binom_to_monom(k));
    g.binom = to_doubles(*g.binom_q);
    g.monom = to_doubles(*g.monom_q);
    g.degree = max_degree(g.binom, g.monom);
    return g;
}

PolySeq PolySeq::from_monomial_exact(std::size_t D, std::size_t s,
                                     const std::map<MIdx, std::vector<Rat>>& coeffs) {
    PolySeq g;
    g.D = D;
    g.s = s;
    g.monom_q = coeffs;
    unsigned k = 0;
    for (const auto& [j, a] : coeffs) {
        if (j.size() != D || a.size() != s)
            throw precondition_error("coefficient shape does not match D, s");
        if (!all_zero(a)) k = std::max(k, *std::max_element(j.begin(), j.end()));
    }
    g.binom_q = convert_exact(coeffs, s, monom_to_binom(k));
    g.binom = to_doubles(*g.binom_q);
    g.monom = to_doubles(*g.monom_q);
    g.degree = max_degree(g.binom, g.monom);
    return g;
}

std::vector<double> PolySeq::eval(const std::vector<long>& n) const {
    if (n.size() != D) throw precondition_error("argument dimension mismatch");
    std::vector<double> out(s, 0);
    for (const auto& [j, a] : binom) {
        double c = 1;
        for (std::size_t ax = 0; ax < D; ++ax) c *= to_double(rat_binom(n[ax], j[ax]));
        for (std::size_t i = 0; i < s; ++i) out[i] += c * a[i];
    }
    return out;
}

std::vector<Rat> PolySeq::eval_exact(const std::vector<long>& n) const {
    if (!binom_q) throw precondition_error("sequence has no exact coefficients");
    if (n.size() != D) throw precondition_error("argument dimension mismatch");
    std::vector<Rat> out(s, 0);
    for (const auto& [j, a] : *binom_q) {
        Rat c = 1;
        for (std::size_t ax = 0; ax < D; ++ax) c *= rat_binom(n[ax], j[ax]);
        for (std::size_t i = 0; i < s; ++i) out[i] += c * a[i];
    }
    return out;
}

PolySeq PolySeq::derivative(const std::vector<long>& h) const {
    if (h.size() != D) throw precondition_error("shift dimension mismatch");
    if (monom_q) {
        std::map<MIdx, std::vector<Rat>> out;
        for (const auto& [j, a] : *monom_q) {
            MIdx t(D, 0);
            do {
                Rat c = 1;
                bool diag = true;
                for (std::size_t ax = 0; ax < D; ++ax) {
                    c *= Rat(binom_int(j[ax], t[ax]));
                    for (unsigned i = t[ax]; i < j[ax]; ++i) c *= h[ax];
                    if (t[ax] != j[ax]) diag = false;
                }
                if (diag) continue; // the n^j term of g(n+h) cancels against g(n)
                auto& dst = out[t];
                if (dst.empty()) dst.assign(s, 0);
                for (std::size_t i = 0; i < s; ++i) dst[i] += c * a[i];
            } while (midx_next(t, j));
        }
        for (auto it = out.begin(); it != out.end();)
            it = all_zero(it->second) ? out.erase(it) : std::next(it);
        return from_monomial_exact(D, s, out);
    }
    std::map<MIdx, std::vector<double>> out;
    for (const auto& [j, a] : monom) {
        MIdx t(D, 0);
        do {
            double c = 1;
            bool diag = true;
            for (std::size_t ax = 0; ax < D; ++ax) {
                c *= to_double(Rat(binom_int(j[ax], t[ax])));
                for (unsigned i = t[ax]; i < j[ax]; ++i) c *= static_cast<double>(h[ax]);
                if (t[ax] != j[ax]) diag = false;
            }
            if (diag) continue;
            auto& dst = out[t];
            if (dst.empty()) dst.assign(s, 0);
            for (std::size_t i = 0; i < s; ++i) dst[i] += c * a[i];
        } while (midx_next(t, j));
    }
    return from_monomial(D, s, out);
}

PolySeq PolySeq::contract(const std::vector<long>& l) const {
    if (l.size() != s) throw precondition_error("character dimension mismatch");
    if (binom_q) {
        std::map<MIdx, std::vector<Rat>> out;
        for (const auto& [j, a] : *binom_q) {
            Rat v = 0;
            for (std::size_t i = 0; i < s; ++i) v += Rat(l[i]) * a[i];
            if (v != 0) out[j] = {v};
        }
        return from_binomial_exact(D, 1, out);
    }
    std::map<MIdx, std::vector<double>> out;
    for (const auto& [j, a] : binom) {
        double v = 0;
        for (std::size_t i = 0; i < s; ++i) v += static_cast<double>(l[i]) * a[i];
        if (v != 0) out[j] = {v};
    }
    return from_binomial(D, 1, out);
}

double smooth_norm(const PolySeq& g, long N, CoeffFlavor flavor) {
    if (N < 0) throw precondition_error("N must be >= 0");
    const auto& coeffs = flavor == CoeffFlavor::binomial ? g.binom : g.monom;
    const auto* exact = flavor == CoeffFlavor::binomial
                            ? (g.binom_q ? &*g.binom_q : nullptr)
                            : (g.monom_q ? &*g.monom_q : nullptr);
    double best = 0;
    double base = 2.0 * static_cast<double>(N) + 1.0;
    for (const auto& [j, a] : coeffs) {
        unsigned w = midx_weight(j);
        if (w == 0) continue;
        double t = 0;
        if (exact) {
            const auto& aq = exact->at(j);
            for (const auto& v : aq) t += torus_dist_rat(v);
        } else {
            for (double v : a) t += torus_dist(v);
        }
        best = std::max(best, std::pow(base, static_cast<double>(w)) * t);
    }
    return best;
}

std::pair<HorizChar, double> char_search(const PolySeq& g, long N, long C) {
    if (C < 1) throw precondition_error("character height must be >= 1");
    bool found = false;
    HorizChar best;
    double best_norm = 0;
    std::vector<long> l(g.s, -C);
    do {
        long cn = 0;
        for (long v : l) cn += std::labs(v);
        if (cn == 0 || cn > C) continue;
        double sn = smooth_norm(g.contract(l), N, CoeffFlavor::binomial);
        bool take = !found;
        if (found) {
            if (sn < best_norm - 1e-12) take = true;
            else if (sn <= best_norm + 1e-12) {
                if (cn < best.norm) take = true;
                else if (cn == best.norm && l > best.l) take = true;
            }
        }
        if (take) {
            best = {l, cn};
            best_norm = sn;
            found = true;
        }
    } while (box_next(l, -C, C));
    return {best, best_norm};
}

Witness leibman_witness(const PolySeq& g, const HorizChar& eta, long N, double C0) {
    if (N < 1) throw precondition_error("N must be >= 1");
    PolySeq hg = g.contract(eta.l);
    double S = smooth_norm(hg, N, CoeffFlavor::binomial);
    if (S > C0)
        throw numeric_error("no witness: smooth norm of the contracted sequence exceeds the bound",
                            S);

    cplx base = e(hg.eval(std::vector<long>(g.D, 0))[0]);
    auto ok = [&](long M) {
        std::vector<long> n(g.D, -M);
        do {
            if (std::abs(e(hg.eval(n)[0]) - base) > 0.5) return false;
        } while (box_next(n, -M, M));
        return true;
    };
    long lo = 0, hi = N;
    while (lo < hi) {
        long mid = lo + (hi - lo + 1) / 2;
        if (ok(mid)) lo = mid;
        else hi = mid - 1;
    }
    long M = lo;

    cplx acc = 0;
    std::vector<long> n(g.D, -M);
    do {
        acc += e(hg.eval(n)[0]);
    } while (box_next(n, -M, M));
    double boxsize = std::pow(2.0 * static_cast<double>(N) + 1.0, static_cast<double>(g.D));

    Witness w;
    w.P.base.assign(g.D, -M);
    w.P.steps.assign(g.D, 1);
    w.P.lengths.assign(g.D, 2 * M + 1);
    w.correlation = std::abs(acc) / boxsize;
    return w;
}

HeisElem heis_mul(const HeisElem& a, const HeisElem& b) {
    return {a.x + b.x, a.y + b.y, a.z + b.z + a.x * b.y};
}

HeisElem heis_inv(const HeisElem& a) { return {-a.x, -a.y, -a.z + a.x * a.y}; }

HeisElem heis_commutator(const HeisElem& a, const HeisElem& b) {
    return heis_mul(heis_mul(a, b), heis_mul(heis_inv(a), heis_inv(b)));
}

HeisElem heis_bracket(const std::vector<HeisElem>& gs) {
    if (gs.empty()) throw precondition_error("bracket needs at least one element");
    HeisElem acc = gs[0];
    for (std::size_t i = 1; i < gs.size(); ++i) acc = heis_commutator(acc, gs[i]);
    return acc;
}

HeisElem heis_reduce(const HeisElem& a) {
    HeisElem g = a;
    g = heis_mul(g, {Rat(-rat_floor(g.x)), 0, 0});
    g = heis_mul(g, {0, Rat(-rat_floor(g.y)), 0});
    g = heis_mul(g, {0, 0, Rat(-rat_floor(g.z))});
    return g;
}

EquidReport equid_correlation(const PolySeq& g, long N, const std::vector<std::vector<long>>& chars,
                              const std::vector<APSpec>& aps, double eps) {
    if (chars.empty() || aps.empty()) throw precondition_error("catalogs must be nonempty");
    double boxsize = std::pow(2.0 * static_cast<double>(N) + 1.0, static_cast<double>(g.D));
    EquidReport rep;
    for (std::size_t ci = 0; ci < chars.size(); ++ci) {
        PolySeq hg = g.contract(chars[ci]);
        for (std::size_t ai = 0; ai < aps.size(); ++ai) {
            const APSpec& P = aps[ai];
            if (P.base.size() != g.D) throw precondition_error("AP dimension mismatch");
            cplx acc = 0;
            std::vector<long> k(g.D, 0), pt(g.D);
            bool more = true;
            while (more) {
                bool inside = true;
                for (std::size_t ax = 0; ax < g.D; ++ax) {
                    pt[ax] = P.base[ax] + k[ax] * P.steps[ax];
                    inside = inside && pt[ax] >= -N && pt[ax] <= N;
                }
                if (inside) acc += e(hg.eval(pt)[0]);
                std::size_t d = g.D;
                while (d > 0 && k[d - 1] == P.lengths[d - 1] - 1) k[--d] = 0;
                if (d == 0) more = false;
                else ++k[d - 1];
            }
            double corr = std::abs(acc) / boxsize;
            if (corr > rep.max_correlation) {
                rep.max_correlation = corr;
                rep.best_char = ci;
                rep.best_ap = ai;
            }
        }
    }
    rep.equidistributed = rep.max_correlation <= eps;
    return rep;
}

EquidReport equid_correlation_heis(const PolySeq& g, long N, const std::vector<long>& vert_freqs,
                                   const std::vector<APSpec>& aps, double eps) {
    if (g.s != 3) throw precondition_error("Heisenberg orbit needs three coordinates");
    if (vert_freqs.empty() || aps.empty()) throw precondition_error("catalogs must be nonempty");
    double boxsize = std::pow(2.0 * static_cast<double>(N) + 1.0, static_cast<double>(g.D));

    auto test_value = [&](long l, const std::vector<long>& n) {
        std::vector<double> v = g.eval(n);
        double x = v[0], y = v[1], z = v[2];
        // reduce to the fundamental domain by right multiplication: x, then y, then z
        double ax = -std::floor(x);
        x += ax;
        double by = -std::floor(y);
        y += by;
        z += x * by;
        z -= std::floor(z);
        double pi = std::numbers::pi;
        // mean-one bump vanishing on the (x, y) seams so the function descends
        double bump = 2 * std::sin(pi * x) * std::sin(pi * x) * 2 * std::sin(pi * y) * std::sin(pi * y);
        return e(static_cast<double>(l) * z) * bump;
    };

    EquidReport rep;
    for (std::size_t ci = 0; ci < vert_freqs.size(); ++ci) {
        for (std::size_t ai = 0; ai < aps.size(); ++ai) {
            const APSpec& P = aps[ai];
            if (P.base.size() != g.D) throw precondition_error("AP dimension mismatch");
            cplx acc = 0;
            std::vector<long> k(g.D, 0), pt(g.D);
            bool more = true;
            while (more) {
                bool inside = true;
                for (std::size_t ax = 0; ax < g.D; ++ax) {
                    pt[ax] = P.base[ax] + k[ax] * P.steps[ax];
                    inside = inside && pt[ax] >= -N && pt[ax] <= N;
                }
                if (inside) acc += test_value(vert_freqs[ci], pt);
                std::size_t d = g.D;
                while (d > 0 && k[d - 1] == P.lengths[d - 1] - 1) k[--d] = 0;
                if (d == 0) more = false;
                else ++k[d - 1];
            }
            double corr = std::abs(acc) / boxsize;
            if (corr > rep.max_correlation) {
                rep.max_correlation = corr;
                rep.best_char = ci;
                rep.best_ap = ai;
            }
        }
    }
    rep.equidistributed = rep.max_correlation <= eps;
    return rep;
}

} // namespace nilfourier

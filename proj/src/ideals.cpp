#include "nilfourier/ideals.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <random>

#include "nilfourier/errors.hpp"
#include "nilfourier/factor.hpp"

namespace nilfourier {

// ----------------------------------------------------- polynomials over F_p

namespace {

using FpPoly = std::vector<Int>; // low..high, entries in [0, p)

Int pmod(const Int& a, const Int& p) {
    Int r = a % p;
    if (r < 0) r += p;
    return r;
}

void fp_trim(FpPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

FpPoly fp_reduce(const Poly& q, const Int& p) {
    FpPoly f(q.c.size());
    for (std::size_t i = 0; i < q.c.size(); ++i) f[i] = pmod(num(q.c[i]), p);
    fp_trim(f);
    return f;
}

int fp_deg(const FpPoly& f) { return static_cast<int>(f.size()) - 1; }

FpPoly fp_mul(const FpPoly& a, const FpPoly& b, const Int& p) {
    if (a.empty() || b.empty()) return {};
    FpPoly r(a.size() + b.size() - 1, Int(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = pmod(r[i + j] + a[i] * b[j], p);
    fp_trim(r);
    return r;
}

Int fp_inv(const Int& a, const Int& p) {
    // extended euclid
    Int t = 0, newt = 1, r = p, newr = pmod(a, p);
    while (newr != 0) {
        Int q = r / newr;
        std::swap(t -= q * newt, newt);
        std::swap(r -= q * newr, newr);
    }
    return pmod(t, p);
}

std::pair<FpPoly, FpPoly> fp_divmod(FpPoly a, const FpPoly& b, const Int& p) {
    FpPoly q(a.size() > b.size() ? a.size() - b.size() + 1 : 1, Int(0));
    Int inv = fp_inv(b.back(), p);
    while (fp_deg(a) >= fp_deg(b)) {
        int k = fp_deg(a) - fp_deg(b);
        Int f = pmod(a.back() * inv, p);
        q[static_cast<std::size_t>(k)] = f;
        for (std::size_t i = 0; i < b.size(); ++i)
            a[static_cast<std::size_t>(k) + i] = pmod(a[static_cast<std::size_t>(k) + i] - f * b[i], p);
        fp_trim(a);
    }
    fp_trim(q);
    return {q, a};
}

FpPoly fp_monic(FpPoly f, const Int& p) {
    if (f.empty()) return f;
    Int inv = fp_inv(f.back(), p);
    for (auto& c : f) c = pmod(c * inv, p);
    return f;
}

FpPoly fp_gcd(FpPoly a, FpPoly b, const Int& p) {
    while (!b.empty()) {
        FpPoly r = fp_divmod(a, b, p).second;
        a = std::move(b);
        b = std::move(r);
    }
    return fp_monic(a, p);
}

FpPoly fp_powmod(FpPoly base, Int e, const FpPoly& mod, const Int& p) {
    FpPoly acc{Int(1)};
    base = fp_divmod(base, mod, p).second;
    while (e > 0) {
        if (boost::multiprecision::bit_test(e, 0)) acc = fp_divmod(fp_mul(acc, base, p), mod, p).second;
        base = fp_divmod(fp_mul(base, base, p), mod, p).second;
        e >>= 1;
    }
    return acc;
}

FpPoly fp_derivative(const FpPoly& f, const Int& p) {
    FpPoly d;
    for (std::size_t i = 1; i < f.size(); ++i) d.push_back(pmod(f[i] * Int(i), p));
    fp_trim(d);
    return d;
}

// equal-degree splitting (Cantor-Zassenhaus), p odd, g a product of irreducibles of degree d
void fp_edf(const FpPoly& g, int d, const Int& p, std::mt19937_64& rng, std::vector<FpPoly>& out) {
    if (fp_deg(g) == d) {
        out.push_back(fp_monic(g, p));
        return;
    }
    Int pd = 1;
    for (int i = 0; i < d; ++i) pd *= p;
    Int e = (pd - 1) / 2;
    for (;;) {
        FpPoly a(static_cast<std::size_t>(fp_deg(g)), Int(0));
        for (auto& c : a) c = Int(rng() % 1000000007ULL) % p;
        fp_trim(a);
        if (a.empty()) continue;
        FpPoly b = fp_powmod(a, e, g, p);
        if (b.empty()) continue;
        b[0] = pmod(b[0] - 1, p);
        fp_trim(b);
        FpPoly t = fp_gcd(b, g, p);
        if (fp_deg(t) > 0 && fp_deg(t) < fp_deg(g)) {
            fp_edf(t, d, p, rng, out);
            fp_edf(fp_divmod(g, t, p).first, d, p, rng, out);
            return;
        }
    }
}

// distinct irreducible factors with multiplicities
std::vector<std::pair<FpPoly, unsigned>> fp_factor(const FpPoly& f, const Int& p) {
    std::vector<FpPoly> irred;
    if (p <= 30) {
        // trial division by all monic polynomials of degree 1, then 2; enough
        // for the degrees in play (a reducible quartic with no factor of
        // degree <= 2 cannot exist)
        FpPoly rem = fp_monic(f, p);
        long pl = p.convert_to<long>();
        bool progress = true;
        while (fp_deg(rem) > 0 && progress) {
            progress = false;
            for (int d = 1; d <= 2 && fp_deg(rem) > 0; ++d) {
                if (fp_deg(rem) == d) break;
                std::vector<long> idx(static_cast<std::size_t>(d), 0);
                bool done = false;
                while (!done) {
                    FpPoly cand(static_cast<std::size_t>(d) + 1);
                    cand[static_cast<std::size_t>(d)] = 1;
                    for (int i = 0; i < d; ++i) cand[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i)];
                    bool cand_irred = true;
                    if (d == 2) { // skip reducible quadratics
                        for (long r = 0; r < pl && cand_irred; ++r) {
                            Int v = pmod(Int(r) * r + cand[1] * r + cand[0], p);
                            if (v == 0) cand_irred = false;
                        }
                    }
                    if (cand_irred) {
                        auto [q, rr] = fp_divmod(rem, cand, p);
                        if (rr.empty() && fp_deg(rem) > 0) {
                            irred.push_back(cand);
                            rem = q;
                            progress = true;
                        }
                    }
                    // next candidate
                    int i = 0;
                    for (; i < d; ++i) {
                        if (++idx[static_cast<std::size_t>(i)] < pl) break;
                        idx[static_cast<std::size_t>(i)] = 0;
                    }
                    done = (i == d);
                }
            }
        }
        if (fp_deg(rem) > 0) irred.push_back(fp_monic(rem, p));
    } else {
        // distinct-degree then equal-degree splitting on the squarefree part
        FpPoly sf = fp_monic(f, p);
        FpPoly der = fp_derivative(sf, p);
        if (!der.empty()) sf = fp_divmod(sf, fp_gcd(sf, der, p), p).first;
        std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
        FpPoly x{Int(0), Int(1)};
        FpPoly h = x;
        for (int d = 1; fp_deg(sf) > 0 && d <= fp_deg(sf); ++d) {
            h = fp_powmod(h, p, sf, p);
            FpPoly hx = h;
            if (hx.size() < 2) hx.resize(2, Int(0));
            hx[1] = pmod(hx[1] - 1, p);
            fp_trim(hx);
            FpPoly g = fp_gcd(hx, sf, p);
            if (fp_deg(g) > 0) {
                fp_edf(g, d, p, rng, irred);
                sf = fp_divmod(sf, g, p).first;
                h = fp_divmod(h, sf, p).second;
            }
        }
        if (fp_deg(sf) > 0) irred.push_back(sf);
    }
    std::sort(irred.begin(), irred.end());
    irred.erase(std::unique(irred.begin(), irred.end()), irred.end());
    std::vector<std::pair<FpPoly, unsigned>> out;
    for (const auto& g : irred) {
        FpPoly rem = f;
        unsigned e = 0;
        for (;;) {
            auto [q, r] = fp_divmod(rem, g, p);
            if (!r.empty()) break;
            ++e;
            rem = q;
        }
        out.push_back({g, e});
    }
    return out;
}

// Dedekind's criterion: true when p does not divide [O_K : Z[theta]].
bool dedekind_index_coprime(const Poly& f, const std::vector<std::pair<FpPoly, unsigned>>& factors,
                            const Int& p) {
    // g = prod g_i (lifted), h = prod g_i^{e_i - 1} (lifted), F = (g h - f)/p
    Poly g = Poly::constant(1), h = Poly::constant(1);
    auto lift = [&](const FpPoly& q) {
        std::vector<Rat> c(q.begin(), q.end());
        return Poly(std::move(c));
    };
    for (const auto& [gi, ei] : factors) {
        g = g * lift(gi);
        for (unsigned k = 1; k < ei; ++k) h = h * lift(gi);
    }
    Poly Fnum = g * h - f;
    std::vector<Rat> Fc(Fnum.c.size());
    for (std::size_t i = 0; i < Fnum.c.size(); ++i) Fc[i] = Fnum.c[i] / Rat(p);
    Poly F(std::move(Fc));
    FpPoly Fbar = fp_reduce(F, p), gbar = fp_reduce(g, p), hbar = fp_reduce(h, p);
    FpPoly d = fp_gcd(fp_gcd(Fbar, gbar, p), hbar, p);
    return fp_deg(d) == 0;
}

} // namespace

// -------------------------------------------------------------- IdealLattice

IdealLattice IdealLattice::from_generators(const FieldPtr& f, const std::vector<FieldElement>& gens) {
    IMat rows;
    for (const auto& g : gens) {
        if (!g.is_integral()) throw precondition_error("ideal generators must be integral");
        for (std::size_t i = 0; i < f->D; ++i) {
            std::vector<Rat> bi(f->D, Rat(0));
            bi[i] = 1;
            FieldElement prod = g * FieldElement(f, bi);
            std::vector<Int> row(f->D);
            for (std::size_t k = 0; k < f->D; ++k) row[k] = num(prod.coords[k]);
            rows.push_back(std::move(row));
        }
    }
    IdealLattice I;
    I.field = f;
    I.basis_matrix = hnf_rows(std::move(rows), f->D);
    I.norm = abs(hnf_det(I.basis_matrix));
    return I;
}

IdealLattice IdealLattice::principal(const FieldElement& a) {
    return from_generators(a.field, {a});
}

IdealLattice IdealLattice::whole_ring(const FieldPtr& f) {
    return from_generators(f, {FieldElement::one(f)});
}

bool IdealLattice::contains(const FieldElement& x) const {
    if (!x.is_integral()) return false;
    std::vector<Int> v(field->D);
    for (std::size_t i = 0; i < field->D; ++i) v[i] = num(x.coords[i]);
    return hnf_contains(basis_matrix, v);
}

IdealLattice IdealLattice::product(const IdealLattice& other) const {
    const std::size_t D = field->D;
    IMat rows;
    for (const auto& r1 : basis_matrix)
        for (const auto& r2 : other.basis_matrix) {
            std::vector<Int> prod(D, Int(0));
            for (std::size_t i = 0; i < D; ++i)
                for (std::size_t j = 0; j < D; ++j) {
                    if (r1[i] == 0 || r2[j] == 0) continue;
                    for (std::size_t k = 0; k < D; ++k) prod[k] += r1[i] * r2[j] * field->c(i, j, k);
                }
            rows.push_back(std::move(prod));
        }
    IdealLattice I;
    I.field = field;
    I.basis_matrix = hnf_rows(std::move(rows), D);
    I.norm = abs(hnf_det(I.basis_matrix));
    return I;
}

IdealLattice IdealLattice::pow(unsigned k) const {
    IdealLattice acc = whole_ring(field);
    for (unsigned i = 0; i < k; ++i) acc = acc.product(*this);
    return acc;
}

// -------------------------------------------------------------- primes_above

namespace {

/** Maximal ideals (p, g_i(theta)) from the factorization of the defining
    polynomial mod p. With `strict` the Dedekind criterion and norm consistency
    are enforced (so e, f and unique factorization are reliable); without it the
    ideals are still the maximal ideals containing p, which is all that
    membership-based consumers (mobius_K) need. */
std::vector<PrimeFactor> primes_above_impl(const FieldPtr& field, const Int& p, bool strict) {
    if (!miller_rabin(p)) throw precondition_error("p must be a prime integer");
    if (!field->is_monogenic())
        throw unsupported_error("prime factorization needs a monogenic field (no defining polynomial on '" +
                                field->label + "')");
    const Poly& defpoly = *field->defining_poly;
    FpPoly fbar = fp_reduce(defpoly, p);
    if (fp_deg(fbar) != defpoly.degree())
        throw std::logic_error("monic polynomial degenerated mod p");
    auto factors = fp_factor(fbar, p);
    if (strict && !dedekind_index_coprime(defpoly, factors, p))
        throw unsupported_error("prime " + p.str() + " divides the index of the power-basis order in '" +
                                field->label + "'");
    FieldElement theta = FieldElement::generator(field);
    FieldElement pelem = FieldElement::rational(field, Rat(p));
    std::vector<PrimeFactor> out;
    for (const auto& [g, e] : factors) {
        // lift g and evaluate at theta
        FieldElement gtheta = FieldElement::zero(field);
        FieldElement pw = FieldElement::one(field);
        for (std::size_t i = 0; i < g.size(); ++i) {
            gtheta = gtheta + pw * Rat(g[i]);
            pw = pw * theta;
        }
        PrimeFactor pf;
        pf.ideal = IdealLattice::from_generators(field, {pelem, gtheta});
        pf.e = e;
        pf.f = static_cast<unsigned>(fp_deg(g));
        Int want = 1;
        for (unsigned i = 0; i < pf.f; ++i) want *= p;
        if (strict && pf.ideal.norm != want) throw std::logic_error("prime ideal norm mismatch");
        out.push_back(std::move(pf));
    }
    std::sort(out.begin(), out.end(),
              [](const PrimeFactor& a, const PrimeFactor& b) { return a.ideal < b.ideal; });
    unsigned efsum = 0;
    for (const auto& pf : out) efsum += pf.e * pf.f;
    if (strict && efsum != field->D) throw std::logic_error("sum e_i f_i != D");
    return out;
}

} // namespace

std::vector<PrimeFactor> primes_above(const FieldPtr& field, const Int& p) {
    return primes_above_impl(field, p, true);
}

unsigned valuation(const FieldElement& n, const IdealLattice& J) {
    if (n.is_zero()) throw precondition_error("valuation of zero is undefined");
    if (!n.is_integral()) throw precondition_error("valuation needs an integral element");
    unsigned k = 0;
    IdealLattice Jk = J;
    while (Jk.contains(n)) {
        ++k;
        Jk = Jk.product(J);
    }
    return k;
}

// cache of prime data per field instance
namespace {
struct PrimeCacheEntry {
    std::vector<PrimeFactor> primes;
    std::vector<IdealLattice> squares;
    std::string unsupported_msg; // nonempty: primes_above rejected this p
};
PrimeCacheEntry& prime_cache(const FieldPtr& field, const Int& p) {
    static std::map<std::pair<const FieldSpec*, Int>, PrimeCacheEntry> cache;
    auto key = std::make_pair(field.get(), p);
    auto it = cache.find(key);
    if (it == cache.end()) {
        PrimeCacheEntry e;
        try {
            e.primes = primes_above(field, p);
            for (const auto& pf : e.primes) e.squares.push_back(pf.ideal.product(pf.ideal));
        } catch (const unsupported_error& err) {
            e.unsupported_msg = err.what();
        }
        it = cache.emplace(key, std::move(e)).first;
    }
    if (!it->second.unsupported_msg.empty()) throw unsupported_error(it->second.unsupported_msg);
    return it->second;
}

// ---- machine-word polynomial arithmetic mod p, for the Mobius fast path ----
//
// When p does not divide the index of the power-basis order, the primes above
// p correspond to the irreducible factors of the defining polynomial mod p,
// and n = h(theta) lies in the prime of g iff g | h mod p. Counting distinct
// primes containing n and comparing degrees against v_p(|N(n)|) decides
// squarefreeness without building any ideal lattice.

using u64 = unsigned long long;
using NPoly = std::vector<u64>; // low..high, coefficients in [0, p)

u64 nmulmod(u64 a, u64 b, u64 p) {
    return static_cast<u64>(static_cast<unsigned __int128>(a) * b % p);
}

u64 npowmod(u64 a, u64 e, u64 p) {
    u64 acc = 1;
    a %= p;
    while (e > 0) {
        if (e & 1) acc = nmulmod(acc, a, p);
        a = nmulmod(a, a, p);
        e >>= 1;
    }
    return acc;
}

void ntrim(NPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}
int ndeg(const NPoly& f) { return static_cast<int>(f.size()) - 1; }

NPoly nmul(const NPoly& a, const NPoly& b, u64 p) {
    if (a.empty() || b.empty()) return {};
    NPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + nmulmod(a[i], b[j], p)) % p;
    }
    ntrim(r);
    return r;
}

NPoly nmod(NPoly a, const NPoly& b, u64 p) {
    u64 lead_inv = npowmod(b.back(), p - 2, p);
    while (ndeg(a) >= ndeg(b)) {
        u64 f = nmulmod(a.back(), lead_inv, p);
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i)
            a[shift + i] = (a[shift + i] + p - nmulmod(f, b[i], p)) % p;
        ntrim(a);
    }
    return a;
}

NPoly ndiv(NPoly a, const NPoly& b, u64 p) {
    NPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
    u64 lead_inv = npowmod(b.back(), p - 2, p);
    while (ndeg(a) >= ndeg(b)) {
        u64 f = nmulmod(a.back(), lead_inv, p);
        std::size_t shift = a.size() - b.size();
        q[shift] = f;
        for (std::size_t i = 0; i < b.size(); ++i)
            a[shift + i] = (a[shift + i] + p - nmulmod(f, b[i], p)) % p;
        ntrim(a);
    }
    return q;
}

NPoly nmonic(NPoly f, u64 p) {
    if (f.empty() || f.back() == 1) return f;
    u64 inv = npowmod(f.back(), p - 2, p);
    for (auto& c : f) c = nmulmod(c, inv, p);
    return f;
}

NPoly ngcd(NPoly a, NPoly b, u64 p) {
    while (!b.empty()) {
        NPoly r = nmod(std::move(a), b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return nmonic(std::move(a), p);
}

NPoly nderiv(const NPoly& f, u64 p) {
    NPoly d;
    for (std::size_t i = 1; i < f.size(); ++i) d.push_back(nmulmod(f[i], i % p, p));
    ntrim(d);
    return d;
}

NPoly npoly_powmod(NPoly base, u64 e, const NPoly& mod, u64 p) {
    NPoly acc{1};
    base = nmod(std::move(base), mod, p);
    while (e > 0) {
        if (e & 1) acc = nmod(nmul(acc, base, p), mod, p);
        base = nmod(nmul(base, base, p), mod, p);
        e >>= 1;
    }
    return acc;
}

/// number of (distinct) irreducible factors of a squarefree monic g
int ncount_irreducible(NPoly g, u64 p) {
    int count = 0;
    if (ndeg(g) <= 0) return 0;
    NPoly x{0, 1};
    NPoly w = nmod(x, g, p);
    for (int d = 1; 2 * d <= ndeg(g); ++d) {
        w = npoly_powmod(std::move(w), p, g, p); // x^{p^d} mod g
        NPoly diff = w;
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = (diff[1] + p - 1) % p;
        ntrim(diff);
        NPoly r = diff.empty() ? g : ngcd(diff, g, p);
        if (ndeg(r) > 0) {
            count += ndeg(r) / d;
            g = ndiv(std::move(g), r, p);
            if (ndeg(g) <= 0) return count;
            w = nmod(std::move(w), g, p);
        }
    }
    return count + 1; // the remainder is a single irreducible factor
}

/// |disc of the defining polynomial| = |Res(f, f')| for monic f, cached
const Int& defpoly_disc(const FieldPtr& field) {
    static std::map<const FieldSpec*, Int> cache;
    auto it = cache.find(field.get());
    if (it != cache.end()) return it->second;
    const Poly& f = *field->defining_poly;
    Poly fp = f.derivative();
    std::size_t n = static_cast<std::size_t>(f.degree());
    std::size_t m = static_cast<std::size_t>(fp.degree());
    QMat S(n + m, n + m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j <= n; ++j) S(i, i + j) = f.c[n - j];
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= m; ++j) S(m + i, i + j) = fp.c[m - j];
    Int d = abs(num(S.det()));
    return cache.emplace(field.get(), std::move(d)).first->second;
}

/** Prime-count contribution of p to mu(n) without ideal lattices. Returns the
    number of distinct primes above p containing n, -1 when (n) is certainly not
    squarefree at p, or -2 when this path does not apply. Requires p coprime to
    the index, p > deg and p machine-word sized. */
int mobius_fast_prime(const FieldElement& n, u64 p, unsigned mult) {
    const Poly& f = *n.field->defining_poly;
    NPoly fbar(f.c.size());
    for (std::size_t i = 0; i < f.c.size(); ++i) {
        Int c = num(f.c[i]) % Int(p);
        if (c < 0) c += Int(p);
        fbar[i] = c.convert_to<u64>();
    }
    ntrim(fbar);
    NPoly hbar(n.coords.size());
    for (std::size_t i = 0; i < n.coords.size(); ++i) {
        Int c = num(n.coords[i]) % Int(p);
        if (c < 0) c += Int(p);
        hbar[i] = c.convert_to<u64>();
    }
    ntrim(hbar);
    if (hbar.empty()) return -2; // n divisible by p itself; rare, use lattices
    NPoly G = ngcd(fbar, hbar, p);
    NPoly Gd = nderiv(G, p);
    NPoly Gs = Gd.empty() ? G : ndiv(G, ngcd(G, Gd, p), p); // squarefree part
    // v_p(|N(n)|) = sum of f_P v_P(n) over primes containing n, while deg of
    // the squarefree part is sum of f_P; equality forces every v_P = 1
    if (static_cast<unsigned>(ndeg(Gs)) != mult) return -1;
    return ncount_irreducible(std::move(Gs), p);
}

} // namespace

int mobius_K(const FieldElement& n) {
    if (n.is_zero()) throw precondition_error("mobius of zero is undefined");
    if (!n.is_integral()) throw precondition_error("mobius needs an integral element");
    Rat nr = knorm(n);
    Int nv = num(nr);
    if (abs(nv) == 1) return 1; // unit
    unsigned k = 0;
    const bool monogenic = n.field->is_monogenic();
    const Int word_max(std::numeric_limits<unsigned long long>::max());
    for (const auto& [p, mult] : factor_integer(nv)) {
        if (monogenic && p > Int(static_cast<long>(n.field->D)) && p <= word_max) {
            // p cannot divide the index when p^2 does not divide disc(f)
            const Int& disc = defpoly_disc(n.field);
            if (disc % (p * p) != 0) {
                int r = mobius_fast_prime(n, p.convert_to<u64>(), mult);
                if (r == -1) return 0;
                if (r >= 0) {
                    k += static_cast<unsigned>(r);
                    continue;
                }
            }
        }
        const auto& entry = prime_cache(n.field, p);
        for (std::size_t i = 0; i < entry.primes.size(); ++i) {
            if (!entry.primes[i].ideal.contains(n)) continue;
            if (entry.squares[i].contains(n)) return 0;
            ++k;
        }
    }
    return k % 2 == 0 ? 1 : -1;
}

Rat density_estimate(const IdealLattice& I, long N) {
    if (N < 1) throw precondition_error("N must be >= 1");
    const std::size_t D = I.field->D;
    std::vector<long> idx(D, -N);
    Int count = 0, total = 1;
    for (std::size_t i = 0; i < D; ++i) total *= 2 * N + 1;
    std::vector<Int> v(D);
    for (;;) {
        for (std::size_t i = 0; i < D; ++i) v[i] = idx[i];
        if (hnf_contains(I.basis_matrix, v)) ++count;
        std::size_t i = 0;
        for (; i < D; ++i) {
            if (++idx[i] <= N) break;
            idx[i] = -N;
        }
        if (i == D) break;
    }
    return Rat(count, total);
}

} // namespace nilfourier

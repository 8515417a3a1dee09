#include "nilfourier/partreg.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "nilfourier/errors.hpp"
#include "nilfourier/ideals.hpp"

namespace nilfourier {

namespace {

bool box_next(std::vector<long>& v, long lo, long hi) {
    std::size_t k = v.size();
    while (k > 0 && v[k - 1] == hi) v[--k] = lo;
    if (k == 0) return false;
    ++v[k - 1];
    return true;
}

/** Multi-quadratic order Z[sqrt(g_1), ..., sqrt(g_t)]: basis indexed by subsets
    of the generators, b_S b_T = (prod over S cap T of g_i) b_{S xor T}. */
FieldPtr subset_tower(const std::vector<Int>& gens) {
    if (gens.empty()) return FieldSpec::builtin("Q");
    std::size_t t = gens.size(), D = std::size_t(1) << t;
    std::vector<Int> table(D * D * D, 0);
    for (std::size_t S = 0; S < D; ++S)
        for (std::size_t T = 0; T < D; ++T) {
            Int c = 1;
            for (std::size_t i = 0; i < t; ++i)
                if ((S & T) >> i & 1) c *= gens[i];
            table[(S * D + T) * D + (S ^ T)] = c;
        }
    std::vector<Int> one(D, 0);
    one[0] = 1;
    std::ostringstream label;
    label << "Q(";
    for (std::size_t i = 0; i < t; ++i) label << (i ? "," : "") << "sqrt(" << gens[i] << ")";
    label << ")";
    auto spec = FieldSpec::from_table(label.str(), D, std::move(table), std::move(one));
    return std::make_shared<const FieldSpec>(std::move(spec));
}

/** Square roots of the given integers inside a common multi-quadratic tower,
    deduplicating kernels already representable (squarefree-kernel subgroup). */
struct Tower {
    FieldPtr K;
    std::vector<Int> gens;

    explicit Tower(const std::vector<Int>& targets) {
        for (const Int& d : targets) {
            if (d == 0) continue;
            Int delta = squarefree_kernel(d);
            if (delta == 1) continue;
            bool covered = false;
            for (std::size_t S = 0; S < (std::size_t(1) << gens.size()) && !covered; ++S) {
                Int prod = delta;
                for (std::size_t i = 0; i < gens.size(); ++i)
                    if (S >> i & 1) prod *= gens[i];
                covered = squarefree_kernel(prod) == 1;
            }
            if (!covered) gens.push_back(delta);
        }
        K = subset_tower(gens);
    }

    /// element with square d
    FieldElement sqrt_of(const Int& d) const {
        if (d == 0) return FieldElement::zero(K);
        Int s = square_part(d), delta = squarefree_kernel(d);
        if (delta == 1) return FieldElement::rational(K, Rat(s));
        for (std::size_t S = 1; S < (std::size_t(1) << gens.size()); ++S) {
            Int prod = 1;
            for (std::size_t i = 0; i < gens.size(); ++i)
                if (S >> i & 1) prod *= gens[i];
            if (squarefree_kernel(delta * prod) != 1) continue;
            Int u = isqrt(abs(delta * prod)); // delta * prod = u^2
            // sqrt(delta) = (u / prod) b_S
            std::vector<Rat> coords(K->D, 0);
            coords[S] = Rat(s * u) / Rat(prod);
            return FieldElement(K, coords);
        }
        throw unsupported_error("discriminant not representable in the tower");
    }
};

std::vector<Rat> sorted_key(const FieldElement& x) { return x.coords; }

} // namespace

void KTypeSpec::validate_shifts() const {
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j)
            if (a[i] == a[j]) throw precondition_error("shifts a_i are not pairwise distinct");
    for (std::size_t i = 0; i < ap.size(); ++i)
        for (std::size_t j = i + 1; j < ap.size(); ++j)
            if (ap[i] == ap[j]) throw precondition_error("shifts a'_i are not pairwise distinct");
    std::vector<std::vector<Rat>> s1, s2;
    for (const auto& e : a) s1.push_back(sorted_key(e));
    for (const auto& e : ap) s2.push_back(sorted_key(e));
    std::sort(s1.begin(), s1.end());
    std::sort(s2.begin(), s2.end());
    if (s1 == s2) throw precondition_error("shift multisets {a} and {a'} coincide");
}

FieldElement KTypeSpec::x(const FieldElement& k, const FieldElement& m,
                          const FieldElement& n) const {
    FieldElement acc = x_scale * k;
    for (const auto& ai : a) acc = acc * (m + ai * n);
    return acc;
}

FieldElement KTypeSpec::y(const FieldElement& k, const FieldElement& m,
                          const FieldElement& n) const {
    FieldElement acc = y_scale * k;
    for (const auto& ai : ap) acc = acc * (m + ai * n);
    return acc;
}

KTypeSpec quad_parametrization(long pa, long pb, long pc, long pd, long pe, long pf) {
    Int a = pa, b = pb, c = pc, d = pd, e = pe, f = pf;
    Int d1 = e * e - 4 * a * c;
    Int d2 = f * f - 4 * b * c;
    Int d3 = (e + f) * (e + f) - 4 * c * (a + b + d);

    if (c == 0) throw unsupported_error("degenerate case (i): c = 0");
    if (d1 == 0 || d2 == 0) {
        // one of the first two discriminants vanishes
        Int other = d1 == 0 ? d2 : d1;
        if (other == d3)
            throw unsupported_error("degenerate case (ii): a vanishing discriminant with the "
                                    "other two equal");
        throw unsupported_error("degenerate case (iii): a vanishing discriminant with the "
                                "other two unequal");
    }
    if (d3 == 0 && d1 == d2)
        throw unsupported_error("degenerate case (ii): a vanishing discriminant with the "
                                "other two equal");

    Tower tower({d1, d2, d3});
    FieldPtr K = tower.K;
    FieldElement D1 = tower.sqrt_of(d1), D2 = tower.sqrt_of(d2), D3 = tower.sqrt_of(d3);
    FieldElement C = FieldElement::rational(K, Rat(c));
    FieldElement E = FieldElement::rational(K, Rat(e)), F = FieldElement::rational(K, Rat(f));

    KTypeSpec spec;
    spec.K = K;
    spec.pcoef = {a, b, c, d, e, f};
    spec.x_scale = FieldElement::rational(K, Rat(2 * c));
    spec.y_scale = spec.x_scale;
    {
        std::ostringstream os;
        std::pair<Int, const char*> terms[] = {{a, "x^2"}, {b, "y^2"}, {c, "z^2"},
                                               {d, "xy"},  {e, "xz"},  {f, "yz"}};
        bool first = true;
        for (const auto& [coef, mono] : terms) {
            if (coef == 0) continue;
            if (!first && coef > 0) os << "+";
            if (coef == -1)
                os << "-";
            else if (coef != 1)
                os << coef;
            os << mono;
            first = false;
        }
        spec.label = os.str();
    }

    if (d3 == 0) {
        spec.case_id = 1;
        spec.a = {-D2, D2};
        spec.ap = {-D1, D1};
    } else {
        spec.case_id = 2;
        FieldElement d2K = FieldElement::rational(K, Rat(d2));
        FieldElement d3K = FieldElement::rational(K, Rat(d3));
        spec.a = {C * (d2K + D2 * D3), C * (d2K - D2 * D3)};
        spec.ap = {C * (d2K - d3K + D1 * D3), C * (d2K - d3K - D1 * D3)};
    }
    spec.validate_shifts();

    // z' for case (i): k (D1^2 - D2^2) m n
    // z' for case (ii): k D3 (m^2 + c (D1^2 + D2^2 - D3^2) m n + c^2 D1^2 D2^2 n^2)
    // solution z = z' - e x' - f y' with x', y' the unscaled products
    auto sa = spec.a, sap = spec.ap;
    int case_id = spec.case_id;
    spec.zfun = [sa, sap, case_id, D3, E, F, c, d1, d2,
                 d3](const FieldElement& k, const FieldElement& m, const FieldElement& n) {
        FieldElement xp = k, yp = k;
        for (const auto& ai : sa) xp = xp * (m + ai * n);
        for (const auto& ai : sap) yp = yp * (m + ai * n);
        FieldElement zp;
        if (case_id == 1) {
            zp = k * m * n * Rat(d1 - d2);
        } else {
            FieldElement quad = m * m + m * n * Rat(c * (d1 + d2 - d3)) + n * n * Rat(c * c * d1 * d2);
            zp = k * D3 * quad;
        }
        FieldElement shift = E * xp + F * yp;
        return std::vector<std::vector<FieldElement>>{{zp - shift}, {-zp - shift}};
    };
    spec.pfun = [a, b, c, d, e, f](const FieldElement& x, const FieldElement& y,
                                   const std::vector<FieldElement>& z) {
        const FieldElement& zz = z.at(0);
        return x * x * Rat(a) + y * y * Rat(b) + zz * zz * Rat(c) + x * y * Rat(d) +
               x * zz * Rat(e) + y * zz * Rat(f);
    };
    return spec;
}

KTypeSpec gerardin_spec() {
    FieldPtr K = FieldSpec::builtin("Qsqrtm3"); // w = (1+sqrt(-3))/2, w^2 = w - 1
    FieldElement w(K, {Rat(0), Rat(1)});
    FieldElement one = FieldElement::one(K);

    KTypeSpec spec;
    spec.K = K;
    spec.label = "x1^2-2x2^2+z1^2-z2^2";
    spec.a = {one, -one};
    spec.ap = {w - one, -w}; // (-1 +- sqrt(-3)) / 2
    spec.x_scale = one;
    spec.y_scale = one;
    spec.validate_shifts();

    // x1 = k(m^2 - n^2), x2 = k(m^2 - mn + n^2);
    // z1 = (Q - k^2)/2, z2 = (Q + k^2)/2 with Q = (m^2-n^2)^2 - 2(m^2-mn+n^2)^2,
    // so z1^2 - z2^2 = -k^2 Q = -(x1^2 - 2 x2^2) / k^0 scaled at k.
    spec.zfun = [](const FieldElement& k, const FieldElement& m, const FieldElement& n) {
        FieldElement q1 = m * m - n * n, q2 = m * m - m * n + n * n;
        // x1^2 - 2 x2^2 = k^2 Q0; factor -k^2 Q0 = (z1 - z2)(z1 + z2) with
        // z1 - z2 = -k^2, z1 + z2 = Q0
        FieldElement Q0 = q1 * q1 - q2 * q2 * Rat(2);
        FieldElement z1 = (Q0 - k * k) * Rat(1, 2);
        FieldElement z2 = (Q0 + k * k) * Rat(1, 2);
        return std::vector<std::vector<FieldElement>>{{z1, z2}, {-z1, -z2}};
    };
    spec.pfun = [](const FieldElement& x, const FieldElement& y,
                   const std::vector<FieldElement>& z) {
        return x * x - y * y * Rat(2) + z.at(0) * z.at(0) - z.at(1) * z.at(1);
    };
    return spec;
}

VerifyReport verify_identity(const KTypeSpec& spec, unsigned trials, unsigned seed) {
    if (!spec.zfun || !spec.pfun) throw precondition_error("spec has no parametrization");
    std::mt19937 rng(seed);
    std::uniform_int_distribution<long> dist(-9, 9);
    VerifyReport rep;
    for (unsigned t = 0; t < trials; ++t) {
        std::vector<Int> kc(spec.K->D), mc(spec.K->D), nc(spec.K->D);
        for (auto& v : kc) v = dist(rng);
        for (auto& v : mc) v = dist(rng);
        for (auto& v : nc) v = dist(rng);
        FieldElement k = FieldElement::from_ints(spec.K, kc);
        FieldElement m = FieldElement::from_ints(spec.K, mc);
        FieldElement n = FieldElement::from_ints(spec.K, nc);
        FieldElement x = spec.x(k, m, n), y = spec.y(k, m, n);
        for (const auto& z : spec.zfun(k, m, n)) {
            FieldElement res = spec.pfun(x, y, z);
            ++rep.evaluations;
            if (!res.is_zero()) {
                std::ostringstream os;
                os << "k=" << k.str() << " m=" << m.str() << " n=" << n.str()
                   << " residual=" << res.str();
                throw identity_error("parametrization does not annihilate the polynomial",
                                     os.str());
            }
        }
        ++rep.trials;
    }
    return rep;
}

std::vector<FieldElement> folner_set(const FieldPtr& field, unsigned N) {
    const std::size_t D = field->D;

    // units within a fixed search height (all of them for the finite groups)
    auto units_in = [&](long h) {
        std::vector<FieldElement> us;
        std::vector<long> c(D, -h);
        do {
            std::vector<Int> ic(c.begin(), c.end());
            FieldElement u = FieldElement::from_ints(field, ic);
            if (!u.is_zero() && abs(knorm(u)) == 1) us.push_back(u);
        } while (box_next(c, -h, h));
        return us;
    };

    if (N == 0) return units_in(2);

    // first N prime ideals by norm, ties by lexicographic basis
    std::vector<IdealLattice> primes;
    Int p = 2;
    while (true) {
        std::vector<std::pair<Int, IdealLattice>> all; // (norm, ideal)
        Int q = 2;
        while (q <= p) {
            for (const auto& fac : primes_above(field, q)) all.emplace_back(fac.ideal.norm, fac.ideal);
            q = least_prime_above(q.convert_to<std::int64_t>());
        }
        std::sort(all.begin(), all.end(), [](const auto& l, const auto& r) {
            return l.first != r.first ? l.first < r.first
                                      : l.second.basis_matrix < r.second.basis_matrix;
        });
        std::size_t usable = 0;
        while (usable < all.size() && all[usable].first <= p) ++usable;
        if (usable >= N) {
            for (std::size_t i = 0; i < N; ++i) primes.push_back(all[i].second);
            break;
        }
        p = least_prime_above(p.convert_to<std::int64_t>());
    }

    // one generator per prime ideal by growing box search
    std::vector<FieldElement> gens;
    for (const auto& I : primes) {
        std::optional<FieldElement> g;
        for (long h = 2; h <= 4096 && !g; h *= 2) {
            std::vector<long> c(D, -h);
            do {
                std::vector<Int> ic(c.begin(), c.end());
                FieldElement cand = FieldElement::from_ints(field, ic);
                if (cand.is_zero()) continue;
                if (abs(knorm(cand)) == I.norm && I.contains(cand)) {
                    g = cand;
                    break;
                }
            } while (box_next(c, -h, h));
        }
        if (!g)
            throw partial_folner_error("no generator found within the search height",
                                       std::move(gens));
        gens.push_back(*g);
    }

    std::vector<FieldElement> units = units_in(2);

    // divisors of (I_1 ... I_N)^N: exponent vectors in [0, N]^N
    std::set<std::vector<Rat>> seen;
    std::vector<FieldElement> out;
    std::vector<long> exps(N, 0);
    while (true) {
        FieldElement d = FieldElement::one(field);
        for (unsigned i = 0; i < N; ++i)
            for (long r = 0; r < exps[i]; ++r) d = d * gens[i];
        for (const auto& u : units) {
            FieldElement v = d * u;
            if (seen.insert(v.coords).second) out.push_back(v);
        }
        if (!box_next(exps, 0, static_cast<long>(N))) break;
    }
    std::sort(out.begin(), out.end(),
              [](const FieldElement& l, const FieldElement& r) { return l.coords < r.coords; });
    return out;
}

MultAverage mult_average(const MultFnSpec& chi, const std::vector<FieldElement>& a,
                         const std::vector<FieldElement>& ap, long N) {
    if (N < 1) throw precondition_error("N must be >= 1");
    if (chi.kind != MultKind::constant_one && chi.kind != MultKind::completely_multiplicative)
        throw precondition_error("chi must be completely multiplicative");
    if (chi.kind == MultKind::completely_multiplicative)
        for (const auto& [c, v] : chi.prime_values)
            if (std::abs(std::abs(v) - 1.0) > 1e-9)
                throw precondition_error("chi must have unit modulus");

    KTypeSpec shifts;
    shifts.a = a;
    shifts.ap = ap;
    shifts.validate_shifts();

    const FieldPtr& K = chi.field;
    const std::size_t D = K->D;
    cplx acc(0, 0);
    std::size_t degenerate = 0, total = 0;
    std::vector<long> mc(D, 1);
    do {
        std::vector<Int> mi(mc.begin(), mc.end());
        FieldElement m = FieldElement::from_ints(K, mi);
        std::vector<long> nc(D, 1);
        do {
            std::vector<Int> ni(nc.begin(), nc.end());
            FieldElement n = FieldElement::from_ints(K, ni);
            cplx term(1, 0);
            bool dead = false;
            for (const auto& ai : a) {
                cplx v = eval(chi, m + ai * n);
                if (v == cplx(0, 0)) { dead = true; break; }
                term *= v;
            }
            for (const auto& ai : ap) {
                if (dead) break;
                cplx v = eval(chi, m + ai * n);
                if (v == cplx(0, 0)) { dead = true; break; }
                term *= std::conj(v);
            }
            ++total;
            if (dead) ++degenerate;
            else acc += term;
        } while (box_next(nc, 1, N));
    } while (box_next(mc, 1, N));

    MultAverage r;
    r.value = acc / static_cast<double>(total);
    r.degenerate_fraction = static_cast<double>(degenerate) / static_cast<double>(total);
    return r;
}

std::optional<ColorWitness> coloring_search(const KTypeSpec& spec, const Coloring& color,
                                            long box_height) {
    if (box_height < 0) return std::nullopt;
    const std::size_t D = spec.K->D;
    std::vector<long> all(3 * D, -box_height);
    do {
        std::vector<Int> kc(all.begin(), all.begin() + D);
        std::vector<Int> mc(all.begin() + D, all.begin() + 2 * D);
        std::vector<Int> nc(all.begin() + 2 * D, all.end());
        FieldElement k = FieldElement::from_ints(spec.K, kc);
        FieldElement m = FieldElement::from_ints(spec.K, mc);
        FieldElement n = FieldElement::from_ints(spec.K, nc);
        FieldElement x = spec.x(k, m, n), y = spec.y(k, m, n);
        if (x.is_zero() || y.is_zero() || x == y) continue;
        if (!x.is_integral() || !y.is_integral()) continue;
        if (color(x) != color(y)) continue;
        auto choices = spec.zfun(k, m, n);
        for (std::size_t zi = 0; zi < choices.size(); ++zi) {
            bool ok = true;
            for (const auto& z : choices[zi]) ok = ok && z.is_integral();
            if (!ok) continue;
            ColorWitness w;
            w.k = k;
            w.m = m;
            w.n = n;
            w.x = x;
            w.y = y;
            w.z = choices[zi];
            w.z_choice = zi;
            w.color = color(x);
            return w;
        }
    } while (box_next(all, -box_height, box_height));
    return std::nullopt;
}

} // namespace nilfourier

#include "nilfourier/multfn.hpp"

#include <cmath>
#include <sstream>

#include "nilfourier/errors.hpp"
#include "nilfourier/factor.hpp"

namespace nilfourier {

namespace {

Int floor_div(const Int& a, const Int& b) {
    Int q = a / b, r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

std::vector<Int> parse_coords(const std::string& s) {
    std::vector<Int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.emplace_back(Int(tok));
    return out;
}

cplx parse_value(const std::string& s) {
    std::stringstream ss(s);
    std::string re, im;
    std::getline(ss, re, ',');
    double r = std::stod(re), i = 0;
    if (std::getline(ss, im, ',')) i = std::stod(im);
    return {r, i};
}

} // namespace

MultFnSpec MultFnSpec::make(MultKind k, FieldPtr f) {
    MultFnSpec s;
    s.kind = k;
    s.field = std::move(f);
    return s;
}

MultFnSpec MultFnSpec::parse(const std::string& text, const FieldPtr& field) {
    MultFnSpec s;
    s.field = field;
    bool have_kind = false;
    std::vector<FieldElement> modgens;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw precondition_error("bad function-spec line: " + line);
        std::string key = line.substr(0, eq), val = line.substr(eq + 1);
        if (key == "kind") {
            have_kind = true;
            if (val == "mobiusK")
                s.kind = MultKind::mobiusK;
            else if (val == "liouvilleK")
                s.kind = MultKind::liouvilleK;
            else if (val == "one")
                s.kind = MultKind::constant_one;
            else if (val == "cm")
                s.kind = MultKind::completely_multiplicative;
            else if (val == "character")
                s.kind = MultKind::periodic_character;
            else
                throw precondition_error("unknown kind: " + val);
        } else if (key == "prime" || key == "value") {
            auto colon = val.find(':');
            if (colon == std::string::npos) throw precondition_error("expected coords:value in " + line);
            std::vector<Int> c = parse_coords(val.substr(0, colon));
            cplx v = parse_value(val.substr(colon + 1));
            if (std::abs(v) > 1 + 1e-12) throw precondition_error("modulus exceeds 1 in " + line);
            if (key == "prime")
                s.prime_values[c] = v;
            else
                s.residue_values[c] = v;
        } else if (key == "modgen") {
            modgens.push_back(FieldElement::from_ints(field, parse_coords(val)));
        } else {
            throw precondition_error("unknown function-spec key: " + key);
        }
    }
    if (!have_kind) throw precondition_error("function spec needs a kind line");
    if (s.kind == MultKind::periodic_character) {
        if (modgens.empty()) throw precondition_error("character needs modgen lines");
        s.modulus = IdealLattice::from_generators(field, modgens);
    }
    return s;
}

std::vector<Int> residue_of(const IdealLattice& I, const FieldElement& n) {
    const std::size_t D = I.field->D;
    std::vector<Int> v(D);
    for (std::size_t i = 0; i < D; ++i) {
        if (!is_integer(n.coords[i])) throw precondition_error("residue of a non-integral element");
        v[i] = num(n.coords[i]);
    }
    const auto& h = I.basis_matrix;
    for (std::size_t i = 0; i < D; ++i) {
        Int q = floor_div(v[i], h[i][i]);
        for (std::size_t j = i; j < D; ++j) v[j] -= q * h[i][j];
    }
    return v;
}

cplx eval(const MultFnSpec& chi, const FieldElement& n) {
    if (n.is_zero()) return 0;
    if (!n.is_integral()) throw precondition_error("chi is defined on integral elements");
    switch (chi.kind) {
    case MultKind::constant_one:
        return 1;
    case MultKind::mobiusK:
        return static_cast<double>(mobius_K(n));
    case MultKind::liouvilleK: {
        Int nv = abs(num(knorm(n)));
        if (nv == 1) return 1;
        unsigned omega = 0;
        for (const auto& [p, e] : factor_integer(nv)) {
            (void)e;
            for (const auto& pf : primes_above(n.field, p)) omega += valuation(n, pf.ideal);
        }
        return omega % 2 == 0 ? 1 : -1;
    }
    case MultKind::completely_multiplicative: {
        cplx acc = 1;
        FieldElement rem = n;
        for (const auto& [coords, val] : chi.prime_values) {
            FieldElement p = FieldElement::from_ints(chi.field, coords);
            FieldElement pinv = p.inverse();
            while (true) {
                FieldElement q = rem * pinv;
                if (!q.is_integral()) break;
                rem = q;
                acc *= val;
            }
        }
        if (abs(knorm(rem)) != 1)
            throw unsupported_error("element has a prime factor outside the cm table");
        return acc;
    }
    case MultKind::periodic_character: {
        auto r = residue_of(chi.modulus, n);
        auto it = chi.residue_values.find(r);
        if (it == chi.residue_values.end())
            throw precondition_error("character value missing for a residue");
        return it->second;
    }
    }
    throw precondition_error("unknown kind");
}

GridFn truncate(const MultFnSpec& chi, long N, long Ntilde) {
    if (N < 1) throw precondition_error("N must be positive");
    if (Ntilde <= N) throw precondition_error("bad window: need Ntilde > N");
    const std::size_t D = chi.field->D;
    GridFn g(D, Ntilde);
    std::vector<long> c(D, 1);
    while (true) {
        std::vector<Int> ic(c.begin(), c.end());
        g.at(c) = eval(chi, FieldElement::from_ints(chi.field, ic));
        std::size_t k = D;
        while (k > 0 && c[k - 1] == N) c[--k] = 1;
        if (k == 0) break;
        ++c[k - 1];
    }
    return g;
}

double aperiodicity_stat(const MultFnSpec& chi, long N, const std::vector<APSpec>& catalog) {
    if (catalog.empty()) throw precondition_error("empty AP catalog");
    const std::size_t D = chi.field->D;
    const long side = 2 * N + 1;
    std::size_t total = 1;
    for (std::size_t i = 0; i < D; ++i) {
        if (total > (1u << 25) / static_cast<std::size_t>(side))
            throw unsupported_error("box too large to tabulate");
        total *= static_cast<std::size_t>(side);
    }

    std::vector<cplx> table(total);
    std::vector<long> c(D, -N);
    for (std::size_t lin = 0;; ++lin) {
        std::vector<Int> ic(c.begin(), c.end());
        table[lin] = eval(chi, FieldElement::from_ints(chi.field, ic));
        std::size_t k = D;
        while (k > 0 && c[k - 1] == N) c[--k] = -N;
        if (k == 0) break;
        ++c[k - 1];
    }

    auto lin_of = [&](const std::vector<long>& v) {
        std::size_t idx = 0;
        for (std::size_t i = 0; i < D; ++i) idx = idx * static_cast<std::size_t>(side) +
                                                  static_cast<std::size_t>(v[i] + N);
        return idx;
    };

    double best = 0;
    for (const auto& P : catalog) {
        if (P.base.size() != D || P.steps.size() != D || P.lengths.size() != D)
            throw precondition_error("AP dimension mismatch");
        for (std::size_t i = 0; i < D; ++i) {
            if (P.base[i] < -N || P.base[i] + P.steps[i] * (P.lengths[i] - 1) > N)
                throw precondition_error("AP leaves the box R_N");
        }
        cplx acc(0, 0);
        std::vector<long> idx(D, 0), pt(D);
        while (true) {
            for (std::size_t i = 0; i < D; ++i) pt[i] = P.base[i] + P.steps[i] * idx[i];
            acc += table[lin_of(pt)];
            std::size_t k = D;
            while (k > 0 && idx[k - 1] == P.lengths[k - 1] - 1) idx[--k] = 0;
            if (k == 0) break;
            ++idx[k - 1];
        }
        best = std::max(best, std::abs(acc) / static_cast<double>(total));
    }
    return best;
}

std::vector<APSpec> default_catalog(std::size_t D, long N) {
    std::vector<APSpec> out;
    const long stride = std::max(1L, N / 4);
    for (long s = 1; s <= 8; ++s) {
        std::vector<long> base(D, -N);
        while (true) {
            APSpec P;
            P.base = base;
            P.steps.assign(D, s);
            for (std::size_t i = 0; i < D; ++i) P.lengths.push_back((N - base[i]) / s + 1);
            out.push_back(std::move(P));
            if (out.size() >= 100000) return out;
            std::size_t k = D;
            while (k > 0 && base[k - 1] + stride > N) base[--k] = -N;
            if (k == 0) break;
            base[k - 1] += stride;
        }
    }
    return out;
}

} // namespace nilfourier

#pragma once

#include <sstream>
#include <vector>

#include "nilfourier/rat.hpp"

namespace nilfourier {

/** Dense univariate polynomial over the rationals, coefficients low to high.
    The zero polynomial has an empty coefficient vector. */
class Poly {
public:
    std::vector<Rat> c;

    Poly() = default;
    explicit Poly(std::vector<Rat> coeffs) : c(std::move(coeffs)) { trim(); }
    static Poly constant(const Rat& a) { return Poly(std::vector<Rat>{a}); }
    /// x^k
    static Poly monomial(std::size_t k, const Rat& a = 1) {
        std::vector<Rat> v(k + 1, Rat(0));
        v[k] = a;
        return Poly(std::move(v));
    }

    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }
    const Rat& lead() const { return c.back(); }

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }

    Rat operator()(const Rat& x) const {
        Rat acc = 0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
        return acc;
    }
    double eval(double x) const {
        double acc = 0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + to_double(*it);
        return acc;
    }

    Poly operator+(const Poly& o) const {
        std::vector<Rat> v(std::max(c.size(), o.c.size()), Rat(0));
        for (std::size_t i = 0; i < c.size(); ++i) v[i] += c[i];
        for (std::size_t i = 0; i < o.c.size(); ++i) v[i] += o.c[i];
        return Poly(std::move(v));
    }
    Poly operator-(const Poly& o) const {
        std::vector<Rat> v(std::max(c.size(), o.c.size()), Rat(0));
        for (std::size_t i = 0; i < c.size(); ++i) v[i] += c[i];
        for (std::size_t i = 0; i < o.c.size(); ++i) v[i] -= o.c[i];
        return Poly(std::move(v));
    }
    Poly operator*(const Poly& o) const {
        if (is_zero() || o.is_zero()) return Poly();
        std::vector<Rat> v(c.size() + o.c.size() - 1, Rat(0));
        for (std::size_t i = 0; i < c.size(); ++i)
            for (std::size_t j = 0; j < o.c.size(); ++j) v[i + j] += c[i] * o.c[j];
        return Poly(std::move(v));
    }
    Poly operator*(const Rat& a) const {
        Poly r = *this;
        for (auto& x : r.c) x *= a;
        r.trim();
        return r;
    }

    bool operator==(const Poly& o) const { return c == o.c; }

    Poly derivative() const {
        if (c.size() <= 1) return Poly();
        std::vector<Rat> v(c.size() - 1);
        for (std::size_t i = 1; i < c.size(); ++i) v[i - 1] = c[i] * Rat(Int(i));
        return Poly(std::move(v));
    }

    /// Division with remainder; divisor must be nonzero.
    std::pair<Poly, Poly> divmod(const Poly& d) const {
        Poly r = *this, q;
        q.c.assign(std::max<int>(0, degree() - d.degree() + 1), Rat(0));
        while (!r.is_zero() && r.degree() >= d.degree()) {
            Rat f = r.lead() / d.lead();
            int k = r.degree() - d.degree();
            q.c[static_cast<std::size_t>(k)] = f;
            r = r - d * Poly::monomial(static_cast<std::size_t>(k), f);
        }
        q.trim();
        return {q, r};
    }

    Poly monic() const {
        if (is_zero()) return *this;
        return *this * (Rat(1) / lead());
    }

    std::string str(const std::string& var = "t") const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (int i = degree(); i >= 0; --i) {
            const Rat& a = c[static_cast<std::size_t>(i)];
            if (a == 0) continue;
            Rat mag = abs(a);
            if (first) {
                if (a < 0) os << "-";
                first = false;
            } else {
                os << (a < 0 ? " - " : " + ");
            }
            if (i == 0 || mag != 1) os << mag.str();
            if (i > 0) {
                if (mag != 1) os << "*";
                os << var;
                if (i > 1) os << "^" << i;
            }
        }
        return os.str();
    }
};

inline Poly poly_gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

/// Product of distinct irreducible factors (monic).
inline Poly squarefree_part(const Poly& p) {
    if (p.degree() <= 0) return p.monic();
    Poly g = poly_gcd(p, p.derivative());
    return p.divmod(g).first.monic();
}

} // namespace nilfourier

#include "nilfourier/numfield.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "nilfourier/errors.hpp"

namespace nilfourier {

// ---------------------------------------------------------------- FieldSpec

FieldSpec FieldSpec::from_table(std::string label, std::size_t D, std::vector<Int> table,
                                std::vector<Int> one) {
    FieldSpec f;
    f.label = std::move(label);
    f.D = D;
    f.mult_table = std::move(table);
    f.one_coords = std::move(one);
    f.validate();
    return f;
}

FieldSpec FieldSpec::monogenic(std::string label, const Poly& poly) {
    if (poly.is_zero() || poly.lead() != 1)
        throw precondition_error("defining polynomial must be monic");
    for (const auto& a : poly.c)
        if (!is_integer(a)) throw precondition_error("defining polynomial must have integer coefficients");
    std::size_t D = static_cast<std::size_t>(poly.degree());
    if (D == 0) throw precondition_error("defining polynomial must have positive degree");

    // powers of the generator reduced mod poly, up to t^{2D-2}
    std::vector<std::vector<Rat>> pw(2 * D - 1, std::vector<Rat>(D, Rat(0)));
    pw[0][0] = 1;
    for (std::size_t k = 1; k < 2 * D - 1; ++k) {
        // multiply previous by t
        std::vector<Rat> v(D + 1, Rat(0));
        for (std::size_t j = 0; j < D; ++j) v[j + 1] = pw[k - 1][j];
        if (v[D] != 0) {
            Rat top = v[D];
            for (std::size_t j = 0; j < D; ++j) v[j] -= top * poly.c[j];
        }
        for (std::size_t j = 0; j < D; ++j) pw[k][j] = v[j];
    }

    FieldSpec f;
    f.label = std::move(label);
    f.D = D;
    f.mult_table.assign(D * D * D, Int(0));
    for (std::size_t i = 0; i < D; ++i)
        for (std::size_t j = 0; j < D; ++j)
            for (std::size_t k = 0; k < D; ++k)
                f.mult_table[(i * D + j) * D + k] = num(pw[i + j][k]);
    f.one_coords.assign(D, Int(0));
    f.one_coords[0] = 1;
    f.defining_poly = poly;
    f.validate();
    return f;
}

void FieldSpec::validate() const {
    if (D == 0 || mult_table.size() != D * D * D || one_coords.size() != D)
        throw precondition_error("malformed field spec");
    auto mul = [&](const std::vector<Int>& x, const std::vector<Int>& y) {
        std::vector<Int> z(D, Int(0));
        for (std::size_t i = 0; i < D; ++i)
            for (std::size_t j = 0; j < D; ++j) {
                if (x[i] == 0 || y[j] == 0) continue;
                for (std::size_t k = 0; k < D; ++k) z[k] += x[i] * y[j] * c(i, j, k);
            }
        return z;
    };
    auto basis = [&](std::size_t i) {
        std::vector<Int> e(D, Int(0));
        e[i] = 1;
        return e;
    };
    for (std::size_t i = 0; i < D; ++i)
        for (std::size_t j = 0; j < D; ++j) {
            if (mul(basis(i), basis(j)) != mul(basis(j), basis(i)))
                throw precondition_error("multiplication table is not commutative");
            for (std::size_t k = 0; k < D; ++k)
                if (mul(mul(basis(i), basis(j)), basis(k)) != mul(basis(i), mul(basis(j), basis(k))))
                    throw precondition_error("multiplication table is not associative");
        }
    for (std::size_t i = 0; i < D; ++i) {
        if (mul(one_coords, basis(i)) != basis(i))
            throw precondition_error("declared identity is not an identity");
    }
}

std::vector<std::string> FieldSpec::builtin_names() {
    return {"Q", "Qi", "Qsqrt2", "Qsqrtm3", "Qsqrt2sqrt3"};
}

std::shared_ptr<const FieldSpec> FieldSpec::builtin(const std::string& name) {
    static std::map<std::string, std::shared_ptr<const FieldSpec>> cache = [] {
        std::map<std::string, std::shared_ptr<const FieldSpec>> m;
        auto add = [&](const std::string& n, const Poly& p) {
            m[n] = std::make_shared<FieldSpec>(FieldSpec::monogenic(n, p));
        };
        add("Q", Poly::monomial(1));                                          // t
        add("Qi", Poly({Rat(1), Rat(0), Rat(1)}));                            // t^2 + 1
        add("Qsqrt2", Poly({Rat(-2), Rat(0), Rat(1)}));                       // t^2 - 2
        add("Qsqrtm3", Poly({Rat(1), Rat(-1), Rat(1)}));                      // t^2 - t + 1, t = (1+sqrt(-3))/2
        add("Qsqrt2sqrt3", Poly({Rat(1), Rat(0), Rat(-10), Rat(0), Rat(1)})); // t^4 - 10 t^2 + 1
        return m;
    }();
    auto it = cache.find(name);
    if (it == cache.end()) throw precondition_error("unknown builtin field: " + name);
    return it->second;
}

static std::string strip(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::shared_ptr<const FieldSpec> FieldSpec::parse(const std::string& text) {
    std::istringstream in(text);
    std::string line, label;
    std::size_t D = 0;
    std::optional<Poly> poly;
    std::map<std::pair<std::size_t, std::size_t>, std::string> table_lines;
    std::vector<Int> one;
    while (std::getline(in, line)) {
        line = strip(line);
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw precondition_error("bad field-file line: " + line);
        std::string key = strip(line.substr(0, eq)), val = strip(line.substr(eq + 1));
        if (key == "label") {
            label = val;
        } else if (key == "degree") {
            D = std::stoul(val);
        } else if (key == "poly") {
            std::vector<Rat> c;
            std::istringstream vs(val);
            std::string tok;
            while (std::getline(vs, tok, ',')) c.emplace_back(Int(strip(tok)));
            poly = Poly(std::move(c));
        } else if (key == "one") {
            std::istringstream vs(val);
            std::string tok;
            while (std::getline(vs, tok, ',')) one.emplace_back(strip(tok));
        } else if (key.rfind("table[", 0) == 0) {
            std::size_t i, j;
            if (std::sscanf(key.c_str(), "table[%zu][%zu]", &i, &j) != 2)
                throw precondition_error("bad table key: " + key);
            table_lines[{i, j}] = val;
        } else {
            throw precondition_error("unknown field-file key: " + key);
        }
    }
    if (D == 0) throw precondition_error("field file missing degree");
    if (poly) return std::make_shared<FieldSpec>(monogenic(label, *poly));
    if (one.size() != D) throw precondition_error("field file missing or malformed one = ...");
    std::vector<Int> table(D * D * D, Int(0));
    for (const auto& [ij, val] : table_lines) {
        auto [i, j] = ij;
        if (i >= D || j >= D) throw precondition_error("table index out of range");
        std::istringstream vs(val);
        std::string tok;
        while (std::getline(vs, tok, ',')) {
            tok = strip(tok);
            auto colon = tok.find(':');
            if (colon == std::string::npos) throw precondition_error("bad table entry: " + tok);
            std::size_t k = std::stoul(strip(tok.substr(0, colon)));
            if (k >= D) throw precondition_error("table index out of range");
            table[(i * D + j) * D + k] = Int(strip(tok.substr(colon + 1)));
        }
    }
    return std::make_shared<FieldSpec>(from_table(label, D, std::move(table), std::move(one)));
}

std::shared_ptr<const FieldSpec> FieldSpec::load(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw precondition_error("cannot open field file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse(ss.str());
}

// ------------------------------------------------------------- FieldElement

FieldElement FieldElement::from_ints(const FieldPtr& f, const std::vector<Int>& n) {
    if (n.size() != f->D) throw precondition_error("coordinate count does not match degree");
    std::vector<Rat> c(n.begin(), n.end());
    return FieldElement(f, std::move(c));
}

FieldElement FieldElement::zero(const FieldPtr& f) {
    return FieldElement(f, std::vector<Rat>(f->D, Rat(0)));
}

FieldElement FieldElement::one(const FieldPtr& f) {
    return from_ints(f, f->one_coords);
}

FieldElement FieldElement::rational(const FieldPtr& f, const Rat& r) {
    FieldElement e = one(f);
    for (auto& x : e.coords) x *= r;
    return e;
}

FieldElement FieldElement::generator(const FieldPtr& f) {
    if (!f->is_monogenic()) throw precondition_error("field has no declared power-basis generator");
    std::vector<Rat> c(f->D, Rat(0));
    if (f->D == 1) {
        // degree-1 generator is the root of the linear defining polynomial
        c[0] = -f->defining_poly->c[0];
    } else {
        c[1] = 1;
    }
    return FieldElement(f, std::move(c));
}

bool FieldElement::is_zero() const {
    for (const auto& x : coords)
        if (x != 0) return false;
    return true;
}

bool FieldElement::is_integral() const {
    for (const auto& x : coords)
        if (!is_integer(x)) return false;
    return true;
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    FieldElement r = *this;
    for (std::size_t i = 0; i < coords.size(); ++i) r.coords[i] += o.coords[i];
    return r;
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
    FieldElement r = *this;
    for (std::size_t i = 0; i < coords.size(); ++i) r.coords[i] -= o.coords[i];
    return r;
}

FieldElement FieldElement::operator-() const {
    FieldElement r = *this;
    for (auto& x : r.coords) x = -x;
    return r;
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
    const FieldSpec& f = *field;
    std::vector<Rat> z(f.D, Rat(0));
    for (std::size_t i = 0; i < f.D; ++i) {
        if (coords[i] == 0) continue;
        for (std::size_t j = 0; j < f.D; ++j) {
            if (o.coords[j] == 0) continue;
            Rat xy = coords[i] * o.coords[j];
            for (std::size_t k = 0; k < f.D; ++k)
                if (f.c(i, j, k) != 0) z[k] += xy * Rat(f.c(i, j, k));
        }
    }
    return FieldElement(field, std::move(z));
}

FieldElement FieldElement::operator*(const Rat& s) const {
    FieldElement r = *this;
    for (auto& x : r.coords) x *= s;
    return r;
}

FieldElement FieldElement::pow(unsigned e) const {
    FieldElement acc = one(field), base = *this;
    while (e) {
        if (e & 1u) acc = acc * base;
        base = base * base;
        e >>= 1u;
    }
    return acc;
}

FieldElement FieldElement::inverse() const {
    if (is_zero()) throw precondition_error("inverse of zero");
    QMat A = embed_matrix(*this);
    std::vector<Rat> onev(field->D);
    for (std::size_t i = 0; i < field->D; ++i) onev[i] = Rat(field->one_coords[i]);
    // iota^{-1}(x y) = iota^{-1}(y) A(x); solve for y with x y = 1
    return FieldElement(field, A.solve_left(onev));
}

std::string FieldElement::str() const {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (i) os << ",";
        os << coords[i].str();
    }
    os << ")";
    return os.str();
}

// ---------------------------------------------------------------- operations

QMat embed_matrix(const FieldElement& x) {
    const FieldSpec& f = *x.field;
    QMat A(f.D, f.D);
    // x * b_i = sum_l x_l (b_l b_i) = sum_k (sum_l x_l c[l][i][k]) b_k
    for (std::size_t i = 0; i < f.D; ++i)
        for (std::size_t l = 0; l < f.D; ++l) {
            if (x.coords[l] == 0) continue;
            for (std::size_t k = 0; k < f.D; ++k)
                if (f.c(l, i, k) != 0) A(i, k) += x.coords[l] * Rat(f.c(l, i, k));
        }
    return A;
}

Rat knorm(const FieldElement& x) {
    const FieldSpec& f = *x.field;
    const std::size_t D = f.D;
    bool integral = true;
    for (const auto& c : x.coords)
        if (den(c) != 1) {
            integral = false;
            break;
        }
    if (!integral) return embed_matrix(x).det();

    // machine-word path: for D <= 4 and entries below 2^25 every Bareiss
    // intermediate is a minor bounded by D^{D/2} M^D < 2^104, safe in 128 bits
    if (D <= 4) {
        const long long M = 1LL << 25;
        bool small = true;
        std::vector<long long> xl(D, 0);
        for (std::size_t l = 0; l < D && small; ++l) {
            const Int& c = num(x.coords[l]);
            if (c > -M && c < M)
                xl[l] = c.convert_to<long long>();
            else
                small = false;
        }
        if (small) {
            long long A[16] = {0};
            for (std::size_t i = 0; i < D && small; ++i)
                for (std::size_t l = 0; l < D; ++l) {
                    if (xl[l] == 0) continue;
                    for (std::size_t k = 0; k < D; ++k) {
                        const Int& c = f.c(l, i, k);
                        if (c == 0) continue;
                        A[i * D + k] += xl[l] * c.convert_to<long long>();
                        if (A[i * D + k] <= -M || A[i * D + k] >= M) {
                            small = false;
                            break;
                        }
                    }
                }
            if (small) {
                __int128 B[16];
                for (std::size_t i = 0; i < D * D; ++i) B[i] = A[i];
                __int128 denom = 1;
                int sign = 1;
                for (std::size_t col = 0; col + 1 < D; ++col) {
                    std::size_t piv = col;
                    while (piv < D && B[piv * D + col] == 0) ++piv;
                    if (piv == D) return Rat(0);
                    if (piv != col) {
                        for (std::size_t j = col; j < D; ++j) std::swap(B[piv * D + j], B[col * D + j]);
                        sign = -sign;
                    }
                    for (std::size_t i = col + 1; i < D; ++i) {
                        for (std::size_t j = col + 1; j < D; ++j)
                            B[i * D + j] = (B[i * D + j] * B[col * D + col] -
                                            B[i * D + col] * B[col * D + j]) / denom;
                        B[i * D + col] = 0;
                    }
                    denom = B[col * D + col];
                }
                __int128 det = B[(D - 1) * D + (D - 1)];
                bool neg = (sign < 0) != (det < 0);
                if (det < 0) det = -det;
                Int r = (Int(static_cast<unsigned long long>(det >> 64)) << 64) +
                        Int(static_cast<unsigned long long>(det));
                return Rat(neg ? Int(-r) : r);
            }
        }
    }

    // integer multiplication matrix and a fraction-free (Bareiss) determinant
    std::vector<Int> A(D * D, Int(0));
    for (std::size_t i = 0; i < D; ++i)
        for (std::size_t l = 0; l < D; ++l) {
            if (x.coords[l] == 0) continue;
            Int xl = num(x.coords[l]);
            for (std::size_t k = 0; k < D; ++k)
                if (f.c(l, i, k) != 0) A[i * D + k] += xl * f.c(l, i, k);
        }
    Int denom = 1;
    int sign = 1;
    for (std::size_t col = 0; col + 1 < D; ++col) {
        std::size_t piv = col;
        while (piv < D && A[piv * D + col] == 0) ++piv;
        if (piv == D) return Rat(0);
        if (piv != col) {
            for (std::size_t j = col; j < D; ++j) std::swap(A[piv * D + j], A[col * D + j]);
            sign = -sign;
        }
        for (std::size_t i = col + 1; i < D; ++i) {
            for (std::size_t j = col + 1; j < D; ++j)
                A[i * D + j] = (A[i * D + j] * A[col * D + col] - A[i * D + col] * A[col * D + j]) / denom;
            A[i * D + col] = 0;
        }
        denom = A[col * D + col];
    }
    Int d = A[(D - 1) * D + (D - 1)];
    return Rat(sign == 1 ? d : Int(-d));
}

Poly min_poly(const FieldElement& x) {
    const std::size_t D = x.field->D;
    QMat A = embed_matrix(x);
    // Krylov on vectorized powers: first linear dependence gives the minimal polynomial
    std::vector<QMat> powers;
    powers.push_back(QMat::identity(D));
    for (std::size_t d = 1; d <= D; ++d) {
        powers.push_back(powers.back() * A);
        // solve sum_{k<d} c_k vec(A^k) = vec(A^d)
        QMat sys(D * D, d + 1);
        for (std::size_t k = 0; k < d; ++k)
            for (std::size_t e = 0; e < D * D; ++e) sys(e, k) = powers[k].a[e];
        for (std::size_t e = 0; e < D * D; ++e) sys(e, d) = powers[d].a[e];
        std::vector<std::size_t> piv;
        sys.rref(&piv);
        bool consistent = true;
        for (auto p : piv)
            if (p == d) consistent = false;
        if (!consistent) continue;
        std::vector<Rat> coeff(d + 1, Rat(0));
        coeff[d] = 1;
        for (std::size_t r = 0; r < piv.size(); ++r) coeff[piv[r]] = -sys(r, d);
        return Poly(std::move(coeff));
    }
    throw std::logic_error("minimal polynomial not found"); // unreachable
}

// Sturm count of distinct real roots of a squarefree rational polynomial.
static int sturm_real_roots(const Poly& p) {
    if (p.degree() <= 0) return 0;
    std::vector<Poly> chain{p, p.derivative()};
    while (!chain.back().is_zero() && chain.back().degree() > 0) {
        Poly r = chain[chain.size() - 2].divmod(chain.back()).second;
        chain.push_back(r * Rat(-1));
    }
    auto signs_at_inf = [&](int dir) {
        int changes = 0, prev = 0;
        for (const auto& q : chain) {
            if (q.is_zero()) continue;
            Rat l = q.lead();
            int s = (l > 0 ? 1 : -1);
            if (dir < 0 && q.degree() % 2 == 1) s = -s;
            if (prev != 0 && s != prev) ++changes;
            prev = s;
        }
        return changes;
    };
    return signs_at_inf(-1) - signs_at_inf(+1);
}

std::vector<EigenValue> eigen_data(const FieldElement& x, double precision) {
    if (precision <= 0) throw precondition_error("precision must be positive");
    const std::size_t D = x.field->D;
    Poly mp = min_poly(x);
    std::size_t deg = static_cast<std::size_t>(mp.degree());
    std::size_t mult = D / deg;

    // numeric roots of the exact minimal polynomial via its companion matrix
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(static_cast<int>(deg), static_cast<int>(deg));
    for (std::size_t i = 0; i + 1 < deg; ++i) comp(static_cast<int>(i + 1), static_cast<int>(i)) = 1.0;
    for (std::size_t i = 0; i < deg; ++i)
        comp(static_cast<int>(i), static_cast<int>(deg - 1)) = -to_double(mp.c[i]);
    std::vector<std::complex<double>> roots;
    if (deg == 1) {
        roots.push_back({-to_double(mp.c[0]), 0.0});
    } else {
        Eigen::EigenSolver<Eigen::MatrixXd> es(comp);
        for (int i = 0; i < static_cast<int>(deg); ++i) roots.push_back(es.eigenvalues()[i]);
    }

    // Newton refinement against the exact coefficients
    Poly dmp = mp.derivative();
    auto eval_c = [&](const Poly& p, std::complex<double> z) {
        std::complex<double> acc = 0;
        for (auto it = p.c.rbegin(); it != p.c.rend(); ++it) acc = acc * z + to_double(*it);
        return acc;
    };
    double worst_step = 0.0;
    for (auto& z : roots) {
        double step = 0.0;
        for (int it = 0; it < 100; ++it) {
            std::complex<double> d = eval_c(dmp, z);
            if (std::abs(d) == 0.0) break;
            std::complex<double> delta = eval_c(mp, z) / d;
            z -= delta;
            step = std::abs(delta);
            if (step < precision * 1e-3) break;
        }
        worst_step = std::max(worst_step, step);
    }
    if (worst_step > precision)
        throw numeric_error("eigenvalue refinement did not reach the requested precision", worst_step);

    // exact real-root count decides the real/complex split
    int r1_distinct = sturm_real_roots(mp);
    std::sort(roots.begin(), roots.end(), [](auto a, auto b) {
        return std::abs(a.imag()) < std::abs(b.imag());
    });
    std::vector<std::complex<double>> real_roots(roots.begin(), roots.begin() + r1_distinct);
    std::vector<std::complex<double>> cplx_roots(roots.begin() + r1_distinct, roots.end());
    std::sort(real_roots.begin(), real_roots.end(),
              [](auto a, auto b) { return a.real() < b.real(); });
    // keep one representative per conjugate pair, positive imaginary part
    std::vector<std::complex<double>> pairs;
    for (auto z : cplx_roots)
        if (z.imag() > 0) pairs.push_back(z);
    std::sort(pairs.begin(), pairs.end(), [](auto a, auto b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });

    std::vector<EigenValue> out;
    for (std::size_t m = 0; m < mult; ++m)
        for (auto z : real_roots) out.push_back({{z.real(), 0.0}, true});
    for (std::size_t m = 0; m < mult; ++m)
        for (auto z : pairs) {
            out.push_back({z, false});
            out.push_back({std::conj(z), false});
        }
    return out;
}

std::size_t unit_rank(const FieldSpec& f) {
    auto fp = std::make_shared<FieldSpec>(f);
    // probe elements until one is primitive (minimal polynomial of full degree)
    for (Int t = 1; t < 100; ++t) {
        std::vector<Int> c(f.D);
        Int v = 1;
        for (std::size_t i = 0; i < f.D; ++i) {
            c[i] = (i == 0 ? Int(0) : v);
            v *= t;
        }
        FieldElement x = FieldElement::from_ints(fp, c);
        Poly mp = min_poly(x);
        if (static_cast<std::size_t>(mp.degree()) == f.D) {
            int r1 = sturm_real_roots(mp);
            std::size_t r2 = (f.D - static_cast<std::size_t>(r1)) / 2;
            return static_cast<std::size_t>(r1) + r2 - 1;
        }
    }
    throw std::logic_error("no primitive element found");
}

} // namespace nilfourier

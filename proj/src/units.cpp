#include "nilfourier/units.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "nilfourier/errors.hpp"

namespace nilfourier {

namespace {

// pivoted elimination rank with a relative tolerance
std::size_t numeric_rank(std::vector<std::vector<double>> rows, double tol = 1e-8) {
    if (rows.empty()) return 0;
    const std::size_t m = rows.size(), n = rows[0].size();
    double scale = 0;
    for (auto& r : rows)
        for (double v : r) scale = std::max(scale, std::fabs(v));
    if (scale == 0) return 0;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < n && rank < m; ++col) {
        std::size_t best = rank;
        for (std::size_t i = rank; i < m; ++i)
            if (std::fabs(rows[i][col]) > std::fabs(rows[best][col])) best = i;
        if (std::fabs(rows[best][col]) <= tol * scale) continue;
        std::swap(rows[best], rows[rank]);
        for (std::size_t i = rank + 1; i < m; ++i) {
            double f = rows[i][col] / rows[rank][col];
            for (std::size_t j = col; j < n; ++j) rows[i][j] -= f * rows[rank][j];
        }
        ++rank;
    }
    return rank;
}

bool lex_less(const std::vector<Rat>& a, const std::vector<Rat>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
}

// Representative of {eps, -eps, eps^-1, -eps^-1}: smallest coordinate
// sup-norm, then first nonzero log entry negative, then lex order.
FieldElement canonical_unit(const FieldElement& eps, const ArchEmbedding& emb) {
    auto supnorm = [](const FieldElement& x) {
        Rat m = 0;
        for (const auto& c : x.coords) m = std::max(m, abs(c));
        return m;
    };
    FieldElement u = eps, v = eps.inverse();
    Rat su = supnorm(u), sv = supnorm(v);
    if (sv < su) {
        u = v;
    } else if (su == sv) {
        std::vector<double> w = emb.log_vector(u);
        for (double lg : w) {
            if (std::fabs(lg) < 1e-9) continue;
            if (lg > 0) u = v;
            break;
        }
    }
    FieldElement nu = -u;
    return lex_less(nu.coords, u.coords) ? nu : u;
}

// Fundamental Pell solution p^2 - d q^2 = +-1 by the continued fraction of sqrt(d).
std::pair<Int, Int> pell_fundamental(const Int& d) {
    Int a0 = isqrt(d);
    Int m = 0, den = 1, a = a0;
    Int pm1 = 1, p0 = a0, qm1 = 0, q0 = 1;
    while (p0 * p0 - d * q0 * q0 != 1 && p0 * p0 - d * q0 * q0 != -1) {
        m = den * a - m;
        den = (d - m * m) / den;
        a = (a0 + m) / den;
        Int p1 = a * p0 + pm1, q1 = a * q0 + qm1;
        pm1 = p0;
        p0 = p1;
        qm1 = q0;
        q0 = q1;
    }
    return {p0, q0};
}

std::vector<double> full_logs(const ArchEmbedding& emb, const FieldElement& x) {
    auto vals = emb(x);
    std::vector<double> out(vals.size());
    for (std::size_t i = 0; i < vals.size(); ++i) out[i] = std::log(std::abs(vals[i]));
    return out;
}

FieldElement unit_power(const FieldElement& eps, long e) {
    if (e >= 0) return eps.pow(static_cast<unsigned>(e));
    return eps.inverse().pow(static_cast<unsigned>(-e));
}

// max over integral z with a z in R_N of |z|_inf (exact sweep over a z)
Int max_preimage_coord(const FieldElement& a, long N) {
    const std::size_t D = a.field->D;
    QMat Ainv = embed_matrix(a).inverse();
    std::vector<long> w(D, -N);
    Int best = 0;
    while (true) {
        bool allzero = std::all_of(w.begin(), w.end(), [](long v) { return v == 0; });
        if (!allzero) {
            Int cur = 0;
            bool integral = true;
            for (std::size_t i = 0; i < D && integral; ++i) {
                Rat zi = 0;
                for (std::size_t j = 0; j < D; ++j) zi += Rat(w[j]) * Ainv(j, i);
                if (!is_integer(zi))
                    integral = false;
                else
                    cur = std::max(cur, abs(num(zi)));
            }
            if (integral && cur > best) best = cur;
        }
        std::size_t k = 0;
        while (k < D && w[k] == N) w[k++] = -N;
        if (k == D) break;
        ++w[k];
    }
    return best;
}

} // namespace

ArchEmbedding ArchEmbedding::compute(const FieldPtr& f) {
    ArchEmbedding emb;
    emb.field = f;
    const std::size_t D = f->D;
    if (D == 1) {
        emb.gamma = FieldElement::one(f);
        emb.r1 = 1;
        emb.r2 = 0;
        emb.roots = {std::complex<double>(to_double(Rat(f->one_coords[0])), 0.0)};
        emb.ginv = QMat::identity(1);
        return emb;
    }
    FieldElement gamma;
    bool found = false;
    for (long t = 0; t < 100 && !found; ++t) {
        std::vector<Rat> c(D, Rat(0));
        Rat pw = 1;
        for (std::size_t i = 1; i < D; ++i) {
            c[i] = pw;
            pw *= t;
        }
        FieldElement cand(f, c);
        if (min_poly(cand).degree() == D) {
            gamma = cand;
            found = true;
        }
    }
    if (!found) throw unsupported_error("no primitive element found for " + f->label);
    emb.gamma = gamma;

    auto ev = eigen_data(gamma, 1e-11);
    std::size_t i = 0;
    while (i < D) {
        if (ev[i].is_real) {
            ++emb.r1;
            emb.roots.push_back(ev[i].value);
            ++i;
        } else {
            ++emb.r2;
            emb.roots.push_back(ev[i].value);
            i += 2;
        }
    }
    // real embeddings largest-root first
    std::reverse(emb.roots.begin(), emb.roots.begin() + emb.r1);

    QMat G(D, D);
    FieldElement p = FieldElement::one(f);
    for (std::size_t k = 0; k < D; ++k) {
        for (std::size_t j = 0; j < D; ++j) G(k, j) = p.coords[j];
        p = p * gamma;
    }
    emb.ginv = G.inverse();
    return emb;
}

std::vector<std::complex<double>> ArchEmbedding::operator()(const FieldElement& x) const {
    const std::size_t D = field->D;
    std::vector<Rat> q(D, Rat(0));
    for (std::size_t j = 0; j < D; ++j)
        for (std::size_t i = 0; i < D; ++i) q[j] += x.coords[i] * ginv(i, j);
    std::vector<std::complex<double>> out;
    out.reserve(roots.size());
    for (const auto& g : roots) {
        std::complex<double> v = 0;
        for (std::size_t k = D; k-- > 0;) v = v * g + to_double(q[k]);
        out.push_back(v);
    }
    return out;
}

std::vector<double> ArchEmbedding::log_vector(const FieldElement& x) const {
    auto vals = (*this)(x);
    std::size_t r = r1 + r2 - 1;
    std::vector<double> w(r);
    for (std::size_t i = 0; i < r; ++i) w[i] = std::log(std::abs(vals[i]));
    return w;
}

UnitSystem find_units(const FieldPtr& field, long height) {
    if (height < 1) throw precondition_error("height must be >= 1");
    UnitSystem S;
    S.field = field;
    S.embedding = ArchEmbedding::compute(field);
    S.rank = S.embedding.r1 + S.embedding.r2 - 1;
    if (S.rank == 0) {
        S.units = {FieldElement::one(field), -FieldElement::one(field)};
        S.log_vectors = {{}, {}};
        S.complete = true;
        return S;
    }

    auto try_add = [&](const FieldElement& cand) {
        if (S.units.size() == S.rank) return;
        std::vector<double> w = S.embedding.log_vector(cand);
        bool torsion = std::all_of(w.begin(), w.end(), [](double v) { return std::fabs(v) < 1e-9; });
        if (torsion) return;
        auto rows = S.log_vectors;
        rows.push_back(w);
        if (numeric_rank(rows) != rows.size()) return;
        FieldElement u = canonical_unit(cand, S.embedding);
        S.units.push_back(u);
        S.log_vectors.push_back(S.embedding.log_vector(u));
    };

    const auto& poly = field->defining_poly;
    if (field->D == 2 && poly && poly->degree() == 2 && poly->c[2] == 1 && poly->c[1] == 0 &&
        poly->c[0] < 0 && !is_square(-num(poly->c[0]))) {
        // real quadratic power basis t^2 - d: continued fractions
        auto [p, q] = pell_fundamental(-num(poly->c[0]));
        if (p <= height && q <= height) {
            std::vector<Int> c = {p, q};
            try_add(FieldElement::from_ints(field, c));
        }
        S.complete = S.units.size() == S.rank;
        return S;
    }

    const std::size_t D = field->D;
    for (long h = 1; h <= height && S.units.size() < S.rank; ++h) {
        std::vector<long> v(D, -h);
        while (true) {
            bool on_shell = std::any_of(v.begin(), v.end(), [&](long x) { return x == h || x == -h; });
            bool zero = std::all_of(v.begin(), v.end(), [](long x) { return x == 0; });
            if (on_shell && !zero) {
                std::vector<Int> c(v.begin(), v.end());
                FieldElement cand = FieldElement::from_ints(field, c);
                Rat nrm = knorm(cand);
                if (nrm == 1 || nrm == -1) try_add(cand);
            }
            if (S.units.size() == S.rank) break;
            std::size_t k = 0;
            while (k < D && v[k] == h) v[k++] = -h;
            if (k == D) break;
            ++v[k];
        }
    }
    S.complete = S.units.size() == S.rank;
    return S;
}

RegularizeResult regularize(const FieldElement& a, const UnitSystem& system) {
    if (a.is_zero()) throw precondition_error("cannot regularize zero");
    if (!system.complete) throw precondition_error("unit system incomplete: regularization unavailable");
    const std::size_t D = a.field->D;
    const std::size_t r = system.rank;
    const ArchEmbedding& emb = system.embedding;
    const double absN = std::fabs(to_double(knorm(a)));
    const double tau = std::log(absN) / static_cast<double>(D);

    std::vector<long> exps(r, 0);
    if (r > 0) {
        std::vector<double> La = full_logs(emb, a);
        std::vector<std::vector<double>> Lu;
        for (const auto& u : system.units) Lu.push_back(full_logs(emb, u));

        Eigen::MatrixXd M(r, r);
        Eigen::VectorXd rhs(r);
        for (std::size_t i = 0; i < r; ++i) {
            rhs(i) = tau - La[i];
            for (std::size_t j = 0; j < r; ++j) M(i, j) = Lu[j][i];
        }
        Eigen::VectorXd x = M.fullPivLu().solve(rhs);

        const std::size_t s = emb.r1 + emb.r2;
        auto spread = [&](const std::vector<long>& e) {
            double worst = 0;
            for (std::size_t i = 0; i < s; ++i) {
                double v = La[i];
                for (std::size_t j = 0; j < r; ++j) v += static_cast<double>(e[j]) * Lu[j][i];
                worst = std::max(worst, std::fabs(v - tau));
            }
            return worst;
        };

        std::vector<long> base(r);
        for (std::size_t j = 0; j < r; ++j) base[j] = std::lround(x(j));
        std::vector<long> best = base;
        double best_spread = spread(base);
        std::vector<long> delta(r, -1);
        while (true) {
            std::vector<long> e(r);
            for (std::size_t j = 0; j < r; ++j) e[j] = base[j] + delta[j];
            double sp = spread(e);
            if (sp < best_spread - 1e-12) {
                best_spread = sp;
                best = e;
            } else if (sp < best_spread + 1e-12 &&
                       std::lexicographical_compare(e.begin(), e.end(), best.begin(), best.end())) {
                best = e;
            }
            std::size_t k = 0;
            while (k < r && delta[k] == 1) delta[k++] = -1;
            if (k == r) break;
            ++delta[k];
        }
        exps = best;
    }

    FieldElement eps = FieldElement::one(a.field);
    for (std::size_t j = 0; j < r; ++j) eps = eps * unit_power(system.units[j], exps[j]);
    FieldElement ra = eps * a;

    double achieved = 0;
    if (D <= 2) {
        for (long N : {10L, 40L, 160L}) {
            Int mz = max_preimage_coord(ra, N);
            double C = to_double(Rat(mz)) * std::pow(absN, 1.0 / static_cast<double>(D)) /
                       static_cast<double>(N);
            achieved = std::max(achieved, C);
        }
    } else {
        // real relaxation: an N-free upper bound on the same constant
        QMat Ainv = embed_matrix(ra).inverse();
        double worst = 0;
        for (std::size_t i = 0; i < D; ++i) {
            double s = 0;
            for (std::size_t j = 0; j < D; ++j) s += std::fabs(to_double(Ainv(j, i)));
            worst = std::max(worst, s);
        }
        achieved = worst * std::pow(absN, 1.0 / static_cast<double>(D));
    }
    return {eps, ra, achieved};
}

bool regularity_check(const FieldElement& a, double C, long N) {
    if (a.is_zero()) throw precondition_error("element must be nonzero");
    if (N < 1) throw precondition_error("N must be >= 1");
    const std::size_t D = a.field->D;
    const double absN = std::fabs(to_double(knorm(a)));
    double bound = C * std::pow(absN, -1.0 / static_cast<double>(D)) * static_cast<double>(N);
    Int mz = max_preimage_coord(a, N);
    return to_double(Rat(mz)) <= bound + 1e-9;
}

} // namespace nilfourier

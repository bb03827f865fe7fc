#include "ope/liesuper.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

#include "ope/presentation.hpp"  // linsolve

namespace ope {

namespace {
Scalar dot(const Vec& a, const Vec& b) {
    Scalar s(0);
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}
}  // namespace

mpq_class LieSuper::sdim_num() const {
    mpq_class s = 0;
    for (auto p : parities) s += (p == Parity::even) ? 1 : -1;
    return s;
}

Vec LieSuper::basis(size_t i) const {
    Vec v = zero();
    v[i] = Scalar(1);
    return v;
}

bool LieSuper::is_zero_vec(const Vec& v) const {
    return std::all_of(v.begin(), v.end(), [](const Scalar& c) { return c.is_zero(); });
}

Parity LieSuper::parity_of(const Vec& v) const {
    std::optional<Parity> p;
    for (size_t i = 0; i < v.size(); ++i) {
        if (v[i].is_zero()) continue;
        if (!p)
            p = parities[i];
        else if (*p != parities[i])
            throw EngineError("inhomogeneous vector in " + name);
    }
    return p.value_or(Parity::even);
}

Vec LieSuper::bracket(const Vec& a, const Vec& b) const {
    Vec out = zero();
    for (size_t i = 0; i < dim(); ++i) {
        if (a[i].is_zero()) continue;
        for (size_t j = 0; j < dim(); ++j) {
            if (b[j].is_zero()) continue;
            const Vec& c = bk[i][j];
            Scalar f = a[i] * b[j];
            for (size_t k = 0; k < dim(); ++k)
                if (!c[k].is_zero()) out[k] += f * c[k];
        }
    }
    return out;
}

Scalar LieSuper::form(const Vec& a, const Vec& b) const {
    Scalar s(0);
    for (size_t i = 0; i < dim(); ++i) {
        if (a[i].is_zero()) continue;
        for (size_t j = 0; j < dim(); ++j)
            if (!b[j].is_zero() && !gram[i][j].is_zero()) s += a[i] * b[j] * gram[i][j];
    }
    return s;
}

std::vector<Vec> LieSuper::ad_matrix(const Vec& a) const {
    std::vector<Vec> cols;
    cols.reserve(dim());
    for (size_t i = 0; i < dim(); ++i) cols.push_back(bracket(a, basis(i)));
    return cols;
}

void LieSuper::validate() const {
    auto sgn = [&](size_t i, size_t j) {
        return parities[i] == Parity::odd && parities[j] == Parity::odd;
    };
    for (size_t i = 0; i < dim(); ++i) {
        for (size_t j = 0; j < dim(); ++j) {
            // super anticommutativity
            Vec lhs = bk[i][j];
            Vec rhs = bk[j][i];
            for (size_t k = 0; k < dim(); ++k) {
                Scalar want = sgn(i, j) ? rhs[k] : -rhs[k];
                if (!(lhs[k] == want))
                    throw EngineError(name + ": anticommutativity fails at (" +
                                      basis_names[i] + "," + basis_names[j] + ")");
            }
            // parity of the bracket
            if (!is_zero_vec(bk[i][j])) {
                Parity pb = parity_of(bk[i][j]);
                if (pb != (parities[i] ^ parities[j]))
                    throw EngineError(name + ": bracket parity fails");
            }
            // form supersymmetry and evenness
            Scalar fij = gram[i][j], fji = gram[j][i];
            if (!(fij == (sgn(i, j) ? -fji : fji)))
                throw EngineError(name + ": form not supersymmetric");
            if (parities[i] != parities[j] && !fij.is_zero())
                throw EngineError(name + ": form not even");
        }
    }
    // super Jacobi on all triples
    for (size_t i = 0; i < dim(); ++i)
        for (size_t j = 0; j < dim(); ++j)
            for (size_t k = 0; k < dim(); ++k) {
                Vec lhs = bracket(basis(i), bk[j][k]);
                Vec r1 = bracket(bk[i][j], basis(k));
                Vec r2 = bracket(basis(j), bracket(basis(i), basis(k)));
                Vec want = zero();
                for (size_t t = 0; t < dim(); ++t)
                    want[t] = r1[t] + (sgn(i, j) ? -r2[t] : r2[t]);
                for (size_t t = 0; t < dim(); ++t)
                    if (!(lhs[t] == want[t]))
                        throw EngineError(name + ": Jacobi fails at (" + basis_names[i] + "," +
                                          basis_names[j] + "," + basis_names[k] + ")");
            }
    // invariance ([a,b]|c) = (a|[b,c])
    for (size_t i = 0; i < dim(); ++i)
        for (size_t j = 0; j < dim(); ++j)
            for (size_t k = 0; k < dim(); ++k) {
                Scalar lhs = form(bk[i][j], basis(k));
                Scalar rhs = form(basis(i), bk[j][k]);
                if (!(lhs == rhs))
                    throw EngineError(name + ": form not invariant at (" + basis_names[i] +
                                      "," + basis_names[j] + "," + basis_names[k] + ")");
            }
}

std::vector<mpq_class> LieSuper::grading() const {
    if (x.empty()) throw EngineError(name + ": no grading element x installed");
    std::vector<mpq_class> deg(dim());
    for (size_t i = 0; i < dim(); ++i) {
        Vec w = bracket(x, basis(i));
        // must be a rational multiple of basis(i)
        Scalar coeff = w[i];
        for (size_t k = 0; k < dim(); ++k)
            if (k != i && !w[k].is_zero())
                throw EngineError(name + ": ad x not diagonal on basis");
        if (coeff.is_zero())
            deg[i] = 0;
        else {
            GaussQ g = coeff.constant_value();
            if (g.im != 0) throw EngineError(name + ": non-rational grading");
            deg[i] = g.re;
        }
    }
    return deg;
}

std::vector<Vec> LieSuper::dual_basis(const std::vector<Vec>& vs) const {
    // w_i with (w_i | vs_j) = delta_ij, solved inside span(vs)
    size_t n = vs.size();
    std::vector<Vec> out;
    for (size_t i = 0; i < n; ++i) {
        std::vector<std::vector<Scalar>> M(n, std::vector<Scalar>(n));
        std::vector<Scalar> rhs(n, Scalar(0));
        for (size_t r = 0; r < n; ++r)
            for (size_t c = 0; c < n; ++c) M[r][c] = form(vs[c], vs[r]);
        rhs[i] = Scalar(1);
        auto sol = linsolve(M, rhs);
        if (!sol.consistent) throw EngineError(name + ": degenerate form on span");
        Vec w = zero();
        for (size_t c = 0; c < n; ++c)
            for (size_t k = 0; k < dim(); ++k) w[k] += sol.particular[c] * vs[c][k];
        out.push_back(std::move(w));
    }
    return out;
}

Scalar LieSuper::dual_coxeter() const {
    std::vector<Vec> all;
    for (size_t i = 0; i < dim(); ++i) all.push_back(basis(i));
    std::vector<Vec> dual = dual_basis(all);
    // C(a) = sum_i [u_i, [u^i, a]]; h_vee = eigenvalue of C/2
    std::optional<Scalar> h;
    for (size_t j = 0; j < dim(); ++j) {
        Vec a = basis(j);
        Vec c = zero();
        for (size_t i = 0; i < dim(); ++i) {
            Vec t = bracket(all[i], bracket(dual[i], a));
            for (size_t k = 0; k < dim(); ++k) c[k] += t[k];
        }
        // c must be (2 h_vee) * a
        Scalar cand = c[j] * Scalar::rational(1, 2);
        for (size_t k = 0; k < dim(); ++k)
            if (k != j && !c[k].is_zero())
                throw EngineError(name + ": Casimir not diagonal on basis");
        if (is_zero_vec(c)) continue;  // no constraint from central directions
        if (!h)
            h = cand;
        else if (!(*h == cand))
            throw EngineError(name + ": Casimir eigenvalue not constant");
    }
    return h.value_or(Scalar(0));
}

Scalar LieSuper::supertrace_form(const std::vector<Vec>& span_vecs, const Vec& a,
                                 const Vec& b) const {
    Scalar s(0);
    for (const auto& m : span_vecs) {
        Vec t = bracket(a, bracket(b, m));
        auto coords = in_span_coords(span_vecs, t);
        if (!coords)
            throw EngineError(name + ": supertrace span not invariant under ad a ad b");
        size_t idx = &m - &span_vecs[0];
        Scalar diag = (*coords)[idx];
        if (parity_of(m) == Parity::odd) diag = -diag;
        s += diag;
    }
    return s;
}

Scalar LieSuper::kappa_g(const Vec& a, const Vec& b) const {
    std::vector<Vec> all;
    for (size_t i = 0; i < dim(); ++i) all.push_back(basis(i));
    return supertrace_form(all, a, b);
}

std::vector<Vec> LieSuper::centralizer(const Vec& v) const {
    // kernel of ad v
    std::vector<std::vector<Scalar>> M(dim(), std::vector<Scalar>(dim(), Scalar(0)));
    for (size_t i = 0; i < dim(); ++i) {
        Vec c = bracket(v, basis(i));
        for (size_t r = 0; r < dim(); ++r) M[r][i] = c[r];
    }
    auto sol = linsolve(M, std::vector<Scalar>(dim(), Scalar(0)));
    return sol.kernel;
}

std::vector<Vec> LieSuper::graded_piece(const mpq_class& d) const {
    auto deg = grading();
    std::vector<Vec> out;
    for (size_t i = 0; i < dim(); ++i)
        if (deg[i] == d) out.push_back(basis(i));
    return out;
}

Vec LieSuper::scale(const Vec& v, const Scalar& c) const {
    Vec out = v;
    for (auto& e : out) e *= c;
    return out;
}

Vec LieSuper::add(const Vec& a, const Vec& b) const {
    Vec out = a;
    for (size_t i = 0; i < b.size(); ++i) out[i] += b[i];
    return out;
}

Vec LieSuper::sub(const Vec& a, const Vec& b) const {
    Vec out = a;
    for (size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
    return out;
}

// ---- subspace helpers ----

Subspace echelonize(const LieSuper& g, const std::vector<Vec>& vs) {
    (void)g;
    Subspace s;
    std::vector<Vec> rows = vs;
    size_t cols = rows.empty() ? 0 : rows[0].size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows.size(); ++c) {
        size_t pr = r;
        while (pr < rows.size() && rows[pr][c].is_zero()) ++pr;
        if (pr == rows.size()) continue;
        std::swap(rows[pr], rows[r]);
        Scalar inv = rows[r][c].inverse();
        for (auto& e : rows[r]) e *= inv;
        for (size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c].is_zero()) continue;
            Scalar f = rows[i][c];
            for (size_t j = 0; j < cols; ++j) rows[i][j] -= f * rows[r][j];
        }
        ++r;
    }
    rows.resize(r);
    s.span = std::move(rows);
    return s;
}

std::optional<Vec> in_span_coords(const std::vector<Vec>& vs, const Vec& target) {
    size_t n = vs.size();
    size_t d = target.size();
    std::vector<std::vector<Scalar>> M(d, std::vector<Scalar>(n, Scalar(0)));
    for (size_t j = 0; j < n; ++j)
        for (size_t r = 0; r < d; ++r) M[r][j] = vs[j][r];
    auto sol = linsolve(M, target);
    if (!sol.consistent) return std::nullopt;
    return Vec(sol.particular.begin(), sol.particular.end());
}

bool subspace_contains(const Subspace& s, const Vec& v) {
    return in_span_coords(s.span, v).has_value();
}

std::vector<Vec> intersect(const LieSuper& g, const std::vector<Vec>& a,
                           const std::vector<Vec>& b) {
    // solve sum x_i a_i - sum y_j b_j = 0
    size_t d = g.dim();
    size_t n = a.size() + b.size();
    std::vector<std::vector<Scalar>> M(d, std::vector<Scalar>(n, Scalar(0)));
    for (size_t j = 0; j < a.size(); ++j)
        for (size_t r = 0; r < d; ++r) M[r][j] = a[j][r];
    for (size_t j = 0; j < b.size(); ++j)
        for (size_t r = 0; r < d; ++r) M[r][a.size() + j] = -b[j][r];
    auto sol = linsolve(M, std::vector<Scalar>(d, Scalar(0)));
    std::vector<Vec> out;
    for (const auto& kv : sol.kernel) {
        Vec v = g.zero();
        for (size_t j = 0; j < a.size(); ++j)
            for (size_t r = 0; r < d; ++r) v[r] += kv[j] * a[j][r];
        if (!g.is_zero_vec(v)) out.push_back(v);
    }
    return echelonize(g, out).span;
}

}  // namespace ope

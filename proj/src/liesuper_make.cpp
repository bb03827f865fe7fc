#include <algorithm>
#include <cassert>
#include <sstream>

#include "ope/liesuper.hpp"
#include "ope/presentation.hpp"  // linsolve

namespace ope {

namespace {

using Mat = std::vector<Vec>;  // rows

Mat zero_mat(size_t n) { return Mat(n, Vec(n, Scalar(0))); }

Mat unit(size_t n, size_t i, size_t j, Scalar c = Scalar(1)) {
    Mat m = zero_mat(n);
    m[i][j] = std::move(c);
    return m;
}

Mat mat_add(const Mat& a, const Mat& b) {
    Mat r = a;
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a.size(); ++j) r[i][j] += b[i][j];
    return r;
}

Mat mat_scale(const Mat& a, const Scalar& c) {
    Mat r = a;
    for (auto& row : r)
        for (auto& e : row) e *= c;
    return r;
}

Mat mat_mul(const Mat& a, const Mat& b) {
    size_t n = a.size();
    Mat r = zero_mat(n);
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k) {
            if (a[i][k].is_zero()) continue;
            for (size_t j = 0; j < n; ++j)
                if (!b[k][j].is_zero()) r[i][j] += a[i][k] * b[k][j];
        }
    return r;
}

Vec flatten(const Mat& m) {
    Vec v;
    v.reserve(m.size() * m.size());
    for (auto& row : m)
        for (auto& e : row) v.push_back(e);
    return v;
}

// Build a LieSuper from homogeneous basis matrices inside End(C^{N}) with a
// parity assignment on the N indices; bracket = super commutator, form =
// supertrace str(AB) (possibly rescaled afterwards).
LieSuper from_matrices(SymtabPtr tab, std::string name,
                       const std::vector<std::string>& names,
                       const std::vector<Parity>& elt_parity, const std::vector<Mat>& mats,
                       const std::vector<Parity>& index_parity) {
    LieSuper g;
    g.tab = std::move(tab);
    g.name = std::move(name);
    g.basis_names = names;
    g.parities = elt_parity;
    size_t n = mats.size();
    std::vector<Vec> flat;
    for (auto& m : mats) flat.push_back(flatten(m));
    auto coords = [&](const Mat& m) -> Vec {
        auto c = in_span_coords(flat, flatten(m));
        if (!c) throw EngineError(g.name + ": bracket leaves the span");
        return *c;
    };
    g.bk.assign(n, std::vector<Vec>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            Mat ab = mat_mul(mats[i], mats[j]);
            Mat ba = mat_mul(mats[j], mats[i]);
            bool sgn = elt_parity[i] == Parity::odd && elt_parity[j] == Parity::odd;
            Mat c = mat_add(ab, mat_scale(ba, Scalar(sgn ? 1 : -1)));
            g.bk[i][j] = coords(c);
        }
    auto str = [&](const Mat& m) {
        Scalar s(0);
        for (size_t i = 0; i < m.size(); ++i)
            s += (index_parity[i] == Parity::even) ? m[i][i] : -m[i][i];
        return s;
    };
    g.gram.assign(n, Vec(n, Scalar(0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) g.gram[i][j] = str(mat_mul(mats[i], mats[j]));
    return g;
}

std::string idx_name(const std::string& stem, size_t i, size_t j) {
    std::ostringstream os;
    os << stem << i << "_" << j;
    return os.str();
}

}  // namespace

// ---- gl / sl / psl ----

LieSuper make_gl(int m, int n, SymtabPtr tab) {
    size_t N = m + n;
    std::vector<Parity> ip(N, Parity::even);
    for (size_t i = m; i < N; ++i) ip[i] = Parity::odd;
    std::vector<std::string> names;
    std::vector<Parity> ep;
    std::vector<Mat> mats;
    for (size_t i = 0; i < N; ++i)
        for (size_t j = 0; j < N; ++j) {
            names.push_back(idx_name("e", i, j));
            ep.push_back(ip[i] ^ ip[j]);
            mats.push_back(unit(N, i, j));
        }
    std::ostringstream nm;
    nm << "gl(" << m << "|" << n << ")";
    LieSuper g = from_matrices(tab, nm.str(), names, ep, mats, ip);
    std::vector<size_t> cart;
    for (size_t i = 0; i < N; ++i) cart.push_back(i * N + i);
    g.cartan = cart;
    return g;
}

namespace {

// subalgebra spanned by matrices inside gl-type index space
LieSuper matrix_subalgebra(SymtabPtr tab, std::string name,
                           const std::vector<std::string>& names,
                           const std::vector<Mat>& mats,
                           const std::vector<Parity>& index_parity) {
    std::vector<Parity> ep;
    for (const auto& m : mats) {
        std::optional<Parity> p;
        for (size_t i = 0; i < m.size(); ++i)
            for (size_t j = 0; j < m.size(); ++j)
                if (!m[i][j].is_zero()) {
                    Parity q = index_parity[i] ^ index_parity[j];
                    if (p && *p != q) throw EngineError(name + ": inhomogeneous basis matrix");
                    p = q;
                }
        ep.push_back(p.value_or(Parity::even));
    }
    return from_matrices(std::move(tab), std::move(name), names, ep, mats, index_parity);
}

void finish_minimal(LieSuper& g, Vec f, Vec Ecand) {
    g.f = std::move(f);
    g.F = g.scale(g.bracket(g.f, g.f), Scalar::rational(-1, 2));
    g.E = std::move(Ecand);
    g.H = g.bracket(g.E, g.F);
    g.x = g.scale(g.H, Scalar::rational(1, 2));
    g.e = g.bracket(g.E, g.f);
    // normalize the form so that (E|F) = 1
    Scalar ef = g.form(g.E, g.F);
    if (ef.is_zero()) throw EngineError(g.name + ": (E|F) = 0");
    Scalar inv = ef.inverse();
    for (auto& row : g.gram)
        for (auto& e : row) e *= inv;
    auto eq = [&](const Vec& a, const Vec& b) { return g.is_zero_vec(g.sub(a, b)); };
    if (!eq(g.bracket(g.H, g.E), g.scale(g.E, Scalar(2))))
        throw EngineError(g.name + ": [H,E] != 2E");
    if (!eq(g.bracket(g.H, g.F), g.scale(g.F, Scalar(-2))))
        throw EngineError(g.name + ": [H,F] != -2F");
    if (!eq(g.bracket(g.e, g.e), g.scale(g.E, Scalar(2))))
        throw EngineError(g.name + ": [e,e] != 2E");
    if (!eq(g.bracket(g.e, g.f), g.scale(g.x, Scalar(-2))))
        throw EngineError(g.name + ": [e,f] != -2x");
    if (!(g.form(g.x, g.x) == Scalar::rational(1, 2)))
        throw EngineError(g.name + ": 2(x|x) != 1");
    if (!eq(g.bracket(g.x, g.f), g.scale(g.f, Scalar::rational(-1, 2))))
        throw EngineError(g.name + ": f not of degree -1/2");
}

}  // namespace

LieSuper make_sl(int m, int n, SymtabPtr tab) {
    LieSuper gl = make_gl(m, n, tab);
    size_t N = m + n;
    auto E = [&](size_t i, size_t j) {
        Vec v(gl.dim(), Scalar(0));
        v[i * N + j] = Scalar(1);
        return v;
    };
    std::vector<Vec> vecs;
    std::vector<std::string> names;
    for (size_t i = 0; i < N; ++i)
        for (size_t j = 0; j < N; ++j)
            if (i != j) {
                vecs.push_back(E(i, j));
                names.push_back(idx_name("e", i, j));
            }
    auto ipar = [&](size_t i) { return i < (size_t)m ? 0 : 1; };
    for (size_t i = 0; i + 1 < N; ++i) {
        // h_i = e_ii - (-1)^{p_i + p_{i+1}} e_{i+1,i+1} (supertraceless)
        Scalar c((ipar(i) + ipar(i + 1)) % 2 ? 1 : -1);
        Vec v = gl.add(E(i, i), gl.scale(E(i + 1, i + 1), c));
        vecs.push_back(v);
        names.push_back("h" + std::to_string(i));
    }
    // structure constants in the sl basis
    LieSuper g;
    g.tab = tab;
    std::ostringstream nm;
    nm << "sl(" << m << "|" << n << ")";
    g.name = nm.str();
    g.basis_names = names;
    size_t d = vecs.size();
    for (auto& v : vecs) g.parities.push_back(gl.parity_of(v));
    g.bk.assign(d, std::vector<Vec>(d));
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j) {
            auto c = in_span_coords(vecs, gl.bracket(vecs[i], vecs[j]));
            if (!c) throw EngineError(g.name + ": not closed");
            g.bk[i][j] = *c;
        }
    g.gram.assign(d, Vec(d, Scalar(0)));
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j) g.gram[i][j] = gl.form(vecs[i], vecs[j]);
    for (size_t i = 0; i < d; ++i)
        if (names[i].substr(0, 1) == "h") g.cartan.push_back(i);
    // minimal pair: F = e10 (we use 0-based indices, so E = e01, F = e10),
    // f = e_{1,first odd} - e_{first odd,0}
    auto find = [&](const std::string& s) {
        for (size_t i = 0; i < d; ++i)
            if (names[i] == s) return i;
        throw EngineError("missing " + s);
    };
    Vec f = g.zero();
    f[find(idx_name("e", 1, m))] = Scalar(1);
    f[find(idx_name("e", m, 0))] = Scalar(-1);
    Vec Ec = g.basis(find(idx_name("e", 0, 1)));
    finish_minimal(g, f, Ec);
    return g;
}

LieSuper make_psl(int m, SymtabPtr tab) {
    LieSuper sl = make_sl(m, m, tab);
    // center: identity matrix expressed in the h-basis of sl(m|m)
    // I = sum e_ii: solve in the sl basis
    LieSuper gl = make_gl(m, m, tab);
    size_t N = 2 * m;
    Vec id_gl(gl.dim(), Scalar(0));
    for (size_t i = 0; i < N; ++i) id_gl[i * N + i] = Scalar(1);
    // express sl basis vectors in gl, then solve for I
    // rebuild the sl basis vectors as in make_sl
    auto E = [&](size_t i, size_t j) {
        Vec v(gl.dim(), Scalar(0));
        v[i * N + j] = Scalar(1);
        return v;
    };
    std::vector<Vec> vecs;
    for (size_t i = 0; i < N; ++i)
        for (size_t j = 0; j < N; ++j)
            if (i != j) vecs.push_back(E(i, j));
    auto ipar = [&](size_t i) { return i < (size_t)m ? 0 : 1; };
    for (size_t i = 0; i + 1 < N; ++i) {
        Scalar c((ipar(i) + ipar(i + 1)) % 2 ? 1 : -1);
        vecs.push_back(gl.add(E(i, i), gl.scale(E(i + 1, i + 1), c)));
    }
    auto icoords = in_span_coords(vecs, id_gl);
    if (!icoords) throw EngineError("psl: center not in sl");
    Vec center = *icoords;
    // drop one basis direction with a nonzero center coordinate
    size_t drop = 0;
    for (size_t i = 0; i < center.size(); ++i)
        if (!center[i].is_zero()) drop = i;
    LieSuper g;
    g.tab = tab;
    g.name = "psl(" + std::to_string(m) + "|" + std::to_string(m) + ")";
    std::vector<size_t> keep;
    for (size_t i = 0; i < sl.dim(); ++i)
        if (i != drop) keep.push_back(i);
    for (size_t i : keep) {
        g.basis_names.push_back(sl.basis_names[i]);
        g.parities.push_back(sl.parities[i]);
    }
    size_t d = keep.size();
    // quotient structure constants: express [b_i,b_j] in (kept basis + center)
    std::vector<Vec> span;
    for (size_t i : keep) span.push_back(sl.basis(i));
    span.push_back(center);
    g.bk.assign(d, std::vector<Vec>(d));
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j) {
            Vec br = sl.bracket(sl.basis(keep[i]), sl.basis(keep[j]));
            auto c = in_span_coords(span, br);
            if (!c) throw EngineError("psl: bracket not in span");
            Vec red(c->begin(), c->begin() + d);
            g.bk[i][j] = red;
        }
    g.gram.assign(d, Vec(d, Scalar(0)));
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j)
            g.gram[i][j] = sl.form(sl.basis(keep[i]), sl.basis(keep[j]));
    for (size_t i = 0; i < d; ++i)
        if (g.basis_names[i].substr(0, 1) == "h") g.cartan.push_back(i);
    auto project = [&](const Vec& v) {
        Vec out(d, Scalar(0));
        auto c = in_span_coords(span, v);
        if (!c) throw EngineError("psl: projection failed");
        for (size_t i = 0; i < d; ++i) out[i] = (*c)[i];
        return out;
    };
    finish_minimal(g, project(sl.f), project(sl.E));
    return g;
}

// ---- plain Lie algebras for free-field realizations ----

LieSuper make_gln(int n, SymtabPtr tab) {
    LieSuper g = make_gl(n, 0, tab);
    return g;
}

LieSuper make_sl2(SymtabPtr tab) {
    size_t N = 2;
    std::vector<Parity> ip(N, Parity::even);
    std::vector<Mat> mats = {unit(N, 0, 1), mat_add(unit(N, 0, 0), mat_scale(unit(N, 1, 1), Scalar(-1))),
                             unit(N, 1, 0)};
    std::vector<std::string> names = {"E", "H", "F"};
    LieSuper g = matrix_subalgebra(tab, "sl(2)", names, mats, ip);
    g.cartan = {1};
    return g;
}

namespace {

// so(n) split-form matrices; for odd n index 0 is the extra one, pairs are
// (base+i, base+i+k) for i in [0,k)
std::vector<std::pair<std::string, Mat>> so_matrices(size_t N, size_t base, size_t n) {
    size_t k = n / 2;
    bool odd = n % 2;
    size_t off = base + (odd ? 1 : 0);
    std::vector<std::pair<std::string, Mat>> out;
    auto e = [&](size_t i, size_t j) { return unit(N, i, j); };
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j) {
            if (i < j)
                out.push_back({idx_name("soB", i, j),
                               mat_add(e(off + i, off + j + k),
                                       mat_scale(e(off + j, off + i + k), Scalar(-1)))});
            if (i < j)
                out.push_back({idx_name("soC", i, j),
                               mat_add(e(off + i + k, off + j),
                                       mat_scale(e(off + j + k, off + i), Scalar(-1)))});
            out.push_back({idx_name("soA", i, j),
                           mat_add(e(off + i, off + j),
                                   mat_scale(e(off + j + k, off + i + k), Scalar(-1)))});
        }
    if (odd)
        for (size_t j = 0; j < k; ++j) {
            out.push_back({idx_name("soU", 0, j),
                           mat_add(e(base, off + j), mat_scale(e(off + j + k, base), Scalar(-1)))});
            out.push_back({idx_name("soV", 0, j),
                           mat_add(e(base, off + j + k), mat_scale(e(off + j, base), Scalar(-1)))});
        }
    return out;
}

// sp(2n) split-form matrices on indices base..base+2n-1, pairs (i, i+n)
std::vector<std::pair<std::string, Mat>> sp_matrices(size_t N, size_t base, size_t n) {
    std::vector<std::pair<std::string, Mat>> out;
    auto e = [&](size_t i, size_t j) { return unit(N, i, j); };
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            if (i <= j)
                out.push_back({idx_name("spB", i, j),
                               mat_add(e(base + i, base + j + n), e(base + j, base + i + n))});
            if (i <= j)
                out.push_back({idx_name("spC", i, j),
                               mat_add(e(base + i + n, base + j), e(base + j + n, base + i))});
            out.push_back({idx_name("spA", i, j),
                           mat_add(e(base + i, base + j),
                                   mat_scale(e(base + j + n, base + i + n), Scalar(-1)))});
        }
    return out;
}

}  // namespace

LieSuper make_so(int n, SymtabPtr tab) {
    size_t N = n;
    std::vector<Parity> ip(N, Parity::even);
    auto ms = so_matrices(N, 0, n);
    std::vector<std::string> names;
    std::vector<Mat> mats;
    for (auto& [nm, m] : ms) {
        names.push_back(nm);
        mats.push_back(m);
    }
    LieSuper g = matrix_subalgebra(tab, "so(" + std::to_string(n) + ")", names, mats, ip);
    // convention: (a|b) = 1/2 tr(ab)
    for (auto& row : g.gram)
        for (auto& e : row) e *= Scalar::rational(1, 2);
    return g;
}

LieSuper make_sp(int n, SymtabPtr tab) {
    if (n % 2) throw EngineError("sp(n) needs even n");
    size_t N = n;
    std::vector<Parity> ip(N, Parity::even);
    auto ms = sp_matrices(N, 0, n / 2);
    std::vector<std::string> names;
    std::vector<Mat> mats;
    for (auto& [nm, m] : ms) {
        names.push_back(nm);
        mats.push_back(m);
    }
    LieSuper g = matrix_subalgebra(tab, "sp(" + std::to_string(n) + ")", names, mats, ip);
    for (auto& row : g.gram)
        for (auto& e : row) e *= Scalar::rational(1, 2);
    return g;
}

LieSuper make_osp_like(int msym, int nsp, Parity sym_par, SymtabPtr tab, std::string name) {
    size_t N = msym + 2 * nsp;
    std::vector<Parity> ip(N, sym_par);
    Parity other = sym_par ^ Parity::odd;
    for (size_t i = msym; i < N; ++i) ip[i] = other;
    // form matrices
    size_t k = msym / 2;
    bool modd = msym % 2;
    Mat G = zero_mat(N);  // only the sym block is used
    if (modd) G[0][0] = Scalar(1);
    size_t off = modd ? 1 : 0;
    for (size_t i = 0; i < k; ++i) {
        G[off + i][off + i + k] = Scalar(1);
        G[off + i + k][off + i] = Scalar(1);
    }
    auto ms = so_matrices(N, 0, msym);
    auto sp = sp_matrices(N, msym, nsp);
    ms.insert(ms.end(), sp.begin(), sp.end());
    // odd part: for s in sym indices, t in sp indices:
    // X = E_{t,s} + Y with Y[s'][t'] = -(-1)^{p_sym} G[s'][s] J[t-msym][t']
    Scalar psign(sym_par == Parity::odd ? -1 : 1);
    for (size_t s = 0; s < (size_t)msym; ++s)
        for (size_t t = msym; t < N; ++t) {
            Mat X = unit(N, t, s);
            size_t tl = t - msym;
            for (size_t s2 = 0; s2 < (size_t)msym; ++s2) {
                if (G[s2][s].is_zero()) continue;
                for (size_t t2 = 0; t2 < 2 * (size_t)nsp; ++t2) {
                    // J[tl][t2]
                    Scalar J(0);
                    if (tl < (size_t)nsp && t2 == tl + nsp) J = Scalar(1);
                    if (tl >= (size_t)nsp && t2 == tl - nsp) J = Scalar(-1);
                    if (J.is_zero()) continue;
                    X[s2][msym + t2] += G[s2][s] * J * psign * Scalar(-1);
                }
            }
            ms.push_back({idx_name("od", s, tl), X});
        }
    std::vector<std::string> names;
    std::vector<Mat> mats;
    for (auto& [nm, m] : ms) {
        names.push_back(nm);
        mats.push_back(m);
    }
    return matrix_subalgebra(std::move(tab), std::move(name), names, mats, ip);
}

LieSuper make_osp(int m, int n2, SymtabPtr tab) {
    if (n2 % 2) throw EngineError("osp(m|n) needs even n");
    std::ostringstream nm;
    nm << "osp(" << m << "|" << n2 << ")";
    LieSuper g = make_osp_like(m, n2 / 2, Parity::even, tab, nm.str());
    size_t k = m / 2;
    bool modd = m % 2;
    auto find = [&](const std::string& s) {
        auto it = std::find(g.basis_names.begin(), g.basis_names.end(), s);
        if (it == g.basis_names.end()) throw EngineError(g.name + ": missing " + s);
        return (size_t)(it - g.basis_names.begin());
    };
    if (m >= 5 && n2 >= 2) {
        // F = -e_{2k,1} + e_{k+1,k} and f per the odd minimal recipe (r = 1);
        // in split so-coordinates (extra index first) this reads:
        // F = -(e_{i+k,j} - e_{j+k,i}) with (i,j) = (k,1) acting on local rows
        // Build F and f directly as matrices and express in the basis.
        size_t N = m + n2;
        size_t off = modd ? 1 : 0;
        auto e = [&](size_t i, size_t j) { return unit(N, i, j); };
        // paper so-indices 1..2k map to off..off+2k-1
        auto soi = [&](size_t i) { return off + i - 1; };
        auto spi = [&](size_t r) { return (size_t)m + r - 1; };  // sp index rbar
        Mat Fm = mat_add(mat_scale(e(soi(2 * k), soi(1)), Scalar(-1)), e(soi(k + 1), soi(k)));
        Mat fm = mat_add(mat_add(e(soi(2 * k), spi(1)), e(spi(1 + n2 / 2), soi(k))),
                         mat_add(e(spi(1), soi(1)), mat_scale(e(soi(k + 1), spi(1 + n2 / 2)),
                                                              Scalar(-1))));
        Mat Em = mat_add(mat_scale(e(soi(1), soi(2 * k)), Scalar(-1)), e(soi(k), soi(k + 1)));
        std::vector<Vec> flat;
        std::vector<Mat> mats;
        for (size_t i = 0; i < g.dim(); ++i) mats.push_back(Mat());
        // rebuild basis mats: easiest is to re-derive from names is overkill;
        // instead solve with the gram-free route: use ad-equations.  Simpler:
        // rebuild the same matrix list used in make_osp_like.
        {
            auto ms = so_matrices(N, 0, m);
            auto sp = sp_matrices(N, m, n2 / 2);
            ms.insert(ms.end(), sp.begin(), sp.end());
            Scalar psign(1);
            Mat G = zero_mat(N);
            if (modd) G[0][0] = Scalar(1);
            for (size_t i = 0; i < k; ++i) {
                G[off + i][off + i + k] = Scalar(1);
                G[off + i + k][off + i] = Scalar(1);
            }
            for (size_t s = 0; s < (size_t)m; ++s)
                for (size_t t = m; t < N; ++t) {
                    Mat X = unit(N, t, s);
                    size_t tl = t - m;
                    for (size_t s2 = 0; s2 < (size_t)m; ++s2) {
                        if (G[s2][s].is_zero()) continue;
                        for (size_t t2 = 0; t2 < (size_t)n2; ++t2) {
                            Scalar J(0);
                            size_t half = n2 / 2;
                            if (tl < half && t2 == tl + half) J = Scalar(1);
                            if (tl >= half && t2 == tl - half) J = Scalar(-1);
                            if (J.is_zero()) continue;
                            X[s2][m + t2] += G[s2][s] * J * psign * Scalar(-1);
                        }
                    }
                    ms.push_back({idx_name("od", s, tl), X});
                }
            for (auto& [nm2, mm] : ms) flat.push_back(flatten(mm));
        }
        auto coords = [&](const Mat& mm) {
            auto c = in_span_coords(flat, flatten(mm));
            if (!c) throw EngineError(g.name + ": element outside the algebra");
            return *c;
        };
        (void)find;
        finish_minimal(g, coords(fm), coords(Em));
    }
    // distinguished Cartan: the soA_ii and spA_ii directions
    for (size_t i = 0; i < g.dim(); ++i) {
        const std::string& s = g.basis_names[i];
        if ((s.substr(0, 3) == "soA" || s.substr(0, 3) == "spA")) {
            size_t us = s.find('_');
            std::string a = s.substr(3, us - 3), b = s.substr(us + 1);
            if (a == b) g.cartan.push_back(i);
        }
    }
    return g;
}

LieSuper make_spo(int m2, int n, SymtabPtr tab) {
    if (m2 != 2) throw EngineError("spo supported only for spo(2|m)");
    std::ostringstream nm;
    nm << "spo(" << m2 << "|" << n << ")";
    LieSuper g = make_osp_like(n, 1, Parity::odd, tab, nm.str());
    g.name = nm.str();
    size_t N = n + 2;
    size_t k = n / 2;
    bool modd = n % 2;
    size_t off = modd ? 1 : 0;
    auto e = [&](size_t i, size_t j) { return unit(N, i, j); };
    auto soi = [&](size_t i) { return off + i - 1; };       // paper so-index 1..2k
    auto spi = [&](size_t r) { return (size_t)n + r - 1; };  // paper sp-index rbar
    // F = -e_{2bar,1bar}; f = e_{2bar,1} + e_{k+1,1bar} + e_{1,1bar} + e_{2bar,k+1}
    // (with the two symplectic coordinates swapped to match this realization's
    // odd-block orientation)
    Mat fm = mat_add(mat_add(e(spi(1), soi(1)), e(soi(k + 1), spi(2))),
                     mat_add(e(soi(1), spi(2)), e(spi(1), soi(k + 1))));
    // with this f, F = -[f,f]/2 = -2 e_{1bar,2bar}, so the matching raising
    // element carries a factor 1/2
    Mat Em = mat_scale(e(spi(2), spi(1)), Scalar::rational(-1, 2));
    // rebuild the basis matrices to take coordinates
    std::vector<Vec> flat;
    {
        auto ms = so_matrices(N, 0, n);
        auto sp = sp_matrices(N, n, 1);
        ms.insert(ms.end(), sp.begin(), sp.end());
        Mat G = zero_mat(N);
        if (modd) G[0][0] = Scalar(1);
        for (size_t i = 0; i < k; ++i) {
            G[off + i][off + i + k] = Scalar(1);
            G[off + i + k][off + i] = Scalar(1);
        }
        Scalar psign(-1);  // sym part odd
        for (size_t s = 0; s < (size_t)n; ++s)
            for (size_t t = n; t < N; ++t) {
                Mat X = unit(N, t, s);
                size_t tl = t - n;
                for (size_t s2 = 0; s2 < (size_t)n; ++s2) {
                    if (G[s2][s].is_zero()) continue;
                    for (size_t t2 = 0; t2 < 2; ++t2) {
                        Scalar J(0);
                        if (tl == 0 && t2 == 1) J = Scalar(1);
                        if (tl == 1 && t2 == 0) J = Scalar(-1);
                        if (J.is_zero()) continue;
                        X[s2][n + t2] += G[s2][s] * J * psign * Scalar(-1);
                    }
                }
                ms.push_back({idx_name("od", s, tl), X});
            }
        for (auto& [nm2, mm] : ms) flat.push_back(flatten(mm));
    }
    auto coords = [&](const Mat& mm) {
        auto c = in_span_coords(flat, flatten(mm));
        if (!c) throw EngineError(g.name + ": element outside the algebra");
        return *c;
    };
    finish_minimal(g, coords(fm), coords(Em));
    for (size_t i = 0; i < g.dim(); ++i) {
        const std::string& s = g.basis_names[i];
        if ((s.substr(0, 3) == "soA" || s.substr(0, 3) == "spA")) {
            size_t us = s.find('_');
            std::string a = s.substr(3, us - 3), b = s.substr(us + 1);
            if (a == b) g.cartan.push_back(i);
        }
    }
    return g;
}

// ---- D(2,1;alpha) ----

LieSuper make_d21(SymtabPtr tab) {
    uint32_t aid = tab->add_param("a");
    Scalar al = Scalar::symbol(tab, aid);
    LieSuper g;
    g.tab = tab;
    g.name = "D(2,1;a)";
    // basis: E1,H1,F1,E2,H2,F2,E3,H3,F3, th_{eps1 eps2 eps3}
    for (int i = 1; i <= 3; ++i) {
        g.basis_names.push_back("E" + std::to_string(i));
        g.basis_names.push_back("H" + std::to_string(i));
        g.basis_names.push_back("F" + std::to_string(i));
        g.parities.insert(g.parities.end(), 3, Parity::even);
    }
    auto theta_index = [&](int e1, int e2, int e3) {
        // e in {+1,-1}
        return 9 + ((1 - e1) / 2) * 4 + ((1 - e2) / 2) * 2 + ((1 - e3) / 2);
    };
    const char* pm[2] = {"p", "m"};
    for (int e1 = 0; e1 < 2; ++e1)
        for (int e2 = 0; e2 < 2; ++e2)
            for (int e3 = 0; e3 < 2; ++e3) {
                g.basis_names.push_back(std::string("th_") + pm[e1] + pm[e2] + pm[e3]);
                g.parities.push_back(Parity::odd);
            }
    size_t d = 17;
    g.bk.assign(d, std::vector<Vec>(d, Vec(d, Scalar(0))));
    g.gram.assign(d, Vec(d, Scalar(0)));
    auto Ei = [&](int i) { return (size_t)(3 * (i - 1)); };
    auto Hi = [&](int i) { return (size_t)(3 * (i - 1) + 1); };
    auto Fi = [&](int i) { return (size_t)(3 * (i - 1) + 2); };
    auto setbk = [&](size_t i, size_t j, const Vec& v) {
        g.bk[i][j] = v;
        bool sgn = g.parities[i] == Parity::odd && g.parities[j] == Parity::odd;
        Vec w = g.scale(v, Scalar(sgn ? 1 : -1));
        g.bk[j][i] = w;
    };
    // sl(2) blocks
    for (int i = 1; i <= 3; ++i) {
        Vec h = g.basis(Hi(i)), e = g.basis(Ei(i)), f = g.basis(Fi(i));
        setbk(Ei(i), Fi(i), h);
        setbk(Hi(i), Ei(i), g.scale(e, Scalar(2)));
        setbk(Hi(i), Fi(i), g.scale(f, Scalar(-2)));
    }
    // action on theta: slot-wise standard representation
    // E: u_- -> u_+, H: u_(+-) -> +-u, F: u_+ -> u_-
    auto eps_of = [&](size_t t, int slot) {
        size_t loc = t - 9;
        int bit = (int)((loc >> (2 - slot)) & 1);  // slot in {0,1,2}
        return bit == 0 ? 1 : -1;
    };
    for (size_t t = 9; t < 17; ++t) {
        for (int i = 1; i <= 3; ++i) {
            int e = eps_of(t, i - 1);
            // H_i
            setbk(Hi(i), t, g.scale(g.basis(t), Scalar(e)));
            // E_i: raises eps -1 -> +1
            if (e == -1) {
                size_t t2 = t - (size_t)(1 << (2 - (i - 1)));
                setbk(Ei(i), t, g.basis(t2));
            } else {
                setbk(Ei(i), t, g.zero());
            }
            // F_i: lowers +1 -> -1
            if (e == 1) {
                size_t t2 = t + (size_t)(1 << (2 - (i - 1)));
                setbk(Fi(i), t, g.basis(t2));
            } else {
                setbk(Fi(i), t, g.zero());
            }
        }
    }
    // odd-odd brackets
    Scalar s1 = (Scalar(1) + al) * Scalar(2);
    Scalar s2 = Scalar(-2);
    Scalar s3 = Scalar(-2) * al;
    auto sform = [&](int a, int b) {  // <u_a, u_b>
        if (a == 1 && b == -1) return Scalar(1);
        if (a == -1 && b == 1) return Scalar(-1);
        return Scalar(0);
    };
    auto pmap = [&](int i, int a, int b) -> Vec {  // p_i(u_a, u_b)
        if (a == 1 && b == 1) return g.basis(Ei(i));
        if (a == -1 && b == -1) return g.scale(g.basis(Fi(i)), Scalar(-1));
        return g.scale(g.basis(Hi(i)), Scalar::rational(-1, 2));
    };
    for (size_t t = 9; t < 17; ++t)
        for (size_t u = 9; u < 17; ++u) {
            int v1 = eps_of(t, 0), v2 = eps_of(t, 1), v3 = eps_of(t, 2);
            int w1 = eps_of(u, 0), w2 = eps_of(u, 1), w3 = eps_of(u, 2);
            Vec out = g.zero();
            out = g.add(out, g.scale(pmap(1, v1, w1), s1 * sform(v2, w2) * sform(v3, w3)));
            out = g.add(out, g.scale(pmap(2, v2, w2), s2 * sform(v1, w1) * sform(v3, w3)));
            out = g.add(out, g.scale(pmap(3, v3, w3), s3 * sform(v1, w1) * sform(v2, w2)));
            g.bk[t][u] = out;
        }
    // form
    Scalar t1(1);
    Scalar t2v = -(Scalar(1) + al);
    Scalar t3v = -(Scalar(1) + al) / al;
    Scalar uu = Scalar(-2) * (Scalar(1) + al);
    Scalar ts[4] = {Scalar(0), t1, t2v, t3v};
    for (int i = 1; i <= 3; ++i) {
        g.gram[Ei(i)][Fi(i)] = ts[i];
        g.gram[Fi(i)][Ei(i)] = ts[i];
        g.gram[Hi(i)][Hi(i)] = ts[i] * Scalar(2);
    }
    for (size_t t = 9; t < 17; ++t)
        for (size_t u = 9; u < 17; ++u) {
            int v1 = eps_of(t, 0), v2 = eps_of(t, 1), v3 = eps_of(t, 2);
            int w1 = eps_of(u, 0), w2 = eps_of(u, 1), w3 = eps_of(u, 2);
            g.gram[t][u] = uu * sform(v1, w1) * sform(v2, w2) * sform(v3, w3);
        }
    g.cartan = {Hi(1), Hi(2), Hi(3)};
    // minimal pair: f = (th_mmm + th_mpp)/sqrt(2(1+a)), E = E1
    uint32_t r2 = tab->add_root("r2", Poly(GaussQ(mpq_class(2))));
    Poly rel = (Poly(GaussQ(1)) + Poly::symbol(aid));
    uint32_t r1a = tab->add_root("r1a", rel);
    Scalar denom = (Scalar::symbol(tab, r2) * Scalar::symbol(tab, r1a)).inverse();
    Vec f = g.add(g.scale(g.basis(theta_index(-1, -1, -1)), denom),
                  g.scale(g.basis(theta_index(-1, 1, 1)), denom));
    finish_minimal(g, f, g.basis(Ei(1)));
    return g;
}

LieSuper add_center(LieSuper g, const std::string& cname) {
    size_t d = g.dim();
    g.name += "+C";
    g.basis_names.push_back(cname);
    g.parities.push_back(Parity::even);
    for (auto& row : g.bk)
        for (auto& v : row) v.push_back(Scalar(0));
    g.bk.push_back(std::vector<Vec>(d + 1, Vec(d + 1, Scalar(0))));
    for (auto& row : g.bk)
        row.resize(d + 1, Vec(d + 1, Scalar(0)));
    for (auto& row : g.gram) row.push_back(Scalar(0));
    g.gram.push_back(Vec(d + 1, Scalar(0)));
    g.gram[d][d] = Scalar(1);
    auto ext = [&](Vec& v) {
        if (!v.empty()) v.push_back(Scalar(0));
    };
    ext(g.x);
    ext(g.e);
    ext(g.f);
    ext(g.E);
    ext(g.H);
    ext(g.F);
    g.cartan.push_back(d);
    return g;
}

// ---- graded data and decompositions ----

GradedData graded_data(const LieSuper& g) {
    GradedData out;
    out.deg = g.grading();
    for (size_t i = 0; i < g.dim(); ++i) {
        if (out.deg[i] > 0) {
            out.pos.push_back(i);
            if (out.deg[i] == mpq_class(1, 2)) out.half.push_back(i);
        } else {
            out.nonneg.push_back(i);
            if (out.deg[i] == 0) out.zero.push_back(i);
        }
    }
    // dual basis u^alpha in the negative part with (u^a | u_b) = delta
    std::vector<Vec> neg;
    for (size_t i = 0; i < g.dim(); ++i)
        if (out.deg[i] < 0) neg.push_back(g.basis(i));
    for (size_t a : out.pos) {
        size_t n = neg.size();
        std::vector<std::vector<Scalar>> M(out.pos.size(), std::vector<Scalar>(n));
        std::vector<Scalar> rhs(out.pos.size(), Scalar(0));
        for (size_t r = 0; r < out.pos.size(); ++r)
            for (size_t c = 0; c < n; ++c) M[r][c] = g.form(neg[c], g.basis(out.pos[r]));
        for (size_t r = 0; r < out.pos.size(); ++r)
            rhs[r] = (out.pos[r] == a) ? Scalar(1) : Scalar(0);
        auto sol = linsolve(M, rhs);
        if (!sol.consistent) throw EngineError(g.name + ": degenerate pairing n- x n");
        Vec v = g.zero();
        for (size_t c = 0; c < n; ++c)
            for (size_t k2 = 0; k2 < g.dim(); ++k2) v[k2] += sol.particular[c] * neg[c][k2];
        out.dual_neg.push_back(v);
    }
    return out;
}

std::vector<Vec> centralizer_graded(const LieSuper& g, const Vec& v, const mpq_class& deg) {
    return intersect(g, g.centralizer(v), g.graded_piece(deg));
}

MinimalDecomp decompose_gF0(const LieSuper& g) {
    if (g.f.empty()) throw EngineError(g.name + ": no minimal pair installed");
    MinimalDecomp out;
    out.gf0 = centralizer_graded(g, g.f, 0);
    out.gF0 = centralizer_graded(g, g.F, 0);
    // verify gf0 centralizes the whole osp(1|2)
    for (const auto& v : out.gf0) {
        if (!g.is_zero_vec(g.bracket(g.e, v)) || !g.is_zero_vec(g.bracket(g.E, v)))
            throw EngineError(g.name + ": g^f_0 does not centralize s");
    }
    auto count = [&](const std::vector<Vec>& vs, size_t& ev, size_t& od) {
        ev = od = 0;
        for (const auto& v : vs) (g.parity_of(v) == Parity::even ? ev : od)++;
    };
    count(out.gf0, out.gf0_even, out.gf0_odd);
    count(out.gF0, out.gF0_even, out.gF0_odd);
    // M = orthogonal complement of gf0 inside gF0
    if (out.gf0.empty()) {
        out.module = out.gF0;
    } else {
        size_t n = out.gF0.size();
        std::vector<std::vector<Scalar>> M(out.gf0.size(), std::vector<Scalar>(n));
        for (size_t r = 0; r < out.gf0.size(); ++r)
            for (size_t c = 0; c < n; ++c) M[r][c] = g.form(out.gf0[r], out.gF0[c]);
        auto sol = linsolve(M, std::vector<Scalar>(out.gf0.size(), Scalar(0)));
        for (const auto& kv : sol.kernel) {
            Vec v = g.zero();
            for (size_t c = 0; c < n; ++c)
                for (size_t k2 = 0; k2 < g.dim(); ++k2) v[k2] += kv[c] * out.gF0[c][k2];
            out.module.push_back(v);
        }
    }
    out.module = echelonize(g, out.module).span;
    count(out.module, out.m_even, out.m_odd);
    // action fingerprints
    size_t md = out.module.size();
    std::vector<Vec> ops;
    for (const auto& h : out.gf0) {
        Vec flat;
        for (size_t j = 0; j < md; ++j) {
            Vec img = g.bracket(h, out.module[j]);
            auto c = in_span_coords(out.module, img);
            if (!c) throw EngineError(g.name + ": M not g^f_0-stable");
            for (auto& e : *c) flat.push_back(e);
        }
        ops.push_back(flat);
    }
    out.action_rank = echelonize(g, ops).span.size();
    // weights of M under a Cartan element of gf0 (first vector supported on
    // the distinguished Cartan of g), eigenvalues from candidate list
    Vec h;
    for (const auto& v : out.gf0) {
        bool diag = true;
        for (size_t i = 0; i < g.dim(); ++i) {
            if (v[i].is_zero()) continue;
            if (std::find(g.cartan.begin(), g.cartan.end(), i) == g.cartan.end()) diag = false;
        }
        if (diag && !g.is_zero_vec(v)) {
            h = v;
            break;
        }
    }
    if (!h.empty() && md > 0) {
        std::vector<mpq_class> cands = {0, 1, -1, 2, -2, mpq_class(1, 2), mpq_class(-1, 2),
                                        mpq_class(3, 2), mpq_class(-3, 2), 3, -3, 4, -4};
        size_t total = 0;
        std::vector<mpq_class> ws;
        for (const auto& t : cands) {
            // kernel of (ad h - t) on M
            std::vector<std::vector<Scalar>> A(md, std::vector<Scalar>(md, Scalar(0)));
            for (size_t j = 0; j < md; ++j) {
                Vec img = g.bracket(h, out.module[j]);
                auto c = in_span_coords(out.module, img);
                for (size_t r = 0; r < md; ++r) A[r][j] = (*c)[r];
                A[j][j] -= Scalar(t);
            }
            auto s2 = linsolve(A, std::vector<Scalar>(md, Scalar(0)));
            for (size_t q = 0; q < s2.kernel.size(); ++q) ws.push_back(t);
            total += s2.kernel.size();
        }
        if (total == md) {
            std::sort(ws.begin(), ws.end());
            out.weights = ws;
        }
    }
    return out;
}

GeneratingType generating_type(const LieSuper& g) {
    GeneratingType out;
    auto deg = g.grading();
    auto cf = g.centralizer(g.f);
    auto cF = g.centralizer(g.F);
    for (const auto& v : cf) {
        // split kernel vectors into graded homogeneous pieces
        std::map<mpq_class, Vec> pieces;
        for (size_t i = 0; i < g.dim(); ++i)
            if (!v[i].is_zero()) {
                auto& p = pieces[deg[i]];
                if (p.empty()) p = g.zero();
                p[i] = v[i];
            }
        for (auto& [dg, vv] : pieces) {
            mpq_class w = mpq_class(1, 2) - dg;
            auto& slot = out.susy[w];
            // J_{bar a} carries the reversed parity of a
            (g.parity_of(vv) == Parity::odd ? slot.first : slot.second)++;
        }
    }
    for (const auto& v : cF) {
        std::map<mpq_class, Vec> pieces;
        for (size_t i = 0; i < g.dim(); ++i)
            if (!v[i].is_zero()) {
                auto& p = pieces[deg[i]];
                if (p.empty()) p = g.zero();
                p[i] = v[i];
            }
        for (auto& [dg, vv] : pieces) {
            mpq_class w = 1 - dg;
            auto& slot = out.plain[w];
            (g.parity_of(vv) == Parity::even ? slot.first : slot.second)++;
        }
    }
    return out;
}

namespace {

// integer lattice membership: does t lie in the Z-span of the columns of A?
bool in_z_span(std::vector<std::vector<mpz_class>> A, std::vector<mpz_class> t) {
    size_t rows = A.size();
    if (rows == 0) return std::all_of(t.begin(), t.end(), [](auto& x) { return x == 0; });
    size_t cols = A[0].size();
    // column-style Hermite reduction
    size_t r = 0, c = 0;
    while (r < rows && c < cols) {
        // find pivot column with minimal nonzero |A[r][j]| among j >= c
        size_t best = cols;
        for (size_t j = c; j < cols; ++j)
            if (A[r][j] != 0 && (best == cols || abs(A[r][j]) < abs(A[r][best]))) best = j;
        if (best == cols) {
            if (t[r] != 0) {
                // row r unreachable; but maybe later rows still matter
                return false;
            }
            ++r;
            continue;
        }
        for (auto& row : A) std::swap(row[c], row[best]);
        // eliminate other columns at row r
        bool again = true;
        while (again) {
            again = false;
            for (size_t j = c + 1; j < cols; ++j) {
                if (A[r][j] == 0) continue;
                mpz_class q = A[r][j] / A[r][c];
                for (size_t i = 0; i < rows; ++i) A[i][j] -= q * A[i][c];
                if (A[r][j] != 0) {
                    for (size_t i = 0; i < rows; ++i) std::swap(A[i][c], A[i][j]);
                    again = true;
                }
            }
        }
        // reduce t at row r
        if (t[r] % A[r][c] != 0) return false;
        mpz_class q = t[r] / A[r][c];
        for (size_t i = 0; i < rows; ++i) t[i] -= q * A[i][c];
        ++r;
        ++c;
    }
    for (size_t i = r; i < rows; ++i)
        if (t[i] != 0) return false;
    return true;
}

}  // namespace

RootClasses root_classes(const LieSuper& g) {
    RootClasses out;
    auto deg = g.grading();
    // roots with respect to the distinguished Cartan
    auto root_of = [&](size_t i) {
        std::vector<mpq_class> r;
        for (size_t c : g.cartan) {
            Vec w = g.bracket(g.basis(c), g.basis(i));
            Scalar coeff = w[i];
            for (size_t k = 0; k < g.dim(); ++k)
                if (k != i && !w[k].is_zero())
                    throw EngineError(g.name + ": basis not root-adapted");
            mpq_class q = 0;
            if (!coeff.is_zero()) {
                GaussQ gg = coeff.constant_value();
                if (gg.im != 0) throw EngineError(g.name + ": non-rational root");
                q = gg.re;
            }
            r.push_back(q);
        }
        return r;
    };
    std::vector<size_t> pos;
    for (size_t i = 0; i < g.dim(); ++i)
        if (deg[i] > 0) pos.push_back(i);
    std::vector<std::vector<mpq_class>> proots;
    for (size_t i : pos) proots.push_back(root_of(i));
    // indecomposable: not a sum of two positive roots (gradings are <= 1 here)
    for (size_t a = 0; a < pos.size(); ++a) {
        if (deg[pos[a]] > 1) throw EngineError(g.name + ": grading depth > 1 unsupported");
        bool decomp = false;
        for (size_t b = 0; b < pos.size() && !decomp; ++b)
            for (size_t c2 = 0; c2 < pos.size() && !decomp; ++c2) {
                bool same = true;
                for (size_t t = 0; t < proots[a].size(); ++t)
                    if (proots[a][t] != proots[b][t] + proots[c2][t]) same = false;
                if (same) decomp = true;
            }
        if (!decomp) out.delta.push_back(pos[a]);
    }
    // equivalence alpha ~ beta iff alpha - beta in Z-span of I_0 roots
    std::vector<std::vector<mpq_class>> zroots;
    for (size_t i = 0; i < g.dim(); ++i) {
        if (deg[i] != 0) continue;
        if (std::find(g.cartan.begin(), g.cartan.end(), i) != g.cartan.end()) continue;
        auto r = root_of(i);
        bool zero = std::all_of(r.begin(), r.end(), [](auto& q) { return q == 0; });
        if (!zero) zroots.push_back(r);
    }
    mpz_class den(1);
    auto alldenoms = [&](const std::vector<std::vector<mpq_class>>& rs) {
        for (auto& r : rs)
            for (auto& q : r) den = lcm(den, q.get_den());
    };
    alldenoms(zroots);
    std::vector<std::vector<mpq_class>> droots;
    for (size_t i : out.delta) droots.push_back(root_of(i));
    alldenoms(droots);
    auto equiv = [&](const std::vector<mpq_class>& a, const std::vector<mpq_class>& b) {
        size_t rows = a.size();
        std::vector<std::vector<mpz_class>> A(rows, std::vector<mpz_class>(zroots.size()));
        std::vector<mpz_class> t(rows);
        for (size_t r = 0; r < rows; ++r) {
            for (size_t c = 0; c < zroots.size(); ++c) {
                mpq_class q = zroots[c][r] * den;
                A[r][c] = q.get_num();
            }
            mpq_class q = (a[r] - b[r]) * den;
            t[r] = q.get_num();
        }
        return in_z_span(A, t);
    };
    std::vector<bool> used(out.delta.size(), false);
    for (size_t i = 0; i < out.delta.size(); ++i) {
        if (used[i]) continue;
        std::vector<size_t> cls = {out.delta[i]};
        used[i] = true;
        for (size_t j = i + 1; j < out.delta.size(); ++j) {
            if (used[j]) continue;
            if (equiv(droots[i], droots[j])) {
                cls.push_back(out.delta[j]);
                used[j] = true;
            }
        }
        out.classes.push_back(cls);
    }
    return out;
}

void install_minimal(LieSuper&) {
    throw EngineError("install_minimal: use the named constructors");
}

}  // namespace ope

#include <algorithm>
#include <sstream>

#include "ope/catalog.hpp"

namespace ope {

namespace {

Scalar sign_pm(bool neg) { return Scalar(neg ? -1 : 1); }

// coordinates of x (supported in n_-) in the dual basis {u^alpha}
std::vector<Scalar> neg_coords(const LieSuper& g, const GradedData& gd, const Vec& x) {
    std::vector<Vec> duals = gd.dual_neg;
    auto c = in_span_coords(duals, x);
    if (!c) throw EngineError(g.name + ": vector not in n_-");
    return *c;
}

}  // namespace

// ---- subcomplex ----

State Brst::jfield(const Vec& a) const {
    State s;
    for (size_t t = 0; t < gd.nonneg.size(); ++t) {
        const Scalar& c = a[gd.nonneg[t]];
        if (!c.is_zero()) s += p->gen_state(J[t], c);
    }
    // the remaining coordinates must vanish
    for (size_t i = 0; i < g.dim(); ++i)
        if (gd.deg[i] > 0 && !a[i].is_zero())
            throw EngineError("jfield: vector not supported on g_{<=0}");
    return s;
}

State Brst::djfield(const Vec& a) const { return p->apply_D(jfield(a)); }

State Brst::phi_up(const Vec& m) const {
    auto c = neg_coords(g, gd, m);
    State s;
    for (size_t t = 0; t < c.size(); ++t)
        if (!c[t].is_zero()) s += p->gen_state(phi[t], c[t]);
    return s;
}

State Brst::dphi_up(const Vec& m) const { return p->apply_D(phi_up(m)); }

State Brst::qtilde_of_gen(GenId gen) const {
    auto it = qcache_.find(gen);
    if (it != qcache_.end()) return it->second;
    // locate the basis index of this J generator
    size_t t = 0;
    bool found = false;
    for (; t < J.size(); ++t)
        if (J[t] == gen) {
            found = true;
            break;
        }
    if (!found) throw EngineError("qtilde undefined on this generator");
    size_t ai = gd.nonneg[t];
    Vec a = g.basis(ai);
    bool pabar = p->gen(gen).parity == Parity::odd;  // parity of the field J_{bar a}
    State out;
    for (size_t b = 0; b < gd.pos.size(); ++b) {
        size_t bi = gd.pos[b];
        Vec ub = g.basis(bi);
        bool pb = g.parities[bi] == Parity::odd;        // p(beta) = p(u_beta)
        bool pbbar = !pb;                                // parity of bar u_beta
        Vec br = g.bracket(ub, a);
        // pi_{<=0}[u_beta, a] and the constant (f|[u_beta,a])
        Vec brlow = g.zero();
        for (size_t i2 = 0; i2 < g.dim(); ++i2)
            if (gd.deg[i2] <= 0) brlow[i2] = br[i2];
        Scalar fc = g.form(g.f, br);
        State inner = jfield(brlow) + State::vacuum(fc);
        if (!inner.is_zero()) {
            Scalar sg = sign_pm(pabar && pb);
            out += p->nop(p->gen_state(phi[b]), inner).scaled(sg);
        }
        Scalar ub_a = K * g.form(ub, a);
        if (!ub_a.is_zero()) out += p->gen_state(dphi[b], sign_pm(pbbar) * ub_a);
    }
    qcache_[gen] = out;
    return out;
}

State Brst::qtilde(const State& s) const {
    // Q~ = (Dd)_(0) is an ODD derivation: Q(:ab:) = :Q(a)b: + (-1)^{p(a)}:a Q(b):
    // and Q anticommutes with D (Q(DJ) = -D(Q(J))).
    State out;
    for (const auto& [m, c] : s.terms()) {
        const auto& fs = m.factors();
        int sign = 1;
        for (size_t i = 0; i < fs.size(); ++i) {
            GenId gen = fs[i].gen;
            State qf;
            bool is_dj = false;
            GenId base = gen;
            for (size_t t2 = 0; t2 < DJ.size(); ++t2)
                if (DJ[t2] == gen) {
                    is_dj = true;
                    base = J[t2];
                }
            bool is_j = false;
            for (size_t t2 = 0; t2 < J.size(); ++t2)
                if (J[t2] == gen) is_j = true;
            if (!is_j && !is_dj)
                throw EngineError("qtilde: state contains ghost generators");
            qf = qtilde_of_gen(base);
            if (is_dj) qf = -p->apply_D(qf);
            qf = p->translate(qf, fs[i].der);
            State img = State::vacuum(Scalar(1));
            for (size_t r = fs.size(); r-- > 0;) {
                if (r == i)
                    img = p->nop(qf, img);
                else
                    img = p->nop(State::monomial(Monomial::single(fs[r]), Scalar(1), p->tag()),
                                 img);
            }
            out += img.scaled(c * Scalar(sign));
            if (p->gen(gen).parity == Parity::odd) sign = -sign;
        }
    }
    return out;
}

Brst brst_subcomplex(const LieSuper& galg, Scalar k) {
    Brst out;
    out.g = galg;
    out.gd = graded_data(out.g);
    out.k = k;
    out.hv = out.g.dual_coxeter();
    out.K = k + out.hv;
    out.p = Presentation::create(out.g.tab, "C~(" + out.g.name + ")");
    auto& g = out.g;
    auto& gd = out.gd;
    for (size_t t = 0; t < gd.nonneg.size(); ++t) {
        size_t i = gd.nonneg[t];
        mpq_class w = mpq_class(1, 2) - gd.deg[i];
        out.J.push_back(out.p->add_generator("J" + g.basis_names[i],
                                             g.parities[i] ^ Parity::odd, w));
    }
    for (size_t t = 0; t < gd.nonneg.size(); ++t) {
        size_t i = gd.nonneg[t];
        mpq_class w = 1 - gd.deg[i];
        out.DJ.push_back(out.p->add_generator("DJ" + g.basis_names[i], g.parities[i], w));
    }
    for (size_t b = 0; b < gd.pos.size(); ++b) {
        size_t i = gd.pos[b];
        out.phi.push_back(out.p->add_generator("ph" + g.basis_names[i],
                                               g.parities[i] ^ Parity::odd, gd.deg[i]));
    }
    for (size_t b = 0; b < gd.pos.size(); ++b) {
        size_t i = gd.pos[b];
        out.dphi.push_back(out.p->add_generator("Dph" + g.basis_names[i], g.parities[i],
                                                gd.deg[i] + mpq_class(1, 2)));
    }
    for (size_t t = 0; t < gd.nonneg.size(); ++t)
        install_super_pair(*out.p, out.J[t], out.DJ[t]);
    for (size_t b = 0; b < gd.pos.size(); ++b)
        install_super_pair(*out.p, out.phi[b], out.dphi[b]);
    // [J_a L J_b] = (-1)^{p(a)p(b)+p(a)} J_{[a,b]} + K chi (a|b)
    for (size_t s = 0; s < gd.nonneg.size(); ++s)
        for (size_t t = s; t < gd.nonneg.size(); ++t) {
            size_t i = gd.nonneg[s], j = gd.nonneg[t];
            bool pa = g.parities[i] == Parity::odd, pb = g.parities[j] == Parity::odd;
            Scalar sgn((pa && pb) ? 1 : (pa ? -1 : 1));
            Vec c = g.bracket(g.basis(i), g.basis(j));
            LambdaPoly S;
            State sst = out.jfield(c).scaled(sgn);
            if (!sst.is_zero()) S.add(0, sst);
            LambdaPoly T;
            Scalar lv = out.K * g.form(g.basis(i), g.basis(j));
            if (!lv.is_zero()) T.add(0, State::vacuum(lv));
            if (!S.is_zero() || !T.is_zero())
                install_super_bracket(*out.p, out.J[s], out.DJ[s], out.J[t], out.DJ[t], S, T);
        }
    // [phi^{bar m} L J_a] = (-1)^{p(m)p(abar)} phi^{bar [m,a]}
    for (size_t b = 0; b < gd.pos.size(); ++b) {
        size_t bi = gd.pos[b];
        Vec um = gd.dual_neg[b];  // u^beta, the field label of phi^beta
        bool pm = g.parities[bi] == Parity::odd;  // p(u^beta) = p(u_beta)
        for (size_t t = 0; t < gd.nonneg.size(); ++t) {
            size_t ai = gd.nonneg[t];
            bool pabar = !(g.parities[ai] == Parity::odd);
            Vec br = g.bracket(um, g.basis(ai));
            if (g.is_zero_vec(br)) continue;
            LambdaPoly S;
            S.add(0, out.phi_up(br).scaled(sign_pm(pm && pabar)));
            install_super_bracket(*out.p, out.phi[b], out.dphi[b], out.J[t], out.DJ[t], S,
                                  LambdaPoly());
        }
    }
    out.p->finalize();
    return out;
}

// ---- full complex ----

State FullBrst::field(const Vec& a) const {
    State s;
    for (size_t i = 0; i < a.size(); ++i)
        if (!a[i].is_zero()) s += p->gen_state(bar[i], a[i]);
    return s;
}

State FullBrst::dfield(const Vec& a) const {
    State s;
    for (size_t i = 0; i < a.size(); ++i)
        if (!a[i].is_zero()) s += p->gen_state(dbar[i], a[i]);
    return s;
}

State FullBrst::phi_up(const Vec& m) const {
    auto c = neg_coords(g, gd, m);
    State s;
    for (size_t t = 0; t < c.size(); ++t)
        if (!c[t].is_zero()) s += p->gen_state(phu[t], c[t]);
    return s;
}

State FullBrst::phi_down(const Vec& nvec) const {
    State s;
    for (size_t b = 0; b < gd.pos.size(); ++b) {
        const Scalar& c = nvec[gd.pos[b]];
        if (!c.is_zero()) s += p->gen_state(phl[b], c);
    }
    for (size_t i = 0; i < g.dim(); ++i)
        if (gd.deg[i] <= 0 && !nvec[i].is_zero())
            throw EngineError("phi_down: vector not in n");
    return s;
}

State FullBrst::d_element() const {
    State d;
    for (size_t b = 0; b < gd.pos.size(); ++b) {
        size_t bi = gd.pos[b];
        State head = field(g.basis(bi)) - State::vacuum(g.form(g.f, g.basis(bi)));
        d += p->nop(head, p->gen_state(phu[b]));
    }
    for (size_t a = 0; a < gd.pos.size(); ++a)
        for (size_t b = 0; b < gd.pos.size(); ++b) {
            Vec br = g.bracket(g.basis(gd.pos[a]), g.basis(gd.pos[b]));
            if (g.is_zero_vec(br)) continue;
            bool pa = g.parities[gd.pos[a]] == Parity::odd;
            bool pbbar = !(g.parities[gd.pos[b]] == Parity::odd);
            Scalar c = Scalar::rational(1, 2) * sign_pm(pa && pbbar);
            d += p->nop(phi_down(br), p->nop(p->gen_state(phu[b]), p->gen_state(phu[a])))
                     .scaled(c);
        }
    return d;
}

State FullBrst::q(const State& s) const { return p->nth_product(p->apply_D(d_element()), 0, s); }

State FullBrst::tau_g() const {
    std::vector<Vec> all;
    for (size_t i = 0; i < g.dim(); ++i) all.push_back(g.basis(i));
    auto dual = g.dual_basis(all);
    Scalar invK = K.inverse();
    State tau;
    for (size_t i = 0; i < g.dim(); ++i)
        for (size_t j = 0; j < g.dim(); ++j) {
            Scalar c = g.form(all[i], all[j]);
            if (c.is_zero()) continue;
            tau += p->nop(field(dual[i]), dfield(dual[j])).scaled(c * invK);
        }
    Scalar inv3K2 = (K * K * Scalar(3)).inverse();
    for (size_t j = 0; j < g.dim(); ++j)
        for (size_t r = 0; r < g.dim(); ++r) {
            Vec br = g.bracket(all[j], all[r]);
            if (g.is_zero_vec(br)) continue;
            for (size_t i = 0; i < g.dim(); ++i) {
                Scalar c = g.form(all[i], br);
                if (c.is_zero()) continue;
                if (g.parities[j] == Parity::odd) c = -c;
                tau += p->nop(field(dual[i]), p->nop(field(dual[j]), field(dual[r])))
                           .scaled(c * inv3K2);
            }
        }
    return tau;
}

State FullBrst::tau_f() const {
    State tau;
    for (size_t b = 0; b < gd.pos.size(); ++b) {
        size_t bi = gd.pos[b];
        mpq_class j = gd.deg[bi];
        bool pa = g.parities[bi] == Parity::odd;
        State phl_s = p->gen_state(phl[b]);
        State phu_s = p->gen_state(phu[b]);
        tau += p->nop(p->translate(phl_s), phu_s).scaled(Scalar(j * 2) * sign_pm(pa));
        tau -= p->nop(phl_s, p->translate(phu_s)).scaled(Scalar(1 - j * 2) * sign_pm(pa));
        tau += p->nop(p->gen_state(dphl[b]), p->gen_state(dphu[b]));
    }
    return tau;
}

State FullBrst::tau_c() const { return tau_g() + tau_f() + p->translate(field(g.H)); }

State FullBrst::jfield(const Vec& a) const {
    State s = field(a);
    bool pabar = !(g.parity_of(a) == Parity::odd);
    for (size_t b = 0; b < gd.pos.size(); ++b) {
        size_t bi = gd.pos[b];
        Vec br = g.bracket(g.basis(bi), a);
        Vec brpos = g.zero();
        for (size_t i = 0; i < g.dim(); ++i)
            if (gd.deg[i] > 0) brpos[i] = br[i];
        if (g.is_zero_vec(brpos)) continue;
        bool pbbar = !(g.parities[bi] == Parity::odd);
        s += p->nop(p->gen_state(phu[b]), phi_down(brpos)).scaled(sign_pm(pabar && pbbar));
    }
    return s;
}

FullBrst full_brst(const LieSuper& galg, Scalar k) {
    FullBrst out;
    out.g = galg;
    out.gd = graded_data(out.g);
    out.k = k;
    out.hv = out.g.dual_coxeter();
    out.K = k + out.hv;
    out.p = Presentation::create(out.g.tab, "C(" + out.g.name + ")");
    auto& g = out.g;
    auto& gd = out.gd;
    for (size_t i = 0; i < g.dim(); ++i)
        out.bar.push_back(out.p->add_generator("B" + g.basis_names[i],
                                               g.parities[i] ^ Parity::odd,
                                               mpq_class(1, 2) - gd.deg[i]));
    for (size_t i = 0; i < g.dim(); ++i)
        out.dbar.push_back(
            out.p->add_generator("DB" + g.basis_names[i], g.parities[i], 1 - gd.deg[i]));
    for (size_t b = 0; b < gd.pos.size(); ++b) {
        size_t i = gd.pos[b];
        out.phu.push_back(out.p->add_generator("pU" + g.basis_names[i],
                                               g.parities[i] ^ Parity::odd, gd.deg[i]));
        // phi_n carries the plain parity of n (only phi^{bar n_-} is reversed)
        out.phl.push_back(out.p->add_generator("pL" + g.basis_names[i], g.parities[i],
                                               mpq_class(1, 2) - gd.deg[i]));
    }
    for (size_t b = 0; b < gd.pos.size(); ++b) {
        size_t i = gd.pos[b];
        out.dphu.push_back(
            out.p->add_generator("DpU" + g.basis_names[i], g.parities[i],
                                 gd.deg[i] + mpq_class(1, 2)));
        out.dphl.push_back(out.p->add_generator("DpL" + g.basis_names[i],
                                                g.parities[i] ^ Parity::odd, 1 - gd.deg[i]));
    }
    for (size_t i = 0; i < g.dim(); ++i) install_super_pair(*out.p, out.bar[i], out.dbar[i]);
    for (size_t b = 0; b < gd.pos.size(); ++b) {
        install_super_pair(*out.p, out.phu[b], out.dphu[b]);
        install_super_pair(*out.p, out.phl[b], out.dphl[b]);
    }
    // susy affine sector
    for (size_t i = 0; i < g.dim(); ++i)
        for (size_t j = i; j < g.dim(); ++j) {
            bool pa = g.parities[i] == Parity::odd, pb = g.parities[j] == Parity::odd;
            Scalar sgn((pa && pb) ? 1 : (pa ? -1 : 1));
            Vec c = g.bracket(g.basis(i), g.basis(j));
            LambdaPoly S;
            State sst = out.field(c).scaled(sgn);
            if (!sst.is_zero()) S.add(0, sst);
            LambdaPoly T;
            Scalar lv = out.K * g.form(g.basis(i), g.basis(j));
            if (!lv.is_zero()) T.add(0, State::vacuum(lv));
            if (!S.is_zero() || !T.is_zero())
                install_super_bracket(*out.p, out.bar[i], out.dbar[i], out.bar[j], out.dbar[j],
                                      S, T);
        }
    // fermion sector: [phi^{bar a} L phi_b] = (a|b)
    for (size_t a = 0; a < gd.pos.size(); ++a)
        for (size_t b = 0; b < gd.pos.size(); ++b) {
            Scalar c = g.form(gd.dual_neg[a], g.basis(gd.pos[b]));
            if (c.is_zero()) continue;
            LambdaPoly S;
            S.add(0, State::vacuum(c));
            install_super_bracket(*out.p, out.phu[a], out.dphu[a], out.phl[b], out.dphl[b], S,
                                  LambdaPoly());
        }
    out.p->finalize();
    return out;
}

// ---- central charges ----

std::pair<Scalar, Scalar> central_charges(const LieSuper& g, const Scalar& k) {
    GradedData gd = graded_data(g);
    Scalar hv = g.dual_coxeter();
    Scalar K = k + hv;
    Scalar sdim(g.sdim_num());
    Scalar c0 = k * sdim / K - Scalar(6) * k;
    Scalar ghost(0);
    Scalar sdim_half(0);
    Scalar sdim_n(0);
    Scalar sumj(0);
    for (size_t b = 0; b < gd.pos.size(); ++b) {
        size_t i = gd.pos[b];
        mpq_class j = gd.deg[i];
        bool odd = g.parities[i] == Parity::odd;
        // m_alpha = j_alpha (the x-grading of u_alpha)
        mpq_class m = j;
        ghost += Scalar(12 * m * m - 12 * m + 2) * sign_pm(odd);
        if (j == mpq_class(1, 2)) sdim_half += sign_pm(odd);
        sdim_n += sign_pm(odd);
        sumj += Scalar(j) * sign_pm(odd);
    }
    Scalar ck = c0 - ghost - sdim_half * Scalar::rational(1, 2);
    Scalar cn1 = k * sdim / K + sdim * Scalar::rational(1, 2) + Scalar(12) * sumj -
                 Scalar(3) * sdim_n - Scalar(6) * K;
    return {ck, cn1};
}

// ---- minimal W generators ----

Vec MinimalW::sharp(const Vec& a) const {
    const LieSuper& g = brst.g;
    if (gf0.empty()) return g.zero();
    std::vector<std::vector<Scalar>> M(gf0.size(), std::vector<Scalar>(gf0.size()));
    std::vector<Scalar> rhs(gf0.size());
    for (size_t r = 0; r < gf0.size(); ++r) {
        for (size_t c = 0; c < gf0.size(); ++c) M[r][c] = g.form(gf0[r], gf0[c]);
        rhs[r] = g.form(gf0[r], a);
    }
    auto sol = linsolve(M, rhs);
    if (!sol.consistent) throw EngineError("sharp projection failed");
    Vec out = g.zero();
    for (size_t c = 0; c < gf0.size(); ++c)
        for (size_t i = 0; i < g.dim(); ++i) out[i] += sol.particular[c] * gf0[c][i];
    return out;
}

Vec MinimalW::vb(const Vec& b) const {
    const LieSuper& g = brst.g;
    // v in [e, g^f_{-1/2}] with [f, v] = b
    std::vector<std::vector<Scalar>> M(g.dim(), std::vector<Scalar>(egfm.size()));
    for (size_t c = 0; c < egfm.size(); ++c) {
        Vec img = g.bracket(g.f, egfm[c]);
        for (size_t r = 0; r < g.dim(); ++r) M[r][c] = img[r];
    }
    auto sol = linsolve(M, b);
    if (!sol.consistent) throw EngineError("v_b solve failed");
    Vec out = g.zero();
    for (size_t c = 0; c < egfm.size(); ++c)
        for (size_t i = 0; i < g.dim(); ++i) out[i] += sol.particular[c] * egfm[c][i];
    return out;
}

State MinimalW::calj_sharp(const Vec& a) const {
    const LieSuper& g = brst.g;
    State out = brst.djfield(a);
    Scalar invK = brst.K.inverse();
    for (size_t t = 0; t < gf0.size(); ++t) {
        Vec br = g.bracket(a, gf0[t]);
        if (g.is_zero_vec(br)) continue;
        Scalar c = invK * sign_pm(g.parity_of(gf0[t]) == Parity::odd);
        out += brst.p->nop(brst.jfield(gf0_dual[t]), brst.jfield(br)).scaled(c);
    }
    return out;
}

State MinimalW::gbar(const Vec& b) const {
    const LieSuper& g = brst.g;
    bool pb = g.parity_of(b) == Parity::odd;
    Vec v = vb(b);
    State out = brst.jfield(b);
    out += brst.djfield(v).scaled(brst.K * sign_pm(pb));
    // -1/2 sum_beta :J_{[e,u^beta]} (J_{[b,u_beta]} + J_{[b,u_beta]^sharp}):
    for (size_t h = 0; h < brst.gd.half.size(); ++h) {
        size_t bi = brst.gd.half[h];
        // locate dual vector for this position within gd.pos
        size_t posidx = 0;
        for (size_t t = 0; t < brst.gd.pos.size(); ++t)
            if (brst.gd.pos[t] == bi) posidx = t;
        Vec ubeta = g.basis(bi);
        Vec ubeta_up = brst.gd.dual_neg[posidx];
        Vec left = g.bracket(g.e, ubeta_up);
        Vec right = g.bracket(b, ubeta);
        Vec total = g.add(right, sharp(right));
        if (g.is_zero_vec(left) || g.is_zero_vec(total)) continue;
        out -= brst.p->nop(brst.jfield(left), brst.jfield(total))
                   .scaled(Scalar::rational(1, 2));
    }
    out += brst.p->nop(brst.jfield(g.x), brst.jfield(v)).scaled(sign_pm(pb));
    return out;
}

State MinimalW::gcal_f() const { return G - tau_gf0; }

State MinimalW::calj(const Vec& a) const {
    const LieSuper& g = brst.g;
    Vec as = sharp(a);
    Vec af = g.sub(a, as);
    State out;
    if (!g.is_zero_vec(as)) out += calj_sharp(as);
    if (!g.is_zero_vec(af)) {
        bool paf = g.parity_of(af) == Parity::odd;
        Vec fb = g.bracket(g.f, af);
        out += gbar(fb).scaled(brst.K.inverse() * sign_pm(!paf));
    }
    return out;
}

State MinimalW::gcal(const Vec& b) const {
    const LieSuper& g = brst.g;
    Scalar be = g.form(b, g.e) * Scalar::rational(1, 2);
    Vec bf = g.sub(b, g.scale(g.f, be));
    State out = gcal_f().scaled(be);
    if (!g.is_zero_vec(bf)) {
        // Type 1 weight 3/2 for bf in g^f_{-1/2}
        bool pb = g.parity_of(bf) == Parity::odd;
        Vec eb = g.bracket(g.e, bf);
        State t = brst.p->apply_D(calj(eb));
        Scalar invK = brst.K.inverse();
        for (size_t t2 = 0; t2 < gf0.size(); ++t2) {
            Vec br = g.bracket(eb, gf0_dual[t2]);
            if (g.is_zero_vec(br)) continue;
            t += brst.p->nop(brst.jfield(gf0[t2]), calj(br)).scaled(invK);
        }
        out += t.scaled(sign_pm(!pb));
    }
    return out;
}

Scalar MinimalW::kappa(const Vec& a, const Vec& b) const {
    const LieSuper& g = brst.g;
    std::vector<Vec> g0, ghalf;
    for (size_t i = 0; i < g.dim(); ++i) {
        if (brst.gd.deg[i] == 0) g0.push_back(g.basis(i));
        if (brst.gd.deg[i] == mpq_class(1, 2)) ghalf.push_back(g.basis(i));
    }
    Scalar half = Scalar::rational(1, 2);
    return brst.K * g.form(a, b) - g.supertrace_form(g0, a, b) * half -
           g.supertrace_form(ghalf, a, b) * half;
}

Scalar MinimalW::psi_k(const Vec& a, const Vec& b) const {
    const LieSuper& g = brst.g;
    std::vector<Vec> gpos, ghalf;
    for (size_t i = 0; i < g.dim(); ++i) {
        if (brst.gd.deg[i] > 0) gpos.push_back(g.basis(i));
        if (brst.gd.deg[i] == mpq_class(1, 2)) ghalf.push_back(g.basis(i));
    }
    return brst.k * g.form(a, b) + g.supertrace_form(gpos, a, b) -
           g.supertrace_form(ghalf, a, b) * Scalar::rational(1, 2);
}

MinimalW minimal_w(const LieSuper& galg, Scalar k) {
    MinimalW out;
    out.brst = brst_subcomplex(galg, k);
    const LieSuper& g = out.brst.g;
    out.gf0 = centralizer_graded(g, g.f, 0);
    out.gf0_dual = out.gf0.empty() ? out.gf0 : g.dual_basis(out.gf0);
    out.gfm = centralizer_graded(g, g.f, mpq_class(-1, 2));
    for (const auto& w : out.gfm) out.egfm.push_back(g.bracket(g.e, w));
    // recompute egfm as an independent echelon basis of [e, g^f_{-1/2}]
    out.egfm = echelonize(g, out.egfm).span;
    for (const auto& h : out.gf0) out.hbar.push_back(out.brst.jfield(h));
    // tau_{g^f_0}: Kac-Todorov vector of the weight-1/2 sector
    {
        State tau;
        if (!out.gf0.empty()) {
            Scalar invK = out.brst.K.inverse();
            auto& p = *out.brst.p;
            for (size_t i = 0; i < out.gf0.size(); ++i)
                for (size_t j = 0; j < out.gf0.size(); ++j) {
                    Scalar c = g.form(out.gf0[i], out.gf0[j]);
                    if (c.is_zero()) continue;
                    tau += p.nop(out.brst.jfield(out.gf0_dual[i]),
                                 out.brst.djfield(out.gf0_dual[j]))
                               .scaled(c * invK);
                }
            Scalar inv3K2 = (out.brst.K * out.brst.K * Scalar(3)).inverse();
            for (size_t j = 0; j < out.gf0.size(); ++j)
                for (size_t r = 0; r < out.gf0.size(); ++r) {
                    Vec br = g.bracket(out.gf0[j], out.gf0[r]);
                    if (g.is_zero_vec(br)) continue;
                    for (size_t i = 0; i < out.gf0.size(); ++i) {
                        Scalar c = g.form(out.gf0[i], br);
                        if (c.is_zero()) continue;
                        if (g.parity_of(out.gf0[j]) == Parity::odd) c = -c;
                        tau += p.nop(out.brst.jfield(out.gf0_dual[i]),
                                     p.nop(out.brst.jfield(out.gf0_dual[j]),
                                           out.brst.jfield(out.gf0_dual[r])))
                                   .scaled(c * inv3K2);
                    }
                }
        }
        out.tau_gf0 = tau;
    }
    // Solve for the superconformal vector G of W: the unique Q-closed
    // weight-3/2 odd state of the subcomplex that acts as D on the weight-1/2
    // and weight-1 fields of W and has the linear part (2/K^2) J_F - (1/K) D J_f
    // of section 5.2.2.  The Neveu-Schwarz closure and the central charge are
    // verified by the suites, not imposed.
    {
        auto& p = *out.brst.p;
        FullBrst full = full_brst(galg, k);
        std::vector<State> images(p.num_gens());
        for (size_t t = 0; t < out.brst.J.size(); ++t) {
            Vec a = g.basis(out.brst.gd.nonneg[t]);
            images[out.brst.J[t]] = full.jfield(a);
            images[out.brst.DJ[t]] = full.p->apply_D(full.jfield(a));
        }
        for (size_t b = 0; b < out.brst.phi.size(); ++b) {
            Vec m = out.brst.gd.dual_neg[b];
            images[out.brst.phi[b]] = full.phi_up(m);
            images[out.brst.dphi[b]] = full.p->apply_D(full.phi_up(m));
        }
        auto monos = weight_basis(p, mpq_class(3, 2), Parity::odd);
        std::vector<State> cand;
        for (const auto& m : monos) {
            // the Miura part of W is phi-free
            bool ghost = false;
            for (const auto& f : m.factors()) {
                bool is_j = false;
                for (GenId gj : out.brst.J)
                    if (gj == f.gen) is_j = true;
                for (GenId gj : out.brst.DJ)
                    if (gj == f.gen) is_j = true;
                if (!is_j) ghost = true;
            }
            if (!ghost) cand.push_back(State::monomial(m, Scalar(1), p.tag()));
        }
        std::vector<std::vector<Scalar>> M;
        std::vector<Scalar> rhs;
        auto add_state_eq = [&](const std::vector<State>& lhs, const State& r) {
            std::vector<Monomial> ms;
            for (auto& sst : lhs)
                for (auto& [m, c] : sst.terms()) ms.push_back(m);
            for (auto& [m, c] : r.terms()) ms.push_back(m);
            std::sort(ms.begin(), ms.end());
            ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
            for (auto& m : ms) {
                std::vector<Scalar> row(cand.size(), Scalar(0));
                for (size_t c = 0; c < cand.size(); ++c) row[c] = lhs[c].coeff(m);
                M.push_back(row);
                rhs.push_back(r.coeff(m));
            }
        };
        // (a) Q G = 0, computed in the full complex
        {
            std::vector<State> qs;
            for (const auto& sst : cand)
                qs.push_back(full.q(push_forward(p, *full.p, images, sst)));
            add_state_eq(qs, State());
        }
        // (b) [G l J_h] = D J_h exactly for h in g^f_0
        for (const auto& h : out.gf0) {
            State Jh = out.brst.jfield(h);
            for (unsigned n = 0; n <= 3; ++n) {
                std::vector<State> lhs;
                for (const auto& sst : cand) lhs.push_back(p.nth_product(sst, n, Jh));
                add_state_eq(lhs, n == 0 ? p.apply_D(Jh) : State());
            }
        }
        // (c) [G l X] = D X exactly on the solved weight-1 fields of W
        for (const auto& b : out.gfm) {
            State X = out.gbar(b);
            for (unsigned n = 0; n <= 3; ++n) {
                std::vector<State> lhs;
                for (const auto& sst : cand) lhs.push_back(p.nth_product(sst, n, X));
                add_state_eq(lhs, n == 0 ? p.apply_D(X) : State());
            }
        }
        // (d) linear-part normalization
        {
            State linF = out.brst.jfield(g.F);
            State linDf = out.brst.djfield(g.f);
            for (const auto& [m, c] : linF.terms()) {
                std::vector<Scalar> row(cand.size(), Scalar(0));
                for (size_t t = 0; t < cand.size(); ++t) row[t] = cand[t].coeff(m);
                M.push_back(row);
                rhs.push_back(c * Scalar(2) / (out.brst.K * out.brst.K));
            }
            for (const auto& [m, c] : linDf.terms()) {
                std::vector<Scalar> row(cand.size(), Scalar(0));
                for (size_t t = 0; t < cand.size(); ++t) row[t] = cand[t].coeff(m);
                M.push_back(row);
                rhs.push_back(-c / out.brst.K);
            }
        }
        auto sol = linsolve(M, rhs);
        if (!sol.consistent)
            throw EngineError("no superconformal vector solves the W conditions");
        if (!sol.kernel.empty())
            throw EngineError("superconformal vector underdetermined");
        State G;
        for (size_t i = 0; i < cand.size(); ++i)
            if (!sol.particular[i].is_zero()) G += cand[i].scaled(sol.particular[i]);
        out.G = G;
        out.L = p.apply_D(G).scaled(Scalar::rational(1, 2));
    }
    return out;
}

}  // namespace ope

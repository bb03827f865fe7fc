#include "ope/catalog.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace ope {

namespace {
LambdaPoly const_poly(State s, size_t n = 0) {
    LambdaPoly p;
    p.add(n, std::move(s));
    return p;
}
}  // namespace

PresPtr free_fermions(SymtabPtr tab, int n) {
    auto p = Presentation::create(tab, "F(" + std::to_string(n) + ")");
    std::vector<GenId> g;
    for (int i = 1; i <= n; ++i)
        g.push_back(p->add_generator("ph" + std::to_string(i), Parity::odd, mpq_class(1, 2)));
    for (int i = 0; i < n; ++i) p->set_bracket(g[i], g[i], const_poly(State::vacuum()));
    p->finalize();
    return p;
}

PresPtr bc_system(SymtabPtr tab, int n) {
    auto p = Presentation::create(tab, "E(" + std::to_string(n) + ")");
    std::vector<GenId> b, c;
    for (int i = 1; i <= n; ++i)
        b.push_back(p->add_generator("b" + std::to_string(i), Parity::odd, mpq_class(1, 2)));
    for (int i = 1; i <= n; ++i)
        c.push_back(p->add_generator("c" + std::to_string(i), Parity::odd, mpq_class(1, 2)));
    for (int i = 0; i < n; ++i) p->set_bracket(b[i], c[i], const_poly(State::vacuum()));
    p->finalize();
    return p;
}

PresPtr beta_gamma(SymtabPtr tab, int n) {
    auto p = Presentation::create(tab, "S(" + std::to_string(n) + ")");
    std::vector<GenId> be, ga;
    for (int i = 1; i <= n; ++i)
        be.push_back(p->add_generator("be" + std::to_string(i), Parity::even, mpq_class(1, 2)));
    for (int i = 1; i <= n; ++i)
        ga.push_back(p->add_generator("ga" + std::to_string(i), Parity::even, mpq_class(1, 2)));
    for (int i = 0; i < n; ++i) p->set_bracket(be[i], ga[i], const_poly(State::vacuum()));
    p->finalize();
    return p;
}

PresPtr heisenberg_rank(SymtabPtr tab, int n) {
    auto p = Presentation::create(tab, "H(" + std::to_string(n) + ")");
    std::vector<GenId> g;
    for (int i = 1; i <= n; ++i)
        g.push_back(p->add_generator("h" + std::to_string(i), Parity::even, 1));
    for (int i = 0; i < n; ++i) p->set_bracket(g[i], g[i], const_poly(State::vacuum(), 1));
    p->finalize();
    return p;
}

// ---- affine ----

State AffineAlg::field(const Vec& a) const {
    State s;
    for (size_t i = 0; i < a.size(); ++i)
        if (!a[i].is_zero()) s += p->gen_state((GenId)i, a[i]);
    return s;
}

AffineAlg affine_form(const LieSuper& g, std::function<Scalar(const Vec&, const Vec&)> level,
                      std::string name) {
    AffineAlg out;
    out.g = &g;
    out.p = Presentation::create(g.tab, name);
    for (size_t i = 0; i < g.dim(); ++i) out.p->add_generator(g.basis_names[i], g.parities[i], 1);
    for (size_t i = 0; i < g.dim(); ++i)
        for (size_t j = i; j < g.dim(); ++j) {
            LambdaPoly br;
            Vec c = g.bracket(g.basis(i), g.basis(j));
            State s;
            for (size_t t = 0; t < g.dim(); ++t)
                if (!c[t].is_zero()) s += out.p->gen_state((GenId)t, c[t]);
            if (!s.is_zero()) br.add(0, s);
            Scalar lv = level(g.basis(i), g.basis(j));
            if (!lv.is_zero()) br.add(1, State::vacuum(lv));
            if (!br.is_zero()) out.p->set_bracket((GenId)i, (GenId)j, br);
        }
    out.p->finalize();
    return out;
}

AffineAlg affine(const LieSuper& g, Scalar level, std::string name) {
    if (name.empty()) name = "V^k(" + g.name + ")";
    Scalar lv = level;
    AffineAlg out = affine_form(
        g, [&g, lv](const Vec& a, const Vec& b) { return lv * g.form(a, b); }, name);
    out.level = lv;
    return out;
}

State sugawara(const AffineAlg& a) {
    const LieSuper& g = *a.g;
    Scalar hv = g.dual_coxeter();
    Scalar denom = (a.level + hv) * Scalar(2);
    if (denom.is_zero()) throw EngineError("Sugawara vector needs a non-critical level");
    std::vector<Vec> all;
    for (size_t i = 0; i < g.dim(); ++i) all.push_back(g.basis(i));
    auto dual = g.dual_basis(all);
    State L;
    for (size_t i = 0; i < g.dim(); ++i) L += a.p->nop(a.field(all[i]), a.field(dual[i]));
    return L.scaled(denom.inverse());
}

// ---- SUSY affine ----

State SusyAffineAlg::field(const Vec& a) const {
    State s;
    for (size_t i = 0; i < a.size(); ++i)
        if (!a[i].is_zero()) s += p->gen_state(bar[i], a[i]);
    return s;
}

State SusyAffineAlg::dfield(const Vec& a) const {
    State s;
    for (size_t i = 0; i < a.size(); ++i)
        if (!a[i].is_zero()) s += p->gen_state(dbar[i], a[i]);
    return s;
}

SusyAffineAlg susy_affine(const LieSuper& g, Scalar k) {
    SusyAffineAlg out;
    out.g = &g;
    out.k = k;
    out.hv = g.dual_coxeter();
    out.K = k + out.hv;
    out.p = Presentation::create(g.tab, "V^k_{N=1}(" + g.name + ")");
    for (size_t i = 0; i < g.dim(); ++i)
        out.bar.push_back(out.p->add_generator("B" + g.basis_names[i],
                                               g.parities[i] ^ Parity::odd, mpq_class(1, 2)));
    for (size_t i = 0; i < g.dim(); ++i)
        out.dbar.push_back(out.p->add_generator("DB" + g.basis_names[i], g.parities[i], 1));
    for (size_t i = 0; i < g.dim(); ++i) install_super_pair(*out.p, out.bar[i], out.dbar[i]);
    for (size_t i = 0; i < g.dim(); ++i)
        for (size_t j = i; j < g.dim(); ++j) {
            // [bar a L bar b] = (-1)^{p(a)+p(a)p(b)} bar[a,b] + K chi (a|b)
            bool pa = g.parities[i] == Parity::odd, pb = g.parities[j] == Parity::odd;
            Scalar sgn((pa && pb) ? 1 : (pa ? -1 : 1));
            Vec c = g.bracket(g.basis(i), g.basis(j));
            LambdaPoly S;
            State s = out.field(c).scaled(sgn);
            if (!s.is_zero()) S.add(0, s);
            LambdaPoly T;
            Scalar lv = out.K * g.form(g.basis(i), g.basis(j));
            if (!lv.is_zero()) T.add(0, State::vacuum(lv));
            if (!S.is_zero() || !T.is_zero())
                install_super_bracket(*out.p, out.bar[i], out.dbar[i], out.bar[j], out.dbar[j],
                                      S, T);
        }
    out.p->finalize();
    return out;
}

State kac_todorov(const SusyAffineAlg& s) {
    const LieSuper& g = *s.g;
    if (s.K.is_zero()) throw EngineError("Kac-Todorov vector needs non-critical level");
    std::vector<Vec> all;
    for (size_t i = 0; i < g.dim(); ++i) all.push_back(g.basis(i));
    auto dual = g.dual_basis(all);
    Scalar invK = s.K.inverse();
    State tau;
    for (size_t i = 0; i < g.dim(); ++i)
        for (size_t j = 0; j < g.dim(); ++j) {
            Scalar c = g.form(all[i], all[j]);
            if (c.is_zero()) continue;
            tau += s.p->nop(s.field(dual[i]), s.dfield(dual[j])).scaled(c * invK);
        }
    Scalar inv3K2 = (s.K * s.K * Scalar(3)).inverse();
    for (size_t j = 0; j < g.dim(); ++j) {
        for (size_t r = 0; r < g.dim(); ++r) {
            Vec br = g.bracket(all[j], all[r]);
            if (g.is_zero_vec(br)) continue;
            for (size_t i = 0; i < g.dim(); ++i) {
                Scalar c = g.form(all[i], br);
                if (c.is_zero()) continue;
                if (g.parities[j] == Parity::odd) c = -c;
                tau += s.p->nop(s.field(dual[i]), s.p->nop(s.field(dual[j]), s.field(dual[r])))
                           .scaled(c * inv3K2);
            }
        }
    }
    return tau;
}

State embed_affine(const SusyAffineAlg& s, const Vec& a) {
    Parity pa = s.g->parity_of(a);
    State out = s.dfield(a);
    if (pa == Parity::odd) out = out.scaled(Scalar::unit_i(s.p->symtab()));
    return out;
}

State cal_j(const SusyAffineAlg& s, const Vec& a) {
    const LieSuper& g = *s.g;
    std::vector<Vec> all;
    for (size_t i = 0; i < g.dim(); ++i) all.push_back(g.basis(i));
    auto dual = g.dual_basis(all);
    State out = s.dfield(a);
    Scalar inv2K = (s.K * Scalar(2)).inverse();
    for (size_t i = 0; i < g.dim(); ++i) {
        Vec br = g.bracket(a, all[i]);
        if (g.is_zero_vec(br)) continue;
        Scalar c = inv2K;
        if (g.parities[i] == Parity::odd) c = -c;
        out += s.p->nop(s.field(dual[i]), s.field(br)).scaled(c);
    }
    return out;
}

// ---- transport, bases, expansion ----

State push_forward(const Presentation& src, const Presentation& dst,
                   const std::vector<State>& images, const State& s,
                   const std::map<uint32_t, Scalar>* subst) {
    State out;
    for (const auto& [m, c] : s.terms()) {
        Scalar cc = subst ? c.substitute(*subst) : c;
        State img = State::vacuum(cc);
        const auto& fs = m.factors();
        for (size_t i = fs.size(); i-- > 0;) {
            if (fs[i].gen >= images.size()) throw EngineError("push_forward: missing image");
            State base = dst.translate(images[fs[i].gen], fs[i].der);
            img = dst.nop(base, img);
        }
        out += img;
    }
    (void)src;
    return out;
}

std::vector<Monomial> weight_basis(const Presentation& p, const mpq_class& w,
                                   std::optional<Parity> par) {
    std::vector<std::pair<Factor, mpq_class>> fs;
    for (GenId g = 0; g < p.num_gens(); ++g) {
        auto gw = p.gen(g).weight;
        if (!gw) throw EngineError("weight_basis requires weighted generators");
        if (*gw <= 0) throw EngineError("weight_basis requires positive weights");
        for (unsigned d = 0; *gw + (long)d <= w; ++d) fs.push_back({{g, d}, *gw + (long)d});
    }
    // descending factor order so generated words are PBW-sorted left to right
    std::sort(fs.begin(), fs.end(),
              [](const auto& a, const auto& b) { return b.first < a.first; });
    std::vector<Monomial> out;
    std::vector<Factor> cur;
    std::function<void(size_t, mpq_class)> rec = [&](size_t start, mpq_class rem) {
        if (rem == 0) {
            Monomial m(cur);
            if (!par || p.parity(m) == *par) out.push_back(m);
            return;
        }
        for (size_t i = start; i < fs.size(); ++i) {
            if (fs[i].second > rem) continue;
            cur.push_back(fs[i].first);
            rec(p.gen(fs[i].first.gen).parity == Parity::odd ? i + 1 : i, rem - fs[i].second);
            cur.pop_back();
        }
    };
    rec(0, w);
    return out;
}

std::optional<std::vector<Scalar>> expand_in_span(const std::vector<State>& span,
                                                  const State& target) {
    std::vector<Monomial> monos;
    auto note = [&](const State& s) {
        for (const auto& [m, c] : s.terms()) monos.push_back(m);
    };
    for (const auto& s : span) note(s);
    note(target);
    std::sort(monos.begin(), monos.end());
    monos.erase(std::unique(monos.begin(), monos.end()), monos.end());
    std::vector<std::vector<Scalar>> M(monos.size(), std::vector<Scalar>(span.size(), Scalar(0)));
    std::vector<Scalar> rhs(monos.size(), Scalar(0));
    for (size_t r = 0; r < monos.size(); ++r) {
        for (size_t c = 0; c < span.size(); ++c) M[r][c] = span[c].coeff(monos[r]);
        rhs[r] = target.coeff(monos[r]);
    }
    auto sol = linsolve(M, rhs);
    if (!sol.consistent) return std::nullopt;
    return sol.particular;
}

}  // namespace ope

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ope/catalog.hpp"

using namespace ope;

namespace {
Scalar level_symbol(const SymtabPtr& tab) {
    return Scalar::symbol(tab, tab->add_param("k"));
}

// exact square root of s2 = num/den, adjoining r with r^2 = num*den
Scalar adjoin_sqrt(const SymtabPtr& tab, const Scalar& s2, const std::string& name) {
    Poly rel = s2.num().mul_raw(s2.den()).reduced(*tab);
    uint32_t rid = tab->add_root(name, rel);
    return Scalar::make(tab, Poly::symbol(rid), s2.den());
}
}  // namespace

TEST_CASE("free fields") {
    auto tab = Symtab::create();
    auto F2 = free_fermions(tab, 2);
    CHECK(F2->num_gens() == 2);
    auto S1 = beta_gamma(tab, 1);
    State be = S1->gen_state("be1"), ga = S1->gen_state("ga1");
    CHECK(S1->nth_product(be, 0, ga) == State::vacuum());
    CHECK(S1->nth_product(ga, 0, be) == -State::vacuum());
    auto H1 = heisenberg_rank(tab, 1);
    State h = H1->gen_state("h1");
    CHECK(H1->bracket(h, h).coeff(1) == State::vacuum());
}

TEST_CASE("affine sugawara for sl2") {
    auto tab = Symtab::create();
    LieSuper sl2 = make_sl2(tab);
    Scalar k = level_symbol(tab);
    auto A = affine(sl2, k);
    State L = sugawara(A);
    auto rep = check_virasoro(*A.p, L);
    CHECK(rep.pass);
    CHECK(rep.central_charge == Scalar(3) * k / (k + Scalar(2)));
    for (GenId g = 0; g < A.p->num_gens(); ++g)
        CHECK(check_primary(*A.p, L, A.p->gen_state(g), 1).pass);
}

TEST_CASE("kac-todorov sl(2)") {
    auto tab = Symtab::create();
    LieSuper sl2 = make_sl2(tab);
    Scalar k = level_symbol(tab);
    auto S = susy_affine(sl2, k);
    CHECK(check_supersymmetry(*S.p).pass);
    State tau = kac_todorov(S);
    auto rep = check_superconformal(*S.p, tau);
    for (auto& f : rep.failures) MESSAGE(f);
    CHECK(rep.pass);
    CHECK(rep.central_charge == Scalar(3) * k / (k + Scalar(2)) + Scalar::rational(3, 2));
    State L = S.p->apply_D(tau).scaled(Scalar::rational(1, 2));
    CHECK(check_primary(*S.p, L, S.field(sl2.basis(0)), mpq_class(1, 2)).pass);
    CHECK(check_primary(*S.p, L, S.dfield(sl2.basis(0)), mpq_class(1)).pass);
}

TEST_CASE("kac-todorov osp(1|2) pins the odd-odd central sign") {
    auto tab = Symtab::create();
    LieSuper g = make_osp_like(1, 1, Parity::even, tab, "osp(1|2)");
    Scalar k = level_symbol(tab);
    auto S = susy_affine(g, k);
    CHECK(check_supersymmetry(*S.p).pass);
    State tau = kac_todorov(S);
    auto rep = check_superconformal(*S.p, tau);
    for (auto& f : rep.failures) MESSAGE(f);
    CHECK(rep.pass);
    Scalar hv = g.dual_coxeter();
    Scalar c_expect = k * Scalar(g.sdim_num()) / (k + hv) +
                      Scalar(g.sdim_num()) * Scalar::rational(1, 2);
    CHECK(rep.central_charge == c_expect);
}

TEST_CASE("kac-todorov sl(2|1)") {
    auto tab = Symtab::create();
    LieSuper g = make_sl(2, 1, tab);
    Scalar k = level_symbol(tab);
    auto S = susy_affine(g, k);
    State tau = kac_todorov(S);
    auto rep = check_superconformal(*S.p, tau);
    for (auto& f : rep.failures) MESSAGE(f);
    CHECK(rep.pass);
    Scalar hv = g.dual_coxeter();
    CHECK(rep.central_charge ==
          k * Scalar(g.sdim_num()) / (k + hv) + Scalar(g.sdim_num()) * Scalar::rational(1, 2));
}

TEST_CASE("lemma 4.1 identities") {
    auto tab = Symtab::create();
    LieSuper g = make_sl2(tab);
    Scalar k = level_symbol(tab);
    auto S = susy_affine(g, k);
    for (size_t i = 0; i < g.dim(); ++i) {
        for (size_t j = 0; j < g.dim(); ++j) {
            Vec a = g.basis(i), b = g.basis(j);
            CHECK(S.p->bracket(S.field(a), cal_j(S, b)).is_zero());
            LambdaPoly br = S.p->bracket(cal_j(S, a), cal_j(S, b));
            LambdaPoly expect;
            Vec ab = g.bracket(a, b);
            if (!g.is_zero_vec(ab)) expect.add(0, cal_j(S, ab));
            Scalar lv = k * g.form(a, b);
            if (!lv.is_zero()) expect.add(1, State::vacuum(lv));
            CHECK(br == expect);
        }
    }
    // abelian summand: cal J_s = D bar s
    auto tab2 = Symtab::create();
    LieSuper ab = add_center(make_sl2(tab2), "s");
    Scalar k2 = level_symbol(tab2);
    auto S2 = susy_affine(ab, k2);
    Vec s_vec = ab.basis(3);
    CHECK(cal_j(S2, s_vec) == S2.dfield(s_vec));
}

TEST_CASE("lemma 4.1 for sl(2|1) including odd pairs") {
    auto tab = Symtab::create();
    LieSuper g = make_sl(2, 1, tab);
    Scalar k = level_symbol(tab);
    auto S = susy_affine(g, k);
    for (size_t i = 0; i < g.dim(); ++i)
        for (size_t j = 0; j < g.dim(); ++j) {
            Vec a = g.basis(i), b = g.basis(j);
            CHECK(S.p->bracket(S.field(a), cal_j(S, b)).is_zero());
            bool pa = g.parities[i] == Parity::odd, pb = g.parities[j] == Parity::odd;
            LambdaPoly br = S.p->bracket(cal_j(S, a), cal_j(S, b));
            LambdaPoly expect;
            Vec ab = g.bracket(a, b);
            Scalar sgn(pa && pb ? -1 : 1);
            if (!g.is_zero_vec(ab)) expect.add(0, cal_j(S, ab).scaled(sgn));
            Scalar lv = k * g.form(a, b) * Scalar(pa ? -1 : 1);
            if (!lv.is_zero()) expect.add(1, State::vacuum(lv));
            CHECK(br == expect);
        }
}

TEST_CASE("brst subcomplex tables match the full complex for sl(2|1)") {
    auto tab = Symtab::create();
    LieSuper g = make_sl(2, 1, tab);
    Scalar k = level_symbol(tab);
    Brst sub = brst_subcomplex(g, k);
    FullBrst full = full_brst(g, k);
    CHECK(check_supersymmetry(*sub.p).pass);
    CHECK(check_supersymmetry(*full.p).pass);
    for (size_t s = 0; s < sub.gd.nonneg.size(); ++s) {
        for (size_t t = 0; t < sub.gd.nonneg.size(); ++t) {
            Vec a = g.basis(sub.gd.nonneg[s]);
            Vec b = g.basis(sub.gd.nonneg[t]);
            SuperLambdaPoly lhs = big_lambda_bracket(*full.p, full.jfield(a), full.jfield(b));
            bool pa = g.parities[sub.gd.nonneg[s]] == Parity::odd;
            bool pb = g.parities[sub.gd.nonneg[t]] == Parity::odd;
            Scalar sgn((pa && pb) ? 1 : (pa ? -1 : 1));
            Vec ab = g.bracket(a, b);
            Vec ablow = g.zero();
            for (size_t i = 0; i < g.dim(); ++i)
                if (sub.gd.deg[i] <= 0) ablow[i] = ab[i];
            LambdaPoly S_expect;
            State js = full.jfield(ablow).scaled(sgn);
            if (!js.is_zero()) S_expect.add(0, js);
            LambdaPoly T_expect;
            Scalar lv = sub.K * g.form(a, b);
            if (!lv.is_zero()) T_expect.add(0, State::vacuum(lv));
            CHECK(lhs.even == S_expect);
            CHECK(lhs.odd == T_expect);
        }
    }
    // Q on building blocks: engine bracket vs the eq:differential formula
    std::vector<State> images(sub.p->num_gens());
    for (size_t t = 0; t < sub.J.size(); ++t) {
        Vec a = g.basis(sub.gd.nonneg[t]);
        images[sub.J[t]] = full.jfield(a);
        images[sub.DJ[t]] = full.p->apply_D(full.jfield(a));
    }
    for (size_t b = 0; b < sub.phi.size(); ++b) {
        Vec m = sub.gd.dual_neg[b];
        images[sub.phi[b]] = full.phi_up(m);
        images[sub.dphi[b]] = full.p->apply_D(full.phi_up(m));
    }
    for (size_t t = 0; t < sub.J.size(); ++t) {
        Vec a = g.basis(sub.gd.nonneg[t]);
        State lhs = full.q(full.jfield(a));
        State rhs = push_forward(*sub.p, *full.p, images, sub.qtilde(sub.jfield(a)));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("minimal W for sl(2|1): superconformal vector and N=2 quadruple") {
    auto tab = Symtab::create();
    LieSuper g = make_sl(2, 1, tab);
    Scalar k = level_symbol(tab);
    MinimalW mw = minimal_w(g, k);
    auto& p = *mw.brst.p;
    std::vector<State> wfields = mw.hbar;
    for (const auto& b : mw.gfm) wfields.push_back(mw.gbar(b));
    wfields.push_back(mw.G);
    auto rep = check_superconformal(p, mw.G, &wfields);
    for (auto& f : rep.failures) MESSAGE(f);
    CHECK(rep.pass);
    CHECK(rep.central_charge == Scalar(-3) * (Scalar(1) + Scalar(2) * k));
    CHECK(mw.brst.qtilde(mw.G).is_zero());
    // linear part: G contains (2/K^2) J_F - (1/K) D J_f
    {
        Scalar K = mw.brst.K;
        State lin_F = mw.brst.jfield(g.F);
        State lin_Df = mw.brst.djfield(g.f);
        Monomial mF = lin_F.terms()[0].first;
        Scalar cF = lin_F.terms()[0].second;
        CHECK(mw.G.coeff(mF) == Scalar(2) / (K * K) * cF);
        Monomial mDf = lin_Df.terms()[0].first;
        Scalar cDf = lin_Df.terms()[0].second;
        CHECK(mw.G.coeff(mDf) == -K.inverse() * cDf);
    }
    CHECK(mw.gfm.size() == 1);
    State Gb = mw.gbar(mw.gfm[0]);
    CHECK(mw.brst.qtilde(Gb).is_zero());
    // normalize J = s * G_b so the N=2 quadruple holds: s^2 [D(Gb) l Gb]|_{G}
    // must equal -1 (so that [G2 l J] = -G)
    State DGb = p.apply_D(Gb);
    LambdaPoly br = p.bracket(DGb, Gb);
    auto coords = expand_in_span({mw.G}, br.coeff(0));
    REQUIRE(coords.has_value());
    Scalar c0 = (*coords)[0];
    Scalar s2 = -c0.inverse();
    Scalar s = adjoin_sqrt(tab, s2, "sJ");
    CHECK(s * s == s2);
    State J = Gb.scaled(s);
    State G2 = p.apply_D(J);
    State L = p.apply_D(mw.G).scaled(Scalar::rational(1, 2));
    Scalar cq;
    auto q = check_n2_quadruple(p, J, mw.G, G2, L, &cq);
    for (auto& f : q.failures) MESSAGE(f);
    CHECK(q.pass);
    CHECK(cq == Scalar(-3) * (Scalar(1) + Scalar(2) * k));
    std::vector<State> wgen = {J, mw.G, G2, L};
    auto susy = check_supersymmetry(p, {mw.G, G2}, &wgen);
    for (auto& f : susy.failures) MESSAGE(f);
    CHECK(susy.pass);
}

TEST_CASE("central charges closed forms") {
    {
        auto tab = Symtab::create();
        Scalar k = level_symbol(tab);
        LieSuper g = make_sl(2, 1, tab);
        auto [ck, cn1] = central_charges(g, k);
        CHECK(cn1 == Scalar(-3) * (Scalar(1) + Scalar(2) * k));
        CHECK(ck == cn1);  // g^f_0 = 0
    }
    {
        auto tab2 = Symtab::create();
        Scalar k2 = level_symbol(tab2);
        LieSuper g = make_spo(2, 3, tab2);
        auto [ck, cn1] = central_charges(g, k2);
        CHECK(cn1 == Scalar(-6) * k2 - Scalar(3));
        CHECK(ck == Scalar(-6) * k2 - Scalar::rational(7, 2));
    }
    {
        auto tab3 = Symtab::create();
        Scalar k3 = level_symbol(tab3);
        LieSuper g = make_d21(tab3);
        auto [ck, cn1] = central_charges(g, k3);
        CHECK(cn1 == Scalar::rational(3, 2) * (Scalar(-1) - Scalar(4) * k3));
        CHECK(cn1 - ck == Scalar::rational(3, 2));
    }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ope/liesuper.hpp"

using namespace ope;

TEST_CASE("sl(2) basics") {
    auto tab = Symtab::create();
    LieSuper g = make_sl2(tab);
    g.validate();
    // trace form: (H|H) = 2, (E|F) = 1
    CHECK(g.form(g.basis(1), g.basis(1)) == Scalar(2));
    CHECK(g.form(g.basis(0), g.basis(2)) == Scalar(1));
    CHECK(g.dual_coxeter() == Scalar(2));
}

TEST_CASE("sl(2|1) minimal structure") {
    auto tab = Symtab::create();
    LieSuper g = make_sl(2, 1, tab);
    g.validate();
    CHECK(g.dim() == 8);
    CHECK(g.sdim_num() == 0);
    CHECK(g.dual_coxeter() == Scalar(1));
    auto dec = decompose_gF0(g);
    // Table 1: sl(2|m) row at m=1: g^f_0 = gl(0) = 0, g^F_0 = gl(1)
    CHECK(dec.gf0.size() == 0);
    CHECK(dec.gF0.size() == 1);
    CHECK(dec.module.size() == 1);
    auto gd = graded_data(g);
    CHECK(gd.half.size() == 2);  // two odd roots at degree 1/2
    CHECK(gd.pos.size() == 3);
}

TEST_CASE("sl(2|3) table row") {
    auto tab = Symtab::create();
    LieSuper g = make_sl(2, 3, tab);
    g.validate();
    CHECK(g.dual_coxeter() == Scalar(-1));  // m - n = 2 - 3
    auto dec = decompose_gF0(g);
    // g^F_0 = gl(3) (dim 9), g^f_0 = gl(2) (dim 4), M = C + C^2 + C^2*
    CHECK(dec.gF0.size() == 9);
    CHECK(dec.gf0.size() == 4);
    CHECK(dec.module.size() == 5);
    CHECK(dec.gF0_odd == 0);
    CHECK(dec.m_odd == 0);
}

TEST_CASE("sl(3|1) table row") {
    auto tab = Symtab::create();
    LieSuper g = make_sl(3, 1, tab);
    g.validate();
    auto dec = decompose_gF0(g);
    // Table 2: sl(m|n) m=3,n=1: g^F_0 = gl(1|1), g^f_0 = gl(1|0), M = (1|2)
    CHECK(dec.gF0_even == 2);
    CHECK(dec.gF0_odd == 2);
    CHECK(dec.gf0.size() == 1);
    CHECK(dec.m_even == 1);
    CHECK(dec.m_odd == 2);
}

TEST_CASE("psl(2|2) table row") {
    auto tab = Symtab::create();
    LieSuper g = make_psl(2, tab);
    g.validate();
    CHECK(g.dim() == 14);
    auto dec = decompose_gF0(g);
    // g^F_0 = sl(2), g^f_0 = 0, M = C + C + C (trivial action)
    CHECK(dec.gF0.size() == 3);
    CHECK(dec.gf0.size() == 0);
    CHECK(dec.module.size() == 3);
    CHECK(dec.action_rank == 0);
}

TEST_CASE("spo(2|3) minimal structure") {
    auto tab = Symtab::create();
    LieSuper g = make_spo(2, 3, tab);
    g.validate();
    CHECK(g.dim() == 12);
    CHECK(g.sdim_num() == 0);
    // h_vee of spo(2|3) is 1/2 with (E|F)=1 normalization
    CHECK(g.dual_coxeter() == Scalar::rational(1, 2));
    auto dec = decompose_gF0(g);
    // Table 1: g^F_0 = so(3), g^f_0 = so(2), M = C^2 standard
    CHECK(dec.gF0.size() == 3);
    CHECK(dec.gf0.size() == 1);
    CHECK(dec.module.size() == 2);
    CHECK(dec.action_rank == 1);
    auto gd = graded_data(g);
    CHECK(gd.half.size() == 3);
    CHECK(gd.pos.size() == 4);
}

TEST_CASE("spo(2|4) table row") {
    auto tab = Symtab::create();
    LieSuper g = make_spo(2, 4, tab);
    g.validate();
    auto dec = decompose_gF0(g);
    // g^F_0 = so(4) dim 6, g^f_0 = so(3) dim 3, M = C^3 standard
    CHECK(dec.gF0.size() == 6);
    CHECK(dec.gf0.size() == 3);
    CHECK(dec.module.size() == 3);
    CHECK(dec.action_rank == 3);
    CHECK(dec.m_odd == 0);
}

TEST_CASE("osp(1|2)") {
    auto tab = Symtab::create();
    LieSuper g = make_osp_like(1, 1, Parity::even, tab, "osp(1|2)");
    g.validate();
    CHECK(g.dim() == 5);
    CHECK(g.sdim_num() == 1);
}

TEST_CASE("osp(5|2) table row") {
    auto tab = Symtab::create();
    LieSuper g = make_osp(5, 2, tab);
    g.validate();
    CHECK(g.dim() == 23);
    auto dec = decompose_gF0(g);
    // Table 2: g^F_0 = sl(2) + osp(1|2): dims (6|2); g^f_0 = sl(2): (3|0);
    // M = C^3 + C^2 (x) C^{0|1}: (3|2)
    CHECK(dec.gF0_even == 6);
    CHECK(dec.gF0_odd == 2);
    CHECK(dec.gf0_even == 3);
    CHECK(dec.gf0_odd == 0);
    CHECK(dec.m_even == 3);
    CHECK(dec.m_odd == 2);
}

TEST_CASE("D(2,1;a) structure") {
    auto tab = Symtab::create();
    LieSuper g = make_d21(tab);
    g.validate();
    CHECK(g.dim() == 17);
    CHECK(g.sdim_num() == 1);
    // dual Coxeter number vanishes (computed by brute force, not assumed)
    CHECK(g.dual_coxeter() == Scalar(0));
    // [f,f] = -2F1 exactly
    Vec ff = g.bracket(g.f, g.f);
    Vec expect = g.scale(g.F, Scalar(-2));
    CHECK(g.is_zero_vec(g.sub(ff, expect)));
    auto dec = decompose_gF0(g);
    // g^F_0 = sl(2)+sl(2) dim 6, g^f_0 = span{E2-F3, E3-F2, H2-H3} ~ sl(2)
    CHECK(dec.gF0.size() == 6);
    CHECK(dec.gf0.size() == 3);
    CHECK(dec.module.size() == 3);
    CHECK(dec.action_rank == 3);  // adjoint, not trivial
    // explicit span check for g^f_0
    auto idx = [&](const std::string& s) {
        for (size_t i = 0; i < g.dim(); ++i)
            if (g.basis_names[i] == s) return i;
        throw std::runtime_error("missing");
    };
    Vec v1 = g.sub(g.basis(idx("E2")), g.basis(idx("F3")));
    Vec v2 = g.sub(g.basis(idx("E3")), g.basis(idx("F2")));
    Vec v3 = g.sub(g.basis(idx("H2")), g.basis(idx("H3")));
    auto S = echelonize(g, dec.gf0);
    CHECK(subspace_contains(S, v1));
    CHECK(subspace_contains(S, v2));
    CHECK(subspace_contains(S, v3));
}

TEST_CASE("D(2,1;a)+C") {
    auto tab = Symtab::create();
    LieSuper g = add_center(make_d21(tab), "s");
    g.validate();
    CHECK(g.dim() == 18);
    CHECK(g.dual_coxeter() == Scalar(0));
    auto gd = graded_data(g);
    CHECK(gd.half.size() == 4);
    CHECK(gd.pos.size() == 5);
}

TEST_CASE("kappa supertrace identities") {
    auto tab = Symtab::create();
    LieSuper g = make_spo(2, 3, tab);
    auto gd = graded_data(g);
    auto dec = decompose_gF0(g);
    // kappa_g = 2 h_vee (.|.) on g^F_0 (Prop 5.x proof route)
    Scalar h = g.dual_coxeter();
    for (const auto& a : dec.gF0)
        for (const auto& b : dec.gF0) {
            CHECK(g.kappa_g(a, b) == Scalar(2) * h * g.form(a, b));
        }
    // kappa over the zero subspace vanishes
    CHECK(g.supertrace_form({}, g.basis(0), g.basis(0)) == Scalar(0));
    // kappa_{[f,g_{1/2}]} = -kappa_{g_{1/2}} on g^f_0
    std::vector<Vec> ghalf;
    for (size_t i : gd.half) ghalf.push_back(g.basis(i));
    std::vector<Vec> fghalf;
    for (auto& v : ghalf) fghalf.push_back(g.bracket(g.f, v));
    fghalf = echelonize(g, fghalf).span;
    for (const auto& a : dec.gf0)
        for (const auto& b : dec.gf0)
            CHECK(g.supertrace_form(fghalf, a, b) == -g.supertrace_form(ghalf, a, b));
}

TEST_CASE("generating types") {
    auto tab = Symtab::create();
    {
        LieSuper g = make_sl(2, 1, tab);
        auto t = generating_type(g);
        // W_{N=1}(1, 3/2) as superfields -> W(1, (3/2)^2, 2) as a VA
        CHECK(t.susy[mpq_class(1)] == std::make_pair<size_t, size_t>(1, 0));
        CHECK(t.susy[mpq_class(3, 2)] == std::make_pair<size_t, size_t>(0, 1));
        CHECK(t.susy.count(mpq_class(1, 2)) == 0);
    }
    {
        auto tab2 = Symtab::create();
        LieSuper g = make_spo(2, 3, tab2);
        auto t = generating_type(g);
        // N=3 type: one weight 1/2, two weight 1, one weight 3/2 superfield
        CHECK(t.susy[mpq_class(1, 2)].first + t.susy[mpq_class(1, 2)].second == 1);
        CHECK(t.susy[mpq_class(1)].first + t.susy[mpq_class(1)].second == 2);
        CHECK(t.susy[mpq_class(3, 2)].first + t.susy[mpq_class(3, 2)].second == 1);
        // plain side: W(1^3, (3/2)^3, 2) plus the 1/2 fermion sector
        CHECK(t.plain[mpq_class(1)].first + t.plain[mpq_class(1)].second == 3);
        CHECK(t.plain[mpq_class(3, 2)].first + t.plain[mpq_class(3, 2)].second == 3);
        CHECK(t.plain[mpq_class(2)].first + t.plain[mpq_class(2)].second == 1);
    }
}

TEST_CASE("root classes") {
    auto tab = Symtab::create();
    LieSuper g = make_spo(2, 3, tab);
    auto rc = root_classes(g);
    auto gd = graded_data(g);
    // indecomposables are exactly the degree-1/2 roots
    CHECK(rc.delta.size() == gd.half.size());
}

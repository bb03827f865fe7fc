#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ope/presentation.hpp"

using namespace ope;

namespace {

// rank-1 Heisenberg, [h l h] = l
PresPtr heisenberg() {
    auto tab = Symtab::create();
    auto p = Presentation::create(tab, "H(1)");
    GenId h = p->add_generator("h", Parity::even, 1);
    LambdaPoly br;
    br.add(1, State::vacuum(Scalar(1)));
    p->set_bracket(h, h, br);
    p->finalize();
    return p;
}

// two free fermions with [ph l ps] = 1
PresPtr fermion_pair() {
    auto tab = Symtab::create();
    auto p = Presentation::create(tab, "F(2)");
    GenId a = p->add_generator("ph", Parity::odd, mpq_class(1, 2));
    GenId b = p->add_generator("ps", Parity::odd, mpq_class(1, 2));
    LambdaPoly one;
    one.add(0, State::vacuum(Scalar(1)));
    p->set_bracket(a, b, one);
    p->finalize();
    return p;
}

struct AffineSl2 {
    PresPtr p;
    SymtabPtr tab;
    Scalar k;
    GenId e, h, f;
};

AffineSl2 affine_sl2(bool corrupt = false) {
    AffineSl2 out;
    out.tab = Symtab::create();
    uint32_t kid = out.tab->add_param("k");
    out.k = Scalar::symbol(out.tab, kid);
    auto p = Presentation::create(out.tab, "V^k(sl2)");
    out.e = p->add_generator("e", Parity::even, 1);
    out.h = p->add_generator("h", Parity::even, 1);
    out.f = p->add_generator("f", Parity::even, 1);
    uint32_t tag = p->tag();
    auto gen = [&](GenId g, Scalar c) { return State::generator(g, tag, c); };
    LambdaPoly ef;
    ef.add(0, gen(out.h, Scalar(1)));
    ef.add(1, State::vacuum(corrupt ? out.k * Scalar(2) : out.k));
    p->set_bracket(out.e, out.f, ef);
    LambdaPoly he;
    he.add(0, gen(out.e, corrupt ? Scalar(1) : Scalar(2)));
    p->set_bracket(out.h, out.e, he);
    LambdaPoly hf;
    hf.add(0, gen(out.f, Scalar(-2)));
    p->set_bracket(out.h, out.f, hf);
    LambdaPoly hh;
    hh.add(1, State::vacuum(out.k * Scalar(2)));
    p->set_bracket(out.h, out.h, hh);
    p->finalize();
    out.p = p;
    return out;
}

State rand_state(const PresPtr& p, std::mt19937& rng, Parity parity, int maxlen = 2,
                 int maxder = 1) {
    std::uniform_int_distribution<int> len(1, maxlen), g(0, (int)p->num_gens() - 1),
        d(0, maxder), coeff(-3, 3);
    for (int tries = 0; tries < 200; ++tries) {
        std::vector<Factor> w;
        int n = len(rng);
        for (int i = 0; i < n; ++i) w.push_back({(GenId)g(rng), (uint32_t)d(rng)});
        Parity par = Parity::even;
        for (auto& f : w) par = par ^ p->gen(f.gen).parity;
        if (par != parity) continue;
        int c = coeff(rng);
        if (c == 0) c = 1;
        return p->normalize_word(w, Scalar(c));
    }
    return State();
}

}  // namespace

TEST_CASE("vacuum axioms") {
    auto p = heisenberg();
    State h = p->gen_state("h");
    State vac = State::vacuum();
    CHECK(p->nop(vac, h) == h);
    CHECK(p->nop(h, vac) == h);
    CHECK(p->bracket(vac, h).is_zero());
    CHECK(p->bracket(h, vac).is_zero());
    CHECK(p->translate(vac).is_zero());
}

TEST_CASE("translate is a derivation") {
    auto p = heisenberg();
    State h = p->gen_state("h");
    State hh = p->nop(h, h);
    State lhs = p->translate(hh);
    State rhs = p->nop(p->translate(h), h) + p->nop(h, p->translate(h));
    CHECK(lhs == rhs);
}

TEST_CASE("heisenberg sugawara is virasoro with c=1") {
    auto p = heisenberg();
    State h = p->gen_state("h");
    State L = p->nop(h, h).scaled(Scalar::rational(1, 2));
    // [L l L] = (d + 2l)L + l^3/12, i.e. c = 1
    auto rep = check_virasoro(*p, L);
    CHECK(rep.pass);
    CHECK(rep.central_charge == Scalar(1));
    // and h is primary of weight 1
    CHECK(check_primary(*p, L, h, 1).pass);
    // L_(1) h = 1*h
    CHECK(p->nth_product(L, 1, h) == h);
}

TEST_CASE("fermion pair basics") {
    auto p = fermion_pair();
    State a = p->gen_state("ph"), b = p->gen_state("ps");
    // :ab: + :ba: = int over constant bracket -> 0
    CHECK((p->nop(a, b) + p->nop(b, a)).is_zero());
    // odd square of a single fermion vanishes ([ph l ph] = 0)
    CHECK(p->nop(a, a).is_zero());
    // Virasoro of the bc pair with weights (1/2,1/2): L = 1/2(:(da)b: + :(db)a:)
    State L = (p->nop(p->translate(a), b) + p->nop(p->translate(b), a))
                  .scaled(Scalar::rational(1, 2));
    auto rep = check_virasoro(*p, L);
    CHECK(rep.pass);
    CHECK(rep.central_charge == Scalar(1));  // two half fermions
}

TEST_CASE("quasi-associativity nested heisenberg") {
    // ::hh:h: - :h:hh:: = 2 * d^2 h / 2 (both correction integrals contribute
    // (d^2 h)/2; cross-checked against the mode expansion u_(-1)h for u = :hh:)
    auto p = heisenberg();
    State h = p->gen_state("h");
    State hh = p->nop(h, h);
    CHECK(p->nop(hh, h) - p->nop(h, hh) == p->translate(h, 2));
}

TEST_CASE("skew symmetry rejected on bad table") {
    auto tab = Symtab::create();
    auto p = Presentation::create(tab, "bad-bg");
    GenId b = p->add_generator("b", Parity::even, mpq_class(1, 2));
    GenId c = p->add_generator("c", Parity::even, mpq_class(1, 2));
    LambdaPoly one;
    one.add(0, State::vacuum(Scalar(1)));
    p->set_bracket(b, c, one);
    p->set_bracket(c, b, one);  // should be -1
    CHECK_THROWS_AS(p->finalize(), EngineError);
}

TEST_CASE("affine sl2 jacobi at symbolic level") {
    auto A = affine_sl2();
    State e = A.p->gen_state(A.e), h = A.p->gen_state(A.h), f = A.p->gen_state(A.f);
    CHECK(check_jacobi(*A.p, e, h, f).pass);
    CHECK(check_jacobi(*A.p, e, e, f).pass);
    CHECK(check_jacobi(*A.p, h, h, h).pass);
}

TEST_CASE("corrupted affine table fails jacobi") {
    auto A = affine_sl2(true);
    State e = A.p->gen_state(A.e), h = A.p->gen_state(A.h), f = A.p->gen_state(A.f);
    CHECK_FALSE(check_jacobi(*A.p, h, e, f).pass);
}

TEST_CASE("affine sl2 sugawara") {
    auto A = affine_sl2();
    auto& p = *A.p;
    State e = p.gen_state(A.e), h = p.gen_state(A.h), f = p.gen_state(A.f);
    Scalar inv = (A.k + Scalar(2)).inverse() * Scalar::rational(1, 2);
    State L = (p.nop(e, f) + p.nop(f, e) + p.nop(h, h).scaled(Scalar::rational(1, 2)))
                  .scaled(inv);
    auto rep = check_virasoro(p, L);
    CHECK(rep.pass);
    // c = 3k/(k+2)
    CHECK(rep.central_charge == Scalar(3) * A.k / (A.k + Scalar(2)));
    CHECK(check_primary(p, L, e, 1).pass);
    CHECK(check_primary(p, L, h, 1).pass);
    CHECK(check_primary(p, L, f, 1).pass);
}

TEST_CASE("skew symmetry as a theorem on random states") {
    auto A = affine_sl2();
    std::mt19937 rng(7);
    for (int i = 0; i < 60; ++i) {
        State a = rand_state(A.p, rng, Parity::even);
        State b = rand_state(A.p, rng, Parity::even);
        if (a.is_zero() || b.is_zero()) continue;
        CHECK(check_skew_pair(*A.p, a, b).pass);
    }
    auto F = fermion_pair();
    for (int i = 0; i < 60; ++i) {
        auto par = (i % 2) ? Parity::odd : Parity::even;
        State a = rand_state(F, rng, par);
        State b = rand_state(F, rng, par);
        if (a.is_zero() || b.is_zero()) continue;
        CHECK(check_skew_pair(*F, a, b).pass);
    }
}

TEST_CASE("quasi-commutativity and quasi-associativity identities") {
    auto F = fermion_pair();
    auto A = affine_sl2();
    std::mt19937 rng(11);
    auto run = [&](const PresPtr& p, int iters) {
        for (int i = 0; i < iters; ++i) {
            Parity pa = (i % 2) ? Parity::odd : Parity::even;
            Parity pb = (i % 3 == 0) ? Parity::odd : Parity::even;
            if (!p->find_gen("ph")) pa = pb = Parity::even;
            State a = rand_state(p, rng, pa);
            State b = rand_state(p, rng, pb);
            State c = rand_state(p, rng, Parity::even);
            if (a.is_zero() || b.is_zero() || c.is_zero()) continue;
            bool sgn = pa == Parity::odd && pb == Parity::odd;
            // :ab: - (-1)^{p(a)p(b)} :ba: = int_{-d}^0 [a l b] dl
            State lhs = p->nop(a, b) - (sgn ? -p->nop(b, a) : p->nop(b, a));
            CHECK(lhs == p->neg_del_integral(p->bracket(a, b)));
            // ::ab:c: - :a:bc:: = :(int_0^d dl a)[b l c]: + - :(int_0^d dl b)[a l c]:
            State lhs2 = p->nop(p->nop(a, b), c) - p->nop(a, p->nop(b, c));
            State rhs2;
            LambdaPoly bc = p->bracket(b, c);
            for (size_t j = 0; j < bc.degree_bound(); ++j)
                rhs2 += p->nop(p->translate(a, (unsigned)j + 1), bc.coeff(j))
                            .scaled(Scalar(mpq_class(1) / factorial((unsigned)j + 1)));
            LambdaPoly ac = p->bracket(a, c);
            for (size_t j = 0; j < ac.degree_bound(); ++j) {
                Scalar cc(mpq_class(1) / factorial((unsigned)j + 1));
                if (sgn) cc = -cc;
                rhs2 += p->nop(p->translate(b, (unsigned)j + 1), ac.coeff(j)).scaled(cc);
            }
            CHECK(lhs2 == rhs2);
        }
    };
    run(F, 40);
    run(A.p, 40);
}

TEST_CASE("wick formula as identity") {
    auto A = affine_sl2();
    auto& p = *A.p;
    std::mt19937 rng(23);
    for (int i = 0; i < 40; ++i) {
        std::uniform_int_distribution<int> g(0, 2);
        State a = p.gen_state((GenId)g(rng));
        State b = rand_state(A.p, rng, Parity::even);
        State c = rand_state(A.p, rng, Parity::even);
        if (b.is_zero() || c.is_zero()) continue;
        LambdaPoly lhs = p.bracket(a, p.nop(b, c));
        LambdaPoly rhs;
        LambdaPoly ab = p.bracket(a, b);
        for (size_t j = 0; j < ab.degree_bound(); ++j)
            rhs.add(j, p.nop(ab.coeff(j), c));
        LambdaPoly ac = p.bracket(a, c);
        for (size_t j = 0; j < ac.degree_bound(); ++j) rhs.add(j, p.nop(b, ac.coeff(j)));
        for (size_t j = 0; j < ab.degree_bound(); ++j) {
            if (ab.coeff(j).is_zero()) continue;
            LambdaPoly inner = p.bracket(ab.coeff(j), c);
            for (size_t l = 0; l < inner.degree_bound(); ++l)
                rhs.add(j + l + 1,
                        inner.coeff(l).scaled(Scalar(binomial((unsigned)(j + l + 1),
                                                              (unsigned)j))));
        }
        CHECK(lhs == rhs);
    }
}

TEST_CASE("normal form independent of evaluation strategy") {
    auto A = affine_sl2();
    auto& p = *A.p;
    std::mt19937 rng(31);
    for (int i = 0; i < 30; ++i) {
        State a = rand_state(A.p, rng, Parity::even);
        State b = rand_state(A.p, rng, Parity::even);
        State c = rand_state(A.p, rng, Parity::even);
        if (a.is_zero() || b.is_zero() || c.is_zero()) continue;
        // bottom-up evaluation of a(b c)
        State direct = p.nop(a, p.nop(b, c));
        // top-down: rewrite to (ab)c minus quasi-associativity corrections
        State top = p.nop(p.nop(a, b), c);
        LambdaPoly bc = p.bracket(b, c);
        for (size_t j = 0; j < bc.degree_bound(); ++j)
            top -= p.nop(p.translate(a, (unsigned)j + 1), bc.coeff(j))
                       .scaled(Scalar(mpq_class(1) / factorial((unsigned)j + 1)));
        LambdaPoly ac = p.bracket(a, c);
        for (size_t j = 0; j < ac.degree_bound(); ++j)
            top -= p.nop(p.translate(b, (unsigned)j + 1), ac.coeff(j))
                       .scaled(Scalar(mpq_class(1) / factorial((unsigned)j + 1)));
        CHECK(direct == top);
    }
}

TEST_CASE("tail of sorted word equals insertion from scratch") {
    auto A = affine_sl2();
    auto& p = *A.p;
    std::mt19937 rng(41);
    std::uniform_int_distribution<int> g(0, 2), d(0, 2);
    for (int i = 0; i < 50; ++i) {
        std::vector<Factor> w;
        int n = 1 + (int)(rng() % 3);
        for (int j = 0; j < n; ++j) w.push_back({(GenId)g(rng), (uint32_t)d(rng)});
        State s1 = p.normalize_word(w);
        std::shuffle(w.begin(), w.end(), rng);
        // same word, different insertion order via a shuffled prefix product:
        // evaluate :w0 (w1 (...)): after shuffling changes the word itself, so
        // instead re-normalize the SAME word after roundtripping monomials
        State s2;
        for (const auto& [m, c] : s1.terms()) s2 += p.normalize_word(m.factors(), c);
        CHECK(s1 == s2);  // normal form is a fixed point
    }
}

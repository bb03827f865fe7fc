#pragma once

#include <functional>

#include "ope/liesuper.hpp"
#include "ope/presentation.hpp"
#include "ope/susy.hpp"

namespace ope {

// ---- free fields ----

PresPtr free_fermions(SymtabPtr tab, int n);   // F(n): [ph_i l ph_j] = delta_ij
PresPtr bc_system(SymtabPtr tab, int n);       // E(n): [b_i l c_j] = delta_ij
PresPtr beta_gamma(SymtabPtr tab, int n);      // S(n): [be_i l ga_j] = -delta_ij, [ga l be] = delta
PresPtr heisenberg_rank(SymtabPtr tab, int n); // H(n): [a_i l a_j] = delta_ij l

// ---- affine ----

struct AffineAlg {
    PresPtr p;
    const LieSuper* g = nullptr;
    Scalar level;
    State field(const Vec& a) const;  // linear map g -> weight-1 fields
};
// [a l b] = [a,b] + level (a|b) l
AffineAlg affine(const LieSuper& g, Scalar level, std::string name = "");
// general two-form level (used for V^{tau_k}(g_0))
AffineAlg affine_form(const LieSuper& g, std::function<Scalar(const Vec&, const Vec&)> level,
                      std::string name);
State sugawara(const AffineAlg& a);  // requires level != -h_vee

// ---- SUSY affine ----

struct SusyAffineAlg {
    PresPtr p;
    const LieSuper* g = nullptr;
    Scalar k, hv, K;                   // K = k + h_vee
    std::vector<GenId> bar, dbar;      // per basis index
    State field(const Vec& a) const;   // bar a
    State dfield(const Vec& a) const;  // D bar a
};
SusyAffineAlg susy_affine(const LieSuper& g, Scalar k);
State kac_todorov(const SusyAffineAlg& s);
// a -> sqrt(-1)^{p(a)} D bar a (embedding of V^{k+h}(g))
State embed_affine(const SusyAffineAlg& s, const Vec& a);
// cal J_a = D bar a + (1/2K) sum (-1)^{p(alpha)} : bar u^alpha [a,u_alpha]bar :
State cal_j(const SusyAffineAlg& s, const Vec& a);

// ---- SUSY BRST subcomplex (J building blocks and ghosts) ----

struct Brst {
    PresPtr p;
    LieSuper g;  // owned copy
    GradedData gd;
    Scalar k, hv, K;
    std::vector<GenId> J, DJ;      // aligned with gd.nonneg
    std::vector<GenId> phi, dphi;  // aligned with gd.pos

    State jfield(const Vec& a) const;   // J_{bar a}, a supported on g_{<=0}
    State djfield(const Vec& a) const;  // D J_{bar a}
    State phi_up(const Vec& m) const;   // phi^{bar m}, m in n_-
    State dphi_up(const Vec& m) const;
    // the differential on phi-free states (even derivation)
    State qtilde(const State& s) const;

  private:
    State qtilde_of_gen(GenId g) const;
    mutable std::map<GenId, State> qcache_;
};
Brst brst_subcomplex(const LieSuper& g, Scalar k);

// full complex C_{N=1}(g,f) = V^k_{N=1}(g) (x) F^ch_{N=1}(n): oracle for the
// subcomplex tables, the differential and tau_C
struct FullBrst {
    PresPtr p;
    LieSuper g;
    GradedData gd;
    Scalar k, hv, K;
    std::vector<GenId> bar, dbar;        // affine part, per basis index
    std::vector<GenId> phu, dphu;        // phi^alpha, aligned with gd.pos
    std::vector<GenId> phl, dphl;        // phi_alpha, aligned with gd.pos

    State field(const Vec& a) const;     // bar a
    State dfield(const Vec& a) const;
    State phi_up(const Vec& m) const;        // phi^{bar m}
    State phi_down(const Vec& nvec) const;   // phi_n, n in n
    State d_element() const;                 // the odd element d
    State q(const State& s) const;           // Q = (D d)_(0)
    State tau_g() const;                     // Kac-Todorov part
    State tau_f() const;                     // ghost part
    State tau_c() const;                     // tau_g + tau_F + d(bar H)
    State jfield(const Vec& a) const;        // building block J_{bar a}
};
FullBrst full_brst(const LieSuper& g, Scalar k);

// closed-form central charges (c^k, c^k_{N=1}) of eq:conformal-vector and the
// SUSY analogue
std::pair<Scalar, Scalar> central_charges(const LieSuper& g, const Scalar& k);

// ---- minimal W-algebra generators inside the subcomplex ----

struct MinimalW {
    Brst brst;
    std::vector<Vec> gf0;        // basis of g^f_0
    std::vector<Vec> gf0_dual;   // dual basis wrt the form
    std::vector<Vec> gfm;        // basis of g^f_{-1/2}
    std::vector<Vec> egfm;       // [e, g^f_{-1/2}] basis aligned with gfm
    std::vector<State> hbar;     // weight-1/2 fields J_{bar h}
    State G;                     // superconformal vector of W (solved from tau_C)
    State L;                     // 1/2 D G
    State tau_gf0;               // Kac-Todorov vector of the g^f_0 part

    State calj_sharp(const Vec& a) const;   // Prop type-1 weight-1 field, a in g^f_0
    State gbar(const Vec& b) const;         // eq:G_b, b in g^f_{-1/2}
    State gcal_f() const;                   // G - tau_{g^f_0}
    State gcal(const Vec& b) const;         // weight 3/2 family, b in g^F_{-1/2}
    State calj(const Vec& a) const;         // weight 1 family, a in g^F_0
    Vec sharp(const Vec& a) const;          // orthogonal projection onto g^f_0
    Vec vb(const Vec& b) const;             // v_b in [e, g^f_{-1/2}] with [f,v_b]=b
    Scalar kappa(const Vec& a, const Vec& b) const;  // eq:kappa-for-minimal
    Scalar psi_k(const Vec& a, const Vec& b) const;  // KRW03 form
};
MinimalW minimal_w(const LieSuper& g, Scalar k);

// ---- state transport between presentations ----

// map each generator of src to a state of dst (by GenId); optional scalar
// substitution applied to coefficients first
State push_forward(const Presentation& src, const Presentation& dst,
                   const std::vector<State>& images, const State& s,
                   const std::map<uint32_t, Scalar>* subst = nullptr);

// all PBW monomials of the given weight (and parity, if set)
std::vector<Monomial> weight_basis(const Presentation& p, const mpq_class& w,
                                   std::optional<Parity> par);

// coordinates of target in the span of the given states; nullopt if outside
std::optional<std::vector<Scalar>> expand_in_span(const std::vector<State>& span,
                                                  const State& target);

}  // namespace ope

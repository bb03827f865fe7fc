#pragma once

#include "ope/catalog.hpp"

namespace ope {

// N=2 superconformal algebra as a closed table (section 6.1), generators
// J (1), G (3/2), G2 = DJ (3/2), T = DG/2 (2); central charge c = -3(1+2k).
struct N2Algebra {
    PresPtr p;
    Scalar k, c;
    State J, G, G2, T;
};
N2Algebra n2_algebra(SymtabPtr tab, Scalar k);

// N=3 superconformal algebra from the A.1 relation table over P, X, Y, G.
struct N3Algebra {
    PresPtr p;
    Scalar k, c;
    State P, X, Y, G;
    // A.1.1 dictionary
    State Lt, Gt0, Gtp, Gtm, Jp, Jm, J0, Phi;
};
N3Algebra n3_algebra(SymtabPtr tab, Scalar k);

// A.1.2 N=3 structure for constants b1 != 0, b2, b3
struct N3Structure {
    State G1, G2, G3, J12, J13, J23, K, L;
};
N3Structure n3_structure(const N3Algebra& a, const Scalar& b1, const Scalar& b2,
                         const Scalar& b3);

// Big N=4: W^k_{N=1}(D(2,1;a)+C, f) with the A.3.1 generators as states in
// the BRST subcomplex.
struct BigN4 {
    Brst brst;
    Scalar k, alpha;
    Scalar sqa, sq1a, sq2, sqk;  // adjoined roots
    // A.3.1 generators
    State K1, K2, K3, J1, J2, J3, G, sigma, Dsigma;
    // A.3.2 dictionary
    State L, Gpp, Gmm, Gpm, Gmp, J0, Jp, Jm, J0p, Jpp, Jmp;  // J'^0, J'^+, J'^-
    State spp, smm, spm, smp, xi;
    State Lt, Gtpp, Gtmm, Gtpm, Gtmp, Jt0, Jtp, Jtm, Jt0p, Jtpp, Jtmp;
    State Gtot;
    std::map<std::string, State> dict;  // by name, for reports
};
BigN4 big_n4(SymtabPtr tab);

// A.3.3 N=4 structure fields for a nonzero parameter eta
struct BigN4Structure {
    State G1, G2, G3, G4;
    State J12, J13, J14, J23, J24, J34;
    State s1, s2, s3, s4, xit;
};
BigN4Structure big_n4_structure(const BigN4& b, const Scalar& eta);

// A.3.4 embedding of the N=3 fields (variant 0 = plain, 1 = twisted)
struct N3Embedding {
    State Lt_new, Gtp_new, Gtm_new, Gt0_new, J0_new, Jp_new, Jm_new, Phi_new;
};
N3Embedding n3_in_big(const BigN4& b, const Scalar& a1, const Scalar& a2, bool twisted);

// A.3.5 embeddings of the small N=4 fields (variant 1 or 2, twisted or not)
struct SmallN4Embedding {
    State J0_new, Jp_new, Jm_new, L_new;
    State Gp_new, Gm_new, Gtp_new, Gtm_new;
};
SmallN4Embedding small_n4_in_big(const BigN4& b, const Scalar& a1, const Scalar& a2,
                                 const Scalar& a3, int variant, bool twisted);

// section 7.4 automorphism: the induced map on the subcomplex generators plus
// alpha -> 1/alpha (and sqrt(alpha) -> 1/sqrt(alpha)) on scalars.
struct BigAutomorphism {
    std::vector<State> images;           // per subcomplex GenId
    std::map<uint32_t, Scalar> subst;    // scalar substitution
    State apply(const BigN4& b, const State& s) const;
};
BigAutomorphism big_automorphism(const BigN4& b);

// section 7.3 orbifold generators at n = 1 (plus an independent copy at n=2
// for the nu-linear interpolation of vacuum terms).
struct Orbifold {
    PresPtr p;  // H(4n) (x) F(4n)
    int n = 1;
    std::vector<std::pair<std::string, State>> fields;  // the closed family, orders r,s
    // the designated small N=4 subset
    State J0, Jp, Jm, L, Gp, Gm, Gbp, Gbm;
};
Orbifold orbifold_w(SymtabPtr tab, int n, unsigned max_order);

// the small N=4 closed table with symbolic central parameter nu, obtained by
// interpolating the n = 1 and n = 2 orbifold tables (vacuum terms are linear
// in n); returns a standalone presentation.
struct SmallN4Table {
    PresPtr p;
    Scalar nu;
    State J0, Jp, Jm, L, Gp, Gm, Gbp, Gbm;
};
SmallN4Table small_n4_table(SymtabPtr tab);

}  // namespace ope

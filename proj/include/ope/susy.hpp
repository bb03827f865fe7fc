#pragma once

#include "ope/presentation.hpp"

namespace ope {

// [a L b] = [Da l b] + chi [a l b]: even part E and chi-part O.
struct SuperLambdaPoly {
    LambdaPoly even;  // [Da l b]
    LambdaPoly odd;   // [a l b]
    bool is_zero() const { return even.is_zero() && odd.is_zero(); }
    bool operator==(const SuperLambdaPoly& o) const {
        return even == o.even && odd == o.odd;
    }
    SuperLambdaPoly operator-(const SuperLambdaPoly& o) const {
        return {even - o.even, odd - o.odd};
    }
};

SuperLambdaPoly big_lambda_bracket(const Presentation& p, const State& a, const State& b);

std::string to_string(const Presentation& p, const SuperLambdaPoly& q);

// Expand a super-table entry [a L b] = S + chi T into the four plain brackets
// on the pairs (a,b), (Da,b), (a,Db), (Da,Db) and install them.  a, b are the
// generators, da, db their D-partners; parity signs use p(a).
void install_super_bracket(Presentation& p, GenId a, GenId da, GenId b, GenId db,
                           const LambdaPoly& S, const LambdaPoly& T);

// D-images of gens a->da, da->d(a) are installed separately via set_D.
void install_super_pair(Presentation& p, GenId a, GenId da);

struct SusyReport {
    bool pass = true;
    std::vector<std::string> failures;
    std::string detail;
    void require(bool ok, const std::string& what);
};

// D^2 = d on all generators; optional odd endomorphisms D_i = (g_i)_(0) must
// satisfy [D_i, D_j] = 2 delta_ij d on all generators (or on the designated
// fields, when given).
SusyReport check_supersymmetry(const Presentation& p,
                               const std::vector<State>& odd_fields = {},
                               const std::vector<State>* on_fields = nullptr);

struct SuperconformalReport {
    bool pass = false;
    Scalar central_charge;
    std::vector<std::string> failures;
};

// [tau L tau] = (2d + 3l + chi D) tau + (l^2 chi/3) c, tau_(0) = D on
// generators (or on the designated fields, when given), and L = 1/2 D tau is
// Virasoro with the same central charge.
SuperconformalReport check_superconformal(const Presentation& p, const State& tau,
                                          const std::vector<State>* dcheck = nullptr);

// N=2 quadruple (J, G_i, G_j, L): the full bracket list of the N=2
// superconformal algebra plus G_j = D_i J, G_i = -D_j J.
SusyReport check_n2_quadruple(const Presentation& p, const State& J, const State& Gi,
                              const State& Gj, const State& L, Scalar* c_out = nullptr);

// N=3 superconformal vector K with supersymmetries given by odd fields
// g1,g2,g3 (D_i = (g_i)_(0)).
SusyReport check_n3_vector(const Presentation& p, const State& K, const State& g1,
                           const State& g2, const State& g3, Scalar* c_out = nullptr);

// Definition of an N=4 superconformal vector (Hajda-Kac form); the report
// records residuals, including the lambda*c central-term obstruction.
SusyReport check_hk_n4_vector(const Presentation& p, const State& P,
                              const std::vector<State>& g);

// Coset N=1 structure: hypotheses (i) L^V_(2) L^A = 0, (ii) G^V_(0) G^A =
// 2 L^A, (iii) G^V_(1) G^A = 0, then (L^V-L^A, G^V-G^A) is an N=1 structure.
SusyReport check_coset_pair(const Presentation& p, const State& Lv, const State& Gv,
                            const State& La, const State& Ga);

// sesquilinearity of the Lambda bracket as state identities on a pair
SusyReport check_lambda_sesquilinearity(const Presentation& p, const State& a,
                                        const State& b);

}  // namespace ope

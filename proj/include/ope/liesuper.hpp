#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ope/scalar.hpp"
#include "ope/state.hpp"  // for Parity and EngineError

namespace ope {

using Vec = std::vector<Scalar>;  // coordinates in the algebra basis

// Finite-dimensional Lie superalgebra with an even supersymmetric invariant
// bilinear form, given by structure constants over Scalar.  Distinguished
// data (x, e, f, E, H, F) is installed by the named constructors.
class LieSuper {
  public:
    SymtabPtr tab;
    std::string name;
    std::vector<std::string> basis_names;
    std::vector<Parity> parities;
    // bk[i][j] = coordinates of [b_i, b_j]
    std::vector<std::vector<Vec>> bk;
    std::vector<Vec> gram;  // (b_i | b_j)

    // distinguished elements (coordinate vectors); empty when absent
    Vec x, e, f, E, H, F;
    std::vector<size_t> cartan;  // indices of a distinguished Cartan basis

    size_t dim() const { return basis_names.size(); }
    mpq_class sdim_num() const;  // dim even - dim odd as rational
    Vec basis(size_t i) const;
    Vec zero() const { return Vec(dim(), Scalar(0)); }

    Parity parity_of(const Vec& v) const;  // requires homogeneous
    bool is_zero_vec(const Vec& v) const;

    Vec bracket(const Vec& a, const Vec& b) const;
    Scalar form(const Vec& a, const Vec& b) const;
    std::vector<Vec> ad_matrix(const Vec& a) const;  // columns ad(a) b_i

    // validation: super anticommutativity, super Jacobi (all triples),
    // form invariance and supersymmetry
    void validate() const;

    // eigenvalue of [x, b_i] = g_i b_i; requires ad x diagonal on the basis
    std::vector<mpq_class> grading() const;

    // dual Coxeter number: eigenvalue of a -> 1/2 sum_i [u_i,[u^i, a]]
    Scalar dual_coxeter() const;

    // str_m((ad A)(ad B)) over the span of the given vectors
    Scalar supertrace_form(const std::vector<Vec>& span, const Vec& a, const Vec& b) const;
    Scalar kappa_g(const Vec& a, const Vec& b) const;  // over the whole algebra

    // centralizer of v: kernel of ad v (echelonized basis)
    std::vector<Vec> centralizer(const Vec& v) const;
    // intersection of a list of centralizers with a graded piece
    std::vector<Vec> graded_piece(const mpq_class& deg) const;

    std::vector<Vec> dual_basis(const std::vector<Vec>& vs) const;  // wrt form

    Vec scale(const Vec& v, const Scalar& c) const;
    Vec add(const Vec& a, const Vec& b) const;
    Vec sub(const Vec& a, const Vec& b) const;
    Scalar coord(const Vec& v, size_t i) const { return v.at(i); }
};

// ---- subspaces ----

struct Subspace {
    std::vector<Vec> span;  // echelonized rows
    size_t dim() const { return span.size(); }
};

Subspace echelonize(const LieSuper& g, const std::vector<Vec>& vs);
bool subspace_contains(const Subspace& s, const Vec& v);
std::vector<Vec> intersect(const LieSuper& g, const std::vector<Vec>& a,
                           const std::vector<Vec>& b);
// solve sum c_i vs_i = target; empty optional if not in the span
std::optional<Vec> in_span_coords(const std::vector<Vec>& vs, const Vec& target);

// ---- named constructors ----

LieSuper make_gl(int m, int n, SymtabPtr tab);       // gl(m|n)
LieSuper make_sl(int m, int n, SymtabPtr tab);       // sl(m|n), m != n
LieSuper make_psl(int m, SymtabPtr tab);             // psl(m|m)
LieSuper make_gln(int n, SymtabPtr tab);             // gl(n) plain
LieSuper make_sl2(SymtabPtr tab);                    // sl(2), form = trace form
LieSuper make_so(int n, SymtabPtr tab);              // so(n) split form
LieSuper make_sp(int n, SymtabPtr tab);              // sp(n), n even
// osp-type algebra of a superspace with a symmetric part of dimension msym
// (parity sym_par) and a symplectic part of dimension 2*nsp (other parity).
LieSuper make_osp_like(int msym, int nsp, Parity sym_par, SymtabPtr tab, std::string name);
LieSuper make_osp(int m, int n2, SymtabPtr tab);     // osp(m|n2): C^m even
LieSuper make_spo(int m2, int n, SymtabPtr tab);     // spo(m2|n): C^m2 even symplectic
LieSuper make_d21(SymtabPtr tab);                    // D(2,1;alpha), param "a"
LieSuper add_center(LieSuper g, const std::string& name);  // g + C, (s|s)=1

// install a minimal pair (f odd, F = -[f,f]/2 even) with its sl(2) data;
// throws if the named algebra has no installed recipe
void install_minimal(LieSuper& g);

// ---- derived data for W-algebra constructions ----

struct GradedData {
    std::vector<mpq_class> deg;        // grading of each basis element
    std::vector<size_t> pos;           // basis indices with deg > 0 (I_+)
    std::vector<size_t> half;          // deg = 1/2 subset of I_+
    std::vector<Vec> dual_neg;         // u^alpha with (u^alpha | u_beta) = delta
    std::vector<size_t> nonneg;        // basis indices with deg <= 0 (p)
    std::vector<size_t> zero;          // deg = 0 subset
};
GradedData graded_data(const LieSuper& g);

struct MinimalDecomp {
    std::vector<Vec> gf0;      // centralizer of (x,e,f) in degree 0
    std::vector<Vec> gF0;      // centralizer of (E,H,F) in degree 0
    std::vector<Vec> module;   // complement M with gF0 = gf0 + M
    size_t gf0_even = 0, gf0_odd = 0, gF0_even = 0, gF0_odd = 0, m_even = 0, m_odd = 0;
    // fingerprints of the gf0 action on M
    size_t action_rank = 0;          // dim of the image of gf0 in gl(M)
    std::vector<mpq_class> weights;  // sorted weights of M under the first
                                     // Cartan element of gf0 (if any)
};
MinimalDecomp decompose_gF0(const LieSuper& g);

struct GeneratingType {
    // weight -> (even count, odd count)
    std::map<mpq_class, std::pair<size_t, size_t>> susy;    // from g^f
    std::map<mpq_class, std::pair<size_t, size_t>> plain;   // from g^F
};
GeneratingType generating_type(const LieSuper& g);

// g^f_{-1/2} and related spaces used by the minimal generators
std::vector<Vec> centralizer_graded(const LieSuper& g, const Vec& v, const mpq_class& deg);

// indecomposable positive roots and their equivalence classes modulo the
// root lattice of g_0 (alpha ~ beta iff alpha - beta in Z-span of I_0 roots)
struct RootClasses {
    std::vector<size_t> delta;                // indices into basis (subset of I_+)
    std::vector<std::vector<size_t>> classes; // partition of delta
};
RootClasses root_classes(const LieSuper& g);

}  // namespace ope

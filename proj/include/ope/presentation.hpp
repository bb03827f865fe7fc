#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>

#include "ope/state.hpp"

namespace ope {

struct GenInfo {
    std::string name;
    Parity parity = Parity::even;
    std::optional<mpq_class> weight;
};

class Presentation;
using PresPtr = std::shared_ptr<Presentation>;

// A freely generated vertex superalgebra presented by generators and a closed
// lambda-bracket table.  Brackets on arbitrary states are computed from the
// table by sesquilinearity, the Wick formula and skew-symmetry; normally
// ordered products are reduced to PBW normal form (factors non-increasing
// left to right) via quasi-commutativity and quasi-associativity.
class Presentation : public std::enable_shared_from_this<Presentation> {
  public:
    static PresPtr create(SymtabPtr tab, std::string name = "");

    GenId add_generator(const std::string& name, Parity parity,
                        std::optional<mpq_class> weight = std::nullopt);
    void set_bracket(GenId a, GenId b, LambdaPoly p);
    // Validates skew-symmetry of the stored table (self-pairs and pairs given
    // in both orientations) and freezes the presentation.
    void finalize();

    // optional supersymmetry: D on each generator, extended as odd derivation
    void set_D(GenId a, State da);
    bool has_susy() const { return !dmap_.empty(); }

    uint32_t tag() const { return tag_; }
    const SymtabPtr& symtab() const { return tab_; }
    const std::string& name() const { return name_; }
    size_t num_gens() const { return gens_.size(); }
    const GenInfo& gen(GenId g) const { return gens_.at(g); }
    std::optional<GenId> find_gen(const std::string& name) const;

    Parity parity(const Monomial& m) const;
    Parity parity(const State& s) const;  // requires homogeneous
    std::optional<mpq_class> weight(const Monomial& m) const;

    State gen_state(GenId g, Scalar c = Scalar(1)) const {
        return State::generator(g, tag_, std::move(c));
    }
    State gen_state(const std::string& name) const;

    // ---- core operations ----
    State nop(const State& a, const State& b) const;
    State translate(const State& a) const;
    State translate(const State& a, unsigned n) const;
    LambdaPoly bracket(const State& a, const State& b) const;
    State nth_product(const State& a, unsigned n, const State& b) const;
    // normal form of an arbitrarily ordered word of factors
    State normalize_word(std::span<const Factor> word, Scalar c = Scalar(1)) const;
    State apply_D(const State& a) const;

    // lambda-poly helpers that need translation
    LambdaPoly mul_minus_lambda_pow(const LambdaPoly& p, unsigned m) const;
    LambdaPoly apply_lambda_plus_del(const LambdaPoly& p, unsigned n) const;
    LambdaPoly skew_transform(const LambdaPoly& p, Parity pa, Parity pb) const;
    // int_{-del}^{0} [.] dlambda of a bracket polynomial
    State neg_del_integral(const LambdaPoly& p) const;

    const LambdaPoly& table_bracket(GenId a, GenId b) const;

    size_t memo_size() const;
    void set_depth_limit(unsigned n) { depth_limit_ = n; }
    std::vector<std::pair<Monomial, Monomial>> debug_bracket_keys() const;
    std::vector<std::pair<Monomial, Monomial>> debug_nop_keys() const;

  private:
    Presentation() = default;

    SymtabPtr tab_;
    std::string name_;
    uint32_t tag_ = 0;
    bool finalized_ = false;
    std::vector<GenInfo> gens_;
    std::map<std::string, GenId> by_name_;
    std::map<std::pair<GenId, GenId>, LambdaPoly> table_;
    std::vector<State> dmap_;  // D on generators; indexed by GenId
    unsigned depth_limit_ = 512;

    struct PairKey {
        size_t h1, h2;
        bool operator==(const PairKey& o) const { return h1 == o.h1 && h2 == o.h2; }
    };
    struct PairKeyHash {
        size_t operator()(const PairKey& k) const { return k.h1 * 1099511628211ull ^ k.h2; }
    };
    mutable std::mutex memo_mu_;
    mutable std::unordered_map<uint64_t, std::map<Monomial, State>> insert_memo_;
    mutable std::map<std::pair<Monomial, Monomial>, LambdaPoly> bracket_memo_;
    mutable std::map<std::pair<Monomial, Monomial>, State> nop_memo_;
    mutable std::map<Monomial, State> d_memo_;

    struct Depth;
    State insert_factor(Factor f, const Monomial& n, unsigned depth) const;
    State nop_mono(const Monomial& m, const Monomial& n, unsigned depth) const;
    State nop_state(const State& a, const State& b, unsigned depth) const;
    State nop_factor_state(Factor f, const State& b, unsigned depth) const;
    LambdaPoly bracket_mono(const Monomial& m, const Monomial& n, unsigned depth) const;
    LambdaPoly bracket_state(const State& a, const State& b, unsigned depth) const;
    State d_mono(const Monomial& m, unsigned depth) const;
    void check_tag(const State& s) const;
    void bump(unsigned& depth) const;
};

// ---- derived checks (termcalc operations) ----

struct CheckResult {
    bool pass = true;
    std::string detail;
    State residual;               // zero on pass when meaningful
    LambdaPoly residual_poly;     // for bracket-valued residuals
};

// residual of [a l [b m c]] - [[a l b]_{l+m} c] - (-1)^{p(a)p(b)} [b m [a l c]]
LambdaPoly2 jacobi_residual(const Presentation& p, const State& a, const State& b,
                            const State& c);
CheckResult check_jacobi(const Presentation& p, const State& a, const State& b,
                         const State& c);

// pass iff [L l a] = (d + Delta*l) a; reports higher-lambda anomalies
struct PrimaryReport {
    bool pass = false;
    bool quasi_primary = false;  // equal up to lambda^2 and higher anomalies
    LambdaPoly anomaly;          // terms of degree >= 2
    std::string detail;
};
PrimaryReport check_primary(const Presentation& p, const State& L, const State& a,
                            const mpq_class& delta);

// [L l L] = (d + 2 l)L + c/12 l^3 ; returns c when L is Virasoro
struct VirasoroReport {
    bool pass = false;
    Scalar central_charge;
    std::string detail;
};
VirasoroReport check_virasoro(const Presentation& p, const State& L);

CheckResult check_skew_pair(const Presentation& p, const State& a, const State& b);

std::string to_string(const Presentation& p, const Monomial& m);
std::string to_string(const Presentation& p, const State& s);
std::string to_string(const Presentation& p, const LambdaPoly& q);
std::string to_string(const Presentation& p, const LambdaPoly2& q);

// helper used across catalog/liesuper: solve M x = rhs over Scalar.
// Returns one solution plus a basis of the kernel; empty optional if
// inconsistent.
struct LinSolveResult {
    bool consistent = false;
    std::vector<Scalar> particular;             // size = #cols
    std::vector<std::vector<Scalar>> kernel;    // basis vectors
};
LinSolveResult linsolve(std::vector<std::vector<Scalar>> m, std::vector<Scalar> rhs);

}  // namespace ope

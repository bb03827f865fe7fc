#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace ope {

struct ScalarError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exact Gaussian rational re + im*i.
struct GaussQ {
    mpq_class re, im;

    GaussQ() : re(0), im(0) {}
    GaussQ(long n) : re(n), im(0) {}
    GaussQ(const mpq_class& r) : re(r), im(0) {}
    GaussQ(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {}

    static GaussQ unit_i() { return GaussQ(mpq_class(0), mpq_class(1)); }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_one() const { return re == 1 && im == 0; }

    GaussQ operator-() const { return GaussQ(-re, -im); }
    GaussQ operator+(const GaussQ& o) const { return GaussQ(re + o.re, im + o.im); }
    GaussQ operator-(const GaussQ& o) const { return GaussQ(re - o.re, im - o.im); }
    GaussQ operator*(const GaussQ& o) const {
        return GaussQ(re * o.re - im * o.im, re * o.im + im * o.re);
    }
    GaussQ inverse() const {
        mpq_class n = re * re + im * im;
        if (n == 0) throw ScalarError("division by zero Gaussian rational");
        return GaussQ(re / n, -im / n);
    }
    GaussQ operator/(const GaussQ& o) const { return *this * o.inverse(); }

    bool operator==(const GaussQ& o) const { return re == o.re && im == o.im; }
    bool operator!=(const GaussQ& o) const { return !(*this == o); }

    std::string str() const;
};

// Symbol registry: free parameters and root symbols (r with r^2 = P over
// earlier symbols).  Write-once at setup, read-only afterwards.
class Symtab;
using SymtabPtr = std::shared_ptr<Symtab>;

// Sparse multivariate polynomial over GaussQ.  Exponent vectors are indexed
// by symbol id; shorter vectors are implicitly zero-padded.  Terms are kept
// sorted in descending lexicographic order on the exponent vector.
class Poly {
  public:
    using Mono = std::vector<uint32_t>;

    Poly() = default;
    explicit Poly(GaussQ c);
    static Poly symbol(uint32_t id);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    GaussQ constant_value() const;  // requires is_constant()

    const std::vector<std::pair<Mono, GaussQ>>& terms() const { return terms_; }

    // Degree in a given symbol.
    uint32_t degree(uint32_t id) const;
    uint32_t max_symbol() const;  // 0 if constant; else 1 + highest id used

    Poly operator-() const;
    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly mul_raw(const Poly& o) const;  // no root reduction
    Poly scaled(const GaussQ& c) const;

    bool operator==(const Poly& o) const { return terms_ == o.terms_; }

    // Root-exponent reduction r^2 -> rel(r) against the registry.
    Poly reduced(const Symtab& tab) const;

    static Poly mul(const Poly& a, const Poly& b, const Symtab& tab);

    // Exact division (throws if not divisible).
    static Poly divexact(const Poly& a, const Poly& b);
    static Poly gcd(const Poly& a, const Poly& b);

    GaussQ leading_coeff() const;
    std::string str(const Symtab& tab) const;

    // Decompose along monomials in symbols >= first_root; returns the list of
    // (root-part monomial, coefficient polynomial in symbols < first_root).
    std::vector<std::pair<Mono, Poly>> split_by(uint32_t first_root) const;

    static Poly from_terms(std::vector<std::pair<Mono, GaussQ>> t);

  private:
    std::vector<std::pair<Mono, GaussQ>> terms_;
    void normalize();
    friend class Scalar;
};

struct SymbolInfo {
    std::string name;
    bool is_root = false;
    Poly relation;  // root^2 = relation, over earlier symbols
};

class Symtab : public std::enable_shared_from_this<Symtab> {
  public:
    static SymtabPtr create() { return std::make_shared<Symtab>(); }

    uint32_t add_param(const std::string& name);
    // relation must be a polynomial over previously declared symbols.
    uint32_t add_root(const std::string& name, const Poly& relation);

    std::optional<uint32_t> find(const std::string& name) const;
    const SymbolInfo& info(uint32_t id) const { return syms_.at(id); }
    size_t size() const { return syms_.size(); }

  private:
    std::vector<SymbolInfo> syms_;
    std::map<std::string, uint32_t> by_name_;
};

// Exact element of Q(i)(params)[roots], stored as num/den with den root-free,
// gcd-reduced and monic in the fixed term order.  Equality is representation
// identity.
class Scalar {
  public:
    Scalar() : num_(), den_(GaussQ(1)) {}
    Scalar(long n) : num_(GaussQ(n)), den_(GaussQ(1)) {}
    Scalar(const GaussQ& c) : num_(c), den_(GaussQ(1)) {}
    Scalar(const mpq_class& q) : num_(GaussQ(q)), den_(GaussQ(1)) {}

    static Scalar integer(long n) { return Scalar(n); }
    static Scalar rational(long p, long q) { return Scalar(mpq_class(p, q)); }
    static Scalar unit_i(const SymtabPtr& tab) { return Scalar(GaussQ::unit_i()).with(tab); }
    static Scalar symbol(const SymtabPtr& tab, uint32_t id);
    static Scalar symbol(const SymtabPtr& tab, const std::string& name);

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const;
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    GaussQ constant_value() const;

    Scalar operator-() const;
    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar& operator/=(const Scalar& o) { return *this = *this / o; }
    Scalar inverse() const;
    Scalar pow(long e) const;

    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }
    bool operator<(const Scalar& o) const;  // arbitrary total order (for maps)

    // Substitution of symbols by scalars.  Unbound roots keep their relation,
    // which must be unaffected by the bindings; bound roots are verified
    // against the substituted relation.
    Scalar substitute(const std::map<uint32_t, Scalar>& bindings) const;

    const SymtabPtr& symtab() const { return tab_; }
    Scalar with(const SymtabPtr& tab) const;

    std::string str() const;
    size_t hash() const;

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    static Scalar make(const SymtabPtr& tab, Poly num, Poly den);

  private:
    SymtabPtr tab_;  // null for plain constants
    Poly num_, den_;

    void canonicalize();
    static const Symtab& require_tab(const Scalar& a, const Scalar& b, const Symtab*& out);
};

// Expression-grammar serialization (ints, i, names, + - * / ^, parentheses).
std::string to_expr(const Scalar& s);
Scalar parse_scalar(const SymtabPtr& tab, const std::string& text);

}  // namespace ope

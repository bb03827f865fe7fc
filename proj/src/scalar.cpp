#include "ope/scalar.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <functional>
#include <sstream>

namespace ope {

namespace {

// Lexicographic comparison on declaration order, implicit zero padding.
int cmp_mono(const Poly::Mono& a, const Poly::Mono& b) {
    size_t n = std::max(a.size(), b.size());
    for (size_t i = 0; i < n; ++i) {
        uint32_t x = i < a.size() ? a[i] : 0;
        uint32_t y = i < b.size() ? b[i] : 0;
        if (x != y) return x < y ? -1 : 1;
    }
    return 0;
}

void trim(Poly::Mono& m) {
    while (!m.empty() && m.back() == 0) m.pop_back();
}

Poly::Mono mono_mul(const Poly::Mono& a, const Poly::Mono& b) {
    Poly::Mono r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return r;
}

bool mono_divides(const Poly::Mono& a, const Poly::Mono& b) {
    // does a divide b
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > (i < b.size() ? b[i] : 0)) return false;
    return true;
}

Poly::Mono mono_div(const Poly::Mono& b, const Poly::Mono& a) {
    Poly::Mono r = b;
    for (size_t i = 0; i < a.size(); ++i) r[i] -= a[i];
    trim(r);
    return r;
}

}  // namespace

std::string GaussQ::str() const {
    std::ostringstream os;
    if (im == 0) {
        os << re;
    } else if (re == 0) {
        if (im == 1)
            os << "i";
        else if (im == -1)
            os << "-i";
        else
            os << im << "*i";
    } else {
        os << "(" << re;
        if (im > 0) os << "+";
        if (im == 1)
            os << "i";
        else if (im == -1)
            os << "-i";
        else
            os << im << "*i";
        os << ")";
    }
    return os.str();
}

Poly::Poly(GaussQ c) {
    if (!c.is_zero()) terms_.push_back({Mono{}, std::move(c)});
}

Poly Poly::symbol(uint32_t id) {
    Poly p;
    Mono m(id + 1, 0);
    m[id] = 1;
    p.terms_.push_back({std::move(m), GaussQ(1)});
    return p;
}

Poly Poly::from_terms(std::vector<std::pair<Mono, GaussQ>> t) {
    Poly p;
    p.terms_ = std::move(t);
    p.normalize();
    return p;
}

void Poly::normalize() {
    for (auto& [m, c] : terms_) trim(m);
    std::sort(terms_.begin(), terms_.end(),
              [](const auto& a, const auto& b) { return cmp_mono(a.first, b.first) > 0; });
    std::vector<std::pair<Mono, GaussQ>> out;
    for (auto& t : terms_) {
        if (!out.empty() && cmp_mono(out.back().first, t.first) == 0)
            out.back().second = out.back().second + t.second;
        else
            out.push_back(std::move(t));
    }
    out.erase(std::remove_if(out.begin(), out.end(),
                             [](const auto& t) { return t.second.is_zero(); }),
              out.end());
    terms_ = std::move(out);
}

bool Poly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].first.empty());
}

GaussQ Poly::constant_value() const {
    if (terms_.empty()) return GaussQ(0);
    assert(is_constant());
    return terms_[0].second;
}

uint32_t Poly::degree(uint32_t id) const {
    uint32_t d = 0;
    for (const auto& [m, c] : terms_)
        if (id < m.size()) d = std::max(d, m[id]);
    return d;
}

uint32_t Poly::max_symbol() const {
    uint32_t n = 0;
    for (const auto& [m, c] : terms_) n = std::max<uint32_t>(n, (uint32_t)m.size());
    return n;
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

Poly Poly::operator+(const Poly& o) const {
    std::vector<std::pair<Mono, GaussQ>> t = terms_;
    t.insert(t.end(), o.terms_.begin(), o.terms_.end());
    return from_terms(std::move(t));
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::mul_raw(const Poly& o) const {
    std::vector<std::pair<Mono, GaussQ>> t;
    t.reserve(terms_.size() * o.terms_.size());
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_) t.push_back({mono_mul(ma, mb), ca * cb});
    return from_terms(std::move(t));
}

Poly Poly::scaled(const GaussQ& c) const {
    if (c.is_zero()) return Poly();
    Poly r = *this;
    for (auto& [m, cc] : r.terms_) cc = cc * c;
    return r;
}

Poly Poly::reduced(const Symtab& tab) const {
    // rewrite r^e (e >= 2) via r^2 = rel(r), highest symbol first
    Poly cur = *this;
    for (uint32_t id = cur.max_symbol(); id-- > 0;) {
        if (id >= tab.size() || !tab.info(id).is_root) continue;
        if (cur.degree(id) < 2) continue;
        const Poly& rel = tab.info(id).relation;
        std::vector<std::pair<Mono, GaussQ>> keep;
        Poly acc;
        for (const auto& [m, c] : cur.terms_) {
            uint32_t e = id < m.size() ? m[id] : 0;
            if (e < 2) {
                keep.push_back({m, c});
                continue;
            }
            Mono base = m;
            base[id] = e % 2;
            Poly piece = from_terms({{base, c}});
            for (uint32_t q = 0; q < e / 2; ++q) piece = piece.mul_raw(rel);
            acc = acc + piece;
        }
        cur = from_terms(std::move(keep)) + acc;
        // rel may itself contain lower roots with high powers; loop continues downward,
        // and rel never reintroduces id or higher.
        if (cur.degree(id) >= 2) {
            // relation contained the root itself (invalid); guarded at declaration
            throw ScalarError("root relation not reduced");
        }
    }
    return cur;
}

Poly Poly::mul(const Poly& a, const Poly& b, const Symtab& tab) {
    return a.mul_raw(b).reduced(tab);
}

GaussQ Poly::leading_coeff() const {
    if (terms_.empty()) return GaussQ(0);
    return terms_[0].second;
}

std::vector<std::pair<Poly::Mono, Poly>> Poly::split_by(uint32_t first_root) const {
    std::map<Mono, std::vector<std::pair<Mono, GaussQ>>> groups;
    for (const auto& [m, c] : terms_) {
        Mono root_part(m.size(), 0), rest(m.size(), 0);
        for (size_t i = 0; i < m.size(); ++i)
            (i >= first_root ? root_part[i] : rest[i]) = m[i];
        trim(root_part);
        trim(rest);
        groups[root_part].push_back({rest, c});
    }
    std::vector<std::pair<Mono, Poly>> out;
    for (auto& [rp, ts] : groups) out.push_back({rp, from_terms(std::move(ts))});
    return out;
}

// ---- division and gcd (root-free polynomials) ----

Poly Poly::divexact(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw ScalarError("polynomial division by zero");
    if (b.is_constant()) return a.scaled(b.constant_value().inverse());
    Poly rem = a, quot;
    while (!rem.is_zero()) {
        const auto& lt_r = rem.terms_[0];
        const auto& lt_b = b.terms_[0];
        if (!mono_divides(lt_b.first, lt_r.first))
            throw ScalarError("inexact polynomial division");
        Mono q = mono_div(lt_r.first, lt_b.first);
        GaussQ qc = lt_r.second / lt_b.second;
        Poly t = from_terms({{q, qc}});
        quot = quot + t;
        rem = rem - t.mul_raw(b);
    }
    return quot;
}

namespace {

// dense-in-main-variable view
std::vector<Poly> coeffs_in(const Poly& p, uint32_t v) {
    std::vector<Poly> out(p.degree(v) + 1);
    std::vector<std::vector<std::pair<Poly::Mono, GaussQ>>> buckets(p.degree(v) + 1);
    for (const auto& [m, c] : p.terms()) {
        uint32_t e = v < m.size() ? m[v] : 0;
        Poly::Mono r = m;
        if (v < r.size()) r[v] = 0;
        trim(r);
        buckets[e].push_back({r, c});
    }
    for (size_t e = 0; e < buckets.size(); ++e) out[e] = Poly::from_terms(std::move(buckets[e]));
    return out;
}

Poly assemble(const std::vector<Poly>& cs, uint32_t v) {
    std::vector<std::pair<Poly::Mono, GaussQ>> t;
    for (size_t e = 0; e < cs.size(); ++e) {
        for (const auto& [m, c] : cs[e].terms()) {
            Poly::Mono mm = m;
            if (mm.size() <= v) mm.resize(v + 1, 0);
            mm[v] += (uint32_t)e;
            t.push_back({mm, c});
        }
    }
    return Poly::from_terms(std::move(t));
}

uint32_t main_var(const Poly& p) {
    uint32_t n = p.max_symbol();
    while (n-- > 0)
        if (p.degree(n) > 0) return n;
    return UINT32_MAX;  // constant
}

Poly content_in(const Poly& p, uint32_t v) {
    Poly g;
    for (const auto& c : coeffs_in(p, v))
        if (!c.is_zero()) g = Poly::gcd(g, c);
    return g;
}

// pseudo-remainder of a by b in variable v
Poly prem(const Poly& a, const Poly& b, uint32_t v) {
    auto ca = coeffs_in(a, v);
    auto cb = coeffs_in(b, v);
    int da = (int)ca.size() - 1, db = (int)cb.size() - 1;
    assert(db >= 0 && !cb[db].is_zero());
    Poly lb = cb[db];
    Poly r = a;
    while (true) {
        auto cr = coeffs_in(r, v);
        int dr = (int)cr.size() - 1;
        while (dr >= 0 && cr[dr].is_zero()) --dr;
        if (dr < db || r.is_zero()) return r;
        // r = lb*r - lead(r)*x^(dr-db)*b
        Poly shift_b;
        {
            auto cs = std::vector<Poly>(dr - db, Poly());
            for (auto& c : cb) cs.push_back(c);
            shift_b = assemble(cs, v);
        }
        r = r.scaled(GaussQ(1)).mul_raw(lb) - cr[dr].mul_raw(shift_b);
    }
}

}  // namespace

Poly Poly::gcd(const Poly& a, const Poly& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.is_constant() || b.is_constant()) return Poly(GaussQ(1));
    uint32_t va = main_var(a), vb = main_var(b);
    uint32_t v = std::max(va, vb);
    if (va != vb) {
        // gcd(a, b) divides the content of the one with the higher variable
        const Poly& high = va > vb ? a : b;
        const Poly& low = va > vb ? b : a;
        return gcd(content_in(high, v), low);
    }
    Poly ca = content_in(a, v), cb = content_in(b, v);
    Poly A = divexact(a, ca), B = divexact(b, cb);
    auto deg = [&](const Poly& p) { return (int)p.degree(v); };
    if (deg(A) < deg(B)) std::swap(A, B);
    while (!B.is_zero()) {
        Poly R = prem(A, B, v);
        A = B;
        if (R.is_zero()) {
            B = Poly();
        } else {
            Poly c = content_in(R, v);
            B = divexact(R, c);
        }
    }
    Poly cg = gcd(ca, cb);
    Poly g = A.mul_raw(cg);
    // normalize leading coefficient to 1
    return g.scaled(g.leading_coeff().inverse());
}

std::string Poly::str(const Symtab& tab) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        std::string cs = c.str();
        if (!first) {
            if (cs.size() && cs[0] == '-' ) {
                os << " - ";
                cs = cs.substr(1);
            } else {
                os << " + ";
            }
        }
        first = false;
        bool has_sym = !m.empty();
        bool coeff_one = (cs == "1"), coeff_mone = false;
        if (!coeff_one && cs == "-1" ) { coeff_mone = true; }
        if (coeff_mone && has_sym) { os << "-"; }
        else if (!coeff_one || !has_sym) os << cs;
        bool need_star = (!coeff_one && !(coeff_mone && has_sym)) || !has_sym ? !m.empty() : false;
        if (coeff_one && has_sym) need_star = false;
        bool printed_any = false;
        for (size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (need_star || printed_any) os << "*";
            need_star = false;
            os << tab.info((uint32_t)i).name;
            if (m[i] > 1) os << "^" << m[i];
            printed_any = true;
        }
    }
    return os.str();
}

// ---- Symtab ----

uint32_t Symtab::add_param(const std::string& name) {
    auto it = by_name_.find(name);
    if (it != by_name_.end()) {
        if (syms_[it->second].is_root) throw ScalarError("symbol '" + name + "' already a root");
        return it->second;
    }
    syms_.push_back({name, false, Poly()});
    by_name_[name] = (uint32_t)(syms_.size() - 1);
    return (uint32_t)(syms_.size() - 1);
}

uint32_t Symtab::add_root(const std::string& name, const Poly& relation) {
    if (relation.max_symbol() > syms_.size())
        throw ScalarError("root relation uses undeclared symbols");
    Poly rel = relation.reduced(*this);
    auto it = by_name_.find(name);
    if (it != by_name_.end()) {
        const SymbolInfo& si = syms_[it->second];
        if (!si.is_root || !(si.relation == rel))
            throw ScalarError("conflicting redeclaration of root '" + name + "'");
        return it->second;
    }
    syms_.push_back({name, true, rel});
    by_name_[name] = (uint32_t)(syms_.size() - 1);
    return (uint32_t)(syms_.size() - 1);
}

std::optional<uint32_t> Symtab::find(const std::string& name) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
}

// ---- Scalar ----

Scalar Scalar::symbol(const SymtabPtr& tab, uint32_t id) {
    Scalar s;
    s.tab_ = tab;
    s.num_ = Poly::symbol(id);
    s.den_ = Poly(GaussQ(1));
    return s;
}

Scalar Scalar::symbol(const SymtabPtr& tab, const std::string& name) {
    auto id = tab->find(name);
    if (!id) throw ScalarError("unknown symbol '" + name + "'");
    return symbol(tab, *id);
}

Scalar Scalar::with(const SymtabPtr& tab) const {
    Scalar s = *this;
    s.tab_ = tab;
    return s;
}

Scalar Scalar::make(const SymtabPtr& tab, Poly num, Poly den) {
    Scalar s;
    s.tab_ = tab;
    s.num_ = std::move(num);
    s.den_ = std::move(den);
    s.canonicalize();
    return s;
}

bool Scalar::is_one() const {
    return num_.is_constant() && den_.is_constant() && !num_.is_zero() &&
           num_.constant_value() == den_.constant_value();
}

GaussQ Scalar::constant_value() const {
    if (!is_constant()) throw ScalarError("scalar is not constant: " + str());
    if (num_.is_zero()) return GaussQ(0);
    return num_.constant_value() / den_.constant_value();
}

const Symtab& Scalar::require_tab(const Scalar& a, const Scalar& b, const Symtab*& out) {
    static Symtab empty;
    if (a.tab_ && b.tab_ && a.tab_ != b.tab_)
        throw ScalarError("scalars from different symbol registries");
    out = a.tab_ ? a.tab_.get() : (b.tab_ ? b.tab_.get() : &empty);
    return *out;
}

void Scalar::canonicalize() {
    static Symtab empty;
    const Symtab& tab = tab_ ? *tab_ : empty;
    num_ = num_.reduced(tab);
    den_ = den_.reduced(tab);
    if (den_.is_zero()) throw ScalarError("division by zero scalar");
    if (num_.is_zero()) {
        den_ = Poly(GaussQ(1));
        return;
    }
    // clear root symbols from the denominator, highest first
    for (uint32_t id = den_.max_symbol(); id-- > 0;) {
        if (id >= tab.size() || !tab.info(id).is_root) continue;
        if (den_.degree(id) == 0) continue;
        // den = d0 + r*d1 ; multiply by d0 - r*d1
        std::vector<std::pair<Poly::Mono, GaussQ>> conj_terms;
        for (const auto& [m, c] : den_.terms()) {
            uint32_t e = id < m.size() ? m[id] : 0;
            conj_terms.push_back({m, e % 2 ? -c : c});
        }
        Poly conj = Poly::from_terms(std::move(conj_terms));
        den_ = Poly::mul(den_, conj, tab);
        num_ = Poly::mul(num_, conj, tab);
        if (den_.is_zero())
            throw ScalarError("division by zero divisor of a root relation");
    }
    // gcd-reduce: denominator vs root-free content of numerator
    uint32_t first_root = (uint32_t)tab.size();
    for (uint32_t i = 0; i < tab.size(); ++i)
        if (tab.info(i).is_root) {
            first_root = i;
            break;
        }
    Poly g = den_;
    for (const auto& [rp, c] : num_.split_by(first_root)) g = Poly::gcd(g, c);
    if (!g.is_constant()) {
        num_ = Poly::divexact(num_, g);
        den_ = Poly::divexact(den_, g);
    }
    GaussQ lc = den_.leading_coeff();
    if (!lc.is_one()) {
        GaussQ inv = lc.inverse();
        num_ = num_.scaled(inv);
        den_ = den_.scaled(inv);
    }
}

Scalar Scalar::operator-() const {
    Scalar r = *this;
    r.num_ = -r.num_;
    return r;
}

Scalar Scalar::operator+(const Scalar& o) const {
    const Symtab* t;
    require_tab(*this, o, t);
    Scalar r;
    r.tab_ = tab_ ? tab_ : o.tab_;
    r.num_ = Poly::mul(num_, o.den_, *t) + Poly::mul(o.num_, den_, *t);
    r.den_ = Poly::mul(den_, o.den_, *t);
    r.canonicalize();
    return r;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
    const Symtab* t;
    require_tab(*this, o, t);
    Scalar r;
    r.tab_ = tab_ ? tab_ : o.tab_;
    r.num_ = Poly::mul(num_, o.num_, *t);
    r.den_ = Poly::mul(den_, o.den_, *t);
    r.canonicalize();
    return r;
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw ScalarError("inverse of zero scalar");
    Scalar r = *this;
    std::swap(r.num_, r.den_);
    r.canonicalize();
    return r;
}

Scalar Scalar::operator/(const Scalar& o) const {
    if (o.is_zero()) throw ScalarError("division by zero scalar");
    return *this * o.inverse();
}

Scalar Scalar::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Scalar r(1);
    r.tab_ = tab_;
    Scalar base = *this;
    while (e > 0) {
        if (e & 1) r = r * base;
        base = e > 1 ? base * base : base;
        e >>= 1;
    }
    return r;
}

bool Scalar::operator==(const Scalar& o) const {
    if (tab_ && o.tab_ && tab_ != o.tab_) return false;
    return num_ == o.num_ && den_ == o.den_;
}

namespace {
int cmp_gauss(const GaussQ& a, const GaussQ& b) {
    int c = cmp(a.re, b.re);
    if (c) return c;
    return cmp(a.im, b.im);
}
int cmp_poly(const Poly& a, const Poly& b) {
    const auto& ta = a.terms();
    const auto& tb = b.terms();
    if (ta.size() != tb.size()) return ta.size() < tb.size() ? -1 : 1;
    for (size_t i = 0; i < ta.size(); ++i) {
        int c = cmp_mono(ta[i].first, tb[i].first);
        if (c) return c;
        c = cmp_gauss(ta[i].second, tb[i].second);
        if (c) return c;
    }
    return 0;
}
}  // namespace

bool Scalar::operator<(const Scalar& o) const {
    int c = cmp_poly(num_, o.num_);
    if (c) return c < 0;
    return cmp_poly(den_, o.den_) < 0;
}

size_t Scalar::hash() const {
    auto h_mpq = [](const mpq_class& q) -> size_t {
        size_t h = 1469598103934665603ull;
        auto mix = [&](size_t v) { h = (h ^ v) * 1099511628211ull; };
        mix(mpz_get_ui(q.get_num().get_mpz_t()));
        mix((size_t)mpz_sgn(q.get_num().get_mpz_t()) + 7);
        mix(mpz_get_ui(q.get_den().get_mpz_t()));
        return h;
    };
    size_t h = 14695981039346656037ull;
    auto mix = [&](size_t v) { h = (h ^ v) * 1099511628211ull; };
    for (const auto& [m, c] : num_.terms()) {
        for (auto e : m) mix(e + 1);
        mix(h_mpq(c.re));
        mix(h_mpq(c.im));
        mix(0xabcd);
    }
    mix(0x1234);
    for (const auto& [m, c] : den_.terms()) {
        for (auto e : m) mix(e + 1);
        mix(h_mpq(c.re));
        mix(h_mpq(c.im));
        mix(0xdcba);
    }
    return h;
}

Scalar Scalar::substitute(const std::map<uint32_t, Scalar>& bindings) const {
    static Symtab empty;
    const Symtab& tab = tab_ ? *tab_ : empty;
    SymtabPtr out_tab = tab_;
    for (const auto& [id, v] : bindings)
        if (v.symtab()) out_tab = v.symtab();

    // verify root consistency
    std::function<Scalar(const Poly&)> eval = [&](const Poly& p) -> Scalar {
        Scalar acc(0);
        acc.tab_ = out_tab;
        for (const auto& [m, c] : p.terms()) {
            Scalar t(c);
            t.tab_ = out_tab;
            for (size_t i = 0; i < m.size(); ++i) {
                if (m[i] == 0) continue;
                auto it = bindings.find((uint32_t)i);
                Scalar sv = it != bindings.end() ? it->second.with(out_tab)
                                                 : Scalar::symbol(out_tab, (uint32_t)i);
                t = t * sv.pow(m[i]);
            }
            acc = acc + t;
        }
        return acc;
    };

    for (uint32_t id = 0; id < tab.size(); ++id) {
        if (!tab.info(id).is_root) continue;
        bool used = num_.degree(id) > 0 || den_.degree(id) > 0;
        auto it = bindings.find(id);
        if (it != bindings.end()) {
            Scalar rel_img = eval(tab.info(id).relation);
            Scalar sq = it->second.with(out_tab) * it->second.with(out_tab);
            if (!(sq == rel_img))
                throw ScalarError("inconsistent root binding for '" + tab.info(id).name + "'");
        } else if (used) {
            // unbound root: its relation must be unaffected by the bindings
            Scalar rel_img = eval(tab.info(id).relation);
            Scalar rel_same = Scalar::make(out_tab, tab.info(id).relation, Poly(GaussQ(1)));
            if (out_tab != tab_ || !(rel_img == rel_same))
                throw ScalarError("substitution does not admit root '" + tab.info(id).name + "'");
        }
    }
    Scalar n = eval(num_), d = eval(den_);
    return n / d;
}

std::string Scalar::str() const {
    static Symtab empty;
    const Symtab& tab = tab_ ? *tab_ : empty;
    if (den_.is_constant() && !den_.is_zero() && den_.constant_value().is_one())
        return num_.str(tab);
    std::string n = num_.str(tab);
    std::string d = den_.str(tab);
    return "(" + n + ")/(" + d + ")";
}

std::string to_expr(const Scalar& s) { return s.str(); }

// ---- tiny recursive-descent parser for the expression grammar ----

namespace {

struct Lexer {
    std::string s;
    size_t pos = 0;
    void skip() {
        while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
    }
    bool eat(char c) {
        skip();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    char peek() {
        skip();
        return pos < s.size() ? s[pos] : '\0';
    }
};

Scalar parse_expr(Lexer& lx, const SymtabPtr& tab);

Scalar parse_atom(Lexer& lx, const SymtabPtr& tab) {
    lx.skip();
    if (lx.eat('(')) {
        Scalar e = parse_expr(lx, tab);
        if (!lx.eat(')')) throw ScalarError("expected ')' in scalar expression");
        return e;
    }
    if (lx.eat('-')) return -parse_atom(lx, tab);
    char c = lx.peek();
    if (std::isdigit((unsigned char)c)) {
        std::string num;
        while (lx.pos < lx.s.size() && std::isdigit((unsigned char)lx.s[lx.pos]))
            num += lx.s[lx.pos++];
        return Scalar(mpq_class(num)).with(tab);
    }
    if (std::isalpha((unsigned char)c) || c == '_') {
        std::string name;
        while (lx.pos < lx.s.size() &&
               (std::isalnum((unsigned char)lx.s[lx.pos]) || lx.s[lx.pos] == '_' ||
                lx.s[lx.pos] == '\''))
            name += lx.s[lx.pos++];
        if (name == "i") return Scalar::unit_i(tab);
        return Scalar::symbol(tab, name);
    }
    throw ScalarError("unexpected character in scalar expression: " + std::string(1, c));
}

Scalar parse_pow(Lexer& lx, const SymtabPtr& tab) {
    Scalar b = parse_atom(lx, tab);
    if (lx.eat('^')) {
        bool neg = lx.eat('-');
        std::string num;
        lx.skip();
        while (lx.pos < lx.s.size() && std::isdigit((unsigned char)lx.s[lx.pos]))
            num += lx.s[lx.pos++];
        if (num.empty()) throw ScalarError("expected integer exponent");
        long e = std::stol(num);
        return b.pow(neg ? -e : e);
    }
    return b;
}

Scalar parse_term(Lexer& lx, const SymtabPtr& tab) {
    Scalar r = parse_pow(lx, tab);
    while (true) {
        if (lx.eat('*'))
            r = r * parse_pow(lx, tab);
        else if (lx.eat('/'))
            r = r / parse_pow(lx, tab);
        else
            return r;
    }
}

Scalar parse_expr(Lexer& lx, const SymtabPtr& tab) {
    Scalar r = parse_term(lx, tab);
    while (true) {
        if (lx.eat('+'))
            r = r + parse_term(lx, tab);
        else if (lx.peek() == '-') {
            r = r + parse_term(lx, tab);  // unary minus inside parse_atom
        } else
            return r;
    }
}

}  // namespace

Scalar parse_scalar(const SymtabPtr& tab, const std::string& text) {
    Lexer lx{text};
    Scalar r = parse_expr(lx, tab);
    lx.skip();
    if (lx.pos != lx.s.size())
        throw ScalarError("trailing input in scalar expression at position " +
                          std::to_string(lx.pos));
    return r;
}

}  // namespace ope

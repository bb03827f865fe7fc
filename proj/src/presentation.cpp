#include "ope/presentation.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <sstream>

namespace ope {

namespace {
std::atomic<uint32_t> g_pres_serial{1};
}

PresPtr Presentation::create(SymtabPtr tab, std::string name) {
    PresPtr p(new Presentation());
    p->tab_ = std::move(tab);
    p->name_ = std::move(name);
    p->tag_ = g_pres_serial.fetch_add(1);
    return p;
}

GenId Presentation::add_generator(const std::string& name, Parity parity,
                                  std::optional<mpq_class> weight) {
    if (finalized_) throw EngineError("presentation is finalized");
    if (by_name_.count(name)) throw EngineError("duplicate generator '" + name + "'");
    gens_.push_back({name, parity, std::move(weight)});
    by_name_[name] = (GenId)(gens_.size() - 1);
    return (GenId)(gens_.size() - 1);
}

std::optional<GenId> Presentation::find_gen(const std::string& name) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
}

State Presentation::gen_state(const std::string& name) const {
    auto g = find_gen(name);
    if (!g) throw EngineError("unknown generator '" + name + "'");
    return gen_state(*g);
}

void Presentation::set_bracket(GenId a, GenId b, LambdaPoly p) {
    if (finalized_) throw EngineError("presentation is finalized");
    if (a >= gens_.size() || b >= gens_.size()) throw EngineError("unknown generator in table");
    for (const auto& st : p.coeffs()) {
        for (const auto& [m, c] : st.terms())
            for (const auto& f : m.factors())
                if (f.gen >= gens_.size())
                    throw EngineError("table coefficient uses undeclared generator");
        if (!st.is_zero() && parity(st) != (gens_[a].parity ^ gens_[b].parity))
            throw EngineError("table entry parity mismatch for [" + gens_[a].name + "," +
                              gens_[b].name + "]");
    }
    table_[{a, b}] = std::move(p);
}

void Presentation::set_D(GenId a, State da) {
    if (a >= gens_.size()) throw EngineError("unknown generator");
    check_tag(da);
    if (dmap_.size() < gens_.size()) dmap_.resize(gens_.size());
    dmap_[a] = std::move(da);
}

void Presentation::finalize() {
    if (finalized_) return;
    finalized_ = true;
    // derive the missing orientation of every stored pair; validate pairs
    // stored in both orientations and self-pairs
    auto snapshot = table_;
    for (const auto& [key, poly] : snapshot) {
        auto [a, b] = key;
        LambdaPoly sk = skew_transform(poly, gens_[a].parity, gens_[b].parity);
        auto rev = table_.find({b, a});
        if (rev == table_.end()) {
            table_[{b, a}] = sk;
        } else if (!(rev->second == sk)) {
            LambdaPoly res = rev->second - sk;
            throw EngineError("skew-symmetry violated for pair (" + gens_[a].name + "," +
                              gens_[b].name + "): residual " + to_string(*this, res));
        }
    }
}

const LambdaPoly& Presentation::table_bracket(GenId a, GenId b) const {
    static const LambdaPoly zero;
    auto it = table_.find({a, b});
    if (it != table_.end()) return it->second;
    return zero;
}

Parity Presentation::parity(const Monomial& m) const {
    Parity p = Parity::even;
    for (const auto& f : m.factors()) p = p ^ gens_.at(f.gen).parity;
    return p;
}

Parity Presentation::parity(const State& s) const {
    if (s.is_zero()) return Parity::even;
    Parity p = parity(s.terms()[0].first);
    for (const auto& [m, c] : s.terms())
        if (parity(m) != p) throw EngineError("state is not parity-homogeneous");
    return p;
}

std::optional<mpq_class> Presentation::weight(const Monomial& m) const {
    mpq_class w = 0;
    for (const auto& f : m.factors()) {
        const auto& gw = gens_.at(f.gen).weight;
        if (!gw) return std::nullopt;
        w += *gw + f.der;
    }
    return w;
}

void Presentation::check_tag(const State& s) const {
    if (s.tag() != 0 && s.tag() != tag_) throw EngineError("state from another presentation");
}

void Presentation::bump(unsigned& depth) const {
    if (++depth > depth_limit_)
        throw EngineError("recursion depth exceeded in '" + name_ +
                          "' (non-positive weights or non-closing table?)");
}

// ---- lambda-poly helpers ----

LambdaPoly Presentation::mul_minus_lambda_pow(const LambdaPoly& p, unsigned m) const {
    if (m == 0) return p;
    LambdaPoly r;
    for (size_t j = 0; j < p.degree_bound(); ++j) {
        if (p.coeff(j).is_zero()) continue;
        // lambda^m * lambda^j/j! = ((j+m)!/j!) lambda^(j+m)/(j+m)!
        mpq_class c = factorial((unsigned)(j + m)) / factorial((unsigned)j);
        if (m % 2) c = -c;
        r.add(j + m, p.coeff(j).scaled(Scalar(c)));
    }
    return r;
}

LambdaPoly Presentation::apply_lambda_plus_del(const LambdaPoly& p, unsigned n) const {
    LambdaPoly r = p;
    for (unsigned it = 0; it < n; ++it) {
        LambdaPoly next;
        for (size_t j = 0; j < r.degree_bound(); ++j) {
            if (r.coeff(j).is_zero()) continue;
            next.add(j + 1, r.coeff(j).scaled(Scalar(mpq_class(j + 1))));
            next.add(j, translate(r.coeff(j)));
        }
        r = std::move(next);
    }
    return r;
}

LambdaPoly Presentation::skew_transform(const LambdaPoly& p, Parity pa, Parity pb) const {
    // [a l b] = -(-1)^{p(a)p(b)} [b (-l-d) a] with d acting on coefficients
    LambdaPoly r;
    Scalar sign((pa == Parity::odd && pb == Parity::odd) ? 1 : -1);
    for (size_t j = 0; j < p.degree_bound(); ++j) {
        if (p.coeff(j).is_zero()) continue;
        const State& cj = p.coeff(j);
        // (-l-d)^j/j! c_j = (-1)^j sum_s l^s/s! d^{j-s} c_j/(j-s)!
        for (size_t s = 0; s <= j; ++s) {
            Scalar c(mpq_class(1) / factorial((unsigned)(j - s)));
            if (j % 2) c = -c;
            r.add(s, translate(cj, (unsigned)(j - s)).scaled(c * sign));
        }
    }
    return r;
}

State Presentation::neg_del_integral(const LambdaPoly& p) const {
    // int_{-d}^{0} l^j/j! dl = (-1)^j d^{j+1}/(j+1)!
    State r;
    for (size_t j = 0; j < p.degree_bound(); ++j) {
        if (p.coeff(j).is_zero()) continue;
        Scalar c(mpq_class(1) / factorial((unsigned)(j + 1)));
        if (j % 2) c = -c;
        r += translate(p.coeff(j), (unsigned)(j + 1)).scaled(c);
    }
    return r;
}

// ---- translation ----

namespace {
bool pbw_valid(const std::vector<Factor>& fs, const Presentation& p) {
    for (size_t i = 0; i + 1 < fs.size(); ++i) {
        if (fs[i] < fs[i + 1]) return false;
        if (fs[i] == fs[i + 1] && p.gen(fs[i].gen).parity == Parity::odd) return false;
    }
    return true;
}
}  // namespace

State Presentation::translate(const State& a) const {
    check_tag(a);
    State out;
    for (const auto& [m, c] : a.terms()) {
        if (m.is_vacuum()) continue;  // d|0> = 0
        for (size_t i = 0; i < m.size(); ++i) {
            std::vector<Factor> fs = m.factors();
            fs[i].der += 1;
            if (pbw_valid(fs, *this))
                out += State::monomial(Monomial(std::move(fs)), c, tag_);
            else
                out += normalize_word(fs, c);
        }
    }
    return out;
}

State Presentation::translate(const State& a, unsigned n) const {
    State r = a;
    for (unsigned i = 0; i < n; ++i) r = translate(r);
    return r;
}

State Presentation::normalize_word(std::span<const Factor> word, Scalar c) const {
    State s = State::vacuum(std::move(c));
    for (size_t i = word.size(); i-- > 0;) s = nop_factor_state(word[i], s, 0);
    return s;
}

// ---- normally ordered product ----

State Presentation::nop(const State& a, const State& b) const {
    check_tag(a);
    check_tag(b);
    return nop_state(a, b, 0);
}

State Presentation::nop_state(const State& a, const State& b, unsigned depth) const {
    bump(depth);
    State out;
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) out += nop_mono(ma, mb, depth).scaled(ca * cb);
    return out;
}

State Presentation::nop_factor_state(Factor f, const State& b, unsigned depth) const {
    bump(depth);
    State out;
    for (const auto& [mb, cb] : b.terms()) out += insert_factor(f, mb, depth).scaled(cb);
    return out;
}

State Presentation::nop_mono(const Monomial& m, const Monomial& n, unsigned depth) const {
    bump(depth);
    if (m.is_vacuum()) return State::monomial(n, Scalar(1), tag_);
    if (n.is_vacuum()) return State::monomial(m, Scalar(1), tag_);
    if (m.size() == 1) return insert_factor(m.head(), n, depth);
    {
        std::lock_guard<std::mutex> lk(memo_mu_);
        auto it = nop_memo_.find({m, n});
        if (it != nop_memo_.end()) return it->second;
    }
    // ::f m': n: -> :f :m' n:: + corrections (quasi-associativity)
    Factor f = m.head();
    Monomial mr = m.tail();
    State mrstate = State::monomial(mr, Scalar(1), tag_);

    State t1 = nop_factor_state(f, nop_mono(mr, n, depth), depth);

    State t2;
    LambdaPoly br1 = bracket_mono(mr, n, depth);
    for (size_t j = 0; j < br1.degree_bound(); ++j) {
        if (br1.coeff(j).is_zero()) continue;
        Factor fd = f;
        fd.der += (unsigned)(j + 1);
        Scalar c(mpq_class(1) / factorial((unsigned)(j + 1)));
        t2 += nop_factor_state(fd, br1.coeff(j), depth).scaled(c);
    }

    State t3;
    LambdaPoly br2 = bracket_mono(Monomial::single(f), n, depth);
    bool sgn = gens_[f.gen].parity == Parity::odd && parity(mr) == Parity::odd;
    for (size_t j = 0; j < br2.degree_bound(); ++j) {
        if (br2.coeff(j).is_zero()) continue;
        Scalar c(mpq_class(1) / factorial((unsigned)(j + 1)));
        if (sgn) c = -c;
        t3 += nop_state(translate(mrstate, (unsigned)(j + 1)), br2.coeff(j), depth).scaled(c);
    }

    State out = t1 + t2 + t3;
    {
        std::lock_guard<std::mutex> lk(memo_mu_);
        nop_memo_.emplace(std::make_pair(m, n), out);
    }
    return out;
}

State Presentation::insert_factor(Factor f, const Monomial& n, unsigned depth) const {
    bump(depth);
    if (n.is_vacuum()) return State::monomial(Monomial::single(f), Scalar(1), tag_);
    {
        std::lock_guard<std::mutex> lk(memo_mu_);
        auto it = insert_memo_.find(f.packed());
        if (it != insert_memo_.end()) {
            auto jt = it->second.find(n);
            if (jt != it->second.end()) return jt->second;
        }
    }
    Factor h = n.head();
    bool f_odd = gens_[f.gen].parity == Parity::odd;
    State out;
    if (f > h || (f == h && !f_odd)) {
        out = State::monomial(n.with_head(f), Scalar(1), tag_);
    } else if (f == h) {
        // odd square: :f (f rest): = 1/2 :(int_{-d}^0 [f l f] dl) rest:
        State ib = neg_del_integral(bracket_mono(Monomial::single(f), Monomial::single(f), depth));
        out = nop_state(ib, State::monomial(n.tail(), Scalar(1), tag_), depth)
                  .scaled(Scalar::rational(1, 2));
    } else {
        // :f (h rest): = +-:h (f into rest): + :(int_{-d}^0 [f l h] dl) rest:
        bool sgn = f_odd && gens_[h.gen].parity == Parity::odd;
        State swapped = nop_factor_state(h, insert_factor(f, n.tail(), depth), depth);
        if (sgn) swapped = -swapped;
        State ib = neg_del_integral(bracket_mono(Monomial::single(f), Monomial::single(h), depth));
        out = swapped + nop_state(ib, State::monomial(n.tail(), Scalar(1), tag_), depth);
    }
    {
        std::lock_guard<std::mutex> lk(memo_mu_);
        insert_memo_[f.packed()].emplace(n, out);
    }
    return out;
}

// ---- lambda bracket ----

LambdaPoly Presentation::bracket(const State& a, const State& b) const {
    check_tag(a);
    check_tag(b);
    return bracket_state(a, b, 0);
}

State Presentation::nth_product(const State& a, unsigned n, const State& b) const {
    return bracket(a, b).coeff(n);
}

LambdaPoly Presentation::bracket_state(const State& a, const State& b, unsigned depth) const {
    bump(depth);
    LambdaPoly out;
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms())
            out = out + bracket_mono(ma, mb, depth).scaled(ca * cb);
    return out;
}

LambdaPoly Presentation::bracket_mono(const Monomial& m, const Monomial& n,
                                      unsigned depth) const {
    bump(depth);
    if (m.is_vacuum() || n.is_vacuum()) return LambdaPoly();
    {
        std::lock_guard<std::mutex> lk(memo_mu_);
        auto it = bracket_memo_.find({m, n});
        if (it != bracket_memo_.end()) return it->second;
    }
    LambdaPoly out;
    if (m.size() == 1 && n.size() == 1) {
        Factor a = m.head(), b = n.head();
        LambdaPoly base = table_bracket(a.gen, b.gen);
        if (base.is_zero()) {
            const LambdaPoly& rev = table_bracket(b.gen, a.gen);
            if (!rev.is_zero())
                base = skew_transform(rev, gens_[b.gen].parity, gens_[a.gen].parity);
        }
        out = apply_lambda_plus_del(mul_minus_lambda_pow(base, a.der), b.der);
    } else if (n.size() >= 2) {
        // Wick formula on n = :h rest:
        Factor h = n.head();
        Monomial rest = n.tail();
        State rest_state = State::monomial(rest, Scalar(1), tag_);
        bool sgn = parity(m) == Parity::odd && gens_[h.gen].parity == Parity::odd;

        LambdaPoly bh = bracket_mono(m, Monomial::single(h), depth);
        for (size_t j = 0; j < bh.degree_bound(); ++j)
            if (!bh.coeff(j).is_zero()) out.add(j, nop_state(bh.coeff(j), rest_state, depth));

        LambdaPoly br = bracket_mono(m, rest, depth);
        for (size_t j = 0; j < br.degree_bound(); ++j)
            if (!br.coeff(j).is_zero()) {
                State t = nop_factor_state(h, br.coeff(j), depth);
                out.add(j, sgn ? -t : t);
            }

        // int_0^l [[m l h] mu rest] dmu
        for (size_t j = 0; j < bh.degree_bound(); ++j) {
            if (bh.coeff(j).is_zero()) continue;
            LambdaPoly inner = bracket_state(bh.coeff(j), rest_state, depth);
            for (size_t l = 0; l < inner.degree_bound(); ++l) {
                if (inner.coeff(l).is_zero()) continue;
                // l^j/j! * l^{l+1}/(l+1)! = C(j+l+1, j) l^{j+l+1}/(j+l+1)!
                Scalar c(binomial((unsigned)(j + l + 1), (unsigned)j));
                out.add(j + l + 1, inner.coeff(l).scaled(c));
            }
        }
    } else {
        // m composite, n a single factor: skew-transform of [n mu m]
        LambdaPoly rev = bracket_mono(n, m, depth);
        out = skew_transform(rev, parity(n), parity(m));
    }
    {
        std::lock_guard<std::mutex> lk(memo_mu_);
        bracket_memo_.emplace(std::make_pair(m, n), out);
    }
    return out;
}

// ---- supersymmetry ----

State Presentation::apply_D(const State& a) const {
    check_tag(a);
    if (dmap_.empty()) throw EngineError("presentation has no supersymmetry");
    State out;
    for (const auto& [m, c] : a.terms()) out += d_mono(m, 0).scaled(c);
    return out;
}

State Presentation::d_mono(const Monomial& m, unsigned depth) const {
    bump(depth);
    if (m.is_vacuum()) return State();
    {
        std::lock_guard<std::mutex> lk(memo_mu_);
        auto it = d_memo_.find(m);
        if (it != d_memo_.end()) return it->second;
    }
    Factor f = m.head();
    if (f.gen >= dmap_.size())
        throw EngineError("D undefined on generator '" + gens_[f.gen].name + "'");
    State df = translate(dmap_[f.gen], f.der);
    State out;
    if (m.size() == 1) {
        out = df;
    } else {
        Monomial rest = m.tail();
        State rest_state = State::monomial(rest, Scalar(1), tag_);
        out = nop_state(df, rest_state, depth);
        State t = nop_factor_state(f, d_mono(rest, depth), depth);
        if (gens_[f.gen].parity == Parity::odd) t = -t;
        out += t;
    }
    {
        std::lock_guard<std::mutex> lk(memo_mu_);
        d_memo_.emplace(m, out);
    }
    return out;
}

std::vector<std::pair<Monomial, Monomial>> Presentation::debug_bracket_keys() const {
    std::lock_guard<std::mutex> lk(memo_mu_);
    std::vector<std::pair<Monomial, Monomial>> out;
    for (const auto& [k, v] : bracket_memo_) out.push_back(k);
    return out;
}

std::vector<std::pair<Monomial, Monomial>> Presentation::debug_nop_keys() const {
    std::lock_guard<std::mutex> lk(memo_mu_);
    std::vector<std::pair<Monomial, Monomial>> out;
    for (const auto& [k, v] : nop_memo_) out.push_back(k);
    return out;
}

size_t Presentation::memo_size() const {
    std::lock_guard<std::mutex> lk(memo_mu_);
    return bracket_memo_.size() + nop_memo_.size() + d_memo_.size();
}

// ---- checks ----

LambdaPoly2 jacobi_residual(const Presentation& p, const State& a, const State& b,
                            const State& c) {
    Parity pa = p.parity(a), pb = p.parity(b);
    LambdaPoly2 r;
    // [a l [b m c]]
    LambdaPoly inner1 = p.bracket(b, c);
    for (size_t mdeg = 0; mdeg < inner1.degree_bound(); ++mdeg) {
        if (inner1.coeff(mdeg).is_zero()) continue;
        LambdaPoly outer = p.bracket(a, inner1.coeff(mdeg));
        for (size_t l = 0; l < outer.degree_bound(); ++l) r.add(l, mdeg, outer.coeff(l));
    }
    // -(-1)^{p(a)p(b)} [b m [a l c]]
    LambdaPoly inner2 = p.bracket(a, c);
    bool sgn = pa == Parity::odd && pb == Parity::odd;
    for (size_t l = 0; l < inner2.degree_bound(); ++l) {
        if (inner2.coeff(l).is_zero()) continue;
        LambdaPoly outer = p.bracket(b, inner2.coeff(l));
        for (size_t mdeg = 0; mdeg < outer.degree_bound(); ++mdeg) {
            State s = outer.coeff(mdeg);
            r.add(l, mdeg, sgn ? s : -s);
        }
    }
    // -[[a l b]_{l+m} c]
    LambdaPoly ab = p.bracket(a, b);
    for (size_t j = 0; j < ab.degree_bound(); ++j) {
        if (ab.coeff(j).is_zero()) continue;
        LambdaPoly outer = p.bracket(ab.coeff(j), c);
        for (size_t l = 0; l < outer.degree_bound(); ++l) {
            if (outer.coeff(l).is_zero()) continue;
            for (size_t s = 0; s <= l; ++s) {
                // l^j/j! (l+m)^l/l! -> C(j+s, j) l^{j+s}/(j+s)! m^{l-s}/(l-s)!
                Scalar cc(binomial((unsigned)(j + s), (unsigned)j));
                r.add(j + s, l - s, outer.coeff(l).scaled(-cc));
            }
        }
    }
    return r;
}

CheckResult check_jacobi(const Presentation& p, const State& a, const State& b,
                         const State& c) {
    LambdaPoly2 r = jacobi_residual(p, a, b, c);
    CheckResult out;
    out.pass = r.is_zero();
    if (!out.pass) out.detail = "jacobi residual: " + to_string(p, r);
    return out;
}

PrimaryReport check_primary(const Presentation& p, const State& L, const State& a,
                            const mpq_class& delta) {
    PrimaryReport rep;
    LambdaPoly br = p.bracket(L, a);
    LambdaPoly expect;
    expect.add(0, p.translate(a));
    expect.add(1, a.scaled(Scalar(delta)));
    LambdaPoly diff = br - expect;
    rep.pass = diff.is_zero();
    rep.quasi_primary = diff.coeff(0).is_zero() && diff.coeff(1).is_zero();
    for (size_t j = 2; j < diff.degree_bound(); ++j) rep.anomaly.add(j, diff.coeff(j));
    if (!rep.pass) rep.detail = "residual " + to_string(p, diff);
    return rep;
}

VirasoroReport check_virasoro(const Presentation& p, const State& L) {
    VirasoroReport rep;
    LambdaPoly br = p.bracket(L, L);
    LambdaPoly expect;
    expect.add(0, p.translate(L));
    expect.add(1, L.scaled(Scalar(2)));
    LambdaPoly diff = br - expect;
    // remainder must be l^3/3! (c/2)|0>
    Scalar c = diff.coeff(3).vacuum_part() * Scalar(2);
    diff.add(3, -State::vacuum(c * Scalar::rational(1, 2)));
    rep.pass = diff.is_zero();
    rep.central_charge = c;
    if (!rep.pass) rep.detail = "residual " + to_string(p, diff);
    return rep;
}

CheckResult check_skew_pair(const Presentation& p, const State& a, const State& b) {
    LambdaPoly lhs = p.bracket(a, b);
    LambdaPoly rhs = p.skew_transform(p.bracket(b, a), p.parity(b), p.parity(a));
    CheckResult out;
    out.pass = lhs == rhs;
    out.residual_poly = lhs - rhs;
    if (!out.pass) out.detail = "skew residual " + to_string(p, out.residual_poly);
    return out;
}

// ---- printing ----

std::string to_string(const Presentation& p, const Monomial& m) {
    if (m.is_vacuum()) return "|0>";
    std::ostringstream os;
    if (m.size() > 1) os << ":";
    bool first = true;
    for (const auto& f : m.factors()) {
        if (!first) os << " ";
        first = false;
        if (f.der == 1) os << "d ";
        if (f.der > 1) os << "d^" << f.der << " ";
        os << p.gen(f.gen).name;
    }
    if (m.size() > 1) os << ":";
    return os.str();
}

std::string to_string(const Presentation& p, const State& s) {
    if (s.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : s.terms()) {
        if (!first) os << " + ";
        first = false;
        std::string cs = c.str();
        if (cs == "1" && !m.is_vacuum())
            os << to_string(p, m);
        else if (cs == "-1" && !m.is_vacuum())
            os << "-" << to_string(p, m);
        else if (m.is_vacuum())
            os << (c.is_constant() ? cs : "(" + cs + ")") << "*|0>";
        else
            os << "(" << cs << ")*" << to_string(p, m);
    }
    return os.str();
}

std::string to_string(const Presentation& p, const LambdaPoly& q) {
    if (q.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t n = 0; n < q.degree_bound(); ++n) {
        if (q.coeff(n).is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        State c = q.coeff(n).scaled(Scalar(mpq_class(1) / factorial((unsigned)n)));
        if (n == 0)
            os << to_string(p, c);
        else if (n == 1)
            os << "L*(" << to_string(p, c) << ")";
        else
            os << "L^" << n << "*(" << to_string(p, c) << ")";
    }
    return os.str();
}

std::string to_string(const Presentation& p, const LambdaPoly2& q) {
    std::ostringstream os;
    bool first = true;
    for (size_t m = 0; m < q.rows().size(); ++m) {
        for (size_t n = 0; n < q.rows()[m].size(); ++n) {
            const State& s = q.rows()[m][n];
            if (s.is_zero()) continue;
            if (!first) os << " + ";
            first = false;
            os << "(L^" << m << "/" << m << "!)(M^" << n << "/" << n << "!)*(" << to_string(p, s)
               << ")";
        }
    }
    if (first) return "0";
    return os.str();
}

// ---- linear algebra over Scalar ----

LinSolveResult linsolve(std::vector<std::vector<Scalar>> m, std::vector<Scalar> rhs) {
    LinSolveResult res;
    size_t rows = m.size();
    size_t cols = rows ? m[0].size() : 0;
    std::vector<size_t> pivot_col;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t pr = r;
        while (pr < rows && m[pr][c].is_zero()) ++pr;
        if (pr == rows) continue;
        std::swap(m[pr], m[r]);
        std::swap(rhs[pr], rhs[r]);
        Scalar inv = m[r][c].inverse();
        for (size_t j = c; j < cols; ++j) m[r][j] *= inv;
        rhs[r] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c].is_zero()) continue;
            Scalar f = m[i][c];
            for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
            rhs[i] -= f * rhs[r];
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (size_t i = r; i < rows; ++i)
        if (!rhs[i].is_zero()) return res;  // inconsistent
    res.consistent = true;
    res.particular.assign(cols, Scalar(0));
    for (size_t i = 0; i < pivot_col.size(); ++i) res.particular[pivot_col[i]] = rhs[i];
    std::vector<bool> is_pivot(cols, false);
    for (size_t c : pivot_col) is_pivot[c] = true;
    for (size_t c = 0; c < cols; ++c) {
        if (is_pivot[c]) continue;
        std::vector<Scalar> v(cols, Scalar(0));
        v[c] = Scalar(1);
        for (size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = -m[i][c];
        res.kernel.push_back(std::move(v));
    }
    return res;
}

}  // namespace ope

#include "ope/state.hpp"

#include <algorithm>
#include <cassert>

namespace ope {

State State::vacuum(Scalar c) {
    State s;
    if (!c.is_zero()) s.terms_.push_back({Monomial::vacuum(), std::move(c)});
    return s;
}

State State::monomial(Monomial m, Scalar c, uint32_t tag) {
    State s;
    s.tag_ = m.is_vacuum() ? 0 : tag;
    if (!c.is_zero()) s.terms_.push_back({std::move(m), std::move(c)});
    if (s.terms_.empty()) s.tag_ = 0;
    return s;
}

State State::generator(GenId g, uint32_t tag, Scalar c) {
    return monomial(Monomial::single({g, 0}), std::move(c), tag);
}

uint32_t State::merge_tags(uint32_t a, uint32_t b) {
    if (a == 0) return b;
    if (b == 0) return a;
    if (a != b) throw EngineError("states from different presentations");
    return a;
}

State State::combine(std::vector<std::pair<Monomial, Scalar>> terms, uint32_t tag) {
    std::sort(terms.begin(), terms.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    State s;
    for (auto& t : terms) {
        if (!s.terms_.empty() && s.terms_.back().first == t.first)
            s.terms_.back().second += t.second;
        else
            s.terms_.push_back(std::move(t));
    }
    s.terms_.erase(std::remove_if(s.terms_.begin(), s.terms_.end(),
                                  [](const auto& t) { return t.second.is_zero(); }),
                   s.terms_.end());
    bool nonvac = std::any_of(s.terms_.begin(), s.terms_.end(),
                              [](const auto& t) { return !t.first.is_vacuum(); });
    s.tag_ = nonvac ? tag : 0;
    return s;
}

State State::operator-() const {
    State r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

State State::operator+(const State& o) const {
    uint32_t tag = merge_tags(tag_, o.tag_);
    std::vector<std::pair<Monomial, Scalar>> t = terms_;
    t.insert(t.end(), o.terms_.begin(), o.terms_.end());
    return combine(std::move(t), tag);
}

State State::operator-(const State& o) const { return *this + (-o); }

State State::scaled(const Scalar& c) const {
    if (c.is_zero()) return State();
    State r = *this;
    for (auto& [m, cc] : r.terms_) cc *= c;
    return r;
}

Scalar State::coeff(const Monomial& m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const auto& t, const Monomial& mm) { return t.first < mm; });
    if (it != terms_.end() && it->first == m) return it->second;
    return Scalar(0);
}

size_t State::hash() const {
    size_t h = 14695981039346656037ull;
    for (const auto& [m, c] : terms_) {
        h = (h ^ m.hash()) * 1099511628211ull;
        h = (h ^ c.hash()) * 1099511628211ull;
    }
    return h;
}

const State& LambdaPoly::coeff(size_t n) const {
    static const State zero;
    return n < c_.size() ? c_[n] : zero;
}

void LambdaPoly::set(size_t n, State s) {
    if (c_.size() <= n) c_.resize(n + 1);
    c_[n] = std::move(s);
    trim();
}

void LambdaPoly::add(size_t n, const State& s) {
    if (s.is_zero()) return;
    if (c_.size() <= n) c_.resize(n + 1);
    c_[n] += s;
    trim();
}

void LambdaPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

LambdaPoly LambdaPoly::operator+(const LambdaPoly& o) const {
    LambdaPoly r = *this;
    for (size_t n = 0; n < o.c_.size(); ++n) r.add(n, o.c_[n]);
    return r;
}

LambdaPoly LambdaPoly::operator-(const LambdaPoly& o) const {
    LambdaPoly r = *this;
    for (size_t n = 0; n < o.c_.size(); ++n) r.add(n, -o.c_[n]);
    return r;
}

LambdaPoly LambdaPoly::scaled(const Scalar& c) const {
    LambdaPoly r;
    r.c_.reserve(c_.size());
    for (const auto& s : c_) r.c_.push_back(s.scaled(c));
    r.trim();
    return r;
}

void LambdaPoly2::add(size_t m, size_t n, const State& s) {
    if (s.is_zero()) return;
    if (c_.size() <= m) c_.resize(m + 1);
    if (c_[m].size() <= n) c_[m].resize(n + 1);
    c_[m][n] += s;
    trim();
}

void LambdaPoly2::trim() {
    for (auto& row : c_)
        while (!row.empty() && row.back().is_zero()) row.pop_back();
    while (!c_.empty() && c_.back().empty()) c_.pop_back();
}

bool LambdaPoly2::is_zero() const {
    for (const auto& row : c_)
        for (const auto& s : row)
            if (!s.is_zero()) return false;
    return true;
}

LambdaPoly2 LambdaPoly2::operator-(const LambdaPoly2& o) const {
    LambdaPoly2 r = *this;
    for (size_t m = 0; m < o.c_.size(); ++m)
        for (size_t n = 0; n < o.c_[m].size(); ++n) r.add(m, n, -o.c_[m][n]);
    return r;
}

bool LambdaPoly2::operator==(const LambdaPoly2& o) const { return (*this - o).is_zero(); }

mpq_class factorial(unsigned n) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return mpq_class(r);
}

mpq_class binomial(unsigned n, unsigned k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return mpq_class(r);
}

}  // namespace ope

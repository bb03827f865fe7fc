#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ope/scalar.hpp"

namespace ope {

struct EngineError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using GenId = uint32_t;

enum class Parity : uint8_t { even = 0, odd = 1 };

inline Parity operator^(Parity a, Parity b) {
    return Parity(uint8_t(a) ^ uint8_t(b));
}

// One factor d^der gen of a normally ordered monomial.
struct Factor {
    GenId gen = 0;
    uint32_t der = 0;

    bool operator==(const Factor& o) const { return gen == o.gen && der == o.der; }
    bool operator<(const Factor& o) const {
        return gen != o.gen ? gen < o.gen : der < o.der;
    }
    bool operator>(const Factor& o) const { return o < *this; }
    uint64_t packed() const { return (uint64_t(gen) << 32) | der; }
};

// Right-nested normally ordered word :f0 :f1 ... :: with f0 the leftmost
// factor.  In PBW normal form factors are non-increasing left to right and
// identical odd factors never repeat.  The empty word is the vacuum.
class Monomial {
  public:
    Monomial() = default;
    explicit Monomial(std::vector<Factor> fs) : fs_(std::move(fs)) {}
    static Monomial vacuum() { return Monomial(); }
    static Monomial single(Factor f) { return Monomial({f}); }

    bool is_vacuum() const { return fs_.empty(); }
    size_t size() const { return fs_.size(); }
    const Factor& head() const { return fs_.front(); }
    Monomial tail() const { return Monomial({fs_.begin() + 1, fs_.end()}); }
    Monomial with_head(Factor f) const {
        std::vector<Factor> v;
        v.reserve(fs_.size() + 1);
        v.push_back(f);
        v.insert(v.end(), fs_.begin(), fs_.end());
        return Monomial(std::move(v));
    }
    const std::vector<Factor>& factors() const { return fs_; }

    bool operator==(const Monomial& o) const { return fs_ == o.fs_; }
    bool operator<(const Monomial& o) const {
        if (fs_.size() != o.fs_.size()) return fs_.size() < o.fs_.size();
        for (size_t i = 0; i < fs_.size(); ++i) {
            if (!(fs_[i] == o.fs_[i])) return fs_[i] < o.fs_[i];
        }
        return false;
    }
    size_t hash() const {
        size_t h = 1469598103934665603ull;
        for (const auto& f : fs_) h = (h ^ f.packed()) * 1099511628211ull;
        return h;
    }

  private:
    std::vector<Factor> fs_;
};

// Finite linear combination of monomials with Scalar coefficients, kept
// sorted with zero coefficients dropped.  pres_tag ties a state to the
// presentation its generator ids refer to (0 = pure vacuum multiples).
class State {
  public:
    State() = default;

    static State zero() { return State(); }
    static State vacuum(Scalar c = Scalar(1));
    static State monomial(Monomial m, Scalar c, uint32_t tag);
    static State generator(GenId g, uint32_t tag, Scalar c = Scalar(1));

    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }
    const std::vector<std::pair<Monomial, Scalar>>& terms() const { return terms_; }

    uint32_t tag() const { return tag_; }

    State operator-() const;
    State operator+(const State& o) const;
    State operator-(const State& o) const;
    State scaled(const Scalar& c) const;
    State& operator+=(const State& o) { return *this = *this + o; }
    State& operator-=(const State& o) { return *this = *this - o; }

    bool operator==(const State& o) const { return terms_ == o.terms_; }
    bool operator!=(const State& o) const { return !(*this == o); }

    // coefficient of a monomial (zero if absent)
    Scalar coeff(const Monomial& m) const;
    // multiple of the vacuum contained in this state
    Scalar vacuum_part() const { return coeff(Monomial::vacuum()); }

    static State combine(std::vector<std::pair<Monomial, Scalar>> terms, uint32_t tag);
    static uint32_t merge_tags(uint32_t a, uint32_t b);

    size_t hash() const;

  private:
    uint32_t tag_ = 0;
    std::vector<std::pair<Monomial, Scalar>> terms_;
};

// Polynomial sum_n lambda^n/n! c_n with State coefficients (divided powers).
class LambdaPoly {
  public:
    LambdaPoly() = default;
    explicit LambdaPoly(std::vector<State> c) : c_(std::move(c)) { trim(); }

    bool is_zero() const { return c_.empty(); }
    size_t degree_bound() const { return c_.size(); }  // one past top index
    const State& coeff(size_t n) const;
    std::vector<State>& mut() { return c_; }
    const std::vector<State>& coeffs() const { return c_; }

    void set(size_t n, State s);
    void add(size_t n, const State& s);
    void trim();

    LambdaPoly operator+(const LambdaPoly& o) const;
    LambdaPoly operator-(const LambdaPoly& o) const;
    LambdaPoly scaled(const Scalar& c) const;
    bool operator==(const LambdaPoly& o) const { return c_ == o.c_; }
    bool operator!=(const LambdaPoly& o) const { return !(*this == o); }

  private:
    std::vector<State> c_;
};

// Two-variable polynomial in lambda, mu (divided powers both).
class LambdaPoly2 {
  public:
    void add(size_t m, size_t n, const State& s);
    bool is_zero() const;
    const std::vector<std::vector<State>>& rows() const { return c_; }
    LambdaPoly2 operator-(const LambdaPoly2& o) const;
    bool operator==(const LambdaPoly2& o) const;

  private:
    std::vector<std::vector<State>> c_;  // c_[m][n] at lambda^m/m! mu^n/n!
    void trim();
};

mpq_class factorial(unsigned n);
mpq_class binomial(unsigned n, unsigned k);

}  // namespace ope

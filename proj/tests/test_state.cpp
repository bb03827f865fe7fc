#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ope/state.hpp"

using namespace ope;

TEST_CASE("state arithmetic") {
    Monomial m1({{0, 0}});
    Monomial m2({{1, 2}});
    State a = State::monomial(m1, Scalar(2), 7);
    State b = State::monomial(m2, Scalar(3), 7);
    State s = a + b;
    CHECK(s.size() == 2);
    CHECK(s.coeff(m1) == Scalar(2));
    CHECK((s - s).is_zero());
    CHECK(s.scaled(Scalar(0)).is_zero());
    CHECK_THROWS_AS(s + State::monomial(m1, Scalar(1), 8), EngineError);
    // vacuum multiples are presentation-neutral
    State v = State::vacuum(Scalar(5));
    CHECK((s + v).coeff(Monomial::vacuum()) == Scalar(5));
}

TEST_CASE("monomial ordering and hashing") {
    Monomial a({{0, 0}});
    Monomial b({{0, 1}});
    Monomial c({{0, 0}, {0, 0}});
    CHECK(a < b);
    CHECK(a < c);  // shorter first
    CHECK(!(a == b));
    CHECK(a.hash() != b.hash());
}

TEST_CASE("lambda poly divided powers") {
    LambdaPoly p;
    p.add(0, State::vacuum(Scalar(1)));
    p.add(2, State::vacuum(Scalar(3)));
    CHECK(p.degree_bound() == 3);
    CHECK(p.coeff(1).is_zero());
    LambdaPoly q = p - p;
    CHECK(q.is_zero());
    CHECK(factorial(4) == 24);
    CHECK(binomial(5, 2) == 10);
}

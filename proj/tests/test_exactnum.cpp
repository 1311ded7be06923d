#include "qgroup/exactnum.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace qgroup;
using testsupport::R;

namespace {
IntPoly poly(std::map<int, mpz_class> t) { return IntPoly::from_terms(t); }
}  // namespace

TEST_CASE("field_normalize examples") {
    CHECK(RatFunc::make(poly({{2, 1}, {0, -1}}), poly({{1, 1}, {0, -1}})) == R("v + 1"));
    CHECK(RatFunc::make(IntPoly(), poly({{1, 1}})).is_zero());
    RatFunc half_v = RatFunc::make(poly({{1, 2}}), IntPoly(4));
    CHECK(half_v.num() == poly({{1, 1}}));
    CHECK(half_v.den() == IntPoly(2));
    CHECK_THROWS_AS(RatFunc::make(IntPoly(1), IntPoly()), std::domain_error);
}

TEST_CASE("canonical form is structural") {
    // (v^-1 + v) / (v^2 + 1) == v^-1
    RatFunc a = RatFunc::make(poly({{-1, 1}, {1, 1}}), poly({{2, 1}, {0, 1}}));
    CHECK(a == RatFunc::v_pow(-1));
    RatFunc b = RatFunc::make(IntPoly(3), poly({{0, -6}, {1, -3}}));
    CHECK(b.den().leading() > 0);
    CHECK(b == RatFunc::make(IntPoly(-1), poly({{0, 2}, {1, 1}})));
}

TEST_CASE("qint, qfact, qbinom examples") {
    CHECK(qint(1) == RatFunc(1));
    CHECK(qint(2) == R("v + v^-1"));
    CHECK(qint(0).is_zero());
    CHECK(qfact(0) == RatFunc(1));
    CHECK(qfact(2) == R("v + v^-1"));
    // oracle: expand the defining quotient (v^n - v^-n)/(v - v^-1) directly
    auto qint_oracle = [](int n) {
        return (RatFunc::v_pow(n) - RatFunc::v_pow(-n)) / (RatFunc::v_pow(1) - RatFunc::v_pow(-1));
    };
    CHECK(qfact(3) == qint_oracle(1) * qint_oracle(2) * qint_oracle(3));
    CHECK(qfact(3) == R("(v + v^-1)*(v^2 + 1 + v^-2)"));
    CHECK_THROWS_AS(qfact(-1), std::domain_error);
    CHECK(qbinom(2, 1) == R("v + v^-1"));
    for (int n = 0; n < 6; ++n) CHECK(qbinom(n, 0) == RatFunc(1));
    CHECK(qbinom(3, 2) == qfact(3) / (qfact(2) * qfact(1)));
    CHECK(qbinom(3, 2) == R("v^2 + 1 + v^-2"));
    CHECK(qbinom(2, 3).is_zero());
    CHECK_THROWS_AS(qbinom(2, -1), std::domain_error);
}

TEST_CASE("qint is odd and evaluates correctly at v=2") {
    for (int n = -12; n <= 12; ++n) CHECK(qint(-n) == -qint(n));
    for (int n = 0; n <= 10; ++n) {
        mpq_class two_n = 1, inv = 1;
        for (int k = 0; k < n; ++k) {
            two_n *= 2;
            inv /= 2;
        }
        mpq_class expect = (two_n - inv) / (mpq_class(2) - mpq_class(1, 2));
        CHECK(qint(n).eval(2) == expect);
    }
}

TEST_CASE("q-Pascal recurrence") {
    for (int n = 1; n <= 8; ++n)
        for (int k = 1; k <= n; ++k)
            CHECK(qbinom(n, k) == RatFunc::v_pow(k) * qbinom(n - 1, k) + RatFunc::v_pow(k - n) * qbinom(n - 1, k - 1));
}

TEST_CASE("field axioms on random elements") {
    std::mt19937 rng(20240611);
    for (int trial = 0; trial < 200; ++trial) {
        RatFunc a = testsupport::random_ratfunc(rng), b = testsupport::random_ratfunc(rng),
                c = testsupport::random_ratfunc(rng);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK(a - a == RatFunc());
        if (!a.is_zero()) CHECK(a * a.inverse() == RatFunc(1));
        if (!b.is_zero()) CHECK((a / b) * b == a);
    }
}

TEST_CASE("evaluation is a ring homomorphism") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        RatFunc a = testsupport::random_ratfunc(rng), b = testsupport::random_ratfunc(rng);
        mpq_class x(3, 2);
        if (a.den().eval(x) == 0 || b.den().eval(x) == 0) continue;
        CHECK((a * b).eval(x) == a.eval(x) * b.eval(x));
        CHECK((a + b).eval(x) == a.eval(x) + b.eval(x));
    }
}

TEST_CASE("printing and parsing round trip") {
    CHECK(R("v + v^-1").to_string() == "v + v^-1");
    CHECK(R("v^2 + 1 + v^-2").to_string() == "v^2 + 1 + v^-2");
    CHECK(R("1/2").to_string() == "1/2");
    std::mt19937 rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        RatFunc a = testsupport::random_ratfunc(rng);
        CHECK(RatFunc::parse(a.to_string()) == a);
    }
    CHECK_THROWS_AS(RatFunc::parse("v +"), std::invalid_argument);
    CHECK_THROWS_AS(RatFunc::parse("1/0"), std::domain_error);
}

TEST_CASE("polynomial gcd") {
    IntPoly a = poly({{2, 1}, {0, -1}});   // v^2 - 1
    IntPoly b = poly({{2, 1}, {1, 2}, {0, 1}});  // (v+1)^2
    CHECK(IntPoly::primitive_gcd(a, b) == poly({{1, 1}, {0, 1}}));
    CHECK(IntPoly::primitive_gcd(a.shifted(-3), b.shifted(5)) == poly({{1, 1}, {0, 1}}));
}

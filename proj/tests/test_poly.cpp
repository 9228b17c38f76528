#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "plift/poly.hpp"

using namespace plift;

namespace {

ContextPtr ctx3() {
    return VarContext::make({"x1", "x2", "x3"}, {"y1", "y2", "y3"}, {"w"});
}

Poly P(const ContextPtr& c, const std::string& s) { return Poly::parse(c, s); }

// Deterministic random polynomial: up to `max_terms` monomials of bounded
// degree with small rational coefficients.
Poly random_poly(const ContextPtr& c, std::mt19937_64& rng, int max_terms = 5, int max_exp = 2) {
    std::uniform_int_distribution<int> nterms(0, max_terms);
    std::uniform_int_distribution<int> exp(0, max_exp);
    std::uniform_int_distribution<int> num(-6, 6);
    std::uniform_int_distribution<int> den(1, 3);
    Poly p = Poly::zero(c);
    const int n = nterms(rng);
    for (int t = 0; t < n; ++t) {
        Exponents e(c->nsymbols(), 0);
        for (auto& x : e) x = exp(rng);
        p += Poly::monomial(c, Rational(num(rng), den(rng)), e);
    }
    return p;
}

}  // namespace

TEST_CASE("arithmetic basics") {
    auto c = ctx3();
    CHECK(P(c, "(x1 + x2) * (x1 - x2)") == P(c, "x1^2 - x2^2"));
    Poly p = P(c, "2*x2*y2 + x1*y3 + x3*y1");
    CHECK(p + Poly::zero(c) == p);
    CHECK((p - P(c, "x1*y3 + x3*y1 + 2*x2*y2")).is_zero());
}

TEST_CASE("context mismatch is rejected") {
    auto a = ctx3();
    auto b = VarContext::make({"u"});
    CHECK_THROWS_AS(P(a, "x1") + P(b, "u"), ContextError);
}

TEST_CASE("differentiation") {
    auto c = ctx3();
    CHECK(P(c, "x1^2 + x2^2 + w*x3^2").diff("x3") == P(c, "2*w*x3"));
    CHECK(P(c, "5/7").diff("x1").is_zero());
    CHECK(P(c, "x3 + y2^2 + y1*y3").diff("y2") == P(c, "2*y2"));
    CHECK_THROWS_AS(P(c, "w*x1").diff("w"), VarError);
    CHECK_THROWS_AS(P(c, "x1").diff("nope"), VarError);
}

TEST_CASE("evaluation") {
    auto c = ctx3();
    CHECK(P(c, "x1*x2").eval_exact({{"x1", 3}, {"x2", 4}}) == 12);
    // direct substitution: 1 + 1 + 2*1 = 4
    CHECK(P(c, "x1^2 + x2^2 + w*x3^2")
              .eval_exact({{"x1", 1}, {"x2", 1}, {"x3", 1}, {"w", 2}}) == 4);
    CHECK(Poly::zero(c).eval_exact({}) == 0);
    CHECK_THROWS_AS(P(c, "x1*x2").eval_exact({{"x1", 3}}), EvalError);
    CHECK(P(c, "1/2*x1").eval({4, 0, 0, 0, 0, 0, 0}) == doctest::Approx(2.0));
}

TEST_CASE("rendering is deterministic graded-lex") {
    auto c = ctx3();
    CHECK(P(c, "2*x1*y3 - x2^2").render() == "2*x1*y3 - x2^2");
    CHECK(P(c, "1/3*x1^3 - x1*y1*y2 + x2*y1^2").render() == "1/3*x1^3 - x1*y1*y2 + x2*y1^2");
    CHECK(Poly::zero(c).render() == "0");
    CHECK(P(c, "-x1 + 1").render() == "-x1 + 1");
    CHECK(P(c, "2*(w - 1)*x2*x3").render() == "2*w*x2*x3 - 2*x2*x3");
}

TEST_CASE("parse errors carry a position") {
    auto c = ctx3();
    CHECK_THROWS_AS(P(c, "x1 +"), ParseError);
    try {
        P(c, "x1 +");
    } catch (const ParseError& e) {
        CHECK(e.offset == 4);
    }
    CHECK_THROWS_AS(P(c, "zz + 1"), ParseError);
    CHECK_THROWS_AS(P(c, "x1 x2"), ParseError);
    CHECK_THROWS_AS(P(c, "1/0"), ParseError);
    CHECK_THROWS_AS(P(c, "x1^"), ParseError);
    CHECK_THROWS_AS(P(c, "(x1"), ParseError);
}

TEST_CASE("substitution and renaming") {
    auto c = ctx3();
    // x1 -> x1 - w*y1 in x1^2
    auto img = P(c, "x1 - w*y1");
    Poly composed = P(c, "x1^2").substitute({{c->index_of("x1"), img}});
    CHECK(composed == P(c, "x1^2 - 2*w*x1*y1 + w^2*y1^2"));
    CHECK(P(c, "x1*x2 + x3").read_in_fiber() == P(c, "y1*y2 + y3"));
    CHECK(P(c, "w*x1^2").substitute(c->index_of("x1"), Rational(1, 2)) == P(c, "1/4*w"));
}

TEST_CASE("embedding into a larger context") {
    auto small = VarContext::make({"x1", "x2"});
    auto big = VarContext::make({"x1", "x2"}, {"y1", "y2"}, {"lam"});
    Poly p = Poly::parse(small, "x1*x2 - 2");
    Poly q = p.in_context(big);
    CHECK(q == Poly::parse(big, "x1*x2 - 2"));
    CHECK_THROWS_AS(Poly::parse(big, "lam*x1").in_context(small), VarError);
}

TEST_CASE("ring laws on random polynomials") {
    auto c = ctx3();
    std::mt19937_64 rng(20240817);
    for (int iter = 0; iter < 1000; ++iter) {
        Poly p = random_poly(c, rng), q = random_poly(c, rng), r = random_poly(c, rng);
        CHECK((p + q) + r == p + (q + r));
        CHECK(p + q == q + p);
        CHECK((p * q) * r == p * (q * r));
        CHECK(p * q == q * p);
        CHECK(p * (q + r) == p * q + p * r);
    }
}

TEST_CASE("derivative laws on random polynomials") {
    auto c = ctx3();
    std::mt19937_64 rng(987654321);
    for (int iter = 0; iter < 400; ++iter) {
        Poly p = random_poly(c, rng), q = random_poly(c, rng);
        // product rule
        CHECK((p * q).diff(0) == p.diff(0) * q + p * q.diff(0));
        // mixed partials commute
        for (int u = 0; u < c->ncoords(); ++u)
            for (int v = u + 1; v < c->ncoords(); ++v)
                CHECK(p.diff(u).diff(v) == p.diff(v).diff(u));
        // linearity
        CHECK((p + q).diff(1) == p.diff(1) + q.diff(1));
    }
}

TEST_CASE("parse round-trips render") {
    auto c = ctx3();
    std::mt19937_64 rng(42);
    for (int iter = 0; iter < 500; ++iter) {
        Poly p = random_poly(c, rng, 6, 3);
        CHECK(Poly::parse(c, p.render()) == p);
    }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "plift/catalog.hpp"

using namespace plift;
using namespace plift::catalog;

namespace {

Poly P(const ContextPtr& c, const std::string& s) { return Poly::parse(c, s); }

}  // namespace

TEST_CASE("lie-poisson tensors from structure constants") {
    auto ctx = algebra_context("A3,9");
    auto a39 = tensor("A3,9", ctx);
    CHECK(a39.at(0, 1) == P(ctx, "x3"));
    CHECK(a39.at(0, 2) == P(ctx, "-x2"));
    CHECK(a39.at(1, 2) == P(ctx, "x1"));

    auto ctx5 = algebra_context("A3,5");
    auto a35 = tensor("A3,5", ctx5);
    CHECK(a35.at(0, 2) == P(ctx5, "x1"));
    CHECK(a35.at(1, 2) == P(ctx5, "a*x2"));

    // abelian constants give the zero tensor
    StructureConstants abelian(
        3, std::vector<std::vector<Poly>>(3, std::vector<Poly>(3, Poly::zero(ctx))));
    CHECK(lie_poisson(abelian, ctx) == PoissonTensor::zero(ctx, 3));

    // constants failing the Jacobi identity are rejected
    StructureConstants bad = abelian;
    bad[0][1][2] = P(ctx, "1");
    bad[1][0][2] = P(ctx, "-1");
    bad[0][2][0] = P(ctx, "1");
    bad[2][0][0] = P(ctx, "-1");
    CHECK_THROWS_AS(lie_poisson(bad, ctx), NotPoissonError);
}

TEST_CASE("catalog rows") {
    auto ctx = algebra_context("A3,8");
    auto entry = get_algebra("A3,8", ctx);
    auto expected = PoissonTensor::parse(ctx, 3,
                                         {{"0", "x1", "-2*x2"},
                                          {"-x1", "0", "x3"},
                                          {"2*x2", "-x3", "0"}});
    CHECK(entry.tensor == expected);
    CHECK(entry.algebra.invariant_text == "2*e2^2+2*e1*e3");

    auto inv1 = invariant_specs("A3,1", algebra_context("A3,1"));
    REQUIRE(inv1.size() == 1);
    CHECK(inv1[0].kind == InvariantSpec::Kind::exact);
    CHECK(*inv1[0].poly == P(algebra_context("A3,1"), "x1"));

    auto inv2 = invariant_specs("A3,2", algebra_context("A3,2"));
    CHECK(inv2[0].kind == InvariantSpec::Kind::numeric);

    CHECK_THROWS_AS(get_algebra("A4,1", ctx), UnknownAlgebraError);
}

TEST_CASE("all catalog tensors satisfy the Jacobi system") {
    for (const auto& name : names()) {
        auto ctx = algebra_context(name);
        INFO("algebra ", name);
        CHECK(jacobiator(tensor(name, ctx)).ok());
    }
}

TEST_CASE("compatibility table matches the reference table") {
    auto table = compatibility_matrix();
    const auto& expected = expected_compatibility();
    for (int i = 0; i < 9; ++i)
        for (int j = 0; j < 9; ++j) {
            INFO("pair ", names()[i], " x ", names()[j]);
            CHECK(table.yes(i, j) == expected[i][j]);
            CHECK(table.yes(i, j) == table.yes(j, i));
        }
}

TEST_CASE("semidirect table matches the reference table") {
    auto table = semidirect_table();
    const auto& expected = expected_semidirect_v1();
    for (int i = 0; i < 9; ++i)
        for (int j = 0; j < 9; ++j) {
            INFO("pair ", names()[i], " x ", names()[j]);
            CHECK(table.yes(i, j) == expected[i][j]);
        }
}

TEST_CASE("pencil closure certifies each compatibility verdict") {
    const auto& expected = expected_compatibility();
    for (int i = 0; i < 9; ++i) {
        for (int j = i; j < 9; ++j) {
            auto ctx = pair_context(names()[i], names()[j], {"t"});
            auto first = tensor(names()[i], ctx, "a");
            auto second = tensor(
                names()[j], ctx,
                (i == j || !has_parameter(names()[j])) ? "a" : "b");
            auto pencil = first + second.scaled(Poly::variable(ctx, "t"));
            INFO("pencil ", names()[i], " + t*", names()[j]);
            CHECK(jacobiator(pencil).ok() == expected[i][j]);
        }
    }
}

TEST_CASE("variant-two admissibility follows from variant one on compatible pairs") {
    auto v2 = semidirect_table(SemidirectVariant::v2);
    const auto& v1 = expected_semidirect_v1();
    const auto& compat = expected_compatibility();
    for (int i = 0; i < 9; ++i)
        for (int j = 0; j < 9; ++j)
            if (v1[i][j] && compat[i][j]) {
                INFO("pair ", names()[i], " x ", names()[j]);
                CHECK(v2.yes(i, j));
            }
}

TEST_CASE("frozen companions always admit the semidirect product") {
    // a constant compatible second factor satisfies the admissibility
    // conditions; freezing at a symbolic point certifies every point at once
    for (const auto& name : names()) {
        auto ctx = VarContext::make({"x1", "x2", "x3"}, {"y1", "y2", "y3"},
                                    has_parameter(name)
                                        ? std::vector<std::string>{"a", "p1", "p2", "p3"}
                                        : std::vector<std::string>{"p1", "p2", "p3"});
        auto pi = tensor(name, ctx);
        std::vector<Poly> x0 = {Poly::parse(ctx, "p1"), Poly::parse(ctx, "p2"),
                                Poly::parse(ctx, "p3")};
        auto frozen = freeze(pi, x0);
        INFO("algebra ", name);
        CHECK(schouten_compatible(pi, frozen).ok());
        auto result = semidirect(pi, frozen, SemidirectVariant::v1);
        CHECK(result.conditions.ok());
        CHECK(jacobiator(result.lifted.tensor).ok());
    }
}

TEST_CASE("equal factors lift their casimirs by shifted sums and differences") {
    const std::vector<std::pair<std::string, std::string>> exact_casimirs = {
        {"A3,1", "x1"},
        {"A3,4", "x1*x2"},
        {"A3,6", "x1^2 + x2^2"},
        {"A3,8", "2*x2^2 + 2*x1*x3"},
        {"A3,9", "x1^2 + x2^2 + x3^2"},
    };
    for (const auto& [name, casimir_text] : exact_casimirs) {
        auto ctx = algebra_context(name);
        auto pi = tensor(name, ctx);
        Poly c = Poly::parse(ctx, casimir_text);
        std::map<int, Poly> minus, plus;
        for (int s = 0; s < 3; ++s) {
            Poly xs = Poly::variable(ctx, ctx->base_vars()[s]);
            Poly ys = Poly::variable(ctx, ctx->fiber_vars()[s]);
            minus.emplace(s, xs - ys);
            plus.emplace(s, xs + ys);
        }
        INFO("algebra ", name);
        auto first = semidirect(pi, pi, SemidirectVariant::v1);
        REQUIRE(first.conditions.ok());
        CHECK(is_casimir(first.lifted.tensor, c.substitute(minus) + c.substitute(plus)).ok());
        CHECK(is_casimir(first.lifted.tensor, c.substitute(minus) - c.substitute(plus)).ok());

        auto second = semidirect(pi, pi, SemidirectVariant::v2);
        REQUIRE(second.conditions.ok());
        CHECK(is_casimir(second.lifted.tensor, c.substitute(minus) + c).ok());
        CHECK(is_casimir(second.lifted.tensor, c.substitute(minus) - c).ok());
    }
}

TEST_CASE("catalog invariants verify") {
    auto checks = verify_invariants();
    REQUIRE(checks.size() == 9);
    for (const auto& check : checks) {
        INFO(check.algebra, " invariant ", check.invariant, " residual ", check.max_residual);
        CHECK(check.ok);
    }
}

TEST_CASE("six-dimensional identification of the semidirect products") {
    // first pairing
    {
        auto ctx = pair_context("A3,3", "A3,1");
        auto prod = semidirect(tensor("A3,3", ctx), tensor("A3,1", ctx), SemidirectVariant::v1);
        REQUIRE(prod.conditions.ok());
        const auto& pi = prod.lifted.tensor;
        CHECK(jacobiator(pi).ok());

        auto expected = PoissonTensor::parse(ctx, 6,
                                             {{"0", "0", "y1", "0", "0", "0"},
                                              {"0", "0", "y2", "0", "0", "x1"},
                                              {"-y1", "-y2", "0", "0", "-x1", "0"},
                                              {"0", "0", "0", "0", "0", "0"},
                                              {"0", "0", "x1", "0", "0", "y1"},
                                              {"0", "-x1", "0", "0", "-y1", "0"}});
        CHECK(pi == expected);

        FunctionFamily cas{FunctionFamily::Role::casimir,
                           {{"c1", P(ctx, "y1")},
                            {"c2", P(ctx, "1/3*x1^3 - x1*y1*y2 + x2*y1^2")}}};
        for (const auto& [name, f] : cas.entries) {
            INFO(name);
            CHECK(is_casimir(pi, f).ok());
        }

        // linear change of coordinates onto the six-dimensional target
        std::vector<Poly> coords = {P(ctx, "x3"),  P(ctx, "-y3"), P(ctx, "-x2"),
                                    P(ctx, "y2"),  P(ctx, "-x1"), P(ctx, "y1")};
        CHECK(check_pushforward(pi, a616_structure_constants(ctx), coords).ok());
    }
    // second pairing differs by a shear in the fiber coordinates
    {
        auto ctx = pair_context("A3,2", "A3,1");
        auto prod = semidirect(tensor("A3,2", ctx), tensor("A3,1", ctx), SemidirectVariant::v1);
        REQUIRE(prod.conditions.ok());
        const auto& pi = prod.lifted.tensor;
        CHECK(jacobiator(pi).ok());

        FunctionFamily cas{FunctionFamily::Role::casimir,
                           {{"c1", P(ctx, "y1")},
                            {"c2", P(ctx, "1/3*x1^3 - x1*y1*(y1 + y2) + x2*y1^2")}}};
        for (const auto& [name, f] : cas.entries) {
            INFO(name);
            CHECK(is_casimir(pi, f).ok());
        }

        std::vector<Poly> coords = {P(ctx, "x3"),      P(ctx, "-y3"), P(ctx, "-x2"),
                                    P(ctx, "y1 + y2"), P(ctx, "-x1"), P(ctx, "y1")};
        CHECK(check_pushforward(pi, a616_structure_constants(ctx), coords).ok());
    }
}

TEST_CASE("orthogonal-type block tensors") {
    auto ctx = algebra_context("A3,9");
    auto a39 = tensor("A3,9", ctx);

    // product of the rotation algebra with itself
    auto prod = semidirect(a39, a39, SemidirectVariant::v1);
    CHECK(prod.conditions.ok());
    CHECK(jacobiator(prod.lifted.tensor).ok());

    // plain tangent lift gives the euclidean-type block tensor
    CHECK(jacobiator(tangent_lift(a39).tensor).ok());
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "plift/dynamics.hpp"
#include "plift/lifts.hpp"

using namespace plift;

namespace {

Poly P(const ContextPtr& c, const std::string& s) { return Poly::parse(c, s); }

PoissonTensor T3(const ContextPtr& c, const std::string& e12, const std::string& e13,
                 const std::string& e23) {
    return PoissonTensor::from_upper(
        c, 3, {{0, 1, P(c, e12)}, {0, 2, P(c, e13)}, {1, 2, P(c, e23)}});
}

struct TopSetup {
    ContextPtr ctx;
    PoissonTensor tensor;
    ODESystem sys;
    FunctionFamily constants;
};

TopSetup lagrange_top() {
    auto c = VarContext::make({"x1", "x2", "x3"}, {"y1", "y2", "y3"}, {"w"});
    auto pi1 = T3(c, "w*x3", "-x2", "x1");
    auto pi2 = T3(c, "-1", "0", "0");
    auto top = semidirect(pi1, pi2, SemidirectVariant::v1).lifted.tensor;
    auto h = P(c, "1/2*(x1^2 + x2^2 + x3^2) + (w - 1)*y3*(x1*y1 + x2*y2 + w*x3*y3)");
    // the Hamiltonian itself is tracked alongside the four constants
    FunctionFamily constants{FunctionFamily::Role::casimir,
                             {{"c1", P(c, "y3")},
                              {"c1~", P(c, "x3 - 1/2*(y1^2 + y2^2 + w*y3^2)")},
                              {"H2^", P(c, "2*x1*y1 + 2*x2*y2 + 2*w*x3*y3")},
                              {"HH1", P(c, "x1^2 + x2^2 + x3^2")},
                              {"h", h}}};
    return TopSetup{c, top, hamiltons_equations(top, h), std::move(constants)};
}

struct DeformedSetup {
    ContextPtr ctx;
    ODESystem sys;
    FunctionFamily constants;
};

DeformedSetup deformed_system() {
    auto c = VarContext::make({"x1", "x2", "x3"}, {"y1", "y2", "y3"}, {"lam", "alpha"});
    auto a38 = T3(c, "x1", "-2*x2", "x3");
    auto frozen = freeze(a38, std::vector<Rational>{1, 0, 0});
    auto prod = semidirect(a38, frozen, SemidirectVariant::v1).lifted.tensor;
    auto h = P(c, "x2^2 + x1*x3 + lam*x3^2 + alpha*y3*(2*x2*y2 + x1*y3 + x3*y1)");
    FunctionFamily constants{FunctionFamily::Role::casimir,
                             {{"c1", P(c, "y3")},
                              {"c1~", P(c, "x3 + y2^2 + y1*y3")},
                              {"HH1", P(c, "x2^2 + x1*x3 + lam*x3^2")},
                              {"H2^", P(c, "2*x2*y2 + x1*y3 + x3*y1")}}};
    return DeformedSetup{c, hamiltons_equations(prod, h), std::move(constants)};
}

}  // namespace

TEST_CASE("rigid-body equations of motion") {
    auto c = VarContext::make({"x1", "x2", "x3"}, {"y1", "y2", "y3"}, {"w"});
    auto pi1 = T3(c, "w*x3", "-x2", "x1");
    auto sys = hamiltons_equations(pi1, P(c, "x1^2 + x2^2 + x3^2"));
    REQUIRE(sys.dim() == 3);
    CHECK(sys.rhs[0] == P(c, "2*(w - 1)*x2*x3"));
    CHECK(sys.rhs[1] == P(c, "-2*(w - 1)*x1*x3"));
    CHECK(sys.rhs[2].is_zero());
    CHECK(sys.rhs[0].render() == "2*w*x2*x3 - 2*x2*x3");
    CHECK(sys.rhs[1].render() == "-2*w*x1*x3 + 2*x1*x3");

    // a Casimir generates no motion
    auto still = hamiltons_equations(pi1, P(c, "x1^2 + x2^2 + w*x3^2"));
    for (const auto& rhs : still.rhs) CHECK(rhs.is_zero());

    // base restriction of the deformed example: its Hamiltonian at zero
    // coupling is a Casimir of the sl2-type tensor, so the field vanishes
    auto a38 = T3(c, "x1", "-2*x2", "x3");
    auto frozen_h = hamiltons_equations(a38, P(c, "x2^2 + x1*x3"));
    for (const auto& rhs : frozen_h.rhs) CHECK(rhs.is_zero());
}

TEST_CASE("four-parameter linear combination on the lifted tensor") {
    auto c = VarContext::make({"x1", "x2", "x3"}, {"y1", "y2", "y3"},
                              {"w", "alpha", "beta", "gam", "delta"});
    auto pi1 = T3(c, "w*x3", "-x2", "x1");
    auto pi2 = T3(c, "-1", "0", "0");
    auto top = semidirect(pi1, pi2, SemidirectVariant::v1).lifted.tensor;
    auto h = P(c,
               "alpha*(y1^2 + y2^2 + y3^2) + beta*(y1^2 + y2^2 + w*y3^2)"
               " + gam*(2*x1*y1 + 2*x2*y2 + 2*x3*y3)"
               " + delta*(2*x1*y1 + 2*x2*y2 + 2*w*x3*y3)");
    auto sys = hamiltons_equations(top, h);
    CHECK(sys.rhs[0] ==
          P(c, "2*gam*(w - 1)*y2*y3 - 2*(alpha + beta)*y2 - 2*(gam + delta)*x2"));
    CHECK(sys.rhs[1] ==
          P(c, "-2*gam*(w - 1)*y1*y3 + 2*(alpha + beta)*y1 + 2*(gam + delta)*x1"));
    CHECK(sys.rhs[2].is_zero());
    CHECK(sys.rhs[3] == P(c, "-2*(gam + delta)*y2"));
    CHECK(sys.rhs[4] == P(c, "2*(gam + delta)*y1"));
    CHECK(sys.rhs[5].is_zero());
}

TEST_CASE("lagrange top equations of motion") {
    auto setup = lagrange_top();
    const std::vector<std::string> expected = {
        "x2*y3 - x3*y2",  "-x1*y3 + x3*y1",          "x1*y2 - x2*y1",
        "-w*y2*y3 + y2*y3 - x2", "w*y1*y3 - y1*y3 + x1", "0"};
    REQUIRE(setup.sys.dim() == 6);
    for (int j = 0; j < 6; ++j) CHECK(setup.sys.rhs[j].render() == expected[j]);
}

TEST_CASE("deformed sl2-type equations of motion") {
    auto setup = deformed_system();
    const std::vector<std::string> expected = {
        "2*alpha*x2*y3 - 4*lam*x3*y2 - 2*x1*y2 + 2*x2*y1",
        "2*lam*x3*y3 - alpha*x3*y3 + x1*y3 - x3*y1",
        "-2*x2*y3 + 2*x3*y2",
        "2*alpha*y2*y3 + 2*x2",
        "-alpha*y3^2 - x3",
        "0"};
    REQUIRE(setup.sys.dim() == 6);
    for (int j = 0; j < 6; ++j) CHECK(setup.sys.rhs[j].render() == expected[j]);
}

TEST_CASE("integrator basics") {
    auto c = VarContext::make({"z1"});
    ODESystem still{c, {Poly::zero(c)}};
    auto traj = integrate_rk4(still, {2.5}, 0.1, 1.0);
    REQUIRE(traj.states.size() == 11);
    for (const auto& state : traj.states) CHECK(state[0] == 2.5);

    FunctionFamily fns{FunctionFamily::Role::hamiltonian, {{"f", P(c, "z1^2")}}};
    auto report = conservation_report(traj, fns);
    CHECK(report.entries[0].max_abs_drift == 0.0);
    CHECK(report.entries[0].initial == doctest::Approx(6.25));

    CHECK_THROWS_AS(integrate_rk4(still, {1.0}, -0.1, 1.0), EvalError);
    CHECK_THROWS_AS(integrate_rk4(still, {1.0, 2.0}, 0.1, 1.0), EvalError);
}

TEST_CASE("integrator order on the linear decay equation") {
    auto c = VarContext::make({"z1"});
    ODESystem decay{c, {P(c, "-z1")}};
    auto err = [&](double dt) {
        auto traj = integrate_rk4(decay, {1.0}, dt, 1.0);
        return std::fabs(traj.states.back()[0] - std::exp(-1.0));
    };
    const double e1 = err(0.02), e2 = err(0.01);
    CHECK(e1 / e2 > 12.0);  // fourth order: expect about 16
    CHECK(e1 < 1e-8);
}

TEST_CASE("finite-time blowup raises divergence") {
    auto c = VarContext::make({"z1"});
    ODESystem riccati{c, {P(c, "z1^2")}};
    CHECK_THROWS_AS(integrate_rk4(riccati, {1.0}, 1.0, 100.0), DivergenceError);
}

TEST_CASE("unbound parameters are rejected") {
    auto setup = lagrange_top();
    CHECK_THROWS_AS(integrate_rk4(setup.sys, {1, 0, 0.5, 0, 1, 0.3}, 1e-3, 0.01), EvalError);
}

TEST_CASE("lagrange top conservation at the acceptance fixture") {
    auto setup = lagrange_top();
    const std::map<std::string, Rational> params = {{"w", 2}};
    const std::vector<double> z0 = {1, 0, 0.5, 0, 1, 0.3};

    auto traj = integrate_rk4(setup.sys, z0, 1e-3, 10.0, params);
    auto report = conservation_report(traj, setup.constants, params);
    REQUIRE(report.entries.size() == 5);
    for (const auto& e : report.entries) {
        INFO(e.name);
        CHECK(e.max_rel_drift <= 1e-8);
    }
}

TEST_CASE("step halving shows fourth-order drift decay above the floor") {
    auto setup = lagrange_top();
    const std::map<std::string, Rational> params = {{"w", 2}};
    const std::vector<double> z0 = {1, 0, 0.5, 0, 1, 0.3};

    // coarse steps keep the truncation error above the rounding floor
    auto coarse = conservation_report(integrate_rk4(setup.sys, z0, 0.05, 10.0, params),
                                      setup.constants, params);
    auto fine = conservation_report(integrate_rk4(setup.sys, z0, 0.025, 10.0, params),
                                    setup.constants, params);
    for (std::size_t k = 0; k < coarse.entries.size(); ++k) {
        const double d1 = coarse.entries[k].max_rel_drift;
        const double d2 = fine.entries[k].max_rel_drift;
        if (d1 <= 1e-12) continue;  // exactly conserved component
        INFO(coarse.entries[k].name);
        CHECK(d1 / d2 >= 8.0);
    }
}

TEST_CASE("deformed system conservation at its fixture") {
    auto setup = deformed_system();
    const std::map<std::string, Rational> params = {{"lam", 1}, {"alpha", 1}};
    const std::vector<double> z0 = {0.1, 0.05, 0.05, 0.02, 0.03, 0.04};

    auto traj = integrate_rk4(setup.sys, z0, 1e-3, 10.0, params);
    auto report = conservation_report(traj, setup.constants, params);
    for (const auto& e : report.entries) {
        INFO(e.name);
        CHECK(e.max_rel_drift <= 1e-8);
    }

    // larger data escapes in finite time; the integrator reports it
    CHECK_THROWS_AS(integrate_rk4(setup.sys, {0.8, 0.3, 0.5, 0.2, 0.4, 0.6}, 1e-3, 10.0, params),
                    DivergenceError);
}

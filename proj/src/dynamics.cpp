#include "plift/dynamics.hpp"

#include <cmath>

namespace plift {

namespace {

// Polynomial with parameters substituted out, flattened for fast evaluation
// on coordinate vectors.
struct CompiledPoly {
    struct Term {
        double coeff;
        std::vector<std::pair<int, int>> powers;  // (coordinate, exponent)
    };
    std::vector<Term> terms;

    double eval(const std::vector<double>& z) const {
        double sum = 0.0;
        for (const auto& t : terms) {
            double v = t.coeff;
            for (const auto& [i, e] : t.powers)
                for (int k = 0; k < e; ++k) v *= z[i];
            sum += v;
        }
        return sum;
    }
};

CompiledPoly compile(const Poly& p, const std::map<std::string, Rational>& params, int dim) {
    const auto& ctx = p.context();
    std::map<int, Poly> images;
    for (int i = ctx->ncoords(); i < ctx->nsymbols(); ++i) {
        if (!p.depends_on(i)) continue;
        auto it = params.find(ctx->symbol(i));
        if (it == params.end())
            throw EvalError("parameter '" + ctx->symbol(i) + "' is unbound");
        images.emplace(i, Poly::constant(ctx, it->second));
    }
    Poly bound = images.empty() ? p : p.substitute(images);

    CompiledPoly out;
    for (const auto& [e, c] : bound.terms()) {
        CompiledPoly::Term term;
        term.coeff = to_double(c);
        for (int i = 0; i < ctx->nsymbols(); ++i) {
            if (e[i] == 0) continue;
            if (i >= dim)
                throw EvalError("right-hand side depends on symbol outside the state: " +
                                ctx->symbol(i));
            term.powers.emplace_back(i, e[i]);
        }
        out.terms.push_back(std::move(term));
    }
    return out;
}

}  // namespace

ODESystem hamiltons_equations(const PoissonTensor& pi, const Poly& hamiltonian) {
    VecField field = hamiltonian_vf(pi, hamiltonian);
    return ODESystem{pi.context(), std::move(field.comps)};
}

Trajectory integrate_rk4(const ODESystem& sys, const std::vector<double>& z0, double dt, double T,
                         const std::map<std::string, Rational>& params) {
    if (!(dt > 0.0)) throw EvalError("step size must be positive");
    if (T < dt) throw EvalError("horizon shorter than one step");
    const int n = sys.dim();
    if (static_cast<int>(z0.size()) != n) throw EvalError("initial state dimension mismatch");

    std::vector<CompiledPoly> rhs;
    rhs.reserve(n);
    for (const auto& p : sys.rhs) rhs.push_back(compile(p, params, n));

    auto deriv = [&](const std::vector<double>& z, std::vector<double>& out) {
        for (int j = 0; j < n; ++j) out[j] = rhs[j].eval(z);
    };

    const auto nsteps = static_cast<std::size_t>(T / dt + 0.5);
    Trajectory traj;
    traj.dt = dt;
    traj.times.reserve(nsteps + 1);
    traj.states.reserve(nsteps + 1);
    traj.times.push_back(0.0);
    traj.states.push_back(z0);

    std::vector<double> z = z0, k1(n), k2(n), k3(n), k4(n), tmp(n);
    for (std::size_t step = 1; step <= nsteps; ++step) {
        deriv(z, k1);
        for (int j = 0; j < n; ++j) tmp[j] = z[j] + 0.5 * dt * k1[j];
        deriv(tmp, k2);
        for (int j = 0; j < n; ++j) tmp[j] = z[j] + 0.5 * dt * k2[j];
        deriv(tmp, k3);
        for (int j = 0; j < n; ++j) tmp[j] = z[j] + dt * k3[j];
        deriv(tmp, k4);
        for (int j = 0; j < n; ++j) {
            z[j] += dt / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
            if (!std::isfinite(z[j])) throw DivergenceError("state became non-finite", step);
        }
        traj.times.push_back(static_cast<double>(step) * dt);
        traj.states.push_back(z);
    }
    return traj;
}

double ConservationReport::worst_rel_drift() const {
    double worst = 0.0;
    for (const auto& e : entries) worst = std::max(worst, e.max_rel_drift);
    return worst;
}

ConservationReport conservation_report(const Trajectory& traj, const FunctionFamily& fns,
                                       const std::map<std::string, Rational>& params) {
    if (traj.states.empty()) throw EvalError("empty trajectory");
    const int n = static_cast<int>(traj.states.front().size());

    ConservationReport report;
    for (const auto& [name, f] : fns.entries) {
        CompiledPoly cf = compile(f, params, n);
        const double f0 = cf.eval(traj.states.front());
        double max_abs = 0.0;
        for (const auto& z : traj.states) {
            const double v = cf.eval(z);
            if (!std::isfinite(v)) throw EvalError("conserved quantity evaluation failed");
            max_abs = std::max(max_abs, std::fabs(v - f0));
        }
        const double scale = std::fabs(f0);
        const double rel = scale > 1e-12 ? max_abs / scale : max_abs;
        report.entries.push_back({name, f0, max_abs, rel});
    }
    return report;
}

}  // namespace plift

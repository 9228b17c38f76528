#pragma once

#include <map>
#include <string>
#include <vector>

#include "plift/tensor.hpp"

namespace plift {

// Right-hand sides zdot_j = {z_j, H}, one polynomial per tensor coordinate.
struct ODESystem {
    ContextPtr ctx;
    std::vector<Poly> rhs;
    int dim() const { return static_cast<int>(rhs.size()); }
};

ODESystem hamiltons_equations(const PoissonTensor& pi, const Poly& hamiltonian);

struct Trajectory {
    std::vector<double> times;
    std::vector<std::vector<double>> states;
    double dt = 0.0;
    std::string method = "rk4";
};

// Classical fixed-step fourth-order Runge-Kutta. Parameters are bound to
// exact rationals before the right-hand sides are compiled to doubles.
// Throws DivergenceError when a state stops being finite.
Trajectory integrate_rk4(const ODESystem& sys, const std::vector<double>& z0, double dt, double T,
                         const std::map<std::string, Rational>& params = {});

struct ConservationEntry {
    std::string name;
    double initial;
    double max_abs_drift;
    double max_rel_drift;
};
struct ConservationReport {
    std::vector<ConservationEntry> entries;
    double worst_rel_drift() const;
};

// max_t |f(z(t)) - f(z(0))| per function, plus the version relative to
// |f(z(0))| (absolute drift is reported when the initial value is ~0).
ConservationReport conservation_report(const Trajectory& traj, const FunctionFamily& fns,
                                       const std::map<std::string, Rational>& params = {});

}  // namespace plift

#pragma once

#include <functional>
#include <vector>

#include "plift/tensor.hpp"

namespace plift {

// Scalar function of the tensor coordinates, used for invariants that have
// no polynomial form (exponentials, ratios, real powers).
using NumericFn = std::function<double(const std::vector<double>&)>;

struct NumericCasimirOptions {
    double tol = 1e-9;
    // Central-difference step, scaled per coordinate by max(1, |z_i|); the
    // derivative is accepted only if halving the step changes it by less
    // than `richardson_rtol` relative.
    double step = 1e-6;
    double richardson_rtol = 1e-5;
    // Parameter symbol values used when evaluating the tensor entries.
    std::vector<double> param_values;
};

struct NumericCasimirResult {
    bool ok = false;
    int points_checked = 0;
    int points_skipped = 0;
    double max_residual = 0.0;
};

// Checks |(pi grad c)_j| <= tol at every trial point, with the gradient of
// `c` taken by central finite differences. Points where `c` fails to
// evaluate to a finite value are skipped and counted; if every point fails,
// InsufficientSamplesError is thrown. Trial points must avoid the singular
// loci of `c` (caller's responsibility).
NumericCasimirResult is_casimir_numeric(const PoissonTensor& pi, const NumericFn& c,
                                        const std::vector<std::vector<double>>& trial_points,
                                        const NumericCasimirOptions& opts = {});

}  // namespace plift

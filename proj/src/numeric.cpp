#include "plift/numeric.hpp"

#include <cmath>

namespace plift {

namespace {

// Central difference along coordinate i, or NaN when c is not finite nearby.
double central_diff(const NumericFn& c, std::vector<double> z, int i, double h) {
    const double zi = z[i];
    z[i] = zi + h;
    const double up = c(z);
    z[i] = zi - h;
    const double down = c(z);
    if (!std::isfinite(up) || !std::isfinite(down)) return std::nan("");
    return (up - down) / (2.0 * h);
}

}  // namespace

NumericCasimirResult is_casimir_numeric(const PoissonTensor& pi, const NumericFn& c,
                                        const std::vector<std::vector<double>>& trial_points,
                                        const NumericCasimirOptions& opts) {
    const int n = pi.dim();
    const int nsym = pi.context()->nsymbols();
    const int nparams = pi.context()->nparams();
    if (static_cast<int>(opts.param_values.size()) != nparams)
        throw EvalError("parameter value count does not match context");

    NumericCasimirResult result;
    result.ok = true;
    for (const auto& point : trial_points) {
        if (static_cast<int>(point.size()) != n)
            throw EvalError("trial point dimension mismatch");
        if (!std::isfinite(c(point))) {
            ++result.points_skipped;
            continue;
        }

        std::vector<double> grad(n);
        bool usable = true;
        for (int i = 0; i < n && usable; ++i) {
            const double h = opts.step * std::max(1.0, std::fabs(point[i]));
            const double g1 = central_diff(c, point, i, h);
            const double g2 = central_diff(c, point, i, h / 2.0);
            if (!std::isfinite(g1) || !std::isfinite(g2)) {
                usable = false;
                break;
            }
            if (std::fabs(g2 - g1) > opts.richardson_rtol * std::max(1.0, std::fabs(g2))) {
                usable = false;
                break;
            }
            // Keep the full-step value: the halved step only confirms
            // convergence and carries twice the rounding noise.
            grad[i] = g1;
        }
        if (!usable) {
            ++result.points_skipped;
            continue;
        }

        // Full symbol vector: coordinates from the trial point, unused
        // coordinates zero, then parameter values.
        std::vector<double> symbols(nsym, 0.0);
        for (int i = 0; i < n; ++i) symbols[i] = point[i];
        for (int k = 0; k < nparams; ++k)
            symbols[pi.context()->ncoords() + k] = opts.param_values[k];

        for (int j = 0; j < n; ++j) {
            double r = 0.0;
            for (int s = 0; s < n; ++s) {
                if (pi.at(j, s).is_zero()) continue;
                r += pi.at(j, s).eval(symbols) * grad[s];
            }
            result.max_residual = std::max(result.max_residual, std::fabs(r));
        }
        ++result.points_checked;
    }

    if (result.points_checked == 0)
        throw InsufficientSamplesError("no trial point admitted a finite gradient");
    result.ok = result.max_residual <= opts.tol;
    return result;
}

}  // namespace plift
